#include <cstdio>
#include <cstdlib>
#include <string>

#include "support/acceptance.hpp"

int main(int argc, char** argv) {
  acceptance::Options opt;
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    auto value = std::strtoull(argv[i + 1], nullptr, 10);
    if (flag == "--seed") opt.seed = value;
    else if (flag == "--max-apex") opt.max_apex = value;
    else if (flag == "--sample") opt.sample = value;
    else if (flag == "--only") only = static_cast<int>(value);
    else {
      std::fprintf(stderr, "usage: %s [--seed N] [--max-apex N] [--sample N] [--only ID]\n", argv[0]);
      return 2;
    }
  }
  bool all = true;
  for (int id = 1; id <= acceptance::criterion_count(); ++id) {
    if (only != 0 && id != only) continue;
    auto c = acceptance::run(id, opt);
    std::printf("%s\n", acceptance::format_line(c).c_str());
    std::fflush(stdout);
    all = all && c.pass();
  }
  return all ? 0 : 1;
}
