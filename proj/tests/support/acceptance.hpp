#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace acceptance {

struct Options {
  std::uint64_t seed = 1;
  std::size_t max_apex = 4;  // span bound of the lens canonicalization audit
  std::size_t sample = 16;   // backward maps per forward pair in the audits
};

struct Criterion {
  int id = 0;
  std::string name;
  bool checks_ok = false;
  double seconds = 0;
  double limit = 0;
  std::string detail;

  bool pass() const { return checks_ok && seconds < limit; }
};

/// Criteria 1 through 8. Throws std::out_of_range for other ids.
Criterion run(int id, const Options& opt = {});
std::vector<Criterion> run_all(const Options& opt = {});
int criterion_count();

/// "PASS [3] lens closed form (2.41 s / 60 s): ..." with no trailing newline.
std::string format_line(const Criterion& c);

}  // namespace acceptance
