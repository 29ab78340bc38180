#include <functional>

#include "oracles.hpp"

namespace oracle {

std::vector<std::vector<std::size_t>> all_tables(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(n, 0);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == n) {
      out.push_back(t);
      return;
    }
    for (std::size_t v = 0; v < k; ++v) {
      t[i] = v;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

std::vector<RawLens> brute_lenses(const std::vector<std::size_t>& x, const std::vector<std::size_t>& xp,
                                  const std::vector<std::size_t>& y, const std::vector<std::size_t>& yp,
                                  std::size_t, std::size_t) {
  std::vector<RawLens> out;
  for (const auto& get : all_tables(x.size(), y.size())) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < yp.size(); ++j)
        if (y[get[i]] == yp[j]) pairs.emplace_back(i, j);
    for (const auto& put : all_tables(pairs.size(), xp.size())) {
      bool ok = true;
      for (std::size_t p = 0; p < pairs.size() && ok; ++p) ok = xp[put[p]] == x[pairs[p].first];
      if (ok) out.push_back({get, put});
    }
  }
  return out;
}

std::size_t brute_prism_count(const std::vector<std::size_t>& ax, const std::vector<std::size_t>& axp,
                              std::size_t nx, std::size_t nxp, const std::vector<std::size_t>& by,
                              const std::vector<std::size_t>& byp, std::size_t ny, std::size_t nyp) {
  std::size_t count = 0;
  for (const auto& match : all_tables(nyp, nxp)) {
    // X' ⊔ Y with X' first; edges match(y'(b)) — y(b)
    const std::size_t n = nxp + ny;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t b = 0; b < by.size(); ++b) {
      std::size_t u = match[byp[b]], v = nxp + by[b];
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<std::size_t> label(n, n);
    std::size_t classes = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (label[s] != n) continue;
      std::vector<std::size_t> stack{s};
      label[s] = classes;
      while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (auto v : adj[u])
          if (label[v] == n) {
            label[v] = classes;
            stack.push_back(v);
          }
      }
      ++classes;
    }
    for (const auto& review : all_tables(nx, classes)) {
      bool ok = true;
      for (std::size_t a = 0; a < ax.size() && ok; ++a) ok = review[ax[a]] == label[axp[a]];
      count += ok;
    }
  }
  return count;
}

RawLens classical_compose(const RawLens& l2, const RawLens& l1, std::size_t nyp, std::size_t nzp) {
  RawLens out;
  for (auto g : l1.get) out.get.push_back(l2.get[g]);
  for (std::size_t x = 0; x < l1.get.size(); ++x)
    for (std::size_t z = 0; z < nzp; ++z) {
      std::size_t yp = l2.put[l1.get[x] * nzp + z];
      out.put.push_back(l1.put[x * nyp + yp]);
    }
  return out;
}

}  // namespace oracle
