#include <algorithm>
#include <functional>

#include "oracles.hpp"

namespace oracle {

namespace {

using dopt::FinCat;
using dopt::MorphismSpec;

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

CatPtr thin_from(std::size_t n, const std::vector<std::vector<bool>>& leq) {
  std::vector<MorphismSpec> mors;
  std::vector<MorId> ids(n);
  std::vector<MorId> index(n * n, dopt::kNone);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      if (leq[a][b]) {
        index[a * n + b] = mors.size();
        if (a == b) ids[a] = mors.size();
        mors.push_back({a, b});
      }
  auto specs = mors;
  return std::make_shared<FinCat>(FinCat::from_rule(
      n, mors, ids, [&](MorId g, MorId f) { return index[specs[f].src * n + specs[g].dst]; }));
}

CatPtr random_poset(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) leq[i][j] = uniform(rng, 0, 1) == 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return thin_from(n, leq);
}

CatPtr cyclic_monoid(std::size_t index, std::size_t period) {
  const std::size_t n = index + period;
  std::vector<MorphismSpec> mors(n, MorphismSpec{0, 0});
  return std::make_shared<FinCat>(FinCat::from_rule(1, mors, {0}, [=](MorId g, MorId f) {
    std::size_t s = g + f;
    return s < n ? s : index + (s - index) % period;
  }));
}

CatPtr parallel_arrows() {
  std::vector<MorphismSpec> mors{{0, 0}, {1, 1}, {0, 1}, {0, 1}};
  return std::make_shared<FinCat>(FinCat::from_rule(2, mors, {0, 1}, [&](MorId g, MorId f) {
    if (g == 0 || g == 1) return f;
    return g;
  }));
}

struct Term {
  std::function<std::size_t(ObjId, ObjId)> size;
  std::function<std::size_t(MorId, ObjId, std::size_t)> contra;
  std::function<std::size_t(MorId, ObjId, std::size_t)> co;
};

Term hom_term(const CatPtr& c, std::size_t copies) {
  Term t;
  t.size = [c, copies](ObjId j, ObjId k) { return c->hom(j, k).size() * copies; };
  t.contra = [c](MorId m, ObjId k, std::size_t x) {
    ObjId j2 = c->dst(m);
    std::size_t n = c->hom(j2, k).size();
    MorId h = c->hom(j2, k)[x % n];
    return (x / n) * c->hom(c->src(m), k).size() + c->hom_position(c->compose(h, m));
  };
  t.co = [c](MorId m, ObjId j, std::size_t x) {
    ObjId k = c->src(m);
    std::size_t n = c->hom(j, k).size();
    MorId h = c->hom(j, k)[x % n];
    return (x / n) * c->hom(j, c->dst(m)).size() + c->hom_position(c->compose(m, h));
  };
  return t;
}

Term product_term(const CatPtr& c, ObjId a, ObjId b) {
  // hom(j, b) × hom(a, k)
  Term t;
  t.size = [=](ObjId j, ObjId k) { return c->hom(j, b).size() * c->hom(a, k).size(); };
  t.contra = [=](MorId m, ObjId k, std::size_t x) {
    std::size_t nq = c->hom(a, k).size();
    MorId p = c->hom(c->dst(m), b)[x / nq];
    return c->hom_position(c->compose(p, m)) * nq + x % nq;
  };
  t.co = [=](MorId m, ObjId, std::size_t x) {
    std::size_t nq = c->hom(a, c->src(m)).size();
    std::size_t nq2 = c->hom(a, c->dst(m)).size();
    MorId q = c->hom(a, c->src(m))[x % nq];
    return (x / nq) * nq2 + c->hom_position(c->compose(m, q));
  };
  return t;
}

Term constant_term(std::size_t s) {
  Term t;
  t.size = [s](ObjId, ObjId) { return s; };
  t.contra = [](MorId, ObjId, std::size_t x) { return x; };
  t.co = [](MorId, ObjId, std::size_t x) { return x; };
  return t;
}

}  // namespace

CatPtr random_category(std::mt19937_64& rng, std::size_t max_objects) {
  const std::size_t n = uniform(rng, 1, max_objects);
  switch (uniform(rng, 0, 8)) {
    case 0: return dopt::discrete_category(n);
    case 1: return dopt::chain_category(n);
    case 2: return dopt::codiscrete_category(std::min<std::size_t>(n, 2));
    case 3: return dopt::cyclic_group_category(uniform(rng, 1, 4));
    case 4: {
      std::size_t idx = uniform(rng, 1, 3);
      return cyclic_monoid(idx, uniform(rng, 1, 4 - idx));
    }
    case 5: return parallel_arrows();
    case 6: return dopt::finset_skeleton(std::min<std::size_t>(max_objects, 3) - 1);
    default: return random_poset(rng, n);
  }
}

dopt::TableBifunctor random_bifunctor(std::mt19937_64& rng, std::size_t max_objects,
                                      std::size_t max_value) {
  while (true) {
    CatPtr c = random_category(rng, max_objects);
    const std::size_t n = c->num_objects();
    std::vector<Term> terms;
    std::size_t count = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < count; ++i) {
      switch (uniform(rng, 0, 3)) {
        case 0: terms.push_back(hom_term(c, 1)); break;
        case 1: terms.push_back(hom_term(c, 2)); break;
        case 2: terms.push_back(product_term(c, uniform(rng, 0, n - 1), uniform(rng, 0, n - 1))); break;
        default: terms.push_back(constant_term(uniform(rng, 1, 2))); break;
      }
    }
    dopt::TableBifunctor h;
    h.index = c;
    h.sizes.assign(n * n, 0);
    bool fits = true;
    for (ObjId j = 0; j < n; ++j)
      for (ObjId k = 0; k < n; ++k) {
        for (const auto& t : terms) h.sizes[j * n + k] += t.size(j, k);
        fits = fits && h.sizes[j * n + k] <= max_value;
      }
    if (!fits) continue;
    auto offset = [&](std::size_t term, ObjId j, ObjId k) {
      std::size_t off = 0;
      for (std::size_t i = 0; i < term; ++i) off += terms[i].size(j, k);
      return off;
    };
    h.contra_table.resize(c->num_morphisms() * n);
    h.co_table.resize(c->num_morphisms() * n);
    for (MorId m = 0; m < c->num_morphisms(); ++m)
      for (ObjId o = 0; o < n; ++o) {
        auto& ct = h.contra_table[m * n + o];
        for (std::size_t t = 0; t < terms.size(); ++t)
          for (std::size_t x = 0; x < terms[t].size(c->dst(m), o); ++x)
            ct.push_back(offset(t, c->src(m), o) + terms[t].contra(m, o, x));
        auto& kt = h.co_table[m * n + o];
        for (std::size_t t = 0; t < terms.size(); ++t)
          for (std::size_t x = 0; x < terms[t].size(o, c->src(m)); ++x)
            kt.push_back(offset(t, o, c->dst(m)) + terms[t].co(m, o, x));
      }
    return h;
  }
}

std::vector<std::size_t> closure_partition(const dopt::TableBifunctor& h) {
  const FinCat& c = *h.index;
  const std::size_t n = c.num_objects();
  std::vector<std::size_t> off(n + 1, 0);
  for (ObjId j = 0; j < n; ++j) off[j + 1] = off[j] + h.sizes[j * n + j];
  const std::size_t total = off[n];
  std::vector<std::vector<char>> rel(total, std::vector<char>(total, 0));
  for (std::size_t i = 0; i < total; ++i) rel[i][i] = 1;
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    ObjId j = c.src(m), j2 = c.dst(m);
    // x ∈ H(j', j)
    for (std::size_t x = 0; x < h.sizes[j2 * n + j]; ++x) {
      std::size_t p = off[j] + h.contra_table[m * n + j][x];
      std::size_t q = off[j2] + h.co_table[m * n + j2][x];
      rel[p][q] = rel[q][p] = 1;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < total; ++a)
      for (std::size_t b = 0; b < total; ++b)
        if (rel[a][b])
          for (std::size_t d = 0; d < total; ++d)
            if (rel[b][d] && !rel[a][d]) {
              rel[a][d] = rel[d][a] = 1;
              changed = true;
            }
  }
  std::vector<std::size_t> label(total);
  for (std::size_t a = 0; a < total; ++a) {
    label[a] = a;
    for (std::size_t b = 0; b < a; ++b)
      if (rel[a][b]) {
        label[a] = b;
        break;
      }
  }
  return label;
}

bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

}  // namespace oracle
