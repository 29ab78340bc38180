#include <algorithm>

#include "oracles.hpp"

namespace oracle {

std::size_t RawHom::classes() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < label.size(); ++i) n += label[i] == i;
  return n;
}

std::size_t RawHom::index_of(const RawWitness& w) const {
  auto it = std::find(witnesses.begin(), witnesses.end(), w);
  return it == witnesses.end() ? dopt::kNone : static_cast<std::size_t>(it - witnesses.begin());
}

bool RawHom::related(const RawWitness& a, const RawWitness& b) const {
  return label.at(index_of(a)) == label.at(index_of(b));
}

RawHom optic_hom_closure(const dopt::IndexedCat& l, const dopt::IndexedCat& r, ObjId a, ObjId x,
                         ObjId xp, ObjId b, ObjId y, ObjId yp) {
  const dopt::FinCat& hom = l.base->hom(a, b);
  const dopt::FinCat& la = l.fiber(a);
  const dopt::FinCat& ra = r.fiber(a);
  RawHom out;
  for (ObjId f = 0; f < hom.num_objects(); ++f)
    for (MorId lm = 0; lm < la.num_morphisms(); ++lm) {
      if (la.src(lm) != x || la.dst(lm) != l.pull_obj(a, b, f, y)) continue;
      for (MorId rm = 0; rm < ra.num_morphisms(); ++rm)
        if (ra.src(rm) == r.pull_obj(a, b, f, yp) && ra.dst(rm) == xp) out.witnesses.push_back({f, lm, rm});
    }
  const std::size_t n = out.witnesses.size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = 1;
  for (MorId m = 0; m < hom.num_morphisms(); ++m) {
    ObjId f = hom.src(m), g = hom.dst(m);
    for (const auto& w : out.witnesses) {
      if (w.f != f) continue;
      MorId lg = la.compose(l.two_cell(a, b, m, y), w.l);
      for (const auto& v : out.witnesses) {
        if (v.f != g || v.l != lg) continue;
        MorId rf = ra.compose(v.r, r.two_cell(a, b, m, yp));
        // (lg, v.r) at g  ~  (w.l, rf) at f
        std::size_t p = out.index_of(v), q = out.index_of({f, w.l, rf});
        rel[p][q] = rel[q][p] = 1;
      }
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][j])
          for (std::size_t k = 0; k < n; ++k)
            if (rel[j][k] && !rel[i][k]) {
              rel[i][k] = rel[k][i] = 1;
              changed = true;
            }
  }
  out.label.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.label[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (rel[i][j]) {
        out.label[i] = j;
        break;
      }
  }
  return out;
}

std::size_t connected_components(const dopt::FinCat& c) {
  const std::size_t n = c.num_objects();
  std::vector<std::size_t> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (MorId m = 0; m < c.num_morphisms(); ++m) {
      std::size_t lo = std::min(comp[c.src(m)], comp[c.dst(m)]);
      for (ObjId e : {c.src(m), c.dst(m)})
        if (comp[e] != lo) {
          comp[e] = lo;
          changed = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (comp[comp[i]] != comp[i]) {
        comp[i] = comp[comp[i]];
        changed = true;
      }
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) k += comp[i] == i;
  return k;
}

}  // namespace oracle
