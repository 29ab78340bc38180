#include "dopt/coend.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dopt/error.hpp"

namespace dopt {

UnionFind::UnionFind(std::size_t n) : parent_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(std::size_t x, std::size_t y) {
  std::size_t a = find(x), b = find(y);
  if (a == b) return false;
  if (b < a) std::swap(a, b);
  parent_[b] = a;
  return true;
}

Bifunctor TableBifunctor::view() const {
  const std::size_t n = index->num_objects();
  Bifunctor h;
  h.index = index;
  auto self = std::make_shared<const TableBifunctor>(*this);
  h.size = [self, n](ObjId j, ObjId k) { return self->sizes.at(j * n + k); };
  h.contra = [self, n](MorId m, ObjId k, std::size_t x) { return self->contra_table.at(m * n + k).at(x); };
  h.co = [self, n](MorId m, ObjId j, std::size_t x) { return self->co_table.at(m * n + j).at(x); };
  return h;
}

namespace {

std::string at(std::initializer_list<std::size_t> xs) {
  std::string s = "(";
  bool first = true;
  for (auto x : xs) {
    if (!first) s += ',';
    first = false;
    s += std::to_string(x);
  }
  return s + ")";
}

}  // namespace

ValidationReport validate_bifunctor(const Bifunctor& h) {
  ValidationReport r;
  if (!h.index || !h.size || !h.contra || !h.co) {
    r.structural("bifunctor", "missing index category or action");
    return r;
  }
  const FinCat& c = *h.index;
  const std::size_t n = c.num_objects();
  try {
    for (MorId m = 0; m < c.num_morphisms(); ++m)
      for (ObjId k = 0; k < n; ++k) {
        for (std::size_t x = 0; x < h.size(c.dst(m), k); ++x)
          if (h.contra(m, k, x) >= h.size(c.src(m), k))
            r.structural("bifunctor", "contra image out of range at " + at({m, k, x}));
        for (std::size_t x = 0; x < h.size(k, c.src(m)); ++x)
          if (h.co(m, k, x) >= h.size(k, c.dst(m)))
            r.structural("bifunctor", "co image out of range at " + at({m, k, x}));
      }
  } catch (const std::out_of_range&) {
    r.structural("bifunctor", "action table too short");
  }
  if (r.has_structural()) return r;

  for (ObjId a = 0; a < n; ++a)
    for (ObjId k = 0; k < n; ++k) {
      for (std::size_t x = 0; x < h.size(a, k); ++x) {
        if (h.contra(c.identity(a), k, x) != x) r.law("contra-identity", "at " + at({a, k, x}));
        if (h.co(c.identity(k), a, x) != x) r.law("co-identity", "at " + at({a, k, x}));
      }
    }
  for (MorId m1 = 0; m1 < c.num_morphisms(); ++m1)
    for (ObjId t = 0; t < n; ++t)
      for (MorId m2 : c.hom(c.dst(m1), t)) {
        MorId m21 = c.compose(m2, m1);
        for (ObjId k = 0; k < n; ++k) {
          for (std::size_t x = 0; x < h.size(t, k); ++x)
            if (h.contra(m21, k, x) != h.contra(m1, k, h.contra(m2, k, x)))
              r.law("contra-composition", "at " + at({m2, m1, k, x}));
          for (std::size_t x = 0; x < h.size(k, c.src(m1)); ++x)
            if (h.co(m21, k, x) != h.co(m2, k, h.co(m1, k, x)))
              r.law("co-composition", "at " + at({m2, m1, k, x}));
        }
      }
  for (MorId m = 0; m < c.num_morphisms(); ++m)
    for (MorId k = 0; k < c.num_morphisms(); ++k)
      for (std::size_t x = 0; x < h.size(c.dst(m), c.src(k)); ++x) {
        auto lhs = h.co(k, c.src(m), h.contra(m, c.src(k), x));
        auto rhs = h.contra(m, c.dst(k), h.co(k, c.dst(m), x));
        if (lhs != rhs) r.law("actions-commute", "at " + at({m, k, x}));
      }
  return r;
}

CoendElement CoendResult::element(std::size_t flat_index) const {
  auto it = std::upper_bound(offsets.begin(), offsets.end(), flat_index);
  ObjId j = static_cast<ObjId>(it - offsets.begin()) - 1;
  return {j, flat_index - offsets[j]};
}

std::vector<CoendElement> CoendResult::members(std::size_t cls) const {
  std::vector<CoendElement> out;
  for (std::size_t i = 0; i < class_of_flat.size(); ++i)
    if (class_of_flat[i] == cls) out.push_back(element(i));
  return out;
}

CoendResult coend(const Bifunctor& h) {
  const FinCat& c = *h.index;
  const std::size_t n = c.num_objects();
  CoendResult out;
  out.offsets.resize(n + 1);
  for (ObjId j = 0; j < n; ++j) out.offsets[j + 1] = out.offsets[j] + h.size(j, j);
  UnionFind uf(out.offsets[n]);
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    ObjId j = c.src(m), j2 = c.dst(m);
    for (std::size_t x = 0; x < h.size(j2, j); ++x)
      uf.unite(out.flat(j, h.contra(m, j, x)), out.flat(j2, h.co(m, j2, x)));
  }
  out.class_of_flat.assign(out.offsets[n], kNone);
  for (std::size_t i = 0; i < out.offsets[n]; ++i) {
    std::size_t root = uf.find(i);
    if (root == i) {
      out.class_of_flat[i] = out.canonical.size();
      out.canonical.push_back(out.element(i));
    } else {
      out.class_of_flat[i] = out.class_of_flat[root];
    }
  }
  return out;
}

bool cowedge_check(const Bifunctor& h, const std::vector<std::size_t>& q) {
  const FinCat& c = *h.index;
  const std::size_t n = c.num_objects();
  std::vector<std::size_t> offsets(n + 1);
  for (ObjId j = 0; j < n; ++j) offsets[j + 1] = offsets[j] + h.size(j, j);
  if (q.size() != offsets[n])
    throw StructuralError("cowedge_check: map has " + std::to_string(q.size()) +
                          " entries, diagonal has " + std::to_string(offsets[n]));
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    ObjId j = c.src(m), j2 = c.dst(m);
    for (std::size_t x = 0; x < h.size(j2, j); ++x)
      if (q[offsets[j] + h.contra(m, j, x)] != q[offsets[j2] + h.co(m, j2, x)]) return false;
  }
  return true;
}

}  // namespace dopt
