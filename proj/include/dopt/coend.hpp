#pragma once

#include <functional>
#include <vector>

#include "dopt/fincore.hpp"

namespace dopt {

/// Union-find over 0..n-1. The root of every class is its least member.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0);
  std::size_t find(std::size_t x);
  /// Returns true if x and y were in different classes.
  bool unite(std::size_t x, std::size_t y);
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

/// A bifunctor H: J^op × J → FinSet over a finite category J.
///   contra(m, k): H(j', k) → H(j, k)  for m: j → j'
///   co(m, j):     H(j, k) → H(j, k')  for m: k → k'
struct Bifunctor {
  CatPtr index;
  std::function<std::size_t(ObjId j, ObjId k)> size;
  std::function<std::size_t(MorId m, ObjId k, std::size_t x)> contra;
  std::function<std::size_t(MorId m, ObjId j, std::size_t x)> co;
};

/// A bifunctor given by explicit tables, contra[m*n + k] and co[m*n + j].
struct TableBifunctor {
  CatPtr index;
  std::vector<std::size_t> sizes;                      // j*n + k
  std::vector<std::vector<std::size_t>> contra_table;  // m*n + k
  std::vector<std::vector<std::size_t>> co_table;      // m*n + j

  Bifunctor view() const;
};

ValidationReport validate_bifunctor(const Bifunctor& h);

struct CoendElement {
  ObjId j = 0;
  std::size_t x = 0;
  friend bool operator==(const CoendElement&, const CoendElement&) = default;
  friend auto operator<=>(const CoendElement&, const CoendElement&) = default;
};

/// Quotient of the diagonal ⊔_j H(j, j). Elements are flattened in
/// lexicographic (j, x) order; classes are numbered in the order of their
/// least members, which are also the canonical representatives.
struct CoendResult {
  std::vector<std::size_t> offsets;  // per j; offsets[J] = total
  std::vector<std::size_t> class_of_flat;
  std::vector<CoendElement> canonical;

  std::size_t num_classes() const { return canonical.size(); }
  std::size_t flat(ObjId j, std::size_t x) const { return offsets[j] + x; }
  std::size_t class_of(ObjId j, std::size_t x) const { return class_of_flat[flat(j, x)]; }
  CoendElement element(std::size_t flat_index) const;
  std::vector<CoendElement> members(std::size_t cls) const;
};

CoendResult coend(const Bifunctor& h);

/// True iff q (indexed by flattened diagonal elements) coequalizes the two
/// actions. Throws StructuralError if q has the wrong length.
bool cowedge_check(const Bifunctor& h, const std::vector<std::size_t>& q);

}  // namespace dopt
