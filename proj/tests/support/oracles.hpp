#pragma once

// Independent reference implementations used by the unit tests and the
// acceptance suite. Nothing here calls the library code it is compared with.

#include <cstdint>
#include <random>
#include <vector>

#include "dopt/coend.hpp"
#include "dopt/fincore.hpp"

namespace oracle {

using dopt::CatPtr;
using dopt::ObjId;
using dopt::MorId;

/// Random small category with at most max_objects objects. Families: discrete,
/// chains, codiscrete, cyclic groups, cyclic monoids, random posets, the
/// parallel-arrows quiver and small finite-set skeletons.
CatPtr random_category(std::mt19937_64& rng, std::size_t max_objects);

/// Random set-valued bifunctor over a random category, built as a disjoint
/// union of hom, representable-product and constant terms with every value
/// set of size at most max_value.
dopt::TableBifunctor random_bifunctor(std::mt19937_64& rng, std::size_t max_objects,
                                      std::size_t max_value);

/// Partition of the diagonal by fixed-point closure of the generating relation
/// as a boolean matrix. Returns a label per flattened element (least member).
std::vector<std::size_t> closure_partition(const dopt::TableBifunctor& h);

/// True iff the two labelings induce the same partition.
bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

}  // namespace oracle

namespace oracle {

/// A witness (f, l, r) for hom((X,X')^A, (Y,Y')^B), enumerated directly from
/// the fiber tables.
struct RawWitness {
  ObjId f;
  MorId l;
  MorId r;
  bool operator==(const RawWitness&) const = default;
};

struct RawHom {
  std::vector<RawWitness> witnesses;
  std::vector<std::size_t> label;  // per witness, least related witness index
  std::size_t classes() const;
  std::size_t index_of(const RawWitness& w) const;
  bool related(const RawWitness& a, const RawWitness& b) const;
};

/// Optic hom by enumeration of all witnesses and closure of the generating
/// relation (L(m)∘l, r) ~ (l, r∘R(m)).
RawHom optic_hom_closure(const dopt::IndexedCat& l, const dopt::IndexedCat& r, ObjId a, ObjId x,
                         ObjId xp, ObjId b, ObjId y, ObjId yp);

/// Connected components of a finite category's underlying graph.
std::size_t connected_components(const dopt::FinCat& c);

}  // namespace oracle

namespace oracle {

/// Lenses between cospans listed by brute force: all tables get: X → Y and
/// put over the pairs (x, y') with y(get x) = y'(y'), kept when x'(put) = x.
/// Returned as (get table, put table) in lexicographic order.
struct RawLens {
  std::vector<std::size_t> get;
  std::vector<std::size_t> put;
  bool operator==(const RawLens&) const = default;
};
std::vector<RawLens> brute_lenses(const std::vector<std::size_t>& x, const std::vector<std::size_t>& xp,
                                  const std::vector<std::size_t>& y, const std::vector<std::size_t>& yp,
                                  std::size_t a, std::size_t b);

/// Prism count straight from the formula ⊔_{Y'→X'} A/C(X, X' ⊔_B Y), with the
/// pushout computed by flood fill. Legs are A → X, A → X', B → Y, B → Y'.
std::size_t brute_prism_count(const std::vector<std::size_t>& ax, const std::vector<std::size_t>& axp,
                              std::size_t nx, std::size_t nxp, const std::vector<std::size_t>& by,
                              const std::vector<std::size_t>& byp, std::size_t ny, std::size_t nyp);

/// Classical lens composite over a point: put(x, z') = put1(x, put2(get1 x, z')).
RawLens classical_compose(const RawLens& l2, const RawLens& l1, std::size_t nyp, std::size_t nzp);

/// All tables n → k in lexicographic order.
std::vector<std::vector<std::size_t>> all_tables(std::size_t n, std::size_t k);

}  // namespace oracle
