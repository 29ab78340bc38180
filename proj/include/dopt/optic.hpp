#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "dopt/coend.hpp"
#include "dopt/fincore.hpp"

namespace dopt {

/// (X, X')^A with X in L^A and X' in R^A.
struct OpticObject {
  ObjId a = 0;
  ObjId x = 0;
  ObjId xp = 0;
  friend bool operator==(const OpticObject&, const OpticObject&) = default;
  friend auto operator<=>(const OpticObject&, const OpticObject&) = default;
};

/// A representative f: A → B with l: X → f*Y in L^A and r: f*Y' → X' in R^A.
struct Witness {
  ObjId f = 0;
  MorId l = 0;
  MorId r = 0;
  friend bool operator==(const Witness&, const Witness&) = default;
  friend auto operator<=>(const Witness&, const Witness&) = default;
};

struct OpticMorphism {
  OpticObject src;
  OpticObject dst;
  std::size_t cls = 0;
  Witness witness;
};

/// The category of dependent optics for indexed categories L and R over a
/// common finite bicategory. Hom-sets are computed lazily and cached.
class OpticCategory {
 public:
  /// Throws StructuralError if L and R do not share a base.
  OpticCategory(IndexedPtr l, IndexedPtr r);

  const IndexedCat& left() const { return *l_; }
  const IndexedCat& right() const { return *r_; }
  const IndexedPtr& left_ptr() const { return l_; }
  const IndexedPtr& right_ptr() const { return r_; }
  const FinBicategory& base() const { return *l_->base; }

  std::vector<OpticObject> objects() const;
  std::vector<OpticObject> objects_over(ObjId a) const;
  bool valid_object(const OpticObject& s) const;

  /// One morphism per class, carrying the canonical witness, in class order.
  std::vector<OpticMorphism> optic_hom(const OpticObject& s, const OpticObject& t) const;
  std::size_t hom_size(const OpticObject& s, const OpticObject& t) const;
  /// The coend presentation of hom(s, t).
  const CoendResult& hom_coend(const OpticObject& s, const OpticObject& t) const;
  /// Element (j, x) of the diagonal decoded as a witness, and back.
  Witness witness_of(const OpticObject& s, const OpticObject& t, const CoendElement& e) const;
  CoendElement element_of(const OpticObject& s, const OpticObject& t, const Witness& w) const;
  /// All witnesses of the given class, in flattened order.
  std::vector<Witness> class_witnesses(const OpticObject& s, const OpticObject& t,
                                       std::size_t cls) const;

  /// Throws StructuralError if the witness is ill-typed.
  OpticMorphism make(const OpticObject& s, const OpticObject& t, const Witness& w) const;
  Witness canonical_witness(const OpticObject& s, const OpticObject& t, std::size_t cls) const;
  OpticMorphism morphism(const OpticObject& s, const OpticObject& t, std::size_t cls) const;

  OpticMorphism optic_identity(const OpticObject& s) const;
  /// m2 ∘ m1. Throws StructuralError when dst(m1) ≠ src(m2).
  OpticMorphism optic_compose(const OpticMorphism& m2, const OpticMorphism& m1) const;
  /// Witness-level composite, before taking classes.
  Witness compose_witness(const OpticObject& s, const OpticObject& t, const OpticObject& u,
                          const Witness& w2, const Witness& w1) const;
  /// Throws StructuralError on endpoint mismatch.
  bool optic_equal(const OpticMorphism& m1, const OpticMorphism& m2) const;

  /// Unit and associativity laws over all composable tuples, and independence
  /// of composites from the chosen witnesses. With sample > 0, at most that
  /// many tuples of each kind are drawn with the given seed.
  ValidationReport check_category_laws(std::size_t sample = 0, std::uint64_t seed = 0) const;

 private:
  struct HomData;
  const HomData& hom_data(const OpticObject& s, const OpticObject& t) const;

  IndexedPtr l_;
  IndexedPtr r_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<OpticObject, OpticObject>, std::shared_ptr<HomData>> cache_;
};

}  // namespace dopt
