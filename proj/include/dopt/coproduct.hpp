#pragma once

#include <vector>

#include "dopt/finset.hpp"
#include "dopt/instances.hpp"
#include "dopt/optic.hpp"
#include "dopt/report.hpp"

namespace dopt {

/// A coproduct A = ⊔ A_i in the base with injection 1-cells ι_i: A_i → A.
struct BaseCoproductData {
  std::vector<ObjId> components;
  ObjId coproduct = 0;
  std::vector<ObjId> injections;  // ι_i as an object of hom(A_i, A)
};

/// Laws: "injection" (typing), "base-coproduct" (precomposition with the ι_i
/// is an equivalence B(A, C) → Π B(A_i, C) for every C), "comparison-L" and
/// "comparison-R" (the ι_i* exhibit fiber(A) ≃ Π fiber(A_i)).
ValidationReport validate_coproduct_data(const IndexedCat& l, const IndexedCat& r,
                                         const BaseCoproductData& d);

/// The functor fiber(A) → Π_i fiber(A_i), x ↦ (ι_i* x), into the iterated
/// product starting from the terminal category.
FinFunctor comparison_functor(const IndexedCat& l, const BaseCoproductData& d);

/// Coproduct data in the skeleton base of family_indexed: A = Σ sizes with
/// offset inclusions. Throws std::invalid_argument if A exceeds max_base.
BaseCoproductData family_coproduct_data(std::size_t max_base, const std::vector<std::size_t>& sizes);
/// The same in a span bicategory, with injections A_i ← A_i → A.
BaseCoproductData span_coproduct_data(const SpanBicategory& spans, const std::vector<std::size_t>& sizes);

struct OpticCoproduct {
  OpticObject object;
  std::vector<OpticMorphism> injections;
};

/// (X, X')^A with ι_i*X ≅ X_i and ι_i*X' ≅ X'_i, choosing the least X with
/// ι_i*X = X_i on the nose when one exists. Throws StructuralError when d
/// fails validation or the family does not live over the components.
OpticCoproduct optic_coproduct(const OpticCategory& cat, const std::vector<OpticObject>& family,
                               const BaseCoproductData& d);

/// The unique optic out of the coproduct restricting to each m_i. Throws
/// StructuralError when there is no mediator or more than one.
OpticMorphism copair(const OpticCategory& cat, const OpticCoproduct& cp, const OpticObject& target,
                     const std::vector<OpticMorphism>& ms);

/// Restriction hom(⊔S_i, T) → Π hom(S_i, T) is a bijection for every target.
/// Law "universal-property".
ValidationReport check_coproduct_universal(const OpticCategory& cat, const OpticCoproduct& cp,
                                           const std::vector<OpticObject>& family,
                                           const std::vector<OpticObject>& targets);

// ---------------------------------------------------------------------------
// Dependent lenses

struct DLensCoproduct {
  Cospan sum;
  std::vector<DLensCanonical> injections;
};

/// Componentwise disjoint union of X, A and X' with offset indexing.
DLensCoproduct dlens_coproduct(const std::vector<Cospan>& family);

/// Restriction along the injections is a bijection onto Π hom(S_i, T).
ValidationReport check_dlens_coproduct(const DLensCoproduct& cp, const std::vector<Cospan>& family,
                                       const std::vector<Cospan>& targets);

/// FinSet/(A₁ ⊔ A₂) ≅ FinSet/A₁ × FinSet/A₂ on carriers of size ≤ max_size.
/// Laws: "slice-objects" (splitting then summing is the identity on pairs and
/// an isomorphism over the base on single objects) and "slice-morphisms"
/// (restriction is a bijection on hom-sets).
ValidationReport check_slice_decomposition(std::size_t a1, std::size_t a2, std::size_t max_size);

}  // namespace dopt
