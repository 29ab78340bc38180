#pragma once

#include <functional>
#include <vector>

#include "dopt/fincore.hpp"

namespace dopt {

// ---------------------------------------------------------------------------
// Monoidal categories and actions, delooped into one-object bicategories

/// A monoidal structure on a finite category. Tables:
///   tensor_obj[a*n + b], tensor_mor[m*M + k]
///   associator[(a*n + b)*n + c]: (a⊗b)⊗c → a⊗(b⊗c)
///   left_unitor[a]: I⊗a → a,  right_unitor[a]: a⊗I → a
struct MonoidalData {
  CatPtr cat;
  std::vector<ObjId> tensor_obj;
  std::vector<MorId> tensor_mor;
  ObjId unit = 0;
  std::vector<MorId> associator;
  std::vector<MorId> left_unitor;
  std::vector<MorId> right_unitor;

  ObjId tensor(ObjId a, ObjId b) const { return tensor_obj[a * cat->num_objects() + b]; }
  MorId tensor_arrow(MorId m, MorId k) const { return tensor_mor[m * cat->num_morphisms() + k]; }
};

/// Strict monoidal data with identity coherence cells.
MonoidalData strict_monoidal(const CatPtr& cat, std::vector<ObjId> tensor_obj,
                             std::vector<MorId> tensor_mor, ObjId unit);
/// Strict monoidal structure on a thin category; the morphism part is forced.
MonoidalData thin_monoidal(const CatPtr& cat, const std::function<ObjId(ObjId, ObjId)>& tensor,
                           ObjId unit);

/// One-object bicategory with hom-category m.cat and f;g = f⊗g.
/// The bicategory's left unitor f;id ⇒ f is the monoidal right unitor and
/// vice versa. Throws StructuralError if the result fails validation and
/// `check` is set.
BicatPtr deloop_monoidal(const MonoidalData& m, bool check = true);

/// An action of a monoidal category on a finite category C.
///   act_obj[f*nC + x] = f ▷ x,  act_mor[m*MC + u]
///   unit_iso[x]: x → I ▷ x
///   mult[(f*nM + g)*nC + x]: f ▷ (g ▷ x) → (f⊗g) ▷ x
struct ActionData {
  CatPtr cat;
  std::vector<ObjId> act_obj;
  std::vector<MorId> act_mor;
  std::vector<MorId> unit_iso;
  std::vector<MorId> mult;
};

ActionData strict_action(const MonoidalData& m, const CatPtr& cat, std::vector<ObjId> act_obj,
                         std::vector<MorId> act_mor);
ActionData thin_action(const MonoidalData& m, const CatPtr& cat,
                       const std::function<ObjId(ObjId, ObjId)>& act);

/// Indexed category over the delooping: f* = f ▷ −.
IndexedPtr action_indexed(const BicatPtr& deloop, const MonoidalData& m, const ActionData& a);

// ---------------------------------------------------------------------------
// Named finite instances

/// {0 ≤ 1} with tensor = meet and unit 1.
MonoidalData meet_semilattice();
/// The one-object, one-morphism monoidal category.
MonoidalData trivial_monoid();
/// Z/2 as a discrete monoidal category (tensor = xor).
MonoidalData discrete_z2();

/// Meet-semilattice acting on the chain {0 ≤ 1} by meet.
IndexedPtr semilattice_action();
/// Discrete Z/2 acting on the codiscrete 2-object category by swapping.
IndexedPtr z2_swap_action();

/// One object, one 1-cell, 2-cells Z/2. The associator is τ^assoc; with
/// assoc = 1 the pentagon and triangle fail.
BicatPtr bbz2(std::size_t assoc);

/// Apex size, left leg and right leg of a span A ← M → B.
struct SpanCell {
  std::size_t apex = 0;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  friend bool operator==(const SpanCell&, const SpanCell&) = default;
};

struct SpanBicategory {
  BicatPtr bicat;
  std::vector<std::vector<SpanCell>> cells;      // hom index, 1-cell
  std::vector<std::vector<FinFn>> span_maps;     // hom index, 2-cell
};

/// Spans of finite sets over bases 0..max_base with apex size ≤ max_apex;
/// 2-cells are span maps. Throws std::invalid_argument when the truncation
/// is not closed under composition or misses identity spans.
SpanBicategory span_bicategory(std::size_t max_base, std::size_t max_apex);

/// Slices FinSet/A over the span bicategory, truncated to carriers of size
/// ≤ max_size. f* for A ← M → B sends Y → B to M ×_B Y → A, with the
/// pullback in lexicographic order. Throws std::invalid_argument when some
/// f*Y exceeds max_size.
struct SliceIndexed {
  IndexedPtr indexed;
  std::vector<std::vector<FinFn>> legs;  // base object, fiber object: leg X → A
  std::vector<std::vector<FinFn>> maps;  // base object, fiber morphism
};
SliceIndexed slice_indexed(const SpanBicategory& spans, std::size_t max_size);

/// Base: the locally discrete bicategory of finset_skeleton(max_base).
/// Fiber over n is C^n; f* is precomposition with f.
IndexedPtr family_indexed(const CatPtr& c, std::size_t max_base);

// ---------------------------------------------------------------------------
// Weakening: tensor each fiber with an auxiliary category E and twist.

enum class Twist {
  /// E = codiscrete(2); every f* swaps the E-component; θ are the unique
  /// E-morphisms. Always coherent.
  Swap,
  /// E = Z/2; f* is the identity on E; every θ carries τ. Coherent unless
  /// some sites are flipped back to the identity.
  Sign,
};

struct ThetaSite {
  bool unit = false;  // theta_id at a, otherwise theta_comp at (a, b, c, f, g)
  ObjId a = 0, b = 0, c = 0;
  ObjId f = 0, g = 0;
};

IndexedPtr weaken(const IndexedCat& l, Twist t, const std::vector<ThetaSite>& flipped = {});

}  // namespace dopt
