#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dopt/fincore.hpp"
#include "dopt/lenscalc.hpp"
#include "dopt/report.hpp"

namespace dopt {

// ---------------------------------------------------------------------------
// Limits and colimits of finite sets

/// {(x, y) : f(x) = g(y)}, numbered in lexicographic (x, y) order.
struct Pullback {
  FinSet p;
  FinFn p1;
  FinFn p2;
  /// Position of (x, y) in P, or kNone.
  std::size_t index(std::size_t x, std::size_t y) const { return lookup[x * width + y]; }

  std::size_t width = 0;
  std::vector<std::size_t> lookup;
};

/// Throws StructuralError unless f and g share a codomain.
Pullback pullback(const FinFn& f, const FinFn& g);

/// (X ⊔ Y)/(f(b) ~ g(b)); classes are numbered by their least member, with X
/// placed before Y.
struct Pushout {
  FinSet q;
  FinFn i1;
  FinFn i2;
};

/// Throws StructuralError unless f and g share a domain.
Pushout pushout(const FinFn& f, const FinFn& g);

// ---------------------------------------------------------------------------
// Dependent lenses

/// X → A ← X'
struct Cospan {
  FinFn leg;    // x: X → A
  FinFn leg_p;  // x': X' → A
  std::size_t x() const { return leg.dom.size; }
  std::size_t a() const { return leg.cod.size; }
  std::size_t xp() const { return leg_p.dom.size; }
  bool well_typed() const;
  /// X → 1 ← X'
  static Cospan over_point(std::size_t x, std::size_t xp);
};

/// X ← A → X'
struct Span {
  FinFn leg;    // A → X
  FinFn leg_p;  // A → X'
  std::size_t x() const { return leg.cod.size; }
  std::size_t a() const { return leg.dom.size; }
  std::size_t xp() const { return leg_p.cod.size; }
  bool well_typed() const;
  /// X ← 0 → X'
  static Span over_empty(std::size_t x, std::size_t xp);
};

/// get: X → Y and put: X ×_B Y' → X' over A, where X lies over B via y ∘ get.
struct DLensCanonical {
  FinFn get;
  FinFn put;
  friend bool operator==(const DLensCanonical&, const DLensCanonical&) = default;
};

/// match: Y' → X' and review: X → X' ⊔_B Y under A.
struct DPrismCanonical {
  FinFn match;
  FinFn review;
  friend bool operator==(const DPrismCanonical&, const DPrismCanonical&) = default;
};

/// A lens S → T presented over a span A ← M → B:
///   l = (m, get): X → M ×_B Y over A,  r: M ×_B Y' → X' over A.
struct LensWitness {
  FinFn to_a;  // M → A
  FinFn to_b;  // M → B
  FinFn m;
  FinFn get;
  FinFn r;
  std::size_t apex() const { return to_a.dom.size; }
  friend bool operator==(const LensWitness&, const LensWitness&) = default;
};

/// All (get, put), get in lexicographic order and put likewise within it.
std::vector<DLensCanonical> dlens_hom(const Cospan& s, const Cospan& t);
std::size_t dlens_hom_count(const Cospan& s, const Cospan& t);
/// Throws StructuralError when c is not a lens s → t.
void check_dlens(const Cospan& s, const Cospan& t, const DLensCanonical& c);

DLensCanonical dlens_identity(const Cospan& s);
/// c2 ∘ c1 for c1: s → t, c2: t → u. Throws StructuralError on ill-typed input.
DLensCanonical dlens_compose(const Cospan& s, const Cospan& t, const Cospan& u,
                             const DLensCanonical& c2, const DLensCanonical& c1);

/// put = r ∘ (m ×_B id). Throws StructuralError on ill-typed witnesses.
DLensCanonical dlens_canonicalize(const Cospan& s, const Cospan& t, const LensWitness& w);
/// The witness with M = X and m = id.
LensWitness dlens_normal_witness(const Cospan& s, const Cospan& t, const DLensCanonical& c);
/// Composite of witnesses over the composite span M ×_B N.
LensWitness compose_lens_witness(const Cospan& s, const Cospan& t, const Cospan& u,
                                 const LensWitness& w2, const LensWitness& w1);

/// One generating step for a span map φ: M → M'. Given (m, get) over M and r'
/// over M', returns the pair
///   (M', φ ∘ m, get, r')  ~  (M, m, get, r' ∘ (φ ×_B id)).
std::pair<LensWitness, LensWitness> lens_relation_step(const Cospan& s, const Cospan& t,
                                                        const LensWitness& over_m,
                                                        const FinFn& to_a2, const FinFn& to_b2,
                                                        const FinFn& phi, const FinFn& r2);

struct AuditOptions {
  std::size_t max_apex = 4;
  /// Backward maps per (span, forward pair) are enumerated when there are at
  /// most this many, otherwise this many are drawn.
  std::size_t sample = 16;
  std::uint64_t seed = 0;
};

struct AuditResult {
  ValidationReport report;
  std::size_t steps = 0;      // relation steps checked
  std::size_t witnesses = 0;  // witnesses checked for a path to normal form
  bool sampled = false;
};

using LensCanonicalizer =
    std::function<DLensCanonical(const Cospan&, const Cospan&, const LensWitness&)>;

/// Checks the canonicalizer against the generating relation for all spans over
/// (A, B) with apex ≤ max_apex. Laws: "soundness" (related witnesses agree),
/// "completeness" (each witness reaches its normal form in one step) and
/// "normal-form" (the M = X witness reproduces each enumerated lens).
AuditResult dlens_audit(const Cospan& s, const Cospan& t, const AuditOptions& opt = {},
                        const LensCanonicalizer& canon = dlens_canonicalize);

// ---------------------------------------------------------------------------
// Dependent prisms, by running the lens calculus in FinSet^op

std::vector<DPrismCanonical> dprism_hom(const Span& s, const Span& t);
std::size_t dprism_hom_count(const Span& s, const Span& t);
void check_dprism(const Span& s, const Span& t, const DPrismCanonical& c);
DPrismCanonical dprism_identity(const Span& s);
DPrismCanonical dprism_compose(const Span& s, const Span& t, const Span& u,
                               const DPrismCanonical& c2, const DPrismCanonical& c1);

/// A span X ← A → X', read as the cospan X' → A ← X of FinSet^op.
LensCalculus<Opposite<FinSetCat>>::Cospan as_opposite_cospan(const Span& s);

// ---------------------------------------------------------------------------
// Closed reduction for classical lenses (all bases a point)

/// Y' ▷ X' = X'^{Y'}, a function k: Y' → X' encoded by its table in base |X'|
/// with the first entry most significant. The adjunction is currying:
///   FinSet(M × Y', X') ≅ FinSet(M, X'^{Y'}).
struct CartesianClosed {
  std::size_t yp = 0;
  std::size_t xp = 0;

  std::size_t exponent() const;
  std::size_t eval(std::size_t k, std::size_t y) const;
  /// r: M × Y' → X' (element μ·|Y'| + y') to r̂: M → X'^{Y'}.
  FinFn transpose(const FinFn& r, std::size_t apex) const;
  FinFn untranspose(const FinFn& rhat) const;
};

/// Both triangle identities (transpose ∘ untranspose and the converse are
/// identities) and naturality in M for apexes up to max_apex.
ValidationReport check_closed_structure(const CartesianClosed& cs, std::size_t max_apex);

/// L(r̂) ∘ l: X → X'^{Y'} × Y, element k·|Y| + y. Throws StructuralError when
/// cs does not match the endpoints or the bases are not a point.
FinFn closed_reduce(const CartesianClosed& cs, const Cospan& s, const Cospan& t,
                    const LensWitness& w);

}  // namespace dopt
