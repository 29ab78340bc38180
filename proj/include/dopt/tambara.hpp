#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dopt/optic.hpp"
#include "dopt/report.hpp"

namespace dopt {

/// A function between finite sets given by its table of images.
using Table = std::vector<std::size_t>;

/// A FinSet-valued Tambara representation over the fibers of L and R.
///
/// P^A(l, r) for l: X₀ → X₁ in L^A and r: X₁' → X₀' in R^A is the map
/// P^A(X₁, X₁') → P^A(X₀, X₀'). For f: A → B, (ζ_f)_{Y,Y'} maps
/// P^B(Y, Y') → P^A(f*Y, f*Y').
struct TambaraRep {
  IndexedPtr l;
  IndexedPtr r;
  std::vector<std::vector<std::size_t>> sizes;  // A, x * |ob R^A| + x'
  std::vector<std::vector<Table>> action;       // A, lm * |mor R^A| + rm
  std::vector<std::vector<std::vector<Table>>> zeta;  // hom index, f, y * |ob R^B| + y'

  std::size_t size(ObjId a, ObjId x, ObjId xp) const {
    return sizes[a][x * r->fiber(a).num_objects() + xp];
  }
  const Table& act(ObjId a, MorId lm, MorId rm) const {
    return action[a][lm * r->fiber(a).num_morphisms() + rm];
  }
  const Table& zeta_at(ObjId a, ObjId b, ObjId f, ObjId y, ObjId yp) const {
    return zeta[l->base->hom_index(a, b)][f][y * r->fiber(b).num_objects() + yp];
  }
  Table& zeta_at(ObjId a, ObjId b, ObjId f, ObjId y, ObjId yp) {
    return zeta[l->base->hom_index(a, b)][f][y * r->fiber(b).num_objects() + yp];
  }

  friend bool operator==(const TambaraRep& p, const TambaraRep& q) {
    return p.sizes == q.sizes && p.action == q.action && p.zeta == q.zeta;
  }
};

/// Components η^A_{X,X'}: P^A(X, X') → Q^A(X, X'), indexed like TambaraRep::sizes.
struct TambaraMorphism {
  std::vector<std::vector<Table>> components;
};

/// Laws: "functoriality", "naturality" (of each ζ_f), "extranaturality"
/// (P^A(id, R(m))∘ζ_f = P^A(L(m), id)∘ζ_g for m: f ⇒ g), "identity-law",
/// "composition-law". Malformed tables are reported as structural issues.
ValidationReport validate_tambara(const TambaraRep& p);

/// Laws: "naturality" (each η^A natural in (X, X')) and "tambara-morphism"
/// (η^A_{f*Y,f*Y'}∘ζ_f = ζ'_f∘η^B).
ValidationReport validate_tambara_morphism(const TambaraRep& p, const TambaraRep& q,
                                           const TambaraMorphism& eta);

/// Every P^A(X, X') = n, every map the identity (n ≤ 1 makes ζ unique).
TambaraRep constant_tambara(const IndexedPtr& l, const IndexedPtr& r, std::size_t n);

/// ι^A(l, r) = ⟨(θ_A)_{X₁}∘l | r∘(θ'_A⁻¹)_{X₁'}⟩ with representative id_A.
OpticMorphism iota_apply(const OpticCategory& cat, ObjId a, MorId l, MorId r);
/// ⟨id_{f*Y} | id_{f*Y'}⟩: (f*Y, f*Y')^A → (Y, Y')^B with representative f.
OpticMorphism zeta_optic(const OpticCategory& cat, ObjId a, ObjId b, ObjId f, ObjId y, ObjId yp);

/// Laws "iota-functor", "iota-right", "iota-left", and for ι-op as a Tambara
/// representation "iota-natural", "iota-extranatural", "iota-identity",
/// "iota-composition", over all enumerated witnesses and fiber morphisms.
ValidationReport check_iota(const OpticCategory& cat);

// ---------------------------------------------------------------------------
// Presheaves on the optic category

/// Object and class-level tables of Optic and its composition.
struct OpticTable {
  std::vector<OpticObject> objects;
  std::map<OpticObject, std::size_t> index;
  std::vector<std::size_t> hom_sizes;              // s * n + t
  std::vector<std::size_t> identity;               // per object, class of the identity
  std::vector<std::vector<std::size_t>> compose;   // (s*n + t)*n + u, c2 * |hom(s,t)| + c1

  std::size_t n() const { return objects.size(); }
  std::size_t hom(std::size_t s, std::size_t t) const { return hom_sizes[s * n() + t]; }
  std::size_t comp(std::size_t s, std::size_t t, std::size_t u, std::size_t c2, std::size_t c1) const {
    return compose[(s * n() + t) * n() + u][c2 * hom(s, t) + c1];
  }
};

OpticTable optic_table(const OpticCategory& cat);

/// F: Optic^op → FinSet. action[s * n + t][cls] is F(m): F(t) → F(s).
struct Presheaf {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<Table>> action;

  friend bool operator==(const Presheaf&, const Presheaf&) = default;
};

/// Laws "presheaf-identity" and "presheaf-composition".
ValidationReport validate_presheaf(const OpticTable& t, const Presheaf& f);

/// Components η_S: F(S) → G(S), in object order.
using PresheafMorphism = std::vector<Table>;
/// Law "naturality": G(m)∘η_T = η_S∘F(m).
ValidationReport validate_presheaf_morphism(const OpticTable& t, const Presheaf& f, const Presheaf& g,
                                            const PresheafMorphism& eta);

/// F(S) = hom(S, T), acting by precomposition.
Presheaf representable(const OpticTable& t, const OpticObject& target);
Presheaf constant_presheaf(const OpticTable& t, std::size_t n);

/// P^A = F∘ι^A-op and ζ_f = F(⟨id|id⟩). Throws StructuralError if F fails
/// validate_presheaf.
TambaraRep encode_presheaf(const OpticCategory& cat, const OpticTable& t, const Presheaf& f);
/// F((X,X')^A) = P^A(X, X') and F(⟨l|r⟩ over f) = P^A(l, r)∘(ζ_f)_{Y,Y'},
/// computed on every witness of every class. Throws WitnessDependenceError
/// when two witnesses of one class disagree, StructuralError on malformed P.
Presheaf decode_tambara(const OpticCategory& cat, const OpticTable& t, const TambaraRep& p);

/// η^A_{X,X'} = η̃_{(X,X')^A}, and back.
TambaraMorphism tambara_morphism_of(const OpticTable& t, const TambaraRep& p,
                                    const PresheafMorphism& eta);
PresheafMorphism presheaf_morphism_of(const OpticTable& t, const TambaraRep& p, const TambaraMorphism& eta);

/// Representables, constants of size 0, 1, 2, and every single-point change
/// of one morphism table of those that stays functorial, without duplicates.
std::vector<Presheaf> generated_family(const OpticTable& t);

struct RoundtripOptions {
  /// Morphism enumeration is exhaustive for pairs with at most this many
  /// component families; larger pairs are skipped.
  std::size_t max_families = 4096;
};

struct RoundtripResult {
  ValidationReport report;
  std::size_t presheaves = 0;
  std::size_t mutations = 0;
  std::size_t morphism_pairs = 0;
  std::size_t families = 0;
  std::size_t natural = 0;
};

/// Over the generated family: "encode-valid", "decode-encode", "encode-decode",
/// "morphism-bijection" (a family of components is a presheaf morphism iff it
/// is a Tambara morphism between the encodings, and the two translations are
/// mutually inverse) and "separation" (each representable's encoding
/// distinguishes the classes of hom(S, T)).
RoundtripResult roundtrip_check(const OpticCategory& cat, const RoundtripOptions& opt = {});

}  // namespace dopt
