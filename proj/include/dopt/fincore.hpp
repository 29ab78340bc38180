#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dopt/report.hpp"

namespace dopt {

using ObjId = std::size_t;
using MorId = std::size_t;

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// ---------------------------------------------------------------------------
// Finite sets and functions

struct FinSet {
  std::size_t size = 0;
  friend bool operator==(const FinSet&, const FinSet&) = default;
};

/// A function between finite sets, stored as its table of images.
struct FinFn {
  FinSet dom;
  FinSet cod;
  std::vector<std::size_t> table;

  std::size_t operator()(std::size_t x) const { return table[x]; }
  bool well_typed() const;

  static FinFn identity(std::size_t n);
  static FinFn constant(std::size_t dom, std::size_t cod, std::size_t value);

  friend bool operator==(const FinFn&, const FinFn&) = default;
};

/// g ∘ f
FinFn compose(const FinFn& g, const FinFn& f);

/// Calls `visit` on every function dom → cod in lexicographic order of tables
/// (first entry most significant). Stops early if `visit` returns false.
void for_each_function(std::size_t dom, std::size_t cod,
                       const std::function<bool(const FinFn&)>& visit);

/// Number of functions dom → cod, or nullopt on overflow.
std::optional<std::size_t> count_functions(std::size_t dom, std::size_t cod);

// ---------------------------------------------------------------------------
// Finite categories

struct MorphismSpec {
  ObjId src = 0;
  ObjId dst = 0;
};

struct CompositionEntry {
  MorId g;    // second
  MorId f;    // first
  MorId gof;  // result
};

/// A finite category given by explicit tables. Construction never fails:
/// malformed input is kept and reported by validate_fincat.
class FinCat {
 public:
  FinCat() = default;
  FinCat(std::size_t num_objects, std::vector<MorphismSpec> morphisms,
         std::vector<MorId> identities, const std::vector<CompositionEntry>& compositions);

  /// Builds the composition table by calling `compose(g, f)` on every
  /// composable pair.
  static FinCat from_rule(std::size_t num_objects, std::vector<MorphismSpec> morphisms,
                          std::vector<MorId> identities,
                          const std::function<MorId(MorId g, MorId f)>& compose);

  std::size_t num_objects() const { return num_objects_; }
  std::size_t num_morphisms() const { return morphisms_.size(); }
  ObjId src(MorId m) const { return morphisms_[m].src; }
  ObjId dst(MorId m) const { return morphisms_[m].dst; }
  MorId identity(ObjId a) const { return identities_[a]; }
  bool is_identity(MorId m) const;

  /// g ∘ f; throws StructuralError when the pair is not composable or the
  /// table has no entry.
  MorId compose(MorId g, MorId f) const;
  std::optional<MorId> try_compose(MorId g, MorId f) const;

  const std::vector<MorId>& hom(ObjId a, ObjId b) const { return homs_[a * num_objects_ + b]; }
  /// Position of m inside hom(src m, dst m).
  std::size_t hom_position(MorId m) const { return hom_position_[m]; }

  std::optional<MorId> inverse(MorId m) const;
  bool is_iso(MorId m) const { return inverse(m).has_value(); }
  std::optional<MorId> find_iso(ObjId a, ObjId b) const;

  const std::vector<MorphismSpec>& morphisms() const { return morphisms_; }
  const std::vector<MorId>& identities() const { return identities_; }
  /// Composition entries in (g, f) order, including malformed ones.
  std::vector<CompositionEntry> composition_entries() const;
  const std::vector<std::string>& construction_errors() const { return construction_errors_; }

  friend bool operator==(const FinCat& a, const FinCat& b);

 private:
  void build_indices();

  std::size_t num_objects_ = 0;
  std::vector<MorphismSpec> morphisms_;
  std::vector<MorId> identities_;
  std::vector<MorId> comp_;  // dense, comp_[g * M + f]
  std::vector<std::vector<MorId>> homs_;
  std::vector<std::size_t> hom_position_;
  std::vector<MorId> inverse_;
  std::vector<std::string> construction_errors_;
};

using CatPtr = std::shared_ptr<const FinCat>;

struct FinFunctor {
  CatPtr src;
  CatPtr dst;
  std::vector<ObjId> obj_map;
  std::vector<MorId> mor_map;

  ObjId obj(ObjId a) const { return obj_map[a]; }
  MorId mor(MorId m) const { return mor_map[m]; }

  static FinFunctor identity(const CatPtr& cat);
  friend bool operator==(const FinFunctor& a, const FinFunctor& b) {
    return a.obj_map == b.obj_map && a.mor_map == b.mor_map;
  }
};

/// G ∘ F
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);

struct FinNatTrans {
  FinFunctor src;
  FinFunctor dst;
  std::vector<MorId> components;  // per object of src.src

  MorId at(ObjId a) const { return components[a]; }
  friend bool operator==(const FinNatTrans& a, const FinNatTrans& b) {
    return a.components == b.components;
  }
};

FinNatTrans identity_transformation(const FinFunctor& f);

// ---------------------------------------------------------------------------
// Standard small categories

CatPtr terminal_category();
CatPtr discrete_category(std::size_t n);
/// Chain 0 ≤ 1 ≤ … ≤ n-1 as a thin category.
CatPtr chain_category(std::size_t n);
/// n objects, exactly one morphism between any two.
CatPtr codiscrete_category(std::size_t n);
/// One object whose morphisms are the cyclic group Z/n (morphism k ↦ +k).
CatPtr cyclic_group_category(std::size_t n);
/// Skeleton of finite sets of size 0..max_size with all functions.
/// Morphism ids enumerate (src, dst, table) lexicographically.
CatPtr finset_skeleton(std::size_t max_size);
/// Table of the skeleton morphism with the given source, target and table.
MorId finset_skeleton_morphism(const FinCat& skeleton, const FinFn& fn);
FinFn finset_skeleton_function(const FinCat& skeleton, MorId m);

/// Product category; object (a, b) has id a * |ob D| + b, morphism (m, n)
/// has id m * |mor D| + n.
CatPtr product_category(const FinCat& c, const FinCat& d);
/// c^n as iterated product (terminal for n = 0); object tuples are encoded
/// in base |ob c| with the first factor most significant.
CatPtr power_category(const CatPtr& c, std::size_t n);

// ---------------------------------------------------------------------------
// Finite bicategories

/// Horizontal composition on one triple of objects (A, B, C):
/// obj[f * |ob B(B,C)| + g] = f ; g (g ∘ f), likewise for 2-cells.
struct HComp {
  std::vector<ObjId> obj;
  std::vector<MorId> mor;
};

/// A bicategory with finitely many objects and finite hom-categories.
/// 1-cells are objects of hom(A, B); composition is written diagrammatically,
/// hcomp(f, g) = f ; g for f: A → B and g: B → C.
/// Coherence 2-cells:
///   associator  (f;g);h ⇒ f;(g;h)
///   left unitor f;id_B ⇒ f
///   right unitor id_A;f ⇒ f
struct FinBicategory {
  std::size_t num_objects = 0;
  std::vector<CatPtr> homs;                       // A*n + B
  std::vector<ObjId> units;                       // A ↦ object of hom(A, A)
  std::vector<HComp> hcomps;                      // (A*n + B)*n + C
  std::vector<std::vector<MorId>> associators;    // ((A*n+B)*n+C)*n+D, (f*ng+g)*nh+h
  std::vector<std::vector<MorId>> left_unitors;   // A*n + B, per f
  std::vector<std::vector<MorId>> right_unitors;  // A*n + B, per f

  std::size_t hom_index(ObjId a, ObjId b) const { return a * num_objects + b; }
  std::size_t triple_index(ObjId a, ObjId b, ObjId c) const {
    return (a * num_objects + b) * num_objects + c;
  }
  std::size_t quad_index(ObjId a, ObjId b, ObjId c, ObjId d) const {
    return triple_index(a, b, c) * num_objects + d;
  }
  const FinCat& hom(ObjId a, ObjId b) const { return *homs[hom_index(a, b)]; }
  ObjId unit(ObjId a) const { return units[a]; }
  ObjId hcomp(ObjId a, ObjId b, ObjId c, ObjId f, ObjId g) const;
  MorId hcomp_mor(ObjId a, ObjId b, ObjId c, MorId m, MorId n) const;
  MorId associator(ObjId a, ObjId b, ObjId c, ObjId d, ObjId f, ObjId g, ObjId h) const;
  MorId left_unitor(ObjId a, ObjId b, ObjId f) const {
    return left_unitors[hom_index(a, b)][f];
  }
  MorId right_unitor(ObjId a, ObjId b, ObjId f) const {
    return right_unitors[hom_index(a, b)][f];
  }
};

using BicatPtr = std::shared_ptr<const FinBicategory>;

/// A one-object bicategory with hom-category `c` is built by deloop_monoidal;
/// this builds the locally discrete bicategory of a 1-category.
BicatPtr locally_discrete(const CatPtr& c);

// ---------------------------------------------------------------------------
// Indexed categories (pseudofunctors B^op → Cat)

/// Pseudofunctor data. For a 1-cell f: A → B, pull gives f*: fiber(B) → fiber(A);
/// a 2-cell m: f ⇒ g gives a transformation f* ⇒ g*. Coherence isomorphisms:
///   theta_id[A]:     id ⇒ (id_A)*
///   theta_comp(f,g): f* ∘ g* ⇒ (f;g)*
struct IndexedCat {
  BicatPtr base;
  std::vector<CatPtr> fibers;
  std::vector<std::vector<FinFunctor>> pull;          // hom index, 1-cell
  std::vector<std::vector<FinNatTrans>> two_cells;    // hom index, 2-cell
  std::vector<FinNatTrans> theta_id;                  // per object of base
  std::vector<std::vector<FinNatTrans>> theta_comp;   // triple index, f*ng + g
  bool strict = false;

  const FinCat& fiber(ObjId a) const { return *fibers[a]; }
  const FinFunctor& pullback(ObjId a, ObjId b, ObjId f) const {
    return pull[base->hom_index(a, b)][f];
  }
  ObjId pull_obj(ObjId a, ObjId b, ObjId f, ObjId y) const { return pullback(a, b, f).obj(y); }
  MorId pull_mor(ObjId a, ObjId b, ObjId f, MorId m) const { return pullback(a, b, f).mor(m); }
  MorId two_cell(ObjId a, ObjId b, MorId m, ObjId y) const {
    return two_cells[base->hom_index(a, b)][m].at(y);
  }
  MorId theta_unit(ObjId a, ObjId x) const { return theta_id[a].at(x); }
  MorId theta(ObjId a, ObjId b, ObjId c, ObjId f, ObjId g, ObjId z) const;
  MorId theta_unit_inv(ObjId a, ObjId x) const;
  MorId theta_inv(ObjId a, ObjId b, ObjId c, ObjId f, ObjId g, ObjId z) const;
};

using IndexedPtr = std::shared_ptr<const IndexedCat>;

/// The terminal indexed category: every fiber is the terminal category.
IndexedPtr trivial_indexed(const BicatPtr& base);

// ---------------------------------------------------------------------------
// Validators

ValidationReport validate_fincat(const FinCat& cat);
ValidationReport validate_functor(const FinFunctor& f);
ValidationReport validate_nat_trans(const FinNatTrans& t, bool require_iso = false);
/// True if f is fully faithful and essentially surjective.
bool is_equivalence(const FinFunctor& f);
ValidationReport validate_bicategory(const FinBicategory& b);
ValidationReport validate_indexed(const IndexedCat& l);

}  // namespace dopt
