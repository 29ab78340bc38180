#include <doctest.h>

#include "dopt/error.hpp"
#include "dopt/fincore.hpp"
#include "dopt/instances.hpp"

using namespace dopt;

namespace {

// Arrow category 0 → 1: morphisms id0, id1, a.
FinCat arrow_category(MorId a_after_id0 = 2) {
  std::vector<MorphismSpec> mors{{0, 0}, {1, 1}, {0, 1}};
  std::vector<CompositionEntry> comps{{0, 0, 0}, {1, 1, 1}, {2, 0, a_after_id0}, {1, 2, 2}};
  return FinCat(2, mors, {0, 1}, comps);
}

}  // namespace

TEST_CASE("finite functions enumerate lexicographically") {
  std::vector<std::vector<std::size_t>> seen;
  for_each_function(2, 2, [&](const FinFn& f) {
    seen.push_back(f.table);
    return true;
  });
  CHECK(seen == std::vector<std::vector<std::size_t>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  int empty_dom = 0;
  for_each_function(0, 3, [&](const FinFn&) { return ++empty_dom, true; });
  CHECK(empty_dom == 1);
  int empty_cod = 0;
  for_each_function(2, 0, [&](const FinFn&) { return ++empty_cod, true; });
  CHECK(empty_cod == 0);
  CHECK(*count_functions(3, 2) == 8);
  CHECK(*count_functions(0, 0) == 1);
}

TEST_CASE("validate_fincat on small categories") {
  CHECK(validate_fincat(*terminal_category()).ok());
  CHECK(validate_fincat(arrow_category()).ok());
  CHECK(validate_fincat(*chain_category(4)).ok());
  CHECK(validate_fincat(*codiscrete_category(3)).ok());
  CHECK(validate_fincat(*cyclic_group_category(5)).ok());
  CHECK(validate_fincat(*finset_skeleton(3)).ok());
}

TEST_CASE("broken unit law is located") {
  // id0 ; a redirected: a ∘ id0 = id0 has wrong endpoints, so use a
  // three-morphism hom to break only the law.
  std::vector<MorphismSpec> mors{{0, 0}, {1, 1}, {0, 1}, {0, 1}};
  std::vector<CompositionEntry> comps{{0, 0, 0}, {1, 1, 1}, {2, 0, 3}, {3, 0, 3},
                                      {1, 2, 2}, {1, 3, 3}};
  auto r = validate_fincat(FinCat(2, mors, {0, 1}, comps));
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.has_structural());
  CHECK(r.mentions("right-unit"));
  CHECK_FALSE(r.mentions("left-unit"));
  REQUIRE(r.size() == 1);
  CHECK(r.issues()[0].detail.find("(2)") != std::string::npos);
}

TEST_CASE("malformed tables are structural") {
  auto bad = arrow_category(7);
  auto r = validate_fincat(bad);
  CHECK(r.has_structural());
  std::vector<MorphismSpec> mors{{0, 0}, {0, 5}};
  auto r2 = validate_fincat(FinCat(1, mors, {0}, {}));
  CHECK(r2.has_structural());
}

TEST_CASE("skeleton morphism lookup round trips") {
  auto s = finset_skeleton(3);
  for (MorId m = 0; m < s->num_morphisms(); ++m)
    CHECK(finset_skeleton_morphism(*s, finset_skeleton_function(*s, m)) == m);
  // 4^4 + ... total functions among sizes 0..3
  std::size_t total = 0;
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b) total += *count_functions(a, b);
  CHECK(s->num_morphisms() == total);
}

TEST_CASE("products and powers") {
  auto c = chain_category(2);
  auto p = product_category(*c, *c);
  CHECK(validate_fincat(*p).ok());
  CHECK(p->num_objects() == 4);
  CHECK(p->num_morphisms() == 9);
  auto p0 = power_category(c, 0);
  CHECK(p0->num_objects() == 1);
  auto p3 = power_category(c, 3);
  CHECK(validate_fincat(*p3).ok());
  CHECK(p3->num_objects() == 8);
  CHECK(p3->num_morphisms() == 27);
}

TEST_CASE("functors and transformations") {
  auto c = chain_category(3);
  auto id = FinFunctor::identity(c);
  CHECK(validate_functor(id).ok());
  CHECK(is_equivalence(id));
  CHECK(validate_nat_trans(identity_transformation(id), true).ok());
  // constant functor at 0 is not an equivalence
  FinFunctor k{c, c, std::vector<ObjId>(3, 0), std::vector<MorId>(c->num_morphisms(), c->identity(0))};
  CHECK(validate_functor(k).ok());
  CHECK_FALSE(is_equivalence(k));
  // the unique transformation const0 ⇒ id is natural but not invertible
  FinNatTrans t{k, id, {c->hom(0, 0)[0], c->hom(0, 1)[0], c->hom(0, 2)[0]}};
  CHECK(validate_nat_trans(t).ok());
  CHECK(validate_nat_trans(t, true).mentions("invertibility"));
}

TEST_CASE("delooped monoids are bicategories") {
  CHECK(validate_bicategory(*deloop_monoidal(trivial_monoid())).ok());
  CHECK(validate_bicategory(*deloop_monoidal(meet_semilattice())).ok());
  CHECK(validate_bicategory(*deloop_monoidal(discrete_z2())).ok());
  CHECK(deloop_monoidal(trivial_monoid())->hom(0, 0).num_objects() == 1);
}

TEST_CASE("pentagon failure is named") {
  CHECK(validate_bicategory(*bbz2(0)).ok());
  auto r = validate_bicategory(*bbz2(1));
  CHECK(r.mentions("pentagon"));
  CHECK_FALSE(r.has_structural());
}

TEST_CASE("span bicategory truncation") {
  auto s = span_bicategory(1, 1);
  CHECK(validate_bicategory(*s.bicat).ok());
  CHECK(s.bicat->hom(1, 1).num_objects() == 2);
  CHECK(s.bicat->hom(1, 1).num_morphisms() == 3);
  CHECK(s.bicat->hom(0, 1).num_objects() == 1);
  CHECK_THROWS_AS(span_bicategory(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(span_bicategory(2, 1), std::invalid_argument);
  CHECK(validate_bicategory(*span_bicategory(0, 0).bicat).ok());
}

TEST_CASE("locally discrete bicategories") {
  CHECK(validate_bicategory(*locally_discrete(finset_skeleton(2))).ok());
  CHECK(validate_bicategory(*locally_discrete(chain_category(3))).ok());
}

TEST_CASE("indexed categories validate") {
  CHECK(validate_indexed(*semilattice_action()).ok());
  CHECK(semilattice_action()->strict);
  CHECK(validate_indexed(*z2_swap_action()).ok());
  CHECK(validate_indexed(*trivial_indexed(deloop_monoidal(meet_semilattice()))).ok());
  CHECK(validate_indexed(*trivial_indexed(span_bicategory(1, 1).bicat)).ok());
  CHECK(validate_indexed(*family_indexed(chain_category(2), 2)).ok());
}

TEST_CASE("weak indexed categories") {
  auto base = semilattice_action();
  auto swap = weaken(*base, Twist::Swap);
  CHECK_FALSE(swap->strict);
  CHECK(validate_indexed(*swap).ok());
  auto sign = weaken(*base, Twist::Sign);
  CHECK(validate_indexed(*sign).ok());
  auto fam = family_indexed(chain_category(2), 2);
  CHECK(validate_indexed(*weaken(*fam, Twist::Sign)).ok());
  CHECK(validate_indexed(*weaken(*fam, Twist::Swap)).ok());

  ThetaSite unit{true, 0, 0, 0, 0, 0};
  auto broken_unit = weaken(*base, Twist::Sign, {unit});
  auto r = validate_indexed(*broken_unit);
  CHECK(r.mentions("unit-coherence-right"));
  CHECK(r.mentions("unit-coherence-left"));
  CHECK_FALSE(r.mentions("associativity-coherence"));
}

TEST_CASE("non-coherent theta_comp breaks associativity coherence") {
  // Over finite sets of size ≤ 2: f = g = the constant map 2 → 2 at 0.
  auto fam = family_indexed(chain_category(2), 2);
  auto skel = finset_skeleton(2);
  ObjId k0 = skel->hom_position(finset_skeleton_morphism(*skel, FinFn{{2}, {2}, {0, 0}}));
  auto w = weaken(*fam, Twist::Sign, {ThetaSite{false, 2, 2, 2, k0, k0}});
  auto r = validate_indexed(*w);
  CHECK(r.mentions("associativity-coherence"));
  CHECK_FALSE(r.mentions("unit-coherence-left"));
  CHECK_FALSE(r.mentions("unit-coherence-right"));
  CHECK_FALSE(r.has_structural());
}

TEST_CASE("strict flag is audited") {
  auto w = weaken(*semilattice_action(), Twist::Sign);
  auto bad = std::make_shared<IndexedCat>(*w);
  bad->strict = true;
  CHECK(validate_indexed(*bad).mentions("strictness"));
}
