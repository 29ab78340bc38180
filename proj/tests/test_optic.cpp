#include <doctest.h>

#include "dopt/error.hpp"
#include "dopt/instances.hpp"
#include "dopt/optic.hpp"
#include "support/oracles.hpp"

using namespace dopt;

namespace {

void check_against_oracle(const OpticCategory& cat) {
  for (const auto& s : cat.objects())
    for (const auto& t : cat.objects()) {
      auto raw = oracle::optic_hom_closure(cat.left(), cat.right(), s.a, s.x, s.xp, t.a, t.x, t.xp);
      REQUIRE(cat.hom_size(s, t) == raw.classes());
      for (const auto& w1 : raw.witnesses)
        for (const auto& w2 : raw.witnesses) {
          auto m1 = cat.make(s, t, {w1.f, w1.l, w1.r});
          auto m2 = cat.make(s, t, {w2.f, w2.l, w2.r});
          CHECK(cat.optic_equal(m1, m2) == raw.related(w1, w2));
        }
    }
}

}  // namespace

TEST_CASE("semilattice optic homs match the closure oracle") {
  auto l = semilattice_action();
  OpticCategory cat(l, l);
  check_against_oracle(cat);
  CHECK(cat.objects().size() == 4);
}

TEST_CASE("weak instances match the closure oracle") {
  auto w = weaken(*semilattice_action(), Twist::Swap);
  check_against_oracle(OpticCategory(w, w));
  auto s = weaken(*semilattice_action(), Twist::Sign);
  check_against_oracle(OpticCategory(s, s));
}

TEST_CASE("trivial indexed categories count components") {
  auto base = deloop_monoidal(meet_semilattice());
  auto t = trivial_indexed(base);
  OpticCategory cat(t, t);
  OpticObject s{0, 0, 0};
  CHECK(cat.hom_size(s, s) == oracle::connected_components(base->hom(0, 0)));
  CHECK(cat.hom_size(s, s) == 1);

  auto fam = family_indexed(chain_category(2), 2);
  auto tf = trivial_indexed(fam->base);
  OpticCategory cf(tf, tf);
  for (ObjId a = 0; a < 3; ++a)
    for (ObjId b = 0; b < 3; ++b)
      CHECK(cf.hom_size({a, 0, 0}, {b, 0, 0}) == oracle::connected_components(fam->base->hom(a, b)));
}

TEST_CASE("functor lenses: L trivial over a 1-category") {
  auto fam = family_indexed(chain_category(2), 2);
  auto tl = trivial_indexed(fam->base);
  OpticCategory cat(tl, fam);
  for (const auto& s : cat.objects())
    for (const auto& t : cat.objects()) {
      // ⊔_f R^A(f*Y', X')
      std::size_t expect = 0;
      for (ObjId f = 0; f < fam->base->hom(s.a, t.a).num_objects(); ++f)
        expect += fam->fiber(s.a).hom(fam->pull_obj(s.a, t.a, f, t.xp), s.xp).size();
      CHECK(cat.hom_size(s, t) == expect);
    }
}

TEST_CASE("discrete Z/2 gives a disjoint sum over 1-cells") {
  auto l = z2_swap_action();
  OpticCategory cat(l, l);
  for (const auto& s : cat.objects())
    for (const auto& t : cat.objects()) {
      std::size_t expect = 0;
      for (ObjId f = 0; f < 2; ++f)
        expect += l->fiber(0).hom(s.x, l->pull_obj(0, 0, f, t.x)).size() *
                  l->fiber(0).hom(l->pull_obj(0, 0, f, t.xp), s.xp).size();
      CHECK(cat.hom_size(s, t) == expect);
      CHECK(expect == 2);
    }
}

TEST_CASE("identity witnesses") {
  auto l = semilattice_action();
  OpticCategory strict(l, l);
  OpticObject s{0, 1, 0};
  auto id = strict.optic_identity(s);
  CHECK(id.witness.f == 1);
  CHECK(id.witness.l == l->fiber(0).identity(1));
  CHECK(id.witness.r == l->fiber(0).identity(0));

  auto w = weaken(*l, Twist::Swap);
  OpticCategory weak(w, w);
  OpticObject ws{0, 2, 1};
  auto wid = weak.optic_identity(ws);
  CHECK(wid.witness.l == w->theta_unit(0, 2));
  CHECK(wid.witness.r == *w->fiber(0).inverse(w->theta_unit(0, 1)));
  CHECK_FALSE(w->fiber(0).is_identity(wid.witness.l));
}

TEST_CASE("strict one-object composition pairs the maps") {
  auto l = semilattice_action();
  OpticCategory cat(l, l);
  const FinCat& c = l->fiber(0);
  for (const auto& s : cat.objects())
    for (const auto& t : cat.objects())
      for (const auto& u : cat.objects())
        for (const auto& m1 : cat.optic_hom(s, t))
          for (const auto& m2 : cat.optic_hom(t, u)) {
            auto w = cat.compose_witness(s, t, u, m2.witness, m1.witness);
            ObjId f = m1.witness.f, g = m2.witness.f;
            CHECK(w.f == std::min(f, g));
            CHECK(w.l == c.compose(l->pull_mor(0, 0, f, m2.witness.l), m1.witness.l));
            CHECK(w.r == c.compose(m1.witness.r, l->pull_mor(0, 0, f, m2.witness.r)));
          }
}

TEST_CASE("category laws") {
  auto l = semilattice_action();
  CHECK(OpticCategory(l, l).check_category_laws().ok());
  auto t = trivial_indexed(l->base);
  CHECK(OpticCategory(t, t).check_category_laws().ok());
  CHECK(OpticCategory(t, l).check_category_laws().ok());
  auto w = weaken(*l, Twist::Swap);
  CHECK(OpticCategory(w, w).check_category_laws().ok());
  auto s = weaken(*l, Twist::Sign);
  CHECK(OpticCategory(s, l).check_category_laws().ok());
  auto z = z2_swap_action();
  CHECK(OpticCategory(z, z).check_category_laws().ok());
}

TEST_CASE("sampled category laws") {
  auto fam = family_indexed(chain_category(2), 2);
  auto w = weaken(*fam, Twist::Sign);
  OpticCategory cat(w, fam);
  CHECK(cat.check_category_laws(200, 3).ok());
}

TEST_CASE("broken unit coherence shows up as a unit-law failure") {
  auto l = semilattice_action();
  auto broken = weaken(*l, Twist::Sign, {ThetaSite{true, 0, 0, 0, 0, 0}});
  OpticCategory cat(broken, l);
  auto r = cat.check_category_laws();
  CHECK(r.mentions("left-unit"));
  CHECK(r.mentions("right-unit"));
}

TEST_CASE("generating relation and errors") {
  auto l = semilattice_action();
  OpticCategory cat(l, l);
  const FinCat& c = l->fiber(0);
  const FinCat& hom = l->base->hom(0, 0);
  // m: 0 ⇒ 1 in the semilattice
  MorId m = hom.hom(0, 1)[0];
  OpticObject s{0, 0, 1}, t{0, 1, 1};
  // l: X=0 → f*Y = min(0,1)=0, r: g*Y' = min(1,1)=1 → X'=1
  MorId lf = c.identity(0);
  MorId rg = c.identity(1);
  auto lhs = cat.make(s, t, {1, c.compose(l->two_cell(0, 0, m, t.x), lf), rg});
  auto rhs = cat.make(s, t, {0, lf, c.compose(rg, l->two_cell(0, 0, m, t.xp))});
  CHECK(cat.optic_equal(lhs, rhs));
  CHECK(cat.optic_equal(lhs, lhs));
  CHECK_THROWS_AS(cat.make(s, t, {0, c.identity(1), rg}), StructuralError);
  CHECK_THROWS_AS(cat.optic_equal(lhs, cat.optic_identity(s)), StructuralError);
  CHECK_THROWS_AS(cat.optic_compose(lhs, lhs), StructuralError);
  CHECK_THROWS_AS(OpticCategory(l, semilattice_action()), StructuralError);
}
