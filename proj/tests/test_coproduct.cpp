#include <doctest.h>

#include <random>

#include "dopt/coproduct.hpp"
#include "dopt/error.hpp"

using namespace dopt;

namespace {

FinFn fn(std::size_t cod, std::vector<std::size_t> t) { return FinFn{{t.size()}, {cod}, std::move(t)}; }

std::vector<Cospan> cospans_up_to(std::size_t max_base, std::size_t max_size) {
  std::vector<Cospan> out;
  for (std::size_t a = 0; a <= max_base; ++a)
    for (std::size_t x = 0; x <= max_size; ++x)
      for (std::size_t xp = 0; xp <= max_size; ++xp)
        for_each_function(x, a, [&](const FinFn& l) {
          for_each_function(xp, a, [&](const FinFn& lp) { return out.push_back({l, lp}), true; });
          return true;
        });
  return out;
}

}  // namespace

TEST_CASE("coproduct data in the family instance") {
  auto fam = family_indexed(chain_category(2), 2);
  auto d = family_coproduct_data(2, {1, 1});
  CHECK(d.coproduct == 2);
  CHECK(validate_coproduct_data(*fam, *fam, d).ok());
  CHECK(validate_coproduct_data(*fam, *fam, family_coproduct_data(2, {})).ok());
  CHECK(validate_coproduct_data(*fam, *fam, family_coproduct_data(2, {2})).ok());
  CHECK_THROWS_AS(family_coproduct_data(2, {2, 1}), std::invalid_argument);

  // 1 → 2 constant at 0 twice is not a coproduct cocone
  auto bad = d;
  bad.injections = {d.injections[0], d.injections[0]};
  auto r = validate_coproduct_data(*fam, *fam, bad);
  CHECK(r.mentions("base-coproduct"));
  CHECK(r.mentions("comparison-L"));

  // codiscrete(2) ≃ 1, so the swap twist keeps the comparison an equivalence
  CHECK(validate_coproduct_data(*weaken(*fam, Twist::Swap), *fam, d).ok());
  auto weak = weaken(*fam, Twist::Sign);
  auto w = validate_coproduct_data(*weak, *fam, d);
  CHECK(w.mentions("comparison-L"));
  CHECK_FALSE(w.mentions("comparison-R"));
  OpticCategory wc(weak, fam);
  CHECK_THROWS_AS(optic_coproduct(wc, {{1, 0, 0}, {1, 0, 0}}, d), StructuralError);
}

TEST_CASE("optic coproducts over 1 ⊔ 1") {
  auto fam = family_indexed(chain_category(2), 2);
  auto triv = trivial_indexed(fam->base);
  auto d = family_coproduct_data(2, {1, 1});
  for (const auto& [l, r] : {std::pair{fam, fam}, std::pair{fam, triv}}) {
    OpticCategory cat(l, r);
    auto targets = cat.objects();
    for (const auto& s1 : cat.objects_over(1))
      for (const auto& s2 : cat.objects_over(1)) {
        auto cp = optic_coproduct(cat, {s1, s2}, d);
        CHECK(cp.object.a == 2);
        CHECK(l->pull_obj(1, 2, d.injections[0], cp.object.x) == s1.x);
        CHECK(l->pull_obj(1, 2, d.injections[1], cp.object.x) == s2.x);
        CHECK(check_coproduct_universal(cat, cp, {s1, s2}, targets).ok());
        for (const auto& t : targets) {
          CHECK(cat.hom_size(cp.object, t) == cat.hom_size(s1, t) * cat.hom_size(s2, t));
          for (const auto& m : cat.optic_hom(cp.object, t)) {
            auto back = copair(cat, cp, t, {cat.optic_compose(m, cp.injections[0]),
                                            cat.optic_compose(m, cp.injections[1])});
            CHECK(back.cls == m.cls);
          }
          auto h1 = cat.optic_hom(s1, t), h2 = cat.optic_hom(s2, t);
          for (const auto& m1 : h1)
            for (const auto& m2 : h2) {
              auto m = copair(cat, cp, t, {m1, m2});
              CHECK(cat.optic_equal(cat.optic_compose(m, cp.injections[0]), m1));
              CHECK(cat.optic_equal(cat.optic_compose(m, cp.injections[1]), m2));
            }
        }
      }
  }
}

TEST_CASE("singleton and empty optic coproducts") {
  auto fam = family_indexed(chain_category(2), 2);
  OpticCategory cat(fam, fam);
  for (const auto& s : cat.objects_over(2)) {
    auto cp = optic_coproduct(cat, {s}, family_coproduct_data(2, {2}));
    CHECK(cp.object == s);
    CHECK(cat.optic_equal(cp.injections[0], cat.optic_identity(s)));
  }
  auto cp = optic_coproduct(cat, {}, family_coproduct_data(2, {}));
  CHECK(cp.object == OpticObject{0, 0, 0});
  for (const auto& t : cat.objects()) CHECK(cat.hom_size(cp.object, t) == 1);
  CHECK_THROWS_AS(optic_coproduct(cat, {{1, 0, 0}}, family_coproduct_data(2, {1, 1})), StructuralError);
  CHECK_THROWS_AS(copair(cat, cp, {0, 0, 0}, {cat.optic_identity({0, 0, 0})}), StructuralError);
}

TEST_CASE("dependent lens coproducts") {
  Cospan s1{fn(1, {0, 0}), fn(1, {0})}, s2{fn(1, {0}), fn(1, {0, 0})};
  auto cp = dlens_coproduct({s1, s2});
  CHECK(cp.sum.a() == 2);
  CHECK(cp.sum.leg.table == std::vector<std::size_t>{0, 0, 1});
  CHECK(cp.sum.leg_p.table == std::vector<std::size_t>{0, 1, 1});
  auto targets = cospans_up_to(2, 2);
  CHECK(check_dlens_coproduct(cp, {s1, s2}, targets).ok());

  auto empty = dlens_coproduct({});
  CHECK(empty.sum.x() == 0);
  CHECK(empty.sum.a() == 0);
  for (const auto& t : targets) CHECK(dlens_hom_count(empty.sum, t) == 1);

  std::mt19937_64 rng(2);
  auto all = cospans_up_to(1, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Cospan> family;
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t i = 0; i < k; ++i)
      family.push_back(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
    std::vector<Cospan> some;
    for (int i = 0; i < 15; ++i) some.push_back(targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)]);
    CHECK(check_dlens_coproduct(dlens_coproduct(family), family, some).ok());
  }

  // an injection with the wrong put is reported
  auto broken = cp;
  broken.injections[0].get = fn(3, {0, 0});
  CHECK(check_dlens_coproduct(broken, {s1, s2}, targets).mentions("universal-property"));
}

TEST_CASE("slices turn coproducts into products") {
  CHECK(check_slice_decomposition(1, 1, 3).ok());
  CHECK(check_slice_decomposition(2, 1, 3).ok());
  CHECK(check_slice_decomposition(0, 2, 3).ok());
}

TEST_CASE("lens coproducts agree with optic coproducts over truncated spans") {
  auto spans = span_bicategory(1, 1);
  auto slice = slice_indexed(spans, 2);
  auto d = span_coproduct_data(spans, {1, 0});
  CHECK(validate_coproduct_data(*slice.indexed, *slice.indexed, d).ok());
  CHECK_THROWS_AS(span_coproduct_data(spans, {1, 1}), std::invalid_argument);
  OpticCategory cat(slice.indexed, slice.indexed);
  auto cospan_of = [&](const OpticObject& o) { return Cospan{slice.legs[o.a][o.x], slice.legs[o.a][o.xp]}; };
  std::vector<OpticObject> small;
  for (const auto& o : cat.objects())
    if (slice.legs[o.a][o.x].dom.size <= 1) small.push_back(o);
  OpticObject z{0, 0, 0};
  for (const auto& s : small) {
    if (s.a != 1) continue;
    auto cp = optic_coproduct(cat, {s, z}, d);
    auto lc = dlens_coproduct({cospan_of(s), cospan_of(z)});
    CHECK(cospan_of(cp.object).leg == lc.sum.leg);
    CHECK(cospan_of(cp.object).leg_p == lc.sum.leg_p);
    CHECK(check_coproduct_universal(cat, cp, {s, z}, small).ok());
    for (const auto& t : small) CHECK(cat.hom_size(cp.object, t) == dlens_hom_count(lc.sum, cospan_of(t)));
  }
}
