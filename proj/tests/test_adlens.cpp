#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dopt/adlens.hpp"

using namespace dopt::ad;

namespace {

Prog square() { return {1, {{Op::Input, {}, 0, 0}, {Op::Mul, {0, 0}}}, {1}}; }
Prog product() { return {2, {{Op::Input, {}, 0, 0}, {Op::Input, {}, 0, 1}, {Op::Mul, {0, 1}}}, {2}}; }

}  // namespace

TEST_CASE("primitive lenses") {
  auto add = lens_of_primitive("add");
  auto [ta, ya] = add.forward({1.5, 2.0});
  CHECK(ta.empty());
  CHECK(add.shape.bytes() == 0);
  CHECK(ya == Vec{3.5});
  CHECK(add.backward(ta, {0.25}) == Vec{0.25, 0.25});

  auto mul = lens_of_primitive(Op::Mul);
  auto [tm, ym] = mul.forward({3, 2});
  CHECK(tm == Tape{3, 2});
  CHECK(ym == Vec{6});
  CHECK(mul.backward(tm, {1}) == Vec{2, 3});
  CHECK(tm.size() * sizeof(double) == mul.shape.bytes());

  auto ex = lens_of_primitive(Op::Exp);
  auto [te, ye] = ex.forward({0});
  CHECK(ex.backward(te, {1})[0] == doctest::Approx(1.0));

  auto neg = lens_of_primitive(Op::Neg);
  CHECK(neg.shape.bytes() == 0);
  CHECK(neg.backward({}, {2}) == Vec{-2});

  auto c = lens_of_primitive(Op::Const, 4.0);
  CHECK(c.forward({}).second == Vec{4.0});
  CHECK(c.backward({}, {1}).empty());

  CHECK_THROWS_AS(lens_of_primitive("log"), std::invalid_argument);
  CHECK_THROWS_AS(lens_of_primitive(Op::Input), std::invalid_argument);
}

TEST_CASE("composition is the chain rule") {
  auto sin = lens_of_primitive(Op::Sin), ex = lens_of_primitive(Op::Exp);
  auto l = rlens_compose(ex, sin);
  auto [t, y] = l.forward({1.0});
  CHECK(y[0] == doctest::Approx(std::exp(std::sin(1.0))));
  CHECK(l.backward(t, {1})[0] == doctest::Approx(std::cos(1.0) * std::exp(std::sin(1.0))).epsilon(1e-14));
  CHECK(t.size() * sizeof(double) == l.shape.bytes());
  CHECK(l.shape.parts.size() == 2);

  auto li = rlens_compose(rlens_identity(1), rlens_compose(l, rlens_identity(1)));
  auto [ti, yi] = li.forward({1.0});
  CHECK(li.backward(ti, {1}) == l.backward(t, {1}));

  CHECK_THROWS_AS(rlens_compose(lens_of_primitive(Op::Add), sin), std::invalid_argument);
}

TEST_CASE("gradients of small programs") {
  CHECK(grad(square(), {3})[0] == doctest::Approx(6));
  CHECK(grad(product(), {3, 2}) == Vec{2, 3});
  CHECK(finite_diff(square(), {3})[0] == doctest::Approx(6).epsilon(1e-5));
  Prog constant{2, {{Op::Const, {}, 5.0}}, {0}};
  CHECK(grad(constant, {1, 2}) == Vec{0, 0});
  CHECK(finite_diff(constant, {1, 2}) == Vec{0, 0});

  Prog two = product();
  two.outputs = {0, 2};
  CHECK_THROWS_AS(grad(two, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(grad(product(), {1}), std::invalid_argument);

  Prog cyclic{1, {{Op::Input, {}, 0, 0}, {Op::Neg, {1}}}, {1}};
  CHECK(validate_prog(cyclic).mentions("acyclic"));
  CHECK_THROWS_AS(grad(cyclic, {1}), std::invalid_argument);
  Prog arity{1, {{Op::Input, {}, 0, 0}, {Op::Add, {0}}}, {1}};
  CHECK(validate_prog(arity).mentions("arity"));
  Prog range{1, {{Op::Input, {}, 0, 3}}, {0}};
  CHECK(validate_prog(range).mentions("input-range"));
}

TEST_CASE("random corpus shape") {
  std::mt19937_64 rng(9);
  std::size_t deep = 0;
  for (int i = 0; i < 200; ++i) {
    auto p = random_prog(rng);
    CHECK(validate_prog(p).ok());
    CHECK(depth(p) <= 6);
    for (const auto& n : p.nodes) CHECK(n.args.size() <= 2);
    if (depth(p) >= 4) ++deep;
  }
  CHECK(deep > 20);
}

TEST_CASE("gradients against finite differences") {
  auto res = ad_check();
  CHECK(res.report.ok());
  for (const auto& i : res.report.issues()) MESSAGE(i.law << ": " << i.detail);
  CHECK(res.programs == 100);
  CHECK(res.evaluations == 1000);
  CHECK(res.worst_grad <= 1e-5);
  CHECK(res.worst_linear <= 1e-12);
  CHECK(res.worst_assoc <= 1e-12);
  MESSAGE("worst gradient error " << res.worst_grad << ", linearity " << res.worst_linear << ", associativity "
                                  << res.worst_assoc);
}
