#include <doctest.h>

#include <algorithm>
#include <random>

#include "dopt/coend.hpp"
#include "dopt/error.hpp"
#include "support/oracles.hpp"

using namespace dopt;

namespace {

TableBifunctor constant_bifunctor(const CatPtr& c, std::size_t s) {
  TableBifunctor h;
  h.index = c;
  const std::size_t n = c->num_objects();
  h.sizes.assign(n * n, s);
  std::vector<std::size_t> id(s);
  for (std::size_t i = 0; i < s; ++i) id[i] = i;
  h.contra_table.assign(c->num_morphisms() * n, id);
  h.co_table.assign(c->num_morphisms() * n, id);
  return h;
}

// J = free arrow a: 0 → 1 (morphisms id0, id1, a). H(j,k): H(0,0) = 2,
// H(1,1) = 2, H(1,0) = 1, H(0,1) = 3.
TableBifunctor arrow_bifunctor() {
  std::vector<MorphismSpec> mors{{0, 0}, {1, 1}, {0, 1}};
  auto c = std::make_shared<FinCat>(FinCat(2, mors, {0, 1}, {{0, 0, 0}, {1, 1, 1}, {2, 0, 2}, {1, 2, 2}}));
  TableBifunctor h;
  h.index = c;
  h.sizes = {2, 3, 1, 2};
  // contra(m, k) : H(dst m, k) → H(src m, k)
  h.contra_table.resize(6);
  h.contra_table[0 * 2 + 0] = {0, 1};
  h.contra_table[0 * 2 + 1] = {0, 1, 2};
  h.contra_table[1 * 2 + 0] = {0};
  h.contra_table[1 * 2 + 1] = {0, 1};
  h.contra_table[2 * 2 + 0] = {1};        // H(1,0) → H(0,0)
  h.contra_table[2 * 2 + 1] = {2, 2};     // H(1,1) → H(0,1)
  // co(m, j) : H(j, src m) → H(j, dst m)
  h.co_table.resize(6);
  h.co_table[0 * 2 + 0] = {0, 1};
  h.co_table[0 * 2 + 1] = {0};
  h.co_table[1 * 2 + 0] = {0, 1, 2};
  h.co_table[1 * 2 + 1] = {0, 1};
  h.co_table[2 * 2 + 0] = {2, 2};         // H(0,0) → H(0,1)
  h.co_table[2 * 2 + 1] = {1};            // H(1,0) → H(1,1)
  return h;
}

}  // namespace

TEST_CASE("union-find keeps least roots") {
  UnionFind uf(5);
  uf.unite(4, 2);
  uf.unite(3, 4);
  CHECK(uf.find(3) == 2);
  CHECK(uf.find(4) == 2);
  uf.unite(1, 3);
  CHECK(uf.find(2) == 1);
  CHECK_FALSE(uf.unite(4, 1));
}

TEST_CASE("discrete index gives the disjoint sum") {
  auto h = constant_bifunctor(discrete_category(3), 2).view();
  CHECK(validate_bifunctor(h).ok());
  auto c = coend(h);
  CHECK(c.num_classes() == 6);
}

TEST_CASE("connected index with constant bifunctor") {
  for (auto cat : {chain_category(3), codiscrete_category(2), finset_skeleton(2)}) {
    auto h = constant_bifunctor(cat, 3).view();
    auto c = coend(h);
    CHECK(c.num_classes() == 3);
  }
}

TEST_CASE("free arrow against the closure oracle") {
  auto t = arrow_bifunctor();
  auto h = t.view();
  REQUIRE(validate_bifunctor(h).ok());
  auto c = coend(h);
  auto oracle_labels = oracle::closure_partition(t);
  CHECK(oracle::same_partition(c.class_of_flat, oracle_labels));
  // relation: (0,1) ~ (1,1) and nothing else
  CHECK(c.num_classes() == 3);
  CHECK(c.class_of(0, 1) == c.class_of(1, 1));
  CHECK(c.canonical[c.class_of(1, 1)] == CoendElement{0, 1});
}

TEST_CASE("class numbering follows canonical representatives") {
  auto c = coend(arrow_bifunctor().view());
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    auto rep = c.canonical[k];
    CHECK(c.class_of(rep.j, rep.x) == k);
    auto members = c.members(k);
    CHECK(*std::min_element(members.begin(), members.end()) == rep);
    if (k > 0) CHECK(c.canonical[k - 1] < rep);
  }
}

TEST_CASE("cowedges") {
  auto t = arrow_bifunctor();
  auto h = t.view();
  auto c = coend(h);
  CHECK(cowedge_check(h, c.class_of_flat));
  CHECK(cowedge_check(h, std::vector<std::size_t>(4, 7)));
  std::vector<std::size_t> injective{0, 1, 2, 3};
  CHECK_FALSE(cowedge_check(h, injective));
  CHECK_THROWS_AS(cowedge_check(h, {0, 1}), StructuralError);
}

TEST_CASE("random bifunctors match the closure oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    auto t = oracle::random_bifunctor(rng, 4, 5);
    auto h = t.view();
    REQUIRE(validate_bifunctor(h).ok());
    auto c = coend(h);
    CHECK(oracle::same_partition(c.class_of_flat, oracle::closure_partition(t)));
    CHECK(cowedge_check(h, c.class_of_flat));
  }
}

TEST_CASE("every cowedge factors through the coend") {
  // Exhaustive over labelings into a 3-element set on small random instances.
  std::mt19937_64 rng(5);
  for (int i = 0; i < 6; ++i) {
    auto t = oracle::random_bifunctor(rng, 2, 2);
    auto h = t.view();
    auto c = coend(h);
    const std::size_t total = c.class_of_flat.size();
    if (total > 7) continue;
    std::vector<std::size_t> q(total, 0);
    while (true) {
      if (cowedge_check(h, q)) {
        for (std::size_t a = 0; a < total; ++a)
          for (std::size_t b = 0; b < total; ++b)
            if (c.class_of_flat[a] == c.class_of_flat[b]) CHECK(q[a] == q[b]);
      }
      std::size_t p = 0;
      while (p < total && ++q[p] == 3) q[p++] = 0;
      if (p == total) break;
    }
  }
}

TEST_CASE("edge insertion order does not matter") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    auto t = oracle::random_bifunctor(rng, 4, 5);
    auto h = t.view();
    auto base = coend(h);
    // Relabel the morphisms of the index category: reverse them.
    const FinCat& c = *t.index;
    const std::size_t nm = c.num_morphisms(), n = c.num_objects();
    std::vector<MorId> perm(nm);
    for (MorId m = 0; m < nm; ++m) perm[m] = nm - 1 - m;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<MorphismSpec> mors(nm);
    std::vector<MorId> ids(n);
    for (MorId m = 0; m < nm; ++m) mors[perm[m]] = c.morphisms()[m];
    for (ObjId a = 0; a < n; ++a) ids[a] = perm[c.identity(a)];
    std::vector<MorId> inv(nm);
    for (MorId m = 0; m < nm; ++m) inv[perm[m]] = m;
    auto shuffled = std::make_shared<FinCat>(FinCat::from_rule(
        n, mors, ids, [&](MorId g, MorId f) { return perm[c.compose(inv[g], inv[f])]; }));
    TableBifunctor t2 = t;
    t2.index = shuffled;
    for (MorId m = 0; m < nm; ++m)
      for (ObjId o = 0; o < n; ++o) {
        t2.contra_table[perm[m] * n + o] = t.contra_table[m * n + o];
        t2.co_table[perm[m] * n + o] = t.co_table[m * n + o];
      }
    auto other = coend(t2.view());
    CHECK(other.class_of_flat == base.class_of_flat);
    CHECK(other.canonical == base.canonical);
  }
}
