#include "dopt/finset.hpp"

#include <random>
#include <string>

#include "dopt/coend.hpp"
#include "dopt/error.hpp"

namespace dopt {

namespace {

std::string show(const FinFn& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.table.size(); ++i) s += (i ? "," : "") + std::to_string(f.table[i]);
  return s + "]";
}

void require(bool ok, const std::string& what) {
  if (!ok) throw StructuralError(what);
}

FinFn from_table(std::size_t cod, std::vector<std::size_t> table) {
  FinFn f{{table.size()}, {cod}, std::move(table)};
  return f;
}

using OpLens = LensCalculus<Opposite<FinSetCat>>;
using SetLens = LensCalculus<FinSetCat>;

SetLens::Cospan as_cospan(const Cospan& s) { return {s.leg, s.leg_p}; }

}  // namespace

// ---------------------------------------------------------------------------
// Limits and colimits

Pullback pullback(const FinFn& f, const FinFn& g) {
  require(f.cod == g.cod, "pullback: codomains differ (" + std::to_string(f.cod.size) + " vs " +
                              std::to_string(g.cod.size) + ")");
  Pullback p;
  p.width = g.dom.size;
  p.lookup.assign(f.dom.size * g.dom.size, kNone);
  std::vector<std::size_t> t1, t2;
  for (std::size_t x = 0; x < f.dom.size; ++x)
    for (std::size_t y = 0; y < g.dom.size; ++y)
      if (f(x) == g(y)) {
        p.lookup[x * p.width + y] = t1.size();
        t1.push_back(x);
        t2.push_back(y);
      }
  p.p = {t1.size()};
  p.p1 = from_table(f.dom.size, std::move(t1));
  p.p2 = from_table(g.dom.size, std::move(t2));
  return p;
}

Pushout pushout(const FinFn& f, const FinFn& g) {
  require(f.dom == g.dom, "pushout: domains differ (" + std::to_string(f.dom.size) + " vs " +
                              std::to_string(g.dom.size) + ")");
  const std::size_t nx = f.cod.size, ny = g.cod.size;
  UnionFind uf(nx + ny);
  for (std::size_t b = 0; b < f.dom.size; ++b) uf.unite(f(b), nx + g(b));
  std::vector<std::size_t> id(nx + ny, kNone);
  std::size_t classes = 0;
  for (std::size_t e = 0; e < nx + ny; ++e) {
    std::size_t root = uf.find(e);
    if (id[root] == kNone) id[root] = classes++;
    id[e] = id[root];
  }
  Pushout q;
  q.q = {classes};
  q.i1 = from_table(classes, {id.begin(), id.begin() + nx});
  q.i2 = from_table(classes, {id.begin() + nx, id.end()});
  return q;
}

Cone<FinFn> FinSetCat::pullback(const FinFn& f, const FinFn& g) {
  Pullback p = dopt::pullback(f, g);
  return {p.p.size, std::move(p.p1), std::move(p.p2)};
}

Cone<FinFn> FinSetCat::pushout(const FinFn& f, const FinFn& g) {
  Pushout q = dopt::pushout(f, g);
  return {q.q.size, std::move(q.i1), std::move(q.i2)};
}

FinFn FinSetCat::pullback_pair(const Cone<FinFn>& p, const FinFn& u, const FinFn& v) {
  require(u.dom == v.dom && u.cod == p.p1.cod && v.cod == p.p2.cod, "pullback_pair: ill-typed");
  std::vector<std::size_t> lookup(u.cod.size * v.cod.size, kNone);
  for (std::size_t i = 0; i < p.apex; ++i) lookup[p.p1(i) * v.cod.size + p.p2(i)] = i;
  std::vector<std::size_t> t(u.dom.size);
  for (std::size_t w = 0; w < u.dom.size; ++w) {
    t[w] = lookup[u(w) * v.cod.size + v(w)];
    require(t[w] != kNone, "pullback_pair: the pair does not factor through the pullback");
  }
  return from_table(p.apex, std::move(t));
}

FinFn FinSetCat::pushout_copair(const Cone<FinFn>& q, const FinFn& u, const FinFn& v) {
  require(u.cod == v.cod && u.dom == q.p1.dom && v.dom == q.p2.dom, "pushout_copair: ill-typed");
  std::vector<std::size_t> t(q.apex, kNone);
  auto put = [&](std::size_t cls, std::size_t value) {
    require(t[cls] == kNone || t[cls] == value, "pushout_copair: maps disagree on the boundary");
    t[cls] = value;
  };
  for (std::size_t x = 0; x < u.dom.size; ++x) put(q.p1(x), u(x));
  for (std::size_t y = 0; y < v.dom.size; ++y) put(q.p2(y), v(y));
  return from_table(u.cod.size, std::move(t));
}

// ---------------------------------------------------------------------------
// Cospans and spans

bool Cospan::well_typed() const {
  return leg.well_typed() && leg_p.well_typed() && leg.cod == leg_p.cod;
}

Cospan Cospan::over_point(std::size_t x, std::size_t xp) {
  return {FinFn::constant(x, 1, 0), FinFn::constant(xp, 1, 0)};
}

bool Span::well_typed() const {
  return leg.well_typed() && leg_p.well_typed() && leg.dom == leg_p.dom;
}

Span Span::over_empty(std::size_t x, std::size_t xp) {
  return {FinFn{{0}, {x}, {}}, FinFn{{0}, {xp}, {}}};
}

// ---------------------------------------------------------------------------
// Lenses

namespace {

// Enumerates lenses fiber by fiber: put(x, y') ranges over the fiber of X' over s.leg(x).
// Visits in the same order as filtering every function into X'.
void for_each_fibered_lens(const Cospan& s, const Cospan& t,
                           const std::function<void(const FinFn&, const FinFn&)>& visit) {
  std::vector<std::vector<std::size_t>> fiber(s.leg.cod.size);
  for (std::size_t v = 0; v < s.xp(); ++v) fiber[s.leg_p(v)].push_back(v);
  for_each_function(s.x(), t.x(), [&](const FinFn& get) {
    auto cone = FinSetCat::pullback(compose(t.leg, get), t.leg_p);
    std::vector<const std::vector<std::size_t>*> choices;
    for (std::size_t q = 0; q < cone.apex; ++q) {
      choices.push_back(&fiber[s.leg(cone.p1(q))]);
      if (choices.back()->empty()) return true;
    }
    std::vector<std::size_t> at(cone.apex, 0);
    FinFn put{{cone.apex}, {s.xp()}, std::vector<std::size_t>(cone.apex)};
    while (true) {
      for (std::size_t q = 0; q < cone.apex; ++q) put.table[q] = (*choices[q])[at[q]];
      visit(get, put);
      std::size_t i = cone.apex;
      while (i > 0 && ++at[i - 1] == choices[i - 1]->size()) at[--i] = 0;
      if (i == 0) break;
    }
    return true;
  });
}

}  // namespace

std::vector<DLensCanonical> dlens_hom(const Cospan& s, const Cospan& t) {
  require(s.well_typed() && t.well_typed(), "dlens_hom: ill-typed cospan");
  std::vector<DLensCanonical> out;
  for_each_fibered_lens(s, t, [&](const FinFn& get, const FinFn& put) { out.push_back({get, put}); });
  return out;
}

std::size_t dlens_hom_count(const Cospan& s, const Cospan& t) {
  require(s.well_typed() && t.well_typed(), "dlens_hom: ill-typed cospan");
  std::vector<std::size_t> fiber(s.leg.cod.size, 0);
  for (std::size_t v = 0; v < s.xp(); ++v) ++fiber[s.leg_p(v)];
  std::size_t n = 0;
  for_each_function(s.x(), t.x(), [&](const FinFn& get) {
    auto cone = FinSetCat::pullback(compose(t.leg, get), t.leg_p);
    std::size_t k = 1;
    for (std::size_t q = 0; q < cone.apex && k > 0; ++q) k *= fiber[s.leg(cone.p1(q))];
    n += k;
    return true;
  });
  return n;
}

void check_dlens(const Cospan& s, const Cospan& t, const DLensCanonical& c) {
  require(c.get.well_typed() && c.put.well_typed() &&
              SetLens::is_lens(as_cospan(s), as_cospan(t), c.get, c.put),
          "not a lens: get " + show(c.get) + ", put " + show(c.put));
}

DLensCanonical dlens_identity(const Cospan& s) {
  auto [get, put] = SetLens::identity(as_cospan(s));
  return {get, put};
}

DLensCanonical dlens_compose(const Cospan& s, const Cospan& t, const Cospan& u,
                             const DLensCanonical& c2, const DLensCanonical& c1) {
  check_dlens(s, t, c1);
  check_dlens(t, u, c2);
  auto [get, put] = SetLens::compose(as_cospan(t), as_cospan(u), {c2.get, c2.put}, {c1.get, c1.put});
  return {get, put};
}

namespace {

void check_witness(const Cospan& s, const Cospan& t, const LensWitness& w, const Pullback& mp) {
  const std::size_t m = w.apex();
  require(w.to_a.well_typed() && w.to_b.well_typed() && w.m.well_typed() && w.get.well_typed() &&
              w.r.well_typed(),
          "lens witness: malformed function table");
  require(w.to_a.cod.size == s.a() && w.to_b.cod.size == t.a() && w.to_b.dom.size == m,
          "lens witness: span legs do not match the bases");
  require(w.m.dom.size == s.x() && w.m.cod.size == m && w.get.dom.size == s.x() &&
              w.get.cod.size == t.x(),
          "lens witness: l has the wrong type");
  require(compose(w.to_a, w.m) == s.leg, "lens witness: l is not over A");
  require(compose(w.to_b, w.m) == compose(t.leg, w.get),
          "lens witness: (m, get) does not land in the pullback M ×_B Y");
  require(w.r.dom == mp.p && w.r.cod.size == s.xp(), "lens witness: r has the wrong type");
  require(compose(s.leg_p, w.r) == compose(w.to_a, mp.p1), "lens witness: r is not over A");
}

}  // namespace

DLensCanonical dlens_canonicalize(const Cospan& s, const Cospan& t, const LensWitness& w) {
  Pullback mp = pullback(w.to_b, t.leg_p);
  check_witness(s, t, w, mp);
  Pullback q = pullback(compose(t.leg, w.get), t.leg_p);
  std::vector<std::size_t> put(q.p.size);
  for (std::size_t i = 0; i < q.p.size; ++i) put[i] = w.r(mp.index(w.m(q.p1(i)), q.p2(i)));
  return {w.get, from_table(s.xp(), std::move(put))};
}

LensWitness dlens_normal_witness(const Cospan& s, const Cospan& t, const DLensCanonical& c) {
  check_dlens(s, t, c);
  return {s.leg, compose(t.leg, c.get), FinFn::identity(s.x()), c.get, c.put};
}

LensWitness compose_lens_witness(const Cospan& s, const Cospan& t, const Cospan& u,
                                 const LensWitness& w2, const LensWitness& w1) {
  Pullback mp1 = pullback(w1.to_b, t.leg_p);
  Pullback mp2 = pullback(w2.to_b, u.leg_p);
  check_witness(s, t, w1, mp1);
  check_witness(t, u, w2, mp2);
  require(w2.to_a.cod == w1.to_b.cod, "compose_lens_witness: middle bases differ");
  Pullback k = pullback(w1.to_b, w2.to_a);
  LensWitness w;
  w.to_a = compose(w1.to_a, k.p1);
  w.to_b = compose(w2.to_b, k.p2);
  w.get = compose(w2.get, w1.get);
  std::vector<std::size_t> m(s.x());
  for (std::size_t x = 0; x < s.x(); ++x) m[x] = k.index(w1.m(x), w2.m(w1.get(x)));
  w.m = from_table(k.p.size, std::move(m));
  Pullback kp = pullback(w.to_b, u.leg_p);
  std::vector<std::size_t> r(kp.p.size);
  for (std::size_t i = 0; i < kp.p.size; ++i) {
    std::size_t mu = k.p1(kp.p1(i)), nu = k.p2(kp.p1(i));
    std::size_t yp = w2.r(mp2.index(nu, kp.p2(i)));
    r[i] = w1.r(mp1.index(mu, yp));
  }
  w.r = from_table(s.xp(), std::move(r));
  return w;
}

std::pair<LensWitness, LensWitness> lens_relation_step(const Cospan& s, const Cospan& t,
                                                        const LensWitness& over_m,
                                                        const FinFn& to_a2, const FinFn& to_b2,
                                                        const FinFn& phi, const FinFn& r2) {
  require(phi.well_typed() && phi.dom.size == over_m.apex() && phi.cod == to_a2.dom &&
              to_b2.dom == to_a2.dom,
          "lens_relation_step: φ has the wrong type");
  require(compose(to_a2, phi) == over_m.to_a && compose(to_b2, phi) == over_m.to_b,
          "lens_relation_step: φ is not a span map");
  Pullback p = pullback(over_m.to_b, t.leg_p);
  Pullback p2 = pullback(to_b2, t.leg_p);
  require(r2.dom == p2.p, "lens_relation_step: r' has the wrong type");
  std::vector<std::size_t> slid(p.p.size);
  for (std::size_t i = 0; i < p.p.size; ++i) slid[i] = r2(p2.index(phi(p.p1(i)), p.p2(i)));
  LensWitness left{to_a2, to_b2, compose(phi, over_m.m), over_m.get, r2};
  LensWitness right{over_m.to_a, over_m.to_b, over_m.m, over_m.get, from_table(s.xp(), std::move(slid))};
  return {left, right};
}

namespace {

struct SpanShape {
  FinFn to_a;
  FinFn to_b;
  Pullback back;                                // M ×_B Y'
  std::vector<std::vector<std::size_t>> choices;  // allowed r'(p) per element
  std::vector<std::pair<FinFn, FinFn>> forward;   // (m, get)
};

/// Backward maps over a span: every one if there are at most `limit`,
/// otherwise `limit` random ones.
std::vector<FinFn> backward_maps(const SpanShape& sp, std::size_t xp, std::size_t limit,
                                 std::mt19937_64& rng, bool& sampled) {
  std::vector<FinFn> out;
  std::size_t total = 1;
  for (const auto& c : sp.choices) {
    if (c.empty()) return out;
    total = total > limit ? total : total * c.size();
  }
  const std::size_t n = sp.choices.size();
  if (total <= limit) {
    std::vector<std::size_t> digit(n, 0);
    while (true) {
      std::vector<std::size_t> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = sp.choices[i][digit[i]];
      out.push_back(from_table(xp, std::move(t)));
      std::size_t i = n;
      while (i > 0 && ++digit[i - 1] == sp.choices[i - 1].size()) digit[--i] = 0;
      if (i == 0) break;
    }
    return out;
  }
  sampled = true;
  for (std::size_t k = 0; k < limit; ++k) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i)
      t[i] = sp.choices[i][std::uniform_int_distribution<std::size_t>(0, sp.choices[i].size() - 1)(rng)];
    out.push_back(from_table(xp, std::move(t)));
  }
  return out;
}

std::string describe(const LensWitness& w) {
  return "M=" + std::to_string(w.apex()) + " m=" + show(w.m) + " get=" + show(w.get) + " r=" + show(w.r);
}

}  // namespace

AuditResult dlens_audit(const Cospan& s, const Cospan& t, const AuditOptions& opt,
                        const LensCanonicalizer& canon) {
  require(s.well_typed() && t.well_typed(), "dlens_audit: ill-typed cospan");
  AuditResult res;
  std::mt19937_64 rng(opt.seed);

  for (const auto& c : dlens_hom(s, t))
    if (!(canon(s, t, dlens_normal_witness(s, t, c)) == c))
      res.report.law("normal-form", "get=" + show(c.get) + " put=" + show(c.put));

  std::vector<SpanShape> spans;
  for (std::size_t k = 0; k <= opt.max_apex; ++k)
    for_each_function(k, s.a(), [&](const FinFn& ta) {
      for_each_function(k, t.a(), [&](const FinFn& tb) {
        SpanShape sp{ta, tb, pullback(tb, t.leg_p), {}, {}};
        for (std::size_t i = 0; i < sp.back.p.size; ++i) {
          std::vector<std::size_t> c;
          for (std::size_t x = 0; x < s.xp(); ++x)
            if (s.leg_p(x) == ta(sp.back.p1(i))) c.push_back(x);
          sp.choices.push_back(std::move(c));
        }
        for_each_function(s.x(), t.x(), [&](const FinFn& get) {
          for_each_function(s.x(), k, [&](const FinFn& m) {
            if (compose(ta, m) == s.leg && compose(tb, m) == compose(t.leg, get))
              sp.forward.emplace_back(m, get);
            return true;
          });
          return true;
        });
        spans.push_back(std::move(sp));
        return true;
      });
      return true;
    });

  std::vector<std::vector<FinFn>> backs;
  for (const auto& sp : spans) backs.push_back(backward_maps(sp, s.xp(), opt.sample, rng, res.sampled));

  for (std::size_t i = 0; i < spans.size(); ++i)
    for (std::size_t j = 0; j < spans.size(); ++j) {
      const SpanShape &a = spans[i], &b = spans[j];
      if (a.forward.empty() || backs[j].empty()) continue;
      for_each_function(a.to_a.dom.size, b.to_a.dom.size, [&](const FinFn& phi) {
        if (!(compose(b.to_a, phi) == a.to_a && compose(b.to_b, phi) == a.to_b)) return true;
        for (const auto& [m, get] : a.forward)
          for (const auto& r2 : backs[j]) {
            LensWitness w{a.to_a, a.to_b, m, get, FinFn{}};
            auto [lhs, rhs] = lens_relation_step(s, t, w, b.to_a, b.to_b, phi, r2);
            ++res.steps;
            if (!(canon(s, t, lhs) == canon(s, t, rhs)))
              res.report.law("soundness", "φ=" + show(phi) + " between " + describe(lhs) + " and " + describe(rhs));
          }
        return true;
      });
    }

  for (std::size_t j = 0; j < spans.size(); ++j) {
    const SpanShape& b = spans[j];
    for (const auto& [m, get] : b.forward)
      for (const auto& r : backs[j]) {
        LensWitness normal{s.leg, compose(t.leg, get), FinFn::identity(s.x()), get, FinFn{}};
        auto [w, nf] = lens_relation_step(s, t, normal, b.to_a, b.to_b, m, r);
        ++res.witnesses;
        DLensCanonical c = canon(s, t, w);
        if (!(c == canon(s, t, nf)) || !(nf == dlens_normal_witness(s, t, c)))
          res.report.law("completeness", describe(w));
      }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Prisms

OpLens::Cospan as_opposite_cospan(const Span& s) { return {{s.leg_p}, {s.leg}}; }

std::vector<DPrismCanonical> dprism_hom(const Span& s, const Span& t) {
  require(s.well_typed() && t.well_typed(), "dprism_hom: ill-typed span");
  std::vector<DPrismCanonical> out;
  OpLens::for_each_lens(as_opposite_cospan(s), as_opposite_cospan(t),
                        [&](const auto& get, const auto& put) {
                          out.push_back({get.m, put.m});
                          return true;
                        });
  return out;
}

std::size_t dprism_hom_count(const Span& s, const Span& t) {
  require(s.well_typed() && t.well_typed(), "dprism_hom: ill-typed span");
  return OpLens::count(as_opposite_cospan(s), as_opposite_cospan(t));
}

void check_dprism(const Span& s, const Span& t, const DPrismCanonical& c) {
  require(c.match.well_typed() && c.review.well_typed() &&
              OpLens::is_lens(as_opposite_cospan(s), as_opposite_cospan(t), {c.match}, {c.review}),
          "not a prism: match " + show(c.match) + ", review " + show(c.review));
}

DPrismCanonical dprism_identity(const Span& s) {
  auto [get, put] = OpLens::identity(as_opposite_cospan(s));
  return {get.m, put.m};
}

DPrismCanonical dprism_compose(const Span& s, const Span& t, const Span& u,
                               const DPrismCanonical& c2, const DPrismCanonical& c1) {
  check_dprism(s, t, c1);
  check_dprism(t, u, c2);
  auto [get, put] = OpLens::compose(as_opposite_cospan(t), as_opposite_cospan(u),
                                    {{c2.match}, {c2.review}}, {{c1.match}, {c1.review}});
  return {get.m, put.m};
}

// ---------------------------------------------------------------------------
// Closed reduction

std::size_t CartesianClosed::exponent() const {
  std::size_t e = 1;
  for (std::size_t i = 0; i < yp; ++i) e *= xp;
  return e;
}

std::size_t CartesianClosed::eval(std::size_t k, std::size_t y) const {
  for (std::size_t i = yp; i > y + 1; --i) k /= xp;
  return k % xp;
}

FinFn CartesianClosed::transpose(const FinFn& r, std::size_t apex) const {
  require(r.cod.size == xp && r.dom.size == apex * yp, "transpose: r is not a map M × Y' → X'");
  std::vector<std::size_t> t(apex);
  for (std::size_t mu = 0; mu < apex; ++mu) {
    std::size_t k = 0;
    for (std::size_t y = 0; y < yp; ++y) k = k * xp + r(mu * yp + y);
    t[mu] = k;
  }
  return from_table(exponent(), std::move(t));
}

FinFn CartesianClosed::untranspose(const FinFn& rhat) const {
  require(rhat.cod.size == exponent(), "untranspose: codomain is not X'^{Y'}");
  std::vector<std::size_t> t(rhat.dom.size * yp);
  for (std::size_t mu = 0; mu < rhat.dom.size; ++mu)
    for (std::size_t y = 0; y < yp; ++y) t[mu * yp + y] = eval(rhat(mu), y);
  return from_table(xp, std::move(t));
}

ValidationReport check_closed_structure(const CartesianClosed& cs, std::size_t max_apex) {
  ValidationReport rep;
  const std::size_t e = cs.exponent();
  for (std::size_t m = 0; m <= max_apex; ++m) {
    for_each_function(m * cs.yp, cs.xp, [&](const FinFn& r) {
      if (!(cs.untranspose(cs.transpose(r, m)) == r)) rep.law("triangle-counit", "r=" + show(r));
      return true;
    });
    for_each_function(m, e, [&](const FinFn& rhat) {
      if (!(cs.transpose(cs.untranspose(rhat), m) == rhat)) rep.law("triangle-unit", "r̂=" + show(rhat));
      return true;
    });
    for (std::size_t m2 = 0; m2 <= max_apex; ++m2)
      for_each_function(m, m2, [&](const FinFn& phi) {
        for_each_function(m2 * cs.yp, cs.xp, [&](const FinFn& r2) {
          std::vector<std::size_t> slid(m * cs.yp);
          for (std::size_t mu = 0; mu < m; ++mu)
            for (std::size_t y = 0; y < cs.yp; ++y) slid[mu * cs.yp + y] = r2(phi(mu) * cs.yp + y);
          if (!(cs.transpose(from_table(cs.xp, slid), m) == compose(cs.transpose(r2, m2), phi)))
            rep.law("naturality", "φ=" + show(phi) + " r'=" + show(r2));
          return true;
        });
        return true;
      });
  }
  return rep;
}

FinFn closed_reduce(const CartesianClosed& cs, const Cospan& s, const Cospan& t,
                    const LensWitness& w) {
  require(s.a() == 1 && t.a() == 1, "closed_reduce: adjunction data is only given over a point");
  require(cs.xp == s.xp() && cs.yp == t.xp(),
          "closed_reduce: adjunction data is for Y'=" + std::to_string(cs.yp) + ", X'=" +
              std::to_string(cs.xp));
  dlens_canonicalize(s, t, w);
  const std::size_t e = cs.exponent();
  std::vector<std::size_t> out(s.x());
  FinFn rhat = cs.transpose(w.r, w.apex());
  for (std::size_t x = 0; x < s.x(); ++x) out[x] = rhat(w.m(x)) * t.x() + w.get(x);
  return from_table(e * t.x(), std::move(out));
}

}  // namespace dopt
