#include "dopt/tambara.hpp"

#include <optional>
#include <set>
#include <string>

#include "dopt/error.hpp"

namespace dopt {

namespace {

Table identity_table(std::size_t n) {
  Table t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  return t;
}

/// g ∘ f
Table after(const Table& g, const Table& f) {
  Table out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

bool maps_into(const Table& t, std::size_t dom, std::size_t cod) {
  if (t.size() != dom) return false;
  for (auto v : t)
    if (v >= cod) return false;
  return true;
}

std::string show(const OpticObject& s) {
  return "(" + std::to_string(s.x) + "," + std::to_string(s.xp) + ")^" + std::to_string(s.a);
}

std::string at(ObjId a, ObjId x, ObjId xp) { return show(OpticObject{a, x, xp}); }

/// Structural checks shared by validate_tambara and decode_tambara.
void check_shape(const TambaraRep& p, ValidationReport& rep) {
  if (!p.l || !p.r) return rep.structural("shape", "missing indexed category");
  if (p.l->base != p.r->base) return rep.structural("shape", "L and R over different bases");
  const auto& b = *p.l->base;
  if (p.sizes.size() != b.num_objects || p.action.size() != b.num_objects ||
      p.zeta.size() != b.num_objects * b.num_objects)
    return rep.structural("shape", "table counts do not match the base");
  for (ObjId a = 0; a < b.num_objects; ++a) {
    const auto &la = p.l->fiber(a), &ra = p.r->fiber(a);
    if (p.sizes[a].size() != la.num_objects() * ra.num_objects())
      return rep.structural("shape", "sizes over " + std::to_string(a));
    if (p.action[a].size() != la.num_morphisms() * ra.num_morphisms())
      return rep.structural("shape", "action over " + std::to_string(a));
    for (MorId lm = 0; lm < la.num_morphisms(); ++lm)
      for (MorId rm = 0; rm < ra.num_morphisms(); ++rm)
        if (!maps_into(p.act(a, lm, rm), p.size(a, la.dst(lm), ra.src(rm)), p.size(a, la.src(lm), ra.dst(rm))))
          rep.structural("shape", "P^" + std::to_string(a) + "(" + std::to_string(lm) + "," +
                                      std::to_string(rm) + ") has the wrong type");
  }
  for (ObjId a = 0; a < b.num_objects; ++a)
    for (ObjId c = 0; c < b.num_objects; ++c) {
      const auto& z = p.zeta[b.hom_index(a, c)];
      const auto& h = b.hom(a, c);
      const auto &lc = p.l->fiber(c), &rc = p.r->fiber(c);
      if (z.size() != h.num_objects()) {
        rep.structural("shape", "zeta count over " + std::to_string(a) + "->" + std::to_string(c));
        continue;
      }
      for (ObjId f = 0; f < h.num_objects(); ++f) {
        if (z[f].size() != lc.num_objects() * rc.num_objects()) {
          rep.structural("shape", "zeta_" + std::to_string(f) + " component count");
          continue;
        }
        for (ObjId y = 0; y < lc.num_objects(); ++y)
          for (ObjId yp = 0; yp < rc.num_objects(); ++yp) {
            auto fy = p.l->pull_obj(a, c, f, y), fyp = p.r->pull_obj(a, c, f, yp);
            if (!maps_into(p.zeta_at(a, c, f, y, yp), p.size(c, y, yp), p.size(a, fy, fyp)))
              rep.structural("shape", "zeta_" + std::to_string(f) + " at " + at(c, y, yp) +
                                          " has the wrong type");
          }
      }
    }
}

void expect_equal(ValidationReport& rep, const char* law, const Table& lhs, const Table& rhs,
                  const std::string& where) {
  if (lhs != rhs) rep.law(law, where);
}

}  // namespace

ValidationReport validate_tambara(const TambaraRep& p) {
  ValidationReport rep;
  check_shape(p, rep);
  if (!rep.ok()) return rep;
  const auto& L = *p.l;
  const auto& R = *p.r;
  const auto& b = *L.base;

  for (ObjId a = 0; a < b.num_objects; ++a) {
    const auto &la = L.fiber(a), &ra = R.fiber(a);
    for (ObjId x = 0; x < la.num_objects(); ++x)
      for (ObjId xp = 0; xp < ra.num_objects(); ++xp)
        expect_equal(rep, "functoriality", p.act(a, la.identity(x), ra.identity(xp)),
                     identity_table(p.size(a, x, xp)), "identity at " + at(a, x, xp));
    for (MorId l1 = 0; l1 < la.num_morphisms(); ++l1)
      for (ObjId x2 = 0; x2 < la.num_objects(); ++x2)
        for (MorId l2 : la.hom(la.dst(l1), x2))
          for (MorId r2 = 0; r2 < ra.num_morphisms(); ++r2)
            for (ObjId x0p = 0; x0p < ra.num_objects(); ++x0p)
              for (MorId r1 : ra.hom(ra.dst(r2), x0p)) {
                auto lhs = p.act(a, la.compose(l2, l1), ra.compose(r1, r2));
                auto rhs = after(p.act(a, l1, r1), p.act(a, l2, r2));
                expect_equal(rep, "functoriality", lhs, rhs,
                             "over " + std::to_string(a) + " l=" + std::to_string(l2) + "∘" + std::to_string(l1) +
                                 " r=" + std::to_string(r1) + "∘" + std::to_string(r2));
              }
  }

  for (ObjId a = 0; a < b.num_objects; ++a)
    for (ObjId c = 0; c < b.num_objects; ++c) {
      const auto& h = b.hom(a, c);
      const auto &lc = L.fiber(c), &rc = R.fiber(c);
      for (ObjId f = 0; f < h.num_objects(); ++f) {
        const auto &pf = L.pullback(a, c, f), &rf = R.pullback(a, c, f);
        for (MorId l = 0; l < lc.num_morphisms(); ++l)
          for (MorId r = 0; r < rc.num_morphisms(); ++r) {
            ObjId y0 = lc.src(l), y1 = lc.dst(l), y1p = rc.src(r), y0p = rc.dst(r);
            auto lhs = after(p.zeta_at(a, c, f, y0, y0p), p.act(c, l, r));
            auto rhs = after(p.act(a, pf.mor(l), rf.mor(r)), p.zeta_at(a, c, f, y1, y1p));
            expect_equal(rep, "naturality", lhs, rhs,
                         "zeta_" + std::to_string(f) + " over " + std::to_string(a) + "->" + std::to_string(c) +
                             " at l=" + std::to_string(l) + " r=" + std::to_string(r));
          }
      }
      for (MorId m = 0; m < h.num_morphisms(); ++m) {
        ObjId f = h.src(m), g = h.dst(m);
        for (ObjId y = 0; y < lc.num_objects(); ++y)
          for (ObjId yp = 0; yp < rc.num_objects(); ++yp) {
            ObjId fy = L.pull_obj(a, c, f, y), gyp = R.pull_obj(a, c, g, yp);
            auto lhs = after(p.act(a, L.fiber(a).identity(fy), R.two_cell(a, c, m, yp)), p.zeta_at(a, c, f, y, yp));
            auto rhs = after(p.act(a, L.two_cell(a, c, m, y), R.fiber(a).identity(gyp)), p.zeta_at(a, c, g, y, yp));
            expect_equal(rep, "extranaturality", lhs, rhs,
                         "2-cell " + std::to_string(m) + ": " + std::to_string(f) + "=>" + std::to_string(g) +
                             " over " + std::to_string(a) + "->" + std::to_string(c) + " at " + at(c, y, yp));
          }
      }
    }

  for (ObjId a = 0; a < b.num_objects; ++a) {
    ObjId u = b.unit(a);
    for (ObjId x = 0; x < L.fiber(a).num_objects(); ++x)
      for (ObjId xp = 0; xp < R.fiber(a).num_objects(); ++xp) {
        auto lhs = after(p.act(a, L.theta_unit(a, x), R.theta_unit_inv(a, xp)), p.zeta_at(a, a, u, x, xp));
        expect_equal(rep, "identity-law", lhs, identity_table(p.size(a, x, xp)), "at " + at(a, x, xp));
      }
  }

  for (ObjId a = 0; a < b.num_objects; ++a)
    for (ObjId bb = 0; bb < b.num_objects; ++bb)
      for (ObjId c = 0; c < b.num_objects; ++c)
        for (ObjId f = 0; f < b.hom(a, bb).num_objects(); ++f)
          for (ObjId g = 0; g < b.hom(bb, c).num_objects(); ++g) {
            ObjId fg = b.hcomp(a, bb, c, f, g);
            for (ObjId z = 0; z < L.fiber(c).num_objects(); ++z)
              for (ObjId zp = 0; zp < R.fiber(c).num_objects(); ++zp) {
                auto lhs = after(p.act(a, L.theta(a, bb, c, f, g, z), R.theta_inv(a, bb, c, f, g, zp)),
                                 p.zeta_at(a, c, fg, z, zp));
                auto rhs = after(p.zeta_at(a, bb, f, L.pull_obj(bb, c, g, z), R.pull_obj(bb, c, g, zp)),
                                 p.zeta_at(bb, c, g, z, zp));
                expect_equal(rep, "composition-law", lhs, rhs,
                             "f=" + std::to_string(f) + " g=" + std::to_string(g) + " over " + std::to_string(a) +
                                 "->" + std::to_string(bb) + "->" + std::to_string(c) + " at " + at(c, z, zp));
              }
          }
  return rep;
}

namespace {

bool tambara_morphism_ok(const TambaraRep& p, const TambaraRep& q, const TambaraMorphism& eta,
                         ValidationReport* rep) {
  const auto& L = *p.l;
  const auto& R = *p.r;
  const auto& b = *L.base;
  bool ok = true;
  auto fail = [&](const char* law, const std::string& where) {
    ok = false;
    if (rep) rep->law(law, where);
    return rep != nullptr;
  };
  auto comp = [&](ObjId a, ObjId x, ObjId xp) -> const Table& {
    return eta.components[a][x * R.fiber(a).num_objects() + xp];
  };
  for (ObjId a = 0; a < b.num_objects; ++a) {
    const auto &la = L.fiber(a), &ra = R.fiber(a);
    for (MorId lm = 0; lm < la.num_morphisms(); ++lm)
      for (MorId rm = 0; rm < ra.num_morphisms(); ++rm) {
        auto lhs = after(comp(a, la.src(lm), ra.dst(rm)), p.act(a, lm, rm));
        auto rhs = after(q.act(a, lm, rm), comp(a, la.dst(lm), ra.src(rm)));
        if (lhs != rhs && !fail("naturality", "over " + std::to_string(a) + " at l=" + std::to_string(lm) +
                                                  " r=" + std::to_string(rm)))
          return false;
      }
  }
  for (ObjId a = 0; a < b.num_objects; ++a)
    for (ObjId c = 0; c < b.num_objects; ++c)
      for (ObjId f = 0; f < b.hom(a, c).num_objects(); ++f)
        for (ObjId y = 0; y < L.fiber(c).num_objects(); ++y)
          for (ObjId yp = 0; yp < R.fiber(c).num_objects(); ++yp) {
            auto lhs = after(comp(a, L.pull_obj(a, c, f, y), R.pull_obj(a, c, f, yp)), p.zeta_at(a, c, f, y, yp));
            auto rhs = after(q.zeta_at(a, c, f, y, yp), comp(c, y, yp));
            if (lhs != rhs && !fail("tambara-morphism", "zeta_" + std::to_string(f) + " over " + std::to_string(a) +
                                                            "->" + std::to_string(c) + " at " + at(c, y, yp)))
              return false;
          }
  return ok;
}

}  // namespace

ValidationReport validate_tambara_morphism(const TambaraRep& p, const TambaraRep& q,
                                           const TambaraMorphism& eta) {
  ValidationReport rep;
  check_shape(p, rep);
  check_shape(q, rep);
  if (!rep.ok()) return rep;
  if (p.l != q.l || p.r != q.r) {
    rep.structural("shape", "representations over different indexed categories");
    return rep;
  }
  const auto& b = *p.l->base;
  if (eta.components.size() != b.num_objects) {
    rep.structural("shape", "component count");
    return rep;
  }
  for (ObjId a = 0; a < b.num_objects; ++a) {
    if (eta.components[a].size() != p.sizes[a].size()) {
      rep.structural("shape", "component count over " + std::to_string(a));
      return rep;
    }
    for (std::size_t i = 0; i < p.sizes[a].size(); ++i)
      if (!maps_into(eta.components[a][i], p.sizes[a][i], q.sizes[a][i]))
        rep.structural("shape", "component " + std::to_string(i) + " over " + std::to_string(a));
  }
  if (!rep.ok()) return rep;
  tambara_morphism_ok(p, q, eta, &rep);
  return rep;
}

TambaraRep constant_tambara(const IndexedPtr& l, const IndexedPtr& r, std::size_t n) {
  if (!l || !r || l->base != r->base) throw StructuralError("constant_tambara: L and R must share a base");
  const auto& b = *l->base;
  TambaraRep p{l, r, {}, {}, {}};
  auto id = identity_table(n);
  for (ObjId a = 0; a < b.num_objects; ++a) {
    p.sizes.emplace_back(l->fiber(a).num_objects() * r->fiber(a).num_objects(), n);
    p.action.emplace_back(l->fiber(a).num_morphisms() * r->fiber(a).num_morphisms(), id);
  }
  p.zeta.resize(b.num_objects * b.num_objects);
  for (ObjId a = 0; a < b.num_objects; ++a)
    for (ObjId c = 0; c < b.num_objects; ++c)
      p.zeta[b.hom_index(a, c)].assign(b.hom(a, c).num_objects(),
                                       std::vector<Table>(l->fiber(c).num_objects() * r->fiber(c).num_objects(), id));
  return p;
}

// ---------------------------------------------------------------------------
// ι

OpticMorphism iota_apply(const OpticCategory& cat, ObjId a, MorId l, MorId r) {
  const auto &L = cat.left(), &R = cat.right();
  const auto &la = L.fiber(a), &ra = R.fiber(a);
  OpticObject s{a, la.src(l), ra.dst(r)}, t{a, la.dst(l), ra.src(r)};
  Witness w{cat.base().unit(a), la.compose(L.theta_unit(a, t.x), l), ra.compose(r, R.theta_unit_inv(a, t.xp))};
  return cat.make(s, t, w);
}

OpticMorphism zeta_optic(const OpticCategory& cat, ObjId a, ObjId b, ObjId f, ObjId y, ObjId yp) {
  const auto &L = cat.left(), &R = cat.right();
  ObjId fy = L.pull_obj(a, b, f, y), fyp = R.pull_obj(a, b, f, yp);
  return cat.make({a, fy, fyp}, {b, y, yp}, Witness{f, L.fiber(a).identity(fy), R.fiber(a).identity(fyp)});
}

ValidationReport check_iota(const OpticCategory& cat) {
  ValidationReport rep;
  const auto &L = cat.left(), &R = cat.right();
  const auto& b = cat.base();
  auto same = [&](const char* law, const OpticMorphism& x, const OpticMorphism& y, const std::string& where) {
    if (!cat.optic_equal(x, y)) rep.law(law, where);
  };
  auto objects = cat.objects();

  for (ObjId a = 0; a < b.num_objects; ++a) {
    const auto &la = L.fiber(a), &ra = R.fiber(a);
    for (ObjId x = 0; x < la.num_objects(); ++x)
      for (ObjId xp = 0; xp < ra.num_objects(); ++xp)
        same("iota-functor", iota_apply(cat, a, la.identity(x), ra.identity(xp)), cat.optic_identity({a, x, xp}),
             "identity at " + at(a, x, xp));
    for (MorId l1 = 0; l1 < la.num_morphisms(); ++l1)
      for (ObjId x2 = 0; x2 < la.num_objects(); ++x2)
        for (MorId l2 : la.hom(la.dst(l1), x2))
          for (MorId r2 = 0; r2 < ra.num_morphisms(); ++r2)
            for (ObjId x0p = 0; x0p < ra.num_objects(); ++x0p)
              for (MorId r1 : ra.hom(ra.dst(r2), x0p))
                same("iota-functor", cat.optic_compose(iota_apply(cat, a, l2, r2), iota_apply(cat, a, l1, r1)),
                     iota_apply(cat, a, la.compose(l2, l1), ra.compose(r1, r2)),
                     "over " + std::to_string(a) + " l=" + std::to_string(l2) + "∘" + std::to_string(l1) +
                         " r=" + std::to_string(r1) + "∘" + std::to_string(r2));

    // ⟨l2|r2⟩ ∘ ι(l1, r1) = ⟨l2∘l1 | r1∘r2⟩
    for (MorId l1 = 0; l1 < la.num_morphisms(); ++l1)
      for (MorId r1 = 0; r1 < ra.num_morphisms(); ++r1) {
        auto i = iota_apply(cat, a, l1, r1);
        for (const auto& t : objects) {
          const auto& c = cat.hom_coend(i.dst, t);
          for (std::size_t k = 0; k < c.num_classes(); ++k)
            for (const auto& w : cat.class_witnesses(i.dst, t, k)) {
              auto m = cat.make(i.dst, t, w);
              Witness expect{w.f, la.compose(w.l, l1), ra.compose(r1, w.r)};
              same("iota-right", cat.optic_compose(m, i), cat.make(i.src, t, expect),
                   "l1=" + std::to_string(l1) + " r1=" + std::to_string(r1) + " into " + show(t));
            }
        }
      }
  }

  // ι(l2, r2) ∘ ⟨l1|r1⟩ = ⟨f*(l2)∘l1 | r1∘f*(r2)⟩
  for (const auto& s : objects)
    for (const auto& t : objects) {
      const auto &lb = L.fiber(t.a), &rb = R.fiber(t.a);
      const auto& c = cat.hom_coend(s, t);
      for (std::size_t k = 0; k < c.num_classes(); ++k)
        for (const auto& w : cat.class_witnesses(s, t, k)) {
          auto m = cat.make(s, t, w);
          for (ObjId y2 = 0; y2 < lb.num_objects(); ++y2)
            for (MorId l2 : lb.hom(t.x, y2))
              for (ObjId y2p = 0; y2p < rb.num_objects(); ++y2p)
                for (MorId r2 : rb.hom(y2p, t.xp)) {
                  Witness expect{w.f, L.fiber(s.a).compose(L.pull_mor(s.a, t.a, w.f, l2), w.l),
                                 R.fiber(s.a).compose(w.r, R.pull_mor(s.a, t.a, w.f, r2))};
                  same("iota-left", cat.optic_compose(iota_apply(cat, t.a, l2, r2), m),
                       cat.make(s, {t.a, y2, y2p}, expect),
                       show(s) + "->" + show(t) + " l2=" + std::to_string(l2) + " r2=" + std::to_string(r2));
                }
        }
    }

  for (ObjId a = 0; a < b.num_objects; ++a)
    for (ObjId c = 0; c < b.num_objects; ++c) {
      const auto& h = b.hom(a, c);
      const auto &lc = L.fiber(c), &rc = R.fiber(c);
      for (ObjId f = 0; f < h.num_objects(); ++f)
        for (MorId l = 0; l < lc.num_morphisms(); ++l)
          for (MorId r = 0; r < rc.num_morphisms(); ++r) {
            auto lhs = cat.optic_compose(iota_apply(cat, c, l, r), zeta_optic(cat, a, c, f, lc.src(l), rc.dst(r)));
            auto rhs = cat.optic_compose(zeta_optic(cat, a, c, f, lc.dst(l), rc.src(r)),
                                         iota_apply(cat, a, L.pull_mor(a, c, f, l), R.pull_mor(a, c, f, r)));
            same("iota-natural", lhs, rhs, "f=" + std::to_string(f) + " l=" + std::to_string(l) + " r=" + std::to_string(r));
          }
      for (MorId m = 0; m < h.num_morphisms(); ++m) {
        ObjId f = h.src(m), g = h.dst(m);
        for (ObjId y = 0; y < lc.num_objects(); ++y)
          for (ObjId yp = 0; yp < rc.num_objects(); ++yp) {
            ObjId fy = L.pull_obj(a, c, f, y), gyp = R.pull_obj(a, c, g, yp);
            auto lhs = cat.optic_compose(zeta_optic(cat, a, c, g, y, yp),
                                         iota_apply(cat, a, L.two_cell(a, c, m, y), R.fiber(a).identity(gyp)));
            auto rhs = cat.optic_compose(zeta_optic(cat, a, c, f, y, yp),
                                         iota_apply(cat, a, L.fiber(a).identity(fy), R.two_cell(a, c, m, yp)));
            same("iota-extranatural", lhs, rhs, "2-cell " + std::to_string(m) + " at " + at(c, y, yp));
          }
      }
    }

  for (ObjId a = 0; a < b.num_objects; ++a)
    for (ObjId x = 0; x < L.fiber(a).num_objects(); ++x)
      for (ObjId xp = 0; xp < R.fiber(a).num_objects(); ++xp) {
        auto lhs = cat.optic_compose(zeta_optic(cat, a, a, b.unit(a), x, xp),
                                     iota_apply(cat, a, L.theta_unit(a, x), R.theta_unit_inv(a, xp)));
        same("iota-identity", lhs, cat.optic_identity({a, x, xp}), "at " + at(a, x, xp));
      }

  for (ObjId a = 0; a < b.num_objects; ++a)
    for (ObjId bb = 0; bb < b.num_objects; ++bb)
      for (ObjId c = 0; c < b.num_objects; ++c)
        for (ObjId f = 0; f < b.hom(a, bb).num_objects(); ++f)
          for (ObjId g = 0; g < b.hom(bb, c).num_objects(); ++g)
            for (ObjId z = 0; z < L.fiber(c).num_objects(); ++z)
              for (ObjId zp = 0; zp < R.fiber(c).num_objects(); ++zp) {
                ObjId fg = b.hcomp(a, bb, c, f, g);
                auto lhs = cat.optic_compose(zeta_optic(cat, a, c, fg, z, zp),
                                             iota_apply(cat, a, L.theta(a, bb, c, f, g, z), R.theta_inv(a, bb, c, f, g, zp)));
                auto rhs = cat.optic_compose(zeta_optic(cat, bb, c, g, z, zp),
                                             zeta_optic(cat, a, bb, f, L.pull_obj(bb, c, g, z), R.pull_obj(bb, c, g, zp)));
                same("iota-composition", lhs, rhs, "f=" + std::to_string(f) + " g=" + std::to_string(g) + " at " + at(c, z, zp));
              }
  return rep;
}

// ---------------------------------------------------------------------------
// Presheaves

OpticTable optic_table(const OpticCategory& cat) {
  OpticTable t;
  t.objects = cat.objects();
  const std::size_t n = t.n();
  for (std::size_t i = 0; i < n; ++i) t.index[t.objects[i]] = i;
  t.hom_sizes.resize(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t u = 0; u < n; ++u) t.hom_sizes[s * n + u] = cat.hom_size(t.objects[s], t.objects[u]);
  for (std::size_t s = 0; s < n; ++s) t.identity.push_back(cat.optic_identity(t.objects[s]).cls);
  t.compose.resize(n * n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t u = 0; u < n; ++u) {
        auto& out = t.compose[(s * n + m) * n + u];
        std::size_t h1 = t.hom(s, m), h2 = t.hom(m, u);
        out.resize(h1 * h2);
        for (std::size_t c2 = 0; c2 < h2; ++c2)
          for (std::size_t c1 = 0; c1 < h1; ++c1)
            out[c2 * h1 + c1] = cat.optic_compose(cat.morphism(t.objects[m], t.objects[u], c2),
                                                  cat.morphism(t.objects[s], t.objects[m], c1))
                                    .cls;
      }
  return t;
}

namespace {

bool presheaf_shape(const OpticTable& t, const Presheaf& f, ValidationReport& rep) {
  const std::size_t n = t.n();
  if (f.sizes.size() != n || f.action.size() != n * n) {
    rep.structural("shape", "presheaf table counts do not match the optic category");
    return false;
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t u = 0; u < n; ++u) {
      const auto& a = f.action[s * n + u];
      if (a.size() != t.hom(s, u)) {
        rep.structural("shape", "class count of " + show(t.objects[s]) + "->" + show(t.objects[u]));
        continue;
      }
      for (std::size_t c = 0; c < a.size(); ++c)
        if (!maps_into(a[c], f.sizes[u], f.sizes[s]))
          rep.structural("shape", "F of class " + std::to_string(c) + " of " + show(t.objects[s]) + "->" +
                                      show(t.objects[u]) + " has the wrong type");
    }
  return rep.ok();
}

bool presheaf_laws(const OpticTable& t, const Presheaf& f, ValidationReport* rep) {
  const std::size_t n = t.n();
  for (std::size_t s = 0; s < n; ++s)
    if (f.action[s * n + s][t.identity[s]] != identity_table(f.sizes[s])) {
      if (!rep) return false;
      rep->law("presheaf-identity", "at " + show(t.objects[s]));
    }
  bool ok = true;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t c2 = 0; c2 < t.hom(m, u); ++c2)
          for (std::size_t c1 = 0; c1 < t.hom(s, m); ++c1) {
            const auto& lhs = f.action[s * n + u][t.comp(s, m, u, c2, c1)];
            const auto& g1 = f.action[s * n + m][c1];
            const auto& g2 = f.action[m * n + u][c2];
            bool eq = true;
            for (std::size_t i = 0; i < lhs.size() && eq; ++i) eq = lhs[i] == g1[g2[i]];
            if (eq) continue;
            ok = false;
            if (!rep) return false;
            rep->law("presheaf-composition", "classes " + std::to_string(c1) + ": " + show(t.objects[s]) + "->" +
                                                 show(t.objects[m]) + " and " + std::to_string(c2) + ": ->" +
                                                 show(t.objects[u]));
          }
  return ok && (!rep || rep->ok());
}

bool presheaf_natural(const OpticTable& t, const Presheaf& f, const Presheaf& g, const PresheafMorphism& eta,
                      ValidationReport* rep) {
  const std::size_t n = t.n();
  bool ok = true;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t c = 0; c < t.hom(s, u); ++c) {
        const auto &fm = f.action[s * n + u][c], &gm = g.action[s * n + u][c];
        bool eq = true;
        for (std::size_t i = 0; i < fm.size() && eq; ++i) eq = gm[eta[u][i]] == eta[s][fm[i]];
        if (eq) continue;
        ok = false;
        if (!rep) return false;
        rep->law("naturality", "class " + std::to_string(c) + " of " + show(t.objects[s]) + "->" + show(t.objects[u]));
      }
  return ok;
}

}  // namespace

ValidationReport validate_presheaf(const OpticTable& t, const Presheaf& f) {
  ValidationReport rep;
  if (presheaf_shape(t, f, rep)) presheaf_laws(t, f, &rep);
  return rep;
}

ValidationReport validate_presheaf_morphism(const OpticTable& t, const Presheaf& f, const Presheaf& g,
                                            const PresheafMorphism& eta) {
  ValidationReport rep;
  if (!presheaf_shape(t, f, rep) || !presheaf_shape(t, g, rep)) return rep;
  if (eta.size() != t.n()) {
    rep.structural("shape", "component count");
    return rep;
  }
  for (std::size_t s = 0; s < t.n(); ++s)
    if (!maps_into(eta[s], f.sizes[s], g.sizes[s])) rep.structural("shape", "component at " + show(t.objects[s]));
  if (rep.ok()) presheaf_natural(t, f, g, eta, &rep);
  return rep;
}

Presheaf representable(const OpticTable& t, const OpticObject& target) {
  auto it = t.index.find(target);
  if (it == t.index.end()) throw StructuralError("representable: unknown object " + show(target));
  const std::size_t n = t.n(), ti = it->second;
  Presheaf f;
  for (std::size_t s = 0; s < n; ++s) f.sizes.push_back(t.hom(s, ti));
  f.action.resize(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t c = 0; c < t.hom(s, u); ++c) {
        Table m(t.hom(u, ti));
        for (std::size_t d = 0; d < m.size(); ++d) m[d] = t.comp(s, u, ti, d, c);
        f.action[s * n + u].push_back(std::move(m));
      }
  return f;
}

Presheaf constant_presheaf(const OpticTable& t, std::size_t k) {
  const std::size_t n = t.n();
  Presheaf f{std::vector<std::size_t>(n, k), std::vector<std::vector<Table>>(n * n)};
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t u = 0; u < n; ++u) f.action[s * n + u].assign(t.hom(s, u), identity_table(k));
  return f;
}

TambaraRep encode_presheaf(const OpticCategory& cat, const OpticTable& t, const Presheaf& f) {
  auto v = validate_presheaf(t, f);
  if (!v.ok()) throw StructuralError("encode_presheaf: " + v.issues().front().law + ": " + v.issues().front().detail);
  const auto &L = cat.left(), &R = cat.right();
  const auto& b = cat.base();
  const std::size_t n = t.n();
  auto idx = [&](const OpticObject& o) { return t.index.at(o); };
  auto image = [&](const OpticMorphism& m) -> const Table& {
    return f.action[idx(m.src) * n + idx(m.dst)][m.cls];
  };
  TambaraRep p{cat.left_ptr(), cat.right_ptr(), {}, {}, {}};
  p.sizes.resize(b.num_objects);
  p.action.resize(b.num_objects);
  for (ObjId a = 0; a < b.num_objects; ++a) {
    const auto &la = L.fiber(a), &ra = R.fiber(a);
    for (ObjId x = 0; x < la.num_objects(); ++x)
      for (ObjId xp = 0; xp < ra.num_objects(); ++xp) p.sizes[a].push_back(f.sizes[idx({a, x, xp})]);
    for (MorId lm = 0; lm < la.num_morphisms(); ++lm)
      for (MorId rm = 0; rm < ra.num_morphisms(); ++rm) p.action[a].push_back(image(iota_apply(cat, a, lm, rm)));
  }
  p.zeta.resize(b.num_objects * b.num_objects);
  for (ObjId a = 0; a < b.num_objects; ++a)
    for (ObjId c = 0; c < b.num_objects; ++c) {
      auto& z = p.zeta[b.hom_index(a, c)];
      z.resize(b.hom(a, c).num_objects());
      for (ObjId fc = 0; fc < z.size(); ++fc)
        for (ObjId y = 0; y < L.fiber(c).num_objects(); ++y)
          for (ObjId yp = 0; yp < R.fiber(c).num_objects(); ++yp)
            z[fc].push_back(image(zeta_optic(cat, a, c, fc, y, yp)));
    }
  return p;
}

Presheaf decode_tambara(const OpticCategory& cat, const OpticTable& t, const TambaraRep& p) {
  ValidationReport shape;
  check_shape(p, shape);
  if (!shape.ok()) throw StructuralError("decode_tambara: " + shape.issues().front().detail);
  if (p.l != cat.left_ptr() || p.r != cat.right_ptr())
    throw StructuralError("decode_tambara: representation over other indexed categories");
  const std::size_t n = t.n();
  Presheaf f;
  for (const auto& s : t.objects) f.sizes.push_back(p.size(s.a, s.x, s.xp));
  f.action.resize(n * n);
  for (std::size_t si = 0; si < n; ++si)
    for (std::size_t ui = 0; ui < n; ++ui) {
      const auto &s = t.objects[si], &u = t.objects[ui];
      for (std::size_t c = 0; c < t.hom(si, ui); ++c) {
        std::optional<Table> value;
        Witness first;
        for (const auto& w : cat.class_witnesses(s, u, c)) {
          auto m = after(p.act(s.a, w.l, w.r), p.zeta_at(s.a, u.a, w.f, u.x, u.xp));
          if (!value) {
            value = std::move(m);
            first = w;
          } else if (m != *value) {
            throw WitnessDependenceError(
                "decode_tambara: class " + std::to_string(c) + " of " + show(s) + "->" + show(u) +
                " decodes differently through witnesses (f=" + std::to_string(first.f) + " l=" +
                std::to_string(first.l) + " r=" + std::to_string(first.r) + ") and (f=" + std::to_string(w.f) +
                " l=" + std::to_string(w.l) + " r=" + std::to_string(w.r) + ")");
          }
        }
        f.action[si * n + ui].push_back(std::move(*value));
      }
    }
  return f;
}

TambaraMorphism tambara_morphism_of(const OpticTable& t, const TambaraRep& p, const PresheafMorphism& eta) {
  TambaraMorphism out;
  out.components.resize(p.sizes.size());
  for (std::size_t a = 0; a < p.sizes.size(); ++a) out.components[a].resize(p.sizes[a].size());
  for (std::size_t i = 0; i < t.n(); ++i) {
    const auto& s = t.objects[i];
    out.components[s.a][s.x * p.r->fiber(s.a).num_objects() + s.xp] = eta[i];
  }
  return out;
}

PresheafMorphism presheaf_morphism_of(const OpticTable& t, const TambaraRep& p, const TambaraMorphism& eta) {
  PresheafMorphism out;
  for (const auto& s : t.objects) out.push_back(eta.components[s.a][s.x * p.r->fiber(s.a).num_objects() + s.xp]);
  return out;
}

std::vector<Presheaf> generated_family(const OpticTable& t) {
  std::vector<Presheaf> bases;
  for (const auto& o : t.objects) bases.push_back(representable(t, o));
  for (std::size_t k = 0; k <= 2; ++k) bases.push_back(constant_presheaf(t, k));

  auto key = [](const Presheaf& f) { return std::pair{f.sizes, f.action}; };
  std::set<decltype(key(bases[0]))> seen;
  std::vector<Presheaf> out;
  for (const auto& f : bases)
    if (seen.insert(key(f)).second) out.push_back(f);

  const std::size_t n = t.n();
  for (const auto& f : bases)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t c = 0; c < f.action[s * n + u].size(); ++c)
          for (std::size_t i = 0; i < f.sizes[u]; ++i)
            for (std::size_t v = 0; v < f.sizes[s]; ++v) {
              if (v == f.action[s * n + u][c][i]) continue;
              Presheaf g = f;
              g.action[s * n + u][c][i] = v;
              if (!presheaf_laws(t, g, nullptr)) continue;
              if (seen.insert(key(g)).second) out.push_back(std::move(g));
            }
  return out;
}

RoundtripResult roundtrip_check(const OpticCategory& cat, const RoundtripOptions& opt) {
  RoundtripResult res;
  auto t = optic_table(cat);
  auto family = generated_family(t);
  const std::size_t n = t.n();
  res.presheaves = family.size();
  res.mutations = family.size() - std::min(family.size(), n + 3);

  std::vector<TambaraRep> encoded;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& f = family[i];
    auto where = "presheaf " + std::to_string(i);
    auto p = encode_presheaf(cat, t, f);
    auto v = validate_tambara(p);
    if (!v.ok()) res.report.law("encode-valid", where + ": " + v.issues().front().law);
    try {
      auto d = decode_tambara(cat, t, p);
      if (d != f) res.report.law("decode-encode", where);
      if (encode_presheaf(cat, t, d) != p) res.report.law("encode-decode", where);
    } catch (const WitnessDependenceError& e) {
      res.report.law("decode-encode", where + ": " + e.what());
    }
    encoded.push_back(std::move(p));
  }

  // Yoneda: the class c: S → T acts on id_T to give c itself.
  for (std::size_t ti = 0; ti < n; ++ti) {
    auto d = decode_tambara(cat, t, encode_presheaf(cat, t, representable(t, t.objects[ti])));
    for (std::size_t s = 0; s < n; ++s) {
      std::set<std::size_t> images;
      for (std::size_t c = 0; c < t.hom(s, ti); ++c) images.insert(d.action[s * n + ti][c][t.identity[ti]]);
      if (images.size() != t.hom(s, ti))
        res.report.law("separation", "hom" + show(t.objects[s]) + "->" + show(t.objects[ti]));
    }
  }

  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j) {
      const auto &f = family[i], &g = family[j];
      std::size_t total = 1;
      bool small = true;
      for (std::size_t s = 0; s < n && small; ++s)
        for (std::size_t k = 0; k < f.sizes[s] && small; ++k) {
          total *= g.sizes[s];
          if (total > opt.max_families) small = false;
        }
      if (!small || total == 0) continue;
      ++res.morphism_pairs;
      PresheafMorphism eta(n);
      for (std::size_t s = 0; s < n; ++s) eta[s].assign(f.sizes[s], 0);
      for (std::size_t count = 0; count < total; ++count) {
        ++res.families;
        bool nat = presheaf_natural(t, f, g, eta, nullptr);
        auto te = tambara_morphism_of(t, encoded[i], eta);
        bool tam = tambara_morphism_ok(encoded[i], encoded[j], te, nullptr);
        if (nat) ++res.natural;
        if (nat != tam || presheaf_morphism_of(t, encoded[i], te) != eta)
          res.report.law("morphism-bijection", "presheaves " + std::to_string(i) + " -> " + std::to_string(j));
        for (std::size_t s = 0; s < n; ++s) {
          std::size_t k = 0;
          for (; k < eta[s].size(); ++k) {
            if (++eta[s][k] < g.sizes[s]) break;
            eta[s][k] = 0;
          }
          if (k < eta[s].size()) break;
        }
      }
    }
  return res;
}

}  // namespace dopt
