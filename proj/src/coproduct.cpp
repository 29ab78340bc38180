#include "dopt/coproduct.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "dopt/error.hpp"

namespace dopt {

namespace {

struct Product {
  CatPtr cat;
  std::vector<const FinCat*> factors;
};

Product product_of(const std::vector<CatPtr>& factors) {
  Product p{terminal_category(), {}};
  for (const auto& f : factors) {
    p.cat = product_category(*p.cat, *f);
    p.factors.push_back(f.get());
  }
  return p;
}

FinFunctor tupling(const CatPtr& src, const Product& p, const std::vector<const FinFunctor*>& parts) {
  FinFunctor out{src, p.cat, std::vector<ObjId>(src->num_objects()), std::vector<MorId>(src->num_morphisms())};
  for (ObjId x = 0; x < src->num_objects(); ++x) {
    std::size_t acc = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) acc = acc * p.factors[i]->num_objects() + parts[i]->obj(x);
    out.obj_map[x] = acc;
  }
  for (MorId u = 0; u < src->num_morphisms(); ++u) {
    std::size_t acc = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) acc = acc * p.factors[i]->num_morphisms() + parts[i]->mor(u);
    out.mor_map[u] = acc;
  }
  return out;
}

std::string where(const BaseCoproductData& d, std::size_t i) {
  return "component " + std::to_string(i) + " (A_i=" + std::to_string(d.components[i]) + ")";
}

FinFn inclusion(std::size_t n, std::size_t offset, std::size_t total) {
  FinFn f{{n}, {total}, std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) f.table[i] = offset + i;
  return f;
}

}  // namespace

FinFunctor comparison_functor(const IndexedCat& l, const BaseCoproductData& d) {
  std::vector<CatPtr> factors;
  std::vector<const FinFunctor*> parts;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    factors.push_back(l.fibers[d.components[i]]);
    parts.push_back(&l.pullback(d.components[i], d.coproduct, d.injections[i]));
  }
  return tupling(l.fibers[d.coproduct], product_of(factors), parts);
}

ValidationReport validate_coproduct_data(const IndexedCat& l, const IndexedCat& r,
                                         const BaseCoproductData& d) {
  ValidationReport rep;
  const FinBicategory& b = *l.base;
  if (d.coproduct >= b.num_objects) {
    rep.structural("injection", "coproduct object out of range");
    return rep;
  }
  if (d.injections.size() != d.components.size()) {
    rep.structural("injection", "one injection per component is required");
    return rep;
  }
  for (std::size_t i = 0; i < d.components.size(); ++i)
    if (d.components[i] >= b.num_objects ||
        d.injections[i] >= b.hom(d.components[i], d.coproduct).num_objects()) {
      rep.structural("injection", where(d, i) + ": injection is not a 1-cell A_i → A");
      return rep;
    }

  for (ObjId c = 0; c < b.num_objects; ++c) {
    std::vector<CatPtr> factors;
    std::vector<FinFunctor> parts;
    for (std::size_t i = 0; i < d.components.size(); ++i) {
      ObjId ai = d.components[i];
      factors.push_back(b.homs[b.hom_index(ai, c)]);
      const FinCat& src = b.hom(d.coproduct, c);
      MorId id = b.hom(ai, d.coproduct).identity(d.injections[i]);
      FinFunctor pre{b.homs[b.hom_index(d.coproduct, c)], b.homs[b.hom_index(ai, c)], {}, {}};
      for (ObjId g = 0; g < src.num_objects(); ++g)
        pre.obj_map.push_back(b.hcomp(ai, d.coproduct, c, d.injections[i], g));
      for (MorId n = 0; n < src.num_morphisms(); ++n)
        pre.mor_map.push_back(b.hcomp_mor(ai, d.coproduct, c, id, n));
      parts.push_back(std::move(pre));
    }
    std::vector<const FinFunctor*> ptrs;
    for (const auto& p : parts) ptrs.push_back(&p);
    if (!is_equivalence(tupling(b.homs[b.hom_index(d.coproduct, c)], product_of(factors), ptrs)))
      rep.law("base-coproduct", "precomposition into C=" + std::to_string(c) + " is not an equivalence");
  }
  if (!is_equivalence(comparison_functor(l, d)))
    rep.law("comparison-L", "fiber(A) → Π fiber(A_i) is not an equivalence");
  if (!is_equivalence(comparison_functor(r, d)))
    rep.law("comparison-R", "fiber(A) → Π fiber(A_i) is not an equivalence");
  return rep;
}

BaseCoproductData family_coproduct_data(std::size_t max_base, const std::vector<std::size_t>& sizes) {
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  if (total > max_base) throw std::invalid_argument("family_coproduct_data: coproduct exceeds max_base");
  CatPtr skel = finset_skeleton(max_base);
  BaseCoproductData d{sizes, total, {}};
  std::size_t off = 0;
  for (auto s : sizes) {
    d.injections.push_back(skel->hom_position(finset_skeleton_morphism(*skel, inclusion(s, off, total))));
    off += s;
  }
  return d;
}

BaseCoproductData span_coproduct_data(const SpanBicategory& spans, const std::vector<std::size_t>& sizes) {
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  const std::size_t n = spans.bicat->num_objects;
  if (total >= n) throw std::invalid_argument("span_coproduct_data: coproduct exceeds max_base");
  BaseCoproductData d{sizes, total, {}};
  std::size_t off = 0;
  for (auto s : sizes) {
    SpanCell want{s, inclusion(s, 0, s).table, inclusion(s, off, total).table};
    const auto& cells = spans.cells[s * n + total];
    std::size_t found = kNone;
    for (std::size_t k = 0; k < cells.size(); ++k)
      if (cells[k] == want) found = k;
    if (found == kNone) throw std::invalid_argument("span_coproduct_data: injection span is truncated away");
    d.injections.push_back(found);
    off += s;
  }
  return d;
}

namespace {

/// Least object of fiber(A) restricting to the targets, exactly if possible.
ObjId glue(const IndexedCat& l, const BaseCoproductData& d, const std::vector<ObjId>& parts) {
  const FinCat& fa = l.fiber(d.coproduct);
  ObjId up_to_iso = kNone;
  for (ObjId x = 0; x < fa.num_objects(); ++x) {
    bool exact = true, iso = true;
    for (std::size_t i = 0; i < parts.size() && iso; ++i) {
      ObjId y = l.pull_obj(d.components[i], d.coproduct, d.injections[i], x);
      exact = exact && y == parts[i];
      iso = l.fiber(d.components[i]).find_iso(parts[i], y).has_value();
    }
    if (exact) return x;
    if (iso && up_to_iso == kNone) up_to_iso = x;
  }
  if (up_to_iso == kNone) throw StructuralError("optic_coproduct: no object restricts to the family");
  return up_to_iso;
}

std::vector<std::size_t> restrictions(const OpticCategory& cat, const OpticCoproduct& cp,
                                      const OpticMorphism& m) {
  std::vector<std::size_t> out;
  for (const auto& inj : cp.injections) out.push_back(cat.optic_compose(m, inj).cls);
  return out;
}

}  // namespace

OpticCoproduct optic_coproduct(const OpticCategory& cat, const std::vector<OpticObject>& family,
                               const BaseCoproductData& d) {
  const IndexedCat &l = cat.left(), &r = cat.right();
  auto rep = validate_coproduct_data(l, r, d);
  if (!rep.ok())
    throw StructuralError("optic_coproduct: comparison data invalid (" + rep.issues().front().law + ": " +
                          rep.issues().front().detail + ")");
  if (family.size() != d.components.size())
    throw StructuralError("optic_coproduct: family size does not match the coproduct data");
  std::vector<ObjId> xs, xps;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].a != d.components[i] || !cat.valid_object(family[i]))
      throw StructuralError("optic_coproduct: " + where(d, i) + " is not an object over A_i");
    xs.push_back(family[i].x);
    xps.push_back(family[i].xp);
  }
  OpticCoproduct out;
  out.object = {d.coproduct, glue(l, d, xs), glue(r, d, xps)};
  for (std::size_t i = 0; i < family.size(); ++i) {
    ObjId ai = d.components[i], f = d.injections[i];
    MorId lm = *l.fiber(ai).find_iso(xs[i], l.pull_obj(ai, d.coproduct, f, out.object.x));
    MorId rm = *r.fiber(ai).find_iso(r.pull_obj(ai, d.coproduct, f, out.object.xp), xps[i]);
    out.injections.push_back(cat.make(family[i], out.object, {f, lm, rm}));
  }
  return out;
}

OpticMorphism copair(const OpticCategory& cat, const OpticCoproduct& cp, const OpticObject& target,
                     const std::vector<OpticMorphism>& ms) {
  if (ms.size() != cp.injections.size())
    throw StructuralError("copair: one morphism per component is required");
  std::vector<std::size_t> want;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (!(ms[i].src == cp.injections[i].src) || !(ms[i].dst == target))
      throw StructuralError("copair: morphism " + std::to_string(i) + " has the wrong endpoints");
    want.push_back(ms[i].cls);
  }
  std::vector<OpticMorphism> found;
  for (const auto& m : cat.optic_hom(cp.object, target))
    if (restrictions(cat, cp, m) == want) found.push_back(m);
  if (found.empty()) throw StructuralError("copair: no mediator exists");
  if (found.size() > 1) throw StructuralError("copair: mediator is not unique");
  return found.front();
}

ValidationReport check_coproduct_universal(const OpticCategory& cat, const OpticCoproduct& cp,
                                           const std::vector<OpticObject>& family,
                                           const std::vector<OpticObject>& targets) {
  ValidationReport rep;
  for (const auto& t : targets) {
    std::size_t product = 1;
    for (const auto& s : family) product *= cat.hom_size(s, t);
    std::set<std::vector<std::size_t>> image;
    for (const auto& m : cat.optic_hom(cp.object, t)) image.insert(restrictions(cat, cp, m));
    const std::size_t n = cat.hom_size(cp.object, t);
    if (image.size() != n || n != product)
      rep.law("universal-property", "target (" + std::to_string(t.a) + "," + std::to_string(t.x) + "," +
                                        std::to_string(t.xp) + "): |hom| = " + std::to_string(n) +
                                        ", image " + std::to_string(image.size()) + ", product " +
                                        std::to_string(product));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Dependent lenses

DLensCoproduct dlens_coproduct(const std::vector<Cospan>& family) {
  std::size_t nx = 0, na = 0, nxp = 0;
  for (const auto& s : family) {
    if (!s.well_typed()) throw StructuralError("dlens_coproduct: ill-typed cospan");
    nx += s.x();
    na += s.a();
    nxp += s.xp();
  }
  DLensCoproduct out{{FinFn{{nx}, {na}, {}}, FinFn{{nxp}, {na}, {}}}, {}};
  std::size_t oa = 0;
  for (const auto& s : family) {
    for (auto v : s.leg.table) out.sum.leg.table.push_back(oa + v);
    for (auto v : s.leg_p.table) out.sum.leg_p.table.push_back(oa + v);
    oa += s.a();
  }
  std::size_t ox = 0, oxp = 0;
  for (const auto& s : family) {
    FinFn get = inclusion(s.x(), ox, nx);
    Pullback p = pullback(compose(out.sum.leg, get), out.sum.leg_p);
    FinFn put{p.p, {s.xp()}, {}};
    for (auto v : p.p2.table) put.table.push_back(v - oxp);
    out.injections.push_back({get, put});
    ox += s.x();
    oxp += s.xp();
  }
  return out;
}

ValidationReport check_dlens_coproduct(const DLensCoproduct& cp, const std::vector<Cospan>& family,
                                       const std::vector<Cospan>& targets) {
  ValidationReport rep;
  for (std::size_t i = 0; i < family.size(); ++i) {
    try {
      check_dlens(family[i], cp.sum, cp.injections[i]);
    } catch (const StructuralError& e) {
      rep.structural("injection", std::to_string(i) + ": " + e.what());
      return rep;
    }
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const Cospan& t = targets[k];
    std::size_t product = 1;
    for (const auto& s : family) product *= dlens_hom_count(s, t);
    std::set<std::vector<std::vector<std::size_t>>> image;
    auto hom = dlens_hom(cp.sum, t);
    for (const auto& c : hom) {
      std::vector<std::vector<std::size_t>> key;
      for (std::size_t i = 0; i < family.size(); ++i) {
        auto r = dlens_compose(family[i], cp.sum, t, c, cp.injections[i]);
        key.push_back(r.get.table);
        key.push_back(r.put.table);
      }
      image.insert(key);
    }
    if (image.size() != hom.size() || hom.size() != product)
      rep.law("universal-property", "target " + std::to_string(k) + ": |hom| = " + std::to_string(hom.size()) +
                                        ", image " + std::to_string(image.size()) + ", product " +
                                        std::to_string(product));
  }
  return rep;
}

namespace {

std::pair<FinFn, FinFn> split(const FinFn& leg, std::size_t a1) {
  FinFn l1{{0}, {a1}, {}}, l2{{0}, {leg.cod.size - a1}, {}};
  for (auto v : leg.table) (v < a1 ? l1.table : l2.table).push_back(v < a1 ? v : v - a1);
  l1.dom.size = l1.table.size();
  l2.dom.size = l2.table.size();
  return {l1, l2};
}

FinFn sum(const FinFn& l1, const FinFn& l2) {
  FinFn out{{l1.dom.size + l2.dom.size}, {l1.cod.size + l2.cod.size}, l1.table};
  for (auto v : l2.table) out.table.push_back(l1.cod.size + v);
  return out;
}

std::size_t slice_maps(const FinFn& x, const FinFn& y) {
  std::size_t n = 0;
  for_each_function(x.dom.size, y.dom.size, [&](const FinFn& phi) {
    n += compose(y, phi) == x;
    return true;
  });
  return n;
}

}  // namespace

ValidationReport check_slice_decomposition(std::size_t a1, std::size_t a2, std::size_t max_size) {
  ValidationReport rep;
  const std::size_t a = a1 + a2;
  std::vector<FinFn> over_a, over_1, over_2;
  for (std::size_t k = 0; k <= max_size; ++k) {
    for_each_function(k, a, [&](const FinFn& f) { return over_a.push_back(f), true; });
    for_each_function(k, a1, [&](const FinFn& f) { return over_1.push_back(f), true; });
    for_each_function(k, a2, [&](const FinFn& f) { return over_2.push_back(f), true; });
  }
  for (const auto& x1 : over_1)
    for (const auto& x2 : over_2)
      if (split(sum(x1, x2), a1) != std::make_pair(x1, x2))
        rep.law("slice-objects", "split of a sum is not the pair itself");
  for (const auto& x : over_a) {
    auto [x1, x2] = split(x, a1);
    FinFn s = sum(x1, x2);
    // σ sends x to its position in the sum: first all elements over A₁
    std::size_t i1 = 0, i2 = x1.dom.size;
    FinFn sigma{x.dom, s.dom, {}};
    for (auto v : x.table) sigma.table.push_back(v < a1 ? i1++ : i2++);
    std::set<std::size_t> hit(sigma.table.begin(), sigma.table.end());
    if (hit.size() != x.dom.size || !(compose(s, sigma) == x))
      rep.law("slice-objects", "no isomorphism over the base between an object and its reassembly");
  }
  for (const auto& x : over_a)
    for (const auto& y : over_a) {
      auto [x1, x2] = split(x, a1);
      auto [y1, y2] = split(y, a1);
      std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> image;
      std::size_t n = 0;
      for_each_function(x.dom.size, y.dom.size, [&](const FinFn& phi) {
        if (!(compose(y, phi) == x)) return true;
        ++n;
        // restrict φ to the parts over A₁ and A₂, reindexed
        std::vector<std::size_t> pos_y(y.dom.size);
        std::size_t c1 = 0, c2 = 0;
        for (std::size_t j = 0; j < y.dom.size; ++j) pos_y[j] = y(j) < a1 ? c1++ : c2++;
        std::vector<std::size_t> r1, r2;
        for (std::size_t i = 0; i < x.dom.size; ++i) (x(i) < a1 ? r1 : r2).push_back(pos_y[phi(i)]);
        image.insert({r1, r2});
        return true;
      });
      if (n != image.size() || n != slice_maps(x1, y1) * slice_maps(x2, y2))
        rep.law("slice-morphisms", "restriction is not a bijection on a hom-set");
    }
  return rep;
}

}  // namespace dopt
