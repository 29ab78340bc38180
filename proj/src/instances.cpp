#include "dopt/instances.hpp"

#include <map>
#include <stdexcept>

#include "dopt/error.hpp"

namespace dopt {

namespace {

MorId thin_arrow(const FinCat& c, ObjId a, ObjId b) {
  const auto& h = c.hom(a, b);
  return h.empty() ? kNone : h.front();
}

std::vector<MorId> identity_table(const FinCat& c, const std::vector<ObjId>& objs) {
  std::vector<MorId> out(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i) out[i] = c.identity(objs[i]);
  return out;
}

std::vector<std::size_t> digits(std::size_t code, std::size_t base, std::size_t n) {
  std::vector<std::size_t> d(n);
  for (std::size_t i = n; i > 0; --i) {
    d[i - 1] = code % base;
    code /= base;
  }
  return d;
}

std::size_t undigits(const std::vector<std::size_t>& d, std::size_t base) {
  std::size_t code = 0;
  for (auto v : d) code = code * base + v;
  return code;
}

}  // namespace

// ---------------------------------------------------------------------------
// Monoidal data

MonoidalData strict_monoidal(const CatPtr& cat, std::vector<ObjId> tensor_obj,
                             std::vector<MorId> tensor_mor, ObjId unit) {
  MonoidalData m{cat, std::move(tensor_obj), std::move(tensor_mor), unit, {}, {}, {}};
  const std::size_t n = cat->num_objects();
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (ObjId c = 0; c < n; ++c) {
        ObjId t = m.tensor(m.tensor(a, b), c);
        m.associator.push_back(t < n ? cat->identity(t) : kNone);
      }
  for (ObjId a = 0; a < n; ++a) {
    ObjId l = m.tensor(unit, a), r = m.tensor(a, unit);
    m.left_unitor.push_back(l < n ? cat->identity(l) : kNone);
    m.right_unitor.push_back(r < n ? cat->identity(r) : kNone);
  }
  return m;
}

MonoidalData thin_monoidal(const CatPtr& cat, const std::function<ObjId(ObjId, ObjId)>& tensor,
                           ObjId unit) {
  const std::size_t n = cat->num_objects(), nm = cat->num_morphisms();
  std::vector<ObjId> obj(n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) obj[a * n + b] = tensor(a, b);
  std::vector<MorId> mor(nm * nm);
  for (MorId p = 0; p < nm; ++p)
    for (MorId q = 0; q < nm; ++q)
      mor[p * nm + q] = thin_arrow(*cat, tensor(cat->src(p), cat->src(q)),
                                   tensor(cat->dst(p), cat->dst(q)));
  return strict_monoidal(cat, std::move(obj), std::move(mor), unit);
}

BicatPtr deloop_monoidal(const MonoidalData& m, bool check) {
  auto b = std::make_shared<FinBicategory>();
  b->num_objects = 1;
  b->homs = {m.cat};
  b->units = {m.unit};
  b->hcomps = {HComp{m.tensor_obj, m.tensor_mor}};
  b->associators = {m.associator};
  b->left_unitors = {m.right_unitor};
  b->right_unitors = {m.left_unitor};
  if (check) {
    auto report = validate_bicategory(*b);
    if (!report.ok())
      throw StructuralError("deloop_monoidal: monoidal laws fail (" + report.issues().front().law +
                            ": " + report.issues().front().detail + ")");
  }
  return b;
}

ActionData strict_action(const MonoidalData& m, const CatPtr& cat, std::vector<ObjId> act_obj,
                         std::vector<MorId> act_mor) {
  ActionData a{cat, std::move(act_obj), std::move(act_mor), {}, {}};
  const std::size_t nm = m.cat->num_objects(), nc = cat->num_objects();
  for (ObjId x = 0; x < nc; ++x) a.unit_iso.push_back(cat->identity(x));
  for (ObjId f = 0; f < nm; ++f)
    for (ObjId g = 0; g < nm; ++g)
      for (ObjId x = 0; x < nc; ++x) {
        ObjId y = a.act_obj[f * nc + a.act_obj[g * nc + x]];
        a.mult.push_back(cat->identity(y));
      }
  return a;
}

ActionData thin_action(const MonoidalData& m, const CatPtr& cat,
                       const std::function<ObjId(ObjId, ObjId)>& act) {
  const FinCat& mc = *m.cat;
  const std::size_t nc = cat->num_objects(), mm = cat->num_morphisms();
  std::vector<ObjId> obj(mc.num_objects() * nc);
  for (ObjId f = 0; f < mc.num_objects(); ++f)
    for (ObjId x = 0; x < nc; ++x) obj[f * nc + x] = act(f, x);
  std::vector<MorId> mor(mc.num_morphisms() * mm);
  for (MorId p = 0; p < mc.num_morphisms(); ++p)
    for (MorId u = 0; u < mm; ++u)
      mor[p * mm + u] = thin_arrow(*cat, act(mc.src(p), cat->src(u)), act(mc.dst(p), cat->dst(u)));
  return strict_action(m, cat, std::move(obj), std::move(mor));
}

IndexedPtr action_indexed(const BicatPtr& deloop, const MonoidalData& m, const ActionData& a) {
  auto l = std::make_shared<IndexedCat>();
  const FinCat& mc = *m.cat;
  const FinCat& c = *a.cat;
  const std::size_t nm = mc.num_objects(), nc = c.num_objects(), mmc = c.num_morphisms();
  l->base = deloop;
  l->fibers = {a.cat};
  l->pull.resize(1);
  l->two_cells.resize(1);
  for (ObjId f = 0; f < nm; ++f) {
    FinFunctor fs{a.cat, a.cat, std::vector<ObjId>(nc), std::vector<MorId>(mmc)};
    for (ObjId x = 0; x < nc; ++x) fs.obj_map[x] = a.act_obj[f * nc + x];
    for (MorId u = 0; u < mmc; ++u) fs.mor_map[u] = a.act_mor[mc.identity(f) * mmc + u];
    l->pull[0].push_back(std::move(fs));
  }
  for (MorId p = 0; p < mc.num_morphisms(); ++p) {
    FinNatTrans t{l->pull[0][mc.src(p)], l->pull[0][mc.dst(p)], std::vector<MorId>(nc)};
    for (ObjId x = 0; x < nc; ++x) t.components[x] = a.act_mor[p * mmc + c.identity(x)];
    l->two_cells[0].push_back(std::move(t));
  }
  l->theta_id = {FinNatTrans{FinFunctor::identity(a.cat), l->pull[0][m.unit], a.unit_iso}};
  l->theta_comp.resize(1);
  bool strict = true;
  for (auto k : a.unit_iso) strict = strict && k < mmc && c.is_identity(k);
  for (ObjId f = 0; f < nm; ++f)
    for (ObjId g = 0; g < nm; ++g) {
      FinNatTrans t{compose(l->pull[0][f], l->pull[0][g]), l->pull[0][m.tensor(f, g)],
                    std::vector<MorId>(nc)};
      for (ObjId x = 0; x < nc; ++x) {
        t.components[x] = a.mult[(f * nm + g) * nc + x];
        strict = strict && t.components[x] < mmc && c.is_identity(t.components[x]);
      }
      l->theta_comp[0].push_back(std::move(t));
    }
  l->strict = strict;
  return l;
}

// ---------------------------------------------------------------------------
// Named instances

MonoidalData meet_semilattice() {
  return thin_monoidal(chain_category(2), [](ObjId a, ObjId b) { return std::min(a, b); }, 1);
}

MonoidalData trivial_monoid() {
  return thin_monoidal(terminal_category(), [](ObjId, ObjId) { return 0; }, 0);
}

MonoidalData discrete_z2() {
  return thin_monoidal(discrete_category(2), [](ObjId a, ObjId b) { return a ^ b; }, 0);
}

IndexedPtr semilattice_action() {
  auto m = meet_semilattice();
  auto a = thin_action(m, chain_category(2), [](ObjId f, ObjId x) { return std::min(f, x); });
  return action_indexed(deloop_monoidal(m), m, a);
}

IndexedPtr z2_swap_action() {
  auto m = discrete_z2();
  auto a = thin_action(m, codiscrete_category(2), [](ObjId f, ObjId x) { return f ^ x; });
  return action_indexed(deloop_monoidal(m), m, a);
}

BicatPtr bbz2(std::size_t assoc) {
  CatPtr z2 = cyclic_group_category(2);
  auto b = std::make_shared<FinBicategory>();
  b->num_objects = 1;
  b->homs = {z2};
  b->units = {0};
  b->hcomps = {HComp{{0}, {0, 1, 1, 0}}};
  b->associators = {{assoc % 2}};
  b->left_unitors = {{0}};
  b->right_unitors = {{0}};
  return b;
}

// ---------------------------------------------------------------------------
// Spans

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

Pairs span_pullback(const SpanCell& f, const SpanCell& g) {
  Pairs p;
  for (std::size_t m = 0; m < f.apex; ++m)
    for (std::size_t n = 0; n < g.apex; ++n)
      if (f.right[m] == g.left[n]) p.emplace_back(m, n);
  return p;
}

std::size_t pair_index(const Pairs& p, std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i].first == m && p[i].second == n) return i;
  throw StructuralError("span pullback element not found");
}

}  // namespace

SpanBicategory span_bicategory(std::size_t max_base, std::size_t max_apex) {
  if (max_base > max_apex)
    throw std::invalid_argument("span_bicategory: identity spans need apex size up to max_base");
  const std::size_t n = max_base + 1;
  SpanBicategory out;
  out.cells.resize(n * n);
  std::vector<std::vector<FinFn>> phis(n * n);  // per hom, table of each 2-cell
  std::vector<std::map<std::tuple<ObjId, ObjId, std::vector<std::size_t>>, MorId>> lookup(n * n);
  std::vector<std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, ObjId>> cell_ids(n * n);
  auto b = std::make_shared<FinBicategory>();
  b->num_objects = n;
  b->homs.resize(n * n);

  for (ObjId a = 0; a < n; ++a)
    for (ObjId c = 0; c < n; ++c) {
      auto& cells = out.cells[a * n + c];
      for (std::size_t k = 0; k <= max_apex; ++k)
        for_each_function(k, a, [&](const FinFn& l) {
          for_each_function(k, c, [&](const FinFn& r) {
            cell_ids[a * n + c][{l.table, r.table}] = cells.size();
            cells.push_back({k, l.table, r.table});
            return true;
          });
          return true;
        });
      std::vector<MorphismSpec> mors;
      std::vector<MorId> ids(cells.size());
      auto& tables = phis[a * n + c];
      for (ObjId s = 0; s < cells.size(); ++s)
        for (ObjId t = 0; t < cells.size(); ++t)
          for_each_function(cells[s].apex, cells[t].apex, [&](const FinFn& phi) {
            for (std::size_t i = 0; i < cells[s].apex; ++i)
              if (cells[t].left[phi(i)] != cells[s].left[i] || cells[t].right[phi(i)] != cells[s].right[i])
                return true;
            if (s == t && phi == FinFn::identity(cells[s].apex)) ids[s] = mors.size();
            lookup[a * n + c][{s, t, phi.table}] = mors.size();
            mors.push_back({s, t});
            tables.push_back(phi);
            return true;
          });
      auto& lk = lookup[a * n + c];
      b->homs[a * n + c] = std::make_shared<FinCat>(FinCat::from_rule(
          cells.size(), mors, ids, [&](MorId g, MorId f) {
            return lk.at({mors[f].src, mors[g].dst, compose(tables[g], tables[f]).table});
          }));
    }

  for (ObjId a = 0; a < n; ++a) {
    std::vector<std::size_t> id(a);
    for (std::size_t i = 0; i < a; ++i) id[i] = i;
    b->units.push_back(cell_ids[a * n + a].at({id, id}));
  }

  auto compose_cells = [&](ObjId a, ObjId bb, ObjId c, ObjId f, ObjId g, Pairs* elems) {
    const auto& sf = out.cells[a * n + bb][f];
    const auto& sg = out.cells[bb * n + c][g];
    Pairs p = span_pullback(sf, sg);
    if (p.size() > max_apex)
      throw std::invalid_argument("span_bicategory: composite apex exceeds max_apex; truncation not closed");
    std::vector<std::size_t> l, r;
    for (auto [m, k] : p) {
      l.push_back(sf.left[m]);
      r.push_back(sg.right[k]);
    }
    if (elems) *elems = p;
    return cell_ids[a * n + c].at({l, r});
  };

  b->hcomps.resize(n * n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb)
      for (ObjId c = 0; c < n; ++c) {
        auto& hc = b->hcomps[(a * n + bb) * n + c];
        const FinCat &ab = b->hom(a, bb), &bc = b->hom(bb, c);
        for (ObjId f = 0; f < ab.num_objects(); ++f)
          for (ObjId g = 0; g < bc.num_objects(); ++g) hc.obj.push_back(compose_cells(a, bb, c, f, g, nullptr));
        for (MorId p = 0; p < ab.num_morphisms(); ++p)
          for (MorId q = 0; q < bc.num_morphisms(); ++q) {
            Pairs src, dst;
            ObjId s = compose_cells(a, bb, c, ab.src(p), bc.src(q), &src);
            ObjId t = compose_cells(a, bb, c, ab.dst(p), bc.dst(q), &dst);
            const FinFn& fp = phis[a * n + bb][p];
            const FinFn& fq = phis[bb * n + c][q];
            std::vector<std::size_t> table;
            for (auto [m, k] : src) table.push_back(pair_index(dst, fp(m), fq(k)));
            hc.mor.push_back(lookup[a * n + c].at({s, t, table}));
          }
      }

  b->associators.resize(n * n * n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb)
      for (ObjId c = 0; c < n; ++c)
        for (ObjId d = 0; d < n; ++d) {
          auto& assoc = b->associators[((a * n + bb) * n + c) * n + d];
          for (ObjId f = 0; f < out.cells[a * n + bb].size(); ++f)
            for (ObjId g = 0; g < out.cells[bb * n + c].size(); ++g)
              for (ObjId h = 0; h < out.cells[c * n + d].size(); ++h) {
                Pairs fg, fg_h, gh, f_gh;
                ObjId fgc = compose_cells(a, bb, c, f, g, &fg);
                ObjId lhs = compose_cells(a, c, d, fgc, h, &fg_h);
                ObjId ghc = compose_cells(bb, c, d, g, h, &gh);
                ObjId rhs = compose_cells(a, bb, d, f, ghc, &f_gh);
                std::vector<std::size_t> table;
                for (auto [q, k] : fg_h) {
                  auto [m1, m2] = fg[q];
                  table.push_back(pair_index(f_gh, m1, pair_index(gh, m2, k)));
                }
                assoc.push_back(lookup[a * n + d].at({lhs, rhs, table}));
              }
        }

  b->left_unitors.resize(n * n);
  b->right_unitors.resize(n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId c = 0; c < n; ++c)
      for (ObjId f = 0; f < out.cells[a * n + c].size(); ++f) {
        Pairs e;
        ObjId s = compose_cells(a, c, c, f, b->units[c], &e);
        std::vector<std::size_t> table;
        for (auto [m, k] : e) table.push_back(m);
        b->left_unitors[a * n + c].push_back(lookup[a * n + c].at({s, f, table}));
        s = compose_cells(a, a, c, b->units[a], f, &e);
        table.clear();
        for (auto [k, m] : e) table.push_back(m);
        b->right_unitors[a * n + c].push_back(lookup[a * n + c].at({s, f, table}));
      }
  out.bicat = b;
  out.span_maps = std::move(phis);
  return out;
}

SliceIndexed slice_indexed(const SpanBicategory& spans, std::size_t max_size) {
  const FinBicategory& b = *spans.bicat;
  const std::size_t n = b.num_objects;
  // Base object a is the set {0..a-1}.
  struct Slice {
    std::vector<std::vector<std::size_t>> legs;  // per object
    std::map<std::vector<std::size_t>, ObjId> obj_id;
    std::map<std::tuple<ObjId, ObjId, std::vector<std::size_t>>, MorId> mor_id;
    std::vector<std::vector<std::size_t>> tables;  // per morphism
  };
  std::vector<Slice> slices(n);
  auto l = std::make_shared<IndexedCat>();
  l->base = spans.bicat;
  for (ObjId a = 0; a < n; ++a) {
    Slice& sl = slices[a];
    for (std::size_t k = 0; k <= max_size; ++k)
      for_each_function(k, a, [&](const FinFn& leg) {
        sl.obj_id[leg.table] = sl.legs.size();
        sl.legs.push_back(leg.table);
        return true;
      });
    std::vector<MorphismSpec> mors;
    std::vector<MorId> ids(sl.legs.size());
    for (ObjId s = 0; s < sl.legs.size(); ++s)
      for (ObjId t = 0; t < sl.legs.size(); ++t)
        for_each_function(sl.legs[s].size(), sl.legs[t].size(), [&](const FinFn& phi) {
          for (std::size_t i = 0; i < phi.table.size(); ++i)
            if (sl.legs[t][phi(i)] != sl.legs[s][i]) return true;
          if (s == t && phi == FinFn::identity(sl.legs[s].size())) ids[s] = mors.size();
          sl.mor_id[{s, t, phi.table}] = mors.size();
          mors.push_back({s, t});
          sl.tables.push_back(phi.table);
          return true;
        });
    l->fibers.push_back(std::make_shared<FinCat>(FinCat::from_rule(
        sl.legs.size(), mors, ids, [&](MorId g, MorId f) {
          std::vector<std::size_t> t;
          for (auto v : sl.tables[f]) t.push_back(sl.tables[g][v]);
          return sl.mor_id.at({mors[f].src, mors[g].dst, t});
        })));
  }

  // M ×_B Y for a span cell and a slice object over B
  auto pull = [&](const SpanCell& c, const std::vector<std::size_t>& y) {
    Pairs p;
    for (std::size_t mu = 0; mu < c.apex; ++mu)
      for (std::size_t i = 0; i < y.size(); ++i)
        if (c.right[mu] == y[i]) p.emplace_back(mu, i);
    if (p.size() > max_size)
      throw std::invalid_argument("slice_indexed: pulled-back carrier exceeds max_size");
    return p;
  };
  auto legs_of = [](const SpanCell& c, const Pairs& p) {
    std::vector<std::size_t> leg;
    for (auto [mu, i] : p) leg.push_back(c.left[mu]);
    return leg;
  };

  l->pull.resize(n * n);
  l->two_cells.resize(n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb) {
      const auto& cells = spans.cells[a * n + bb];
      const Slice &sa = slices[a], &sb = slices[bb];
      std::vector<FinFunctor> pulls;
      std::vector<std::vector<Pairs>> elems(cells.size());
      for (ObjId f = 0; f < cells.size(); ++f) {
        FinFunctor fs{l->fibers[bb], l->fibers[a], {}, {}};
        for (ObjId y = 0; y < sb.legs.size(); ++y) {
          elems[f].push_back(pull(cells[f], sb.legs[y]));
          fs.obj_map.push_back(sa.obj_id.at(legs_of(cells[f], elems[f].back())));
        }
        const FinCat& fb = *l->fibers[bb];
        for (MorId u = 0; u < fb.num_morphisms(); ++u) {
          const Pairs &src = elems[f][fb.src(u)], &dst = elems[f][fb.dst(u)];
          std::vector<std::size_t> t;
          for (auto [mu, i] : src) t.push_back(pair_index(dst, mu, sb.tables[u][i]));
          fs.mor_map.push_back(sa.mor_id.at({fs.obj(fb.src(u)), fs.obj(fb.dst(u)), t}));
        }
        pulls.push_back(std::move(fs));
      }
      const FinCat& hom = b.hom(a, bb);
      for (MorId m = 0; m < hom.num_morphisms(); ++m) {
        const FinFn& phi = spans.span_maps[a * n + bb][m];
        ObjId f = hom.src(m), g = hom.dst(m);
        FinNatTrans t{pulls[f], pulls[g], {}};
        for (ObjId y = 0; y < sb.legs.size(); ++y) {
          std::vector<std::size_t> table;
          for (auto [mu, i] : elems[f][y]) table.push_back(pair_index(elems[g][y], phi(mu), i));
          t.components.push_back(sa.mor_id.at({pulls[f].obj(y), pulls[g].obj(y), table}));
        }
        l->two_cells[a * n + bb].push_back(std::move(t));
      }
      l->pull[a * n + bb] = std::move(pulls);
    }

  for (ObjId a = 0; a < n; ++a) {
    const Slice& sl = slices[a];
    const FinFunctor& idstar = l->pullback(a, a, b.unit(a));
    const SpanCell& unit = spans.cells[a * n + a][b.unit(a)];
    FinNatTrans t{FinFunctor::identity(l->fibers[a]), idstar, {}};
    for (ObjId x = 0; x < sl.legs.size(); ++x) {
      Pairs p = pull(unit, sl.legs[x]);
      std::vector<std::size_t> table;
      for (std::size_t i = 0; i < sl.legs[x].size(); ++i) table.push_back(pair_index(p, sl.legs[x][i], i));
      t.components.push_back(sl.mor_id.at({x, idstar.obj(x), table}));
    }
    l->theta_id.push_back(std::move(t));
  }

  l->theta_comp.resize(n * n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb)
      for (ObjId c = 0; c < n; ++c) {
        const auto& fcells = spans.cells[a * n + bb];
        const auto& gcells = spans.cells[bb * n + c];
        auto& out = l->theta_comp[(a * n + bb) * n + c];
        for (ObjId f = 0; f < fcells.size(); ++f)
          for (ObjId g = 0; g < gcells.size(); ++g) {
            ObjId fg = b.hcomp(a, bb, c, f, g);
            const SpanCell& sfg = spans.cells[a * n + c][fg];
            Pairs apex = span_pullback(fcells[f], gcells[g]);
            FinFunctor lhs = compose(l->pullback(a, bb, f), l->pullback(bb, c, g));
            const FinFunctor& rhs = l->pullback(a, c, fg);
            FinNatTrans t{lhs, rhs, {}};
            for (ObjId z = 0; z < slices[c].legs.size(); ++z) {
              Pairs inner = pull(gcells[g], slices[c].legs[z]);
              Pairs outer = pull(fcells[f], legs_of(gcells[g], inner));
              Pairs target = pull(sfg, slices[c].legs[z]);
              std::vector<std::size_t> table;
              for (auto [mu, q] : outer) {
                auto [nu, i] = inner[q];
                table.push_back(pair_index(target, pair_index(apex, mu, nu), i));
              }
              t.components.push_back(slices[a].mor_id.at({lhs.obj(z), rhs.obj(z), table}));
            }
            out.push_back(std::move(t));
          }
      }
  l->strict = false;
  SliceIndexed out{l, {}, {}};
  for (ObjId a = 0; a < n; ++a) {
    out.legs.emplace_back();
    for (const auto& leg : slices[a].legs) out.legs[a].push_back(FinFn{{leg.size()}, {a}, leg});
    out.maps.emplace_back();
    const FinCat& fa = *l->fibers[a];
    for (MorId u = 0; u < fa.num_morphisms(); ++u)
      out.maps[a].push_back(
          FinFn{{slices[a].legs[fa.src(u)].size()}, {slices[a].legs[fa.dst(u)].size()}, slices[a].tables[u]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Families

IndexedPtr family_indexed(const CatPtr& c, std::size_t max_base) {
  CatPtr skel = finset_skeleton(max_base);
  auto l = std::make_shared<IndexedCat>();
  l->base = locally_discrete(skel);
  l->strict = true;
  const std::size_t n = max_base + 1;
  const std::size_t no = c->num_objects(), nm = c->num_morphisms();
  for (std::size_t a = 0; a < n; ++a) l->fibers.push_back(power_category(c, a));
  l->pull.resize(n * n);
  l->two_cells.resize(n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb)
      for (MorId fm : skel->hom(a, bb)) {
        FinFn fn = finset_skeleton_function(*skel, fm);
        const FinCat& fb = *l->fibers[bb];
        FinFunctor fs{l->fibers[bb], l->fibers[a], std::vector<ObjId>(fb.num_objects()),
                      std::vector<MorId>(fb.num_morphisms())};
        for (ObjId y = 0; y < fb.num_objects(); ++y) {
          auto dy = digits(y, no, bb);
          std::vector<std::size_t> dx(a);
          for (std::size_t i = 0; i < a; ++i) dx[i] = dy[fn(i)];
          fs.obj_map[y] = undigits(dx, no);
        }
        for (MorId u = 0; u < fb.num_morphisms(); ++u) {
          auto du = digits(u, nm, bb);
          std::vector<std::size_t> dx(a);
          for (std::size_t i = 0; i < a; ++i) dx[i] = du[fn(i)];
          fs.mor_map[u] = undigits(dx, nm);
        }
        l->two_cells[a * n + bb].push_back(identity_transformation(fs));
        l->pull[a * n + bb].push_back(std::move(fs));
      }
  for (ObjId a = 0; a < n; ++a) {
    const auto& idstar = l->pull[a * n + a][skel->hom_position(skel->identity(a))];
    l->theta_id.push_back(
        FinNatTrans{FinFunctor::identity(l->fibers[a]), idstar,
                    identity_table(*l->fibers[a], idstar.obj_map)});
  }
  l->theta_comp.resize(n * n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb)
      for (ObjId cc = 0; cc < n; ++cc)
        for (ObjId f = 0; f < skel->hom(a, bb).size(); ++f)
          for (ObjId g = 0; g < skel->hom(bb, cc).size(); ++g) {
            const auto& fs = l->pull[a * n + bb][f];
            const auto& gs = l->pull[bb * n + cc][g];
            const auto& fgs = l->pull[a * n + cc][l->base->hcomp(a, bb, cc, f, g)];
            FinFunctor both = compose(fs, gs);
            l->theta_comp[(a * n + bb) * n + cc].push_back(
                FinNatTrans{both, fgs, identity_table(*l->fibers[a], both.obj_map)});
          }
  return l;
}

// ---------------------------------------------------------------------------
// Weakening

IndexedPtr weaken(const IndexedCat& l, Twist t, const std::vector<ThetaSite>& flipped) {
  const bool swap = t == Twist::Swap;
  if (swap && !flipped.empty())
    throw std::invalid_argument("weaken: the swap twist has no non-coherent alternatives");
  const FinBicategory& b = *l.base;
  const std::size_t n = b.num_objects;
  CatPtr e = swap ? codiscrete_category(2) : cyclic_group_category(2);
  const std::size_t de = e->num_objects(), me = e->num_morphisms();
  auto s_obj = [&](ObjId i) -> ObjId { return swap ? 1 - i : i; };
  auto s_mor = [&](MorId k) -> MorId {
    if (!swap) return k;
    return thin_arrow(*e, s_obj(e->src(k)), s_obj(e->dst(k)));
  };
  auto theta_e = [&](ObjId i, bool flip) -> MorId {
    if (swap) return thin_arrow(*e, i, 1 - i);
    return flip ? 0 : 1;
  };
  auto is_flipped = [&](const ThetaSite& site) {
    for (const auto& f : flipped)
      if (f.unit == site.unit && f.a == site.a &&
          (f.unit || (f.b == site.b && f.c == site.c && f.f == site.f && f.g == site.g)))
        return true;
    return false;
  };

  auto w = std::make_shared<IndexedCat>();
  w->base = l.base;
  w->strict = false;
  for (ObjId a = 0; a < n; ++a) w->fibers.push_back(product_category(l.fiber(a), *e));

  auto lift = [&](const FinFunctor& f, ObjId a, ObjId bb) {
    const FinCat& src = *w->fibers[bb];
    FinFunctor out{w->fibers[bb], w->fibers[a], std::vector<ObjId>(src.num_objects()),
                   std::vector<MorId>(src.num_morphisms())};
    for (ObjId y = 0; y < src.num_objects(); ++y) out.obj_map[y] = f.obj(y / de) * de + s_obj(y % de);
    for (MorId u = 0; u < src.num_morphisms(); ++u) out.mor_map[u] = f.mor(u / me) * me + s_mor(u % me);
    return out;
  };

  w->pull.resize(n * n);
  w->two_cells.resize(n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb) {
      const FinCat& hom = b.hom(a, bb);
      for (ObjId f = 0; f < hom.num_objects(); ++f) w->pull[a * n + bb].push_back(lift(l.pullback(a, bb, f), a, bb));
      for (MorId m = 0; m < hom.num_morphisms(); ++m) {
        const auto& fs = w->pull[a * n + bb][hom.src(m)];
        const auto& gs = w->pull[a * n + bb][hom.dst(m)];
        FinNatTrans tr{fs, gs, {}};
        for (ObjId y = 0; y < w->fibers[bb]->num_objects(); ++y)
          tr.components.push_back(l.two_cell(a, bb, m, y / de) * me + e->identity(s_obj(y % de)));
        w->two_cells[a * n + bb].push_back(std::move(tr));
      }
    }
  for (ObjId a = 0; a < n; ++a) {
    bool flip = is_flipped({true, a, 0, 0, 0, 0});
    const auto& idstar = w->pull[a * n + a][b.unit(a)];
    FinNatTrans tr{FinFunctor::identity(w->fibers[a]), idstar, {}};
    for (ObjId x = 0; x < w->fibers[a]->num_objects(); ++x)
      tr.components.push_back(l.theta_unit(a, x / de) * me + theta_e(x % de, flip));
    w->theta_id.push_back(std::move(tr));
  }
  w->theta_comp.resize(n * n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb)
      for (ObjId c = 0; c < n; ++c)
        for (ObjId f = 0; f < b.hom(a, bb).num_objects(); ++f)
          for (ObjId g = 0; g < b.hom(bb, c).num_objects(); ++g) {
            bool flip = is_flipped({false, a, bb, c, f, g});
            const auto& fs = w->pull[a * n + bb][f];
            const auto& gs = w->pull[bb * n + c][g];
            FinNatTrans tr{compose(fs, gs), w->pull[a * n + c][b.hcomp(a, bb, c, f, g)], {}};
            for (ObjId z = 0; z < w->fibers[c]->num_objects(); ++z)
              tr.components.push_back(l.theta(a, bb, c, f, g, z / de) * me + theta_e(z % de, flip));
            w->theta_comp[(a * n + bb) * n + c].push_back(std::move(tr));
          }
  return w;
}

}  // namespace dopt
