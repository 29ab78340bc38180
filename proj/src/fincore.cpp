#include "dopt/fincore.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dopt/error.hpp"

namespace dopt {

namespace {

std::string str(std::initializer_list<std::size_t> xs) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (auto x : xs) {
    if (!first) os << ',';
    first = false;
    if (x == kNone)
      os << '-';
    else
      os << x;
  }
  os << ')';
  return os.str();
}

bool same_cat(const CatPtr& a, const CatPtr& b) {
  if (!a || !b) return false;
  return a == b || *a == *b;
}

}  // namespace

// ---------------------------------------------------------------------------
// FinFn

bool FinFn::well_typed() const {
  if (table.size() != dom.size) return false;
  return std::all_of(table.begin(), table.end(), [&](std::size_t v) { return v < cod.size; });
}

FinFn FinFn::identity(std::size_t n) {
  FinFn f{{n}, {n}, std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) f.table[i] = i;
  return f;
}

FinFn FinFn::constant(std::size_t dom, std::size_t cod, std::size_t value) {
  return FinFn{{dom}, {cod}, std::vector<std::size_t>(dom, value)};
}

FinFn compose(const FinFn& g, const FinFn& f) {
  if (f.cod != g.dom) throw StructuralError("compose: codomain of f does not match domain of g");
  FinFn h{f.dom, g.cod, std::vector<std::size_t>(f.dom.size)};
  for (std::size_t i = 0; i < f.dom.size; ++i) h.table[i] = g.table[f.table[i]];
  return h;
}

void for_each_function(std::size_t dom, std::size_t cod,
                       const std::function<bool(const FinFn&)>& visit) {
  FinFn f{{dom}, {cod}, std::vector<std::size_t>(dom, 0)};
  if (dom > 0 && cod == 0) return;
  while (true) {
    if (!visit(f)) return;
    // odometer, last entry least significant
    std::size_t i = dom;
    while (i > 0) {
      --i;
      if (++f.table[i] < cod) break;
      f.table[i] = 0;
      if (i == 0) return;
    }
    if (dom == 0) return;
  }
}

std::optional<std::size_t> count_functions(std::size_t dom, std::size_t cod) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < dom; ++i) {
    if (cod != 0 && n > std::numeric_limits<std::size_t>::max() / cod) return std::nullopt;
    n *= cod;
  }
  return n;
}

// ---------------------------------------------------------------------------
// FinCat

FinCat::FinCat(std::size_t num_objects, std::vector<MorphismSpec> morphisms,
               std::vector<MorId> identities, const std::vector<CompositionEntry>& compositions)
    : num_objects_(num_objects),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)) {
  const std::size_t m = morphisms_.size();
  comp_.assign(m * m, kNone);
  for (const auto& e : compositions) {
    if (e.g >= m || e.f >= m || e.gof >= m) {
      construction_errors_.push_back("composition entry out of range " + str({e.g, e.f, e.gof}));
      continue;
    }
    auto& slot = comp_[e.g * m + e.f];
    if (slot != kNone && slot != e.gof) {
      construction_errors_.push_back("conflicting composition entries for " + str({e.g, e.f}));
      continue;
    }
    slot = e.gof;
  }
  build_indices();
}

FinCat FinCat::from_rule(std::size_t num_objects, std::vector<MorphismSpec> morphisms,
                         std::vector<MorId> identities,
                         const std::function<MorId(MorId, MorId)>& compose) {
  std::vector<CompositionEntry> entries;
  for (MorId g = 0; g < morphisms.size(); ++g)
    for (MorId f = 0; f < morphisms.size(); ++f)
      if (morphisms[f].dst == morphisms[g].src) entries.push_back({g, f, compose(g, f)});
  return FinCat(num_objects, std::move(morphisms), std::move(identities), entries);
}

void FinCat::build_indices() {
  const std::size_t n = num_objects_;
  const std::size_t m = morphisms_.size();
  homs_.assign(n * n, {});
  hom_position_.assign(m, kNone);
  for (MorId k = 0; k < m; ++k) {
    const auto& s = morphisms_[k];
    if (s.src >= n || s.dst >= n) continue;
    auto& h = homs_[s.src * n + s.dst];
    hom_position_[k] = h.size();
    h.push_back(k);
  }
  inverse_.assign(m, kNone);
  for (MorId k = 0; k < m; ++k) {
    const auto& s = morphisms_[k];
    if (s.src >= n || s.dst >= n || s.src >= identities_.size() || s.dst >= identities_.size())
      continue;
    for (MorId j : homs_[s.dst * n + s.src]) {
      if (comp_[j * m + k] == identities_[s.src] && comp_[k * m + j] == identities_[s.dst]) {
        inverse_[k] = j;
        break;
      }
    }
  }
}

bool FinCat::is_identity(MorId m) const {
  return m < morphisms_.size() && morphisms_[m].src < identities_.size() &&
         identities_[morphisms_[m].src] == m;
}

std::optional<MorId> FinCat::try_compose(MorId g, MorId f) const {
  const std::size_t m = morphisms_.size();
  if (g >= m || f >= m) return std::nullopt;
  if (morphisms_[f].dst != morphisms_[g].src) return std::nullopt;
  MorId h = comp_[g * m + f];
  if (h == kNone) return std::nullopt;
  return h;
}

MorId FinCat::compose(MorId g, MorId f) const {
  auto h = try_compose(g, f);
  if (!h) throw StructuralError("compose: morphisms " + str({g, f}) + " are not composable");
  return *h;
}

std::optional<MorId> FinCat::inverse(MorId m) const {
  if (m >= inverse_.size() || inverse_[m] == kNone) return std::nullopt;
  return inverse_[m];
}

std::optional<MorId> FinCat::find_iso(ObjId a, ObjId b) const {
  for (MorId m : hom(a, b))
    if (is_iso(m)) return m;
  return std::nullopt;
}

std::vector<CompositionEntry> FinCat::composition_entries() const {
  std::vector<CompositionEntry> out;
  const std::size_t m = morphisms_.size();
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (comp_[g * m + f] != kNone) out.push_back({g, f, comp_[g * m + f]});
  return out;
}

bool operator==(const FinCat& a, const FinCat& b) {
  if (a.num_objects_ != b.num_objects_ || a.identities_ != b.identities_ || a.comp_ != b.comp_)
    return false;
  if (a.morphisms_.size() != b.morphisms_.size()) return false;
  for (std::size_t i = 0; i < a.morphisms_.size(); ++i)
    if (a.morphisms_[i].src != b.morphisms_[i].src || a.morphisms_[i].dst != b.morphisms_[i].dst)
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Functors and transformations

FinFunctor FinFunctor::identity(const CatPtr& cat) {
  FinFunctor f{cat, cat, std::vector<ObjId>(cat->num_objects()),
               std::vector<MorId>(cat->num_morphisms())};
  for (ObjId a = 0; a < cat->num_objects(); ++a) f.obj_map[a] = a;
  for (MorId m = 0; m < cat->num_morphisms(); ++m) f.mor_map[m] = m;
  return f;
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  FinFunctor h{f.src, g.dst, std::vector<ObjId>(f.obj_map.size()),
               std::vector<MorId>(f.mor_map.size())};
  for (std::size_t a = 0; a < f.obj_map.size(); ++a) h.obj_map[a] = g.obj_map.at(f.obj_map[a]);
  for (std::size_t m = 0; m < f.mor_map.size(); ++m) h.mor_map[m] = g.mor_map.at(f.mor_map[m]);
  return h;
}

FinNatTrans identity_transformation(const FinFunctor& f) {
  FinNatTrans t{f, f, std::vector<MorId>(f.obj_map.size())};
  for (ObjId a = 0; a < f.obj_map.size(); ++a) t.components[a] = f.dst->identity(f.obj_map[a]);
  return t;
}

// ---------------------------------------------------------------------------
// Standard categories

CatPtr terminal_category() { return discrete_category(1); }

CatPtr discrete_category(std::size_t n) {
  std::vector<MorphismSpec> mors;
  std::vector<MorId> ids;
  for (ObjId a = 0; a < n; ++a) {
    mors.push_back({a, a});
    ids.push_back(a);
  }
  return std::make_shared<FinCat>(FinCat::from_rule(n, mors, ids, [](MorId g, MorId) { return g; }));
}

namespace {

// A thin category on n objects where leq(a, b) says whether a → b exists.
CatPtr thin_category(std::size_t n, const std::function<bool(ObjId, ObjId)>& leq) {
  std::vector<MorphismSpec> mors;
  std::vector<MorId> ids(n);
  std::vector<MorId> index(n * n, kNone);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      if (leq(a, b)) {
        index[a * n + b] = mors.size();
        if (a == b) ids[a] = mors.size();
        mors.push_back({a, b});
      }
  auto specs = mors;
  return std::make_shared<FinCat>(FinCat::from_rule(n, mors, ids, [&](MorId g, MorId f) {
    return index[specs[f].src * n + specs[g].dst];
  }));
}

}  // namespace

CatPtr chain_category(std::size_t n) {
  return thin_category(n, [](ObjId a, ObjId b) { return a <= b; });
}

CatPtr codiscrete_category(std::size_t n) {
  return thin_category(n, [](ObjId, ObjId) { return true; });
}

CatPtr cyclic_group_category(std::size_t n) {
  std::vector<MorphismSpec> mors(n, MorphismSpec{0, 0});
  return std::make_shared<FinCat>(
      FinCat::from_rule(1, mors, {0}, [n](MorId g, MorId f) { return (g + f) % n; }));
}

namespace {

std::size_t function_code(const FinFn& fn) {
  std::size_t code = 0;
  for (auto v : fn.table) code = code * fn.cod.size + v;
  return code;
}

}  // namespace

CatPtr finset_skeleton(std::size_t max_size) {
  const std::size_t n = max_size + 1;
  std::vector<MorphismSpec> mors;
  std::vector<FinFn> tables;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, MorId> lookup;
  std::vector<MorId> ids(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for_each_function(a, b, [&](const FinFn& fn) {
        lookup[{a, b, function_code(fn)}] = mors.size();
        if (a == b && fn == FinFn::identity(a)) ids[a] = mors.size();
        mors.push_back({a, b});
        tables.push_back(fn);
        return true;
      });
  return std::make_shared<FinCat>(FinCat::from_rule(n, mors, ids, [&](MorId g, MorId f) {
    FinFn h = compose(tables[g], tables[f]);
    return lookup.at({h.dom.size, h.cod.size, function_code(h)});
  }));
}

MorId finset_skeleton_morphism(const FinCat& skeleton, const FinFn& fn) {
  const auto& hom = skeleton.hom(fn.dom.size, fn.cod.size);
  std::size_t code = function_code(fn);
  if (code >= hom.size()) throw StructuralError("finset_skeleton_morphism: function out of range");
  return hom[code];
}

FinFn finset_skeleton_function(const FinCat& skeleton, MorId m) {
  std::size_t dom = skeleton.src(m), cod = skeleton.dst(m);
  std::size_t code = skeleton.hom_position(m);
  FinFn fn{{dom}, {cod}, std::vector<std::size_t>(dom)};
  for (std::size_t i = dom; i > 0; --i) {
    fn.table[i - 1] = code % cod;
    code /= cod;
  }
  return fn;
}

CatPtr product_category(const FinCat& c, const FinCat& d) {
  const std::size_t no = d.num_objects(), nm = d.num_morphisms();
  std::vector<MorphismSpec> mors;
  mors.reserve(c.num_morphisms() * nm);
  for (MorId m = 0; m < c.num_morphisms(); ++m)
    for (MorId k = 0; k < nm; ++k)
      mors.push_back({c.src(m) * no + d.src(k), c.dst(m) * no + d.dst(k)});
  std::vector<MorId> ids(c.num_objects() * no);
  for (ObjId a = 0; a < c.num_objects(); ++a)
    for (ObjId b = 0; b < no; ++b) ids[a * no + b] = c.identity(a) * nm + d.identity(b);
  return std::make_shared<FinCat>(
      FinCat::from_rule(c.num_objects() * no, mors, ids, [&](MorId g, MorId f) {
        return c.compose(g / nm, f / nm) * nm + d.compose(g % nm, f % nm);
      }));
}

CatPtr power_category(const CatPtr& c, std::size_t n) {
  CatPtr out = terminal_category();
  for (std::size_t i = 0; i < n; ++i) out = product_category(*out, *c);
  return out;
}

// ---------------------------------------------------------------------------
// Bicategories

ObjId FinBicategory::hcomp(ObjId a, ObjId b, ObjId c, ObjId f, ObjId g) const {
  return hcomps[triple_index(a, b, c)].obj[f * hom(b, c).num_objects() + g];
}

MorId FinBicategory::hcomp_mor(ObjId a, ObjId b, ObjId c, MorId m, MorId n) const {
  return hcomps[triple_index(a, b, c)].mor[m * hom(b, c).num_morphisms() + n];
}

MorId FinBicategory::associator(ObjId a, ObjId b, ObjId c, ObjId d, ObjId f, ObjId g,
                                ObjId h) const {
  const std::size_t ng = hom(b, c).num_objects(), nh = hom(c, d).num_objects();
  return associators[quad_index(a, b, c, d)][(f * ng + g) * nh + h];
}

BicatPtr locally_discrete(const CatPtr& c) {
  auto b = std::make_shared<FinBicategory>();
  const std::size_t n = c->num_objects();
  b->num_objects = n;
  b->homs.resize(n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) b->homs[x * n + y] = discrete_category(c->hom(x, y).size());
  for (ObjId x = 0; x < n; ++x) b->units.push_back(c->hom_position(c->identity(x)));
  b->hcomps.resize(n * n * n);
  b->associators.resize(n * n * n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        auto& hc = b->hcomps[(x * n + y) * n + z];
        const auto& xy = c->hom(x, y);
        const auto& yz = c->hom(y, z);
        for (MorId f : xy)
          for (MorId g : yz) hc.obj.push_back(c->hom_position(c->compose(g, f)));
        hc.mor = hc.obj;  // discrete: 2-cells are identities, ids coincide with 1-cells
        for (ObjId w = 0; w < n; ++w) {
          auto& assoc = b->associators[((x * n + y) * n + z) * n + w];
          const auto& zw = c->hom(z, w);
          for (MorId f : xy)
            for (MorId g : yz)
              for (MorId h : zw) assoc.push_back(c->hom_position(c->compose(h, c->compose(g, f))));
        }
      }
  b->left_unitors.resize(n * n);
  b->right_unitors.resize(n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (std::size_t f = 0; f < c->hom(x, y).size(); ++f) {
        b->left_unitors[x * n + y].push_back(f);
        b->right_unitors[x * n + y].push_back(f);
      }
  return b;
}

// ---------------------------------------------------------------------------
// Indexed categories

MorId IndexedCat::theta(ObjId a, ObjId b, ObjId c, ObjId f, ObjId g, ObjId z) const {
  const std::size_t ng = base->hom(b, c).num_objects();
  return theta_comp[base->triple_index(a, b, c)][f * ng + g].at(z);
}

MorId IndexedCat::theta_unit_inv(ObjId a, ObjId x) const {
  auto inv = fiber(a).inverse(theta_unit(a, x));
  if (!inv) throw StructuralError("theta_id component is not invertible at " + str({a, x}));
  return *inv;
}

MorId IndexedCat::theta_inv(ObjId a, ObjId b, ObjId c, ObjId f, ObjId g, ObjId z) const {
  auto inv = fiber(a).inverse(theta(a, b, c, f, g, z));
  if (!inv) throw StructuralError("theta_comp component is not invertible at " + str({a, b, c, f, g, z}));
  return *inv;
}

IndexedPtr trivial_indexed(const BicatPtr& base) {
  auto l = std::make_shared<IndexedCat>();
  const std::size_t n = base->num_objects;
  CatPtr one = terminal_category();
  l->base = base;
  l->strict = true;
  l->fibers.assign(n, one);
  FinFunctor id = FinFunctor::identity(one);
  FinNatTrans idt = identity_transformation(id);
  l->pull.resize(n * n);
  l->two_cells.resize(n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      l->pull[a * n + b].assign(base->hom(a, b).num_objects(), id);
      l->two_cells[a * n + b].assign(base->hom(a, b).num_morphisms(), idt);
    }
  l->theta_id.assign(n, idt);
  l->theta_comp.resize(n * n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (ObjId c = 0; c < n; ++c)
        l->theta_comp[(a * n + b) * n + c].assign(
            base->hom(a, b).num_objects() * base->hom(b, c).num_objects(), idt);
  return l;
}

// ---------------------------------------------------------------------------
// Validators

ValidationReport validate_fincat(const FinCat& cat) {
  ValidationReport r;
  const std::size_t n = cat.num_objects();
  const std::size_t m = cat.num_morphisms();
  for (const auto& e : cat.construction_errors()) r.structural("table", e);
  for (MorId k = 0; k < m; ++k) {
    const auto& s = cat.morphisms()[k];
    if (s.src >= n || s.dst >= n) r.structural("morphism-range", "morphism " + str({k}) + " has endpoints out of range");
  }
  if (cat.identities().size() != n) {
    r.structural("identity-table", "identity table has wrong length");
    return r;
  }
  for (ObjId a = 0; a < n; ++a) {
    MorId i = cat.identities()[a];
    if (i >= m || cat.src(i) != a || cat.dst(i) != a)
      r.structural("identity-table", "identity of object " + str({a}) + " is not an endomorphism of it");
  }
  if (r.has_structural()) return r;

  const auto entries = cat.composition_entries();
  for (const auto& e : entries) {
    if (cat.dst(e.f) != cat.src(e.g)) {
      r.structural("composition-table", "entry for non-composable pair " + str({e.g, e.f}));
      continue;
    }
    if (cat.src(e.gof) != cat.src(e.f) || cat.dst(e.gof) != cat.dst(e.g))
      r.structural("composition-table", "composite of " + str({e.g, e.f}) + " has wrong endpoints");
  }
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (cat.dst(f) == cat.src(g) && !cat.try_compose(g, f))
        r.structural("composition-table", "missing composite for " + str({g, f}));
  if (r.has_structural()) return r;

  for (MorId f = 0; f < m; ++f) {
    MorId left = cat.compose(cat.identity(cat.dst(f)), f);
    if (left != f)
      r.law("left-unit", "id" + str({cat.dst(f)}) + " o " + str({f}) + " = " + str({left}));
    MorId right = cat.compose(f, cat.identity(cat.src(f)));
    if (right != f)
      r.law("right-unit", str({f}) + " o id" + str({cat.src(f)}) + " = " + str({right}));
  }
  for (MorId f = 0; f < m; ++f)
    for (ObjId c = 0; c < n; ++c)
      for (MorId g : cat.hom(cat.dst(f), c))
        for (ObjId d = 0; d < n; ++d)
          for (MorId h : cat.hom(c, d)) {
            MorId lhs = cat.compose(cat.compose(h, g), f);
            MorId rhs = cat.compose(h, cat.compose(g, f));
            if (lhs != rhs)
              r.law("associativity", "(h o g) o f != h o (g o f) for (h,g,f) = " + str({h, g, f}));
          }
  return r;
}

ValidationReport validate_functor(const FinFunctor& fn) {
  ValidationReport r;
  if (!fn.src || !fn.dst) {
    r.structural("functor", "missing source or target category");
    return r;
  }
  const FinCat& c = *fn.src;
  const FinCat& d = *fn.dst;
  if (fn.obj_map.size() != c.num_objects() || fn.mor_map.size() != c.num_morphisms()) {
    r.structural("functor", "object or morphism table has wrong length");
    return r;
  }
  for (ObjId a = 0; a < c.num_objects(); ++a)
    if (fn.obj_map[a] >= d.num_objects()) r.structural("functor", "object image out of range at " + str({a}));
  for (MorId m = 0; m < c.num_morphisms(); ++m)
    if (fn.mor_map[m] >= d.num_morphisms()) r.structural("functor", "morphism image out of range at " + str({m}));
  if (r.has_structural()) return r;
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    MorId k = fn.mor_map[m];
    if (d.src(k) != fn.obj_map[c.src(m)] || d.dst(k) != fn.obj_map[c.dst(m)])
      r.structural("functor", "morphism image has wrong endpoints at " + str({m}));
  }
  if (r.has_structural()) return r;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    if (fn.mor_map[c.identity(a)] != d.identity(fn.obj_map[a]))
      r.law("functor-identity", "identity of " + str({a}) + " not preserved");
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (ObjId z = 0; z < c.num_objects(); ++z)
      for (MorId g : c.hom(c.dst(f), z))
        if (fn.mor_map[c.compose(g, f)] != d.compose(fn.mor_map[g], fn.mor_map[f]))
          r.law("functor-composition", "composite " + str({g, f}) + " not preserved");
  return r;
}

ValidationReport validate_nat_trans(const FinNatTrans& t, bool require_iso) {
  ValidationReport r;
  const auto& s = t.src;
  const auto& u = t.dst;
  if (!s.src || !s.dst || !u.src || !u.dst || !same_cat(s.src, u.src) || !same_cat(s.dst, u.dst)) {
    r.structural("transformation", "source and target functors are not parallel");
    return r;
  }
  const FinCat& c = *s.src;
  const FinCat& d = *s.dst;
  if (t.components.size() != c.num_objects() || s.obj_map.size() != c.num_objects() ||
      u.obj_map.size() != c.num_objects()) {
    r.structural("transformation", "component table has wrong length");
    return r;
  }
  for (ObjId a = 0; a < c.num_objects(); ++a) {
    MorId k = t.components[a];
    if (k >= d.num_morphisms() || d.src(k) != s.obj(a) || d.dst(k) != u.obj(a))
      r.structural("transformation", "component at " + str({a}) + " has wrong endpoints");
  }
  if (r.has_structural()) return r;
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    MorId lhs = d.compose(u.mor(m), t.components[c.src(m)]);
    MorId rhs = d.compose(t.components[c.dst(m)], s.mor(m));
    if (lhs != rhs) r.law("naturality", "square fails at morphism " + str({m}));
  }
  if (require_iso)
    for (ObjId a = 0; a < c.num_objects(); ++a)
      if (!d.is_iso(t.components[a])) r.law("invertibility", "component at " + str({a}) + " is not invertible");
  return r;
}

bool is_equivalence(const FinFunctor& fn) {
  const FinCat& c = *fn.src;
  const FinCat& d = *fn.dst;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    for (ObjId b = 0; b < c.num_objects(); ++b) {
      const auto& src_hom = c.hom(a, b);
      const auto& dst_hom = d.hom(fn.obj(a), fn.obj(b));
      if (src_hom.size() != dst_hom.size()) return false;
      std::vector<bool> seen(dst_hom.size(), false);
      for (MorId m : src_hom) {
        std::size_t p = d.hom_position(fn.mor(m));
        if (seen[p]) return false;
        seen[p] = true;
      }
    }
  for (ObjId y = 0; y < d.num_objects(); ++y) {
    bool hit = false;
    for (ObjId a = 0; a < c.num_objects() && !hit; ++a) hit = d.find_iso(fn.obj(a), y).has_value();
    if (!hit) return false;
  }
  return true;
}

ValidationReport validate_bicategory(const FinBicategory& b) {
  ValidationReport r;
  const std::size_t n = b.num_objects;
  if (b.homs.size() != n * n || b.units.size() != n || b.hcomps.size() != n * n * n ||
      b.associators.size() != n * n * n * n || b.left_unitors.size() != n * n ||
      b.right_unitors.size() != n * n) {
    r.structural("bicategory", "table sizes do not match the number of objects");
    return r;
  }
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      if (!b.homs[x * n + y]) {
        r.structural("bicategory", "missing hom-category " + str({x, y}));
        continue;
      }
      r.merge(validate_fincat(b.hom(x, y)), "hom" + str({x, y}));
    }
  if (!r.ok()) return r;
  for (ObjId x = 0; x < n; ++x)
    if (b.units[x] >= b.hom(x, x).num_objects()) r.structural("unit", "unit of " + str({x}) + " out of range");

  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        const auto& hc = b.hcomps[b.triple_index(x, y, z)];
        const FinCat &xy = b.hom(x, y), &yz = b.hom(y, z), &xz = b.hom(x, z);
        if (hc.obj.size() != xy.num_objects() * yz.num_objects() ||
            hc.mor.size() != xy.num_morphisms() * yz.num_morphisms()) {
          r.structural("hcomp", "table size mismatch on " + str({x, y, z}));
          continue;
        }
        for (auto o : hc.obj)
          if (o >= xz.num_objects()) r.structural("hcomp", "object out of range on " + str({x, y, z}));
        for (auto m : hc.mor)
          if (m >= xz.num_morphisms()) r.structural("hcomp", "2-cell out of range on " + str({x, y, z}));
      }
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      const FinCat& xy = b.hom(x, y);
      if (b.left_unitors[x * n + y].size() != xy.num_objects() ||
          b.right_unitors[x * n + y].size() != xy.num_objects())
        r.structural("unitor", "table size mismatch on " + str({x, y}));
      else
        for (ObjId f = 0; f < xy.num_objects(); ++f)
          if (b.left_unitors[x * n + y][f] >= xy.num_morphisms() ||
              b.right_unitors[x * n + y][f] >= xy.num_morphisms())
            r.structural("unitor", "component out of range on " + str({x, y, f}));
      for (ObjId z = 0; z < n; ++z)
        for (ObjId w = 0; w < n; ++w) {
          std::size_t cnt = xy.num_objects() * b.hom(y, z).num_objects() * b.hom(z, w).num_objects();
          const auto& a = b.associators[b.quad_index(x, y, z, w)];
          if (a.size() != cnt) {
            r.structural("associator", "table size mismatch on " + str({x, y, z, w}));
            continue;
          }
          for (auto c : a)
            if (c >= b.hom(x, w).num_morphisms())
              r.structural("associator", "component out of range on " + str({x, y, z, w}));
        }
    }
  if (!r.ok()) return r;

  // hcomp functoriality
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        const FinCat &xy = b.hom(x, y), &yz = b.hom(y, z), &xz = b.hom(x, z);
        for (MorId m = 0; m < xy.num_morphisms(); ++m)
          for (MorId k = 0; k < yz.num_morphisms(); ++k) {
            MorId h = b.hcomp_mor(x, y, z, m, k);
            if (xz.src(h) != b.hcomp(x, y, z, xy.src(m), yz.src(k)) ||
                xz.dst(h) != b.hcomp(x, y, z, xy.dst(m), yz.dst(k)))
              r.structural("hcomp", "2-cell " + str({m, k}) + " on " + str({x, y, z}) + " has wrong endpoints");
          }
        if (r.has_structural()) continue;
        for (ObjId f = 0; f < xy.num_objects(); ++f)
          for (ObjId g = 0; g < yz.num_objects(); ++g)
            if (b.hcomp_mor(x, y, z, xy.identity(f), yz.identity(g)) != xz.identity(b.hcomp(x, y, z, f, g)))
              r.law("hcomp-identity", "on " + str({x, y, z}) + " cells " + str({f, g}));
        for (MorId m1 = 0; m1 < xy.num_morphisms(); ++m1)
          for (ObjId t = 0; t < xy.num_objects(); ++t)
            for (MorId m2 : xy.hom(xy.dst(m1), t))
              for (MorId k1 = 0; k1 < yz.num_morphisms(); ++k1)
                for (ObjId s = 0; s < yz.num_objects(); ++s)
                  for (MorId k2 : yz.hom(yz.dst(k1), s)) {
                    MorId lhs = b.hcomp_mor(x, y, z, xy.compose(m2, m1), yz.compose(k2, k1));
                    MorId rhs = xz.compose(b.hcomp_mor(x, y, z, m2, k2), b.hcomp_mor(x, y, z, m1, k1));
                    if (lhs != rhs)
                      r.law("hcomp-interchange", "on " + str({x, y, z}) + " 2-cells " + str({m1, m2, k1, k2}));
                  }
      }
  if (r.has_structural()) return r;

  // associator: typing, invertibility, naturality
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z)
        for (ObjId w = 0; w < n; ++w) {
          const FinCat &xy = b.hom(x, y), &yz = b.hom(y, z), &zw = b.hom(z, w), &xw = b.hom(x, w);
          auto lhs_obj = [&](ObjId f, ObjId g, ObjId h) {
            return b.hcomp(x, z, w, b.hcomp(x, y, z, f, g), h);
          };
          auto rhs_obj = [&](ObjId f, ObjId g, ObjId h) {
            return b.hcomp(x, y, w, f, b.hcomp(y, z, w, g, h));
          };
          for (ObjId f = 0; f < xy.num_objects(); ++f)
            for (ObjId g = 0; g < yz.num_objects(); ++g)
              for (ObjId h = 0; h < zw.num_objects(); ++h) {
                MorId a = b.associator(x, y, z, w, f, g, h);
                if (xw.src(a) != lhs_obj(f, g, h) || xw.dst(a) != rhs_obj(f, g, h))
                  r.structural("associator", "component " + str({f, g, h}) + " on " + str({x, y, z, w}) + " has wrong endpoints");
                else if (!xw.is_iso(a))
                  r.law("associator-iso", "component " + str({f, g, h}) + " on " + str({x, y, z, w}));
              }
          if (r.has_structural()) continue;
          for (MorId p = 0; p < xy.num_morphisms(); ++p)
            for (MorId q = 0; q < yz.num_morphisms(); ++q)
              for (MorId s = 0; s < zw.num_morphisms(); ++s) {
                MorId left = b.hcomp_mor(x, z, w, b.hcomp_mor(x, y, z, p, q), s);
                MorId right = b.hcomp_mor(x, y, w, p, b.hcomp_mor(y, z, w, q, s));
                MorId lhs = xw.compose(b.associator(x, y, z, w, xy.dst(p), yz.dst(q), zw.dst(s)), left);
                MorId rhs = xw.compose(right, b.associator(x, y, z, w, xy.src(p), yz.src(q), zw.src(s)));
                if (lhs != rhs)
                  r.law("associator-naturality", "2-cells " + str({p, q, s}) + " on " + str({x, y, z, w}));
              }
        }
  if (r.has_structural()) return r;

  // unitors
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      const FinCat& xy = b.hom(x, y);
      for (ObjId f = 0; f < xy.num_objects(); ++f) {
        MorId l = b.left_unitor(x, y, f);
        MorId rr = b.right_unitor(x, y, f);
        if (xy.src(l) != b.hcomp(x, y, y, f, b.unit(y)) || xy.dst(l) != f)
          r.structural("left-unitor", "component " + str({f}) + " on " + str({x, y}) + " has wrong endpoints");
        else if (!xy.is_iso(l))
          r.law("left-unitor-iso", "component " + str({f}) + " on " + str({x, y}));
        if (xy.src(rr) != b.hcomp(x, x, y, b.unit(x), f) || xy.dst(rr) != f)
          r.structural("right-unitor", "component " + str({f}) + " on " + str({x, y}) + " has wrong endpoints");
        else if (!xy.is_iso(rr))
          r.law("right-unitor-iso", "component " + str({f}) + " on " + str({x, y}));
      }
      if (r.has_structural()) continue;
      MorId idu_y = b.hom(y, y).identity(b.unit(y));
      MorId idu_x = b.hom(x, x).identity(b.unit(x));
      for (MorId p = 0; p < xy.num_morphisms(); ++p) {
        MorId lhs = xy.compose(b.left_unitor(x, y, xy.dst(p)), b.hcomp_mor(x, y, y, p, idu_y));
        MorId rhs = xy.compose(p, b.left_unitor(x, y, xy.src(p)));
        if (lhs != rhs) r.law("left-unitor-naturality", "2-cell " + str({p}) + " on " + str({x, y}));
        lhs = xy.compose(b.right_unitor(x, y, xy.dst(p)), b.hcomp_mor(x, x, y, idu_x, p));
        rhs = xy.compose(p, b.right_unitor(x, y, xy.src(p)));
        if (lhs != rhs) r.law("right-unitor-naturality", "2-cell " + str({p}) + " on " + str({x, y}));
      }
    }
  if (r.has_structural()) return r;

  // pentagon
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb)
      for (ObjId c = 0; c < n; ++c)
        for (ObjId d = 0; d < n; ++d)
          for (ObjId e = 0; e < n; ++e) {
            const FinCat& ae = b.hom(a, e);
            for (ObjId f = 0; f < b.hom(a, bb).num_objects(); ++f)
              for (ObjId g = 0; g < b.hom(bb, c).num_objects(); ++g)
                for (ObjId h = 0; h < b.hom(c, d).num_objects(); ++h)
                  for (ObjId k = 0; k < b.hom(d, e).num_objects(); ++k) {
                    ObjId fg = b.hcomp(a, bb, c, f, g);
                    ObjId hk = b.hcomp(c, d, e, h, k);
                    ObjId gh = b.hcomp(bb, c, d, g, h);
                    MorId lhs = ae.compose(b.associator(a, bb, c, e, f, g, hk),
                                           b.associator(a, c, d, e, fg, h, k));
                    MorId step1 = b.hcomp_mor(a, d, e, b.associator(a, bb, c, d, f, g, h),
                                              b.hom(d, e).identity(k));
                    MorId step2 = b.associator(a, bb, d, e, f, gh, k);
                    MorId step3 = b.hcomp_mor(a, bb, e, b.hom(a, bb).identity(f),
                                              b.associator(bb, c, d, e, g, h, k));
                    MorId rhs = ae.compose(step3, ae.compose(step2, step1));
                    if (lhs != rhs)
                      r.law("pentagon", "objects " + str({a, bb, c, d, e}) + " 1-cells " + str({f, g, h, k}));
                  }
          }

  // triangle
  for (ObjId a = 0; a < n; ++a)
    for (ObjId bb = 0; bb < n; ++bb)
      for (ObjId c = 0; c < n; ++c) {
        const FinCat& ac = b.hom(a, c);
        for (ObjId f = 0; f < b.hom(a, bb).num_objects(); ++f)
          for (ObjId g = 0; g < b.hom(bb, c).num_objects(); ++g) {
            MorId lhs = ac.compose(
                b.hcomp_mor(a, bb, c, b.hom(a, bb).identity(f), b.right_unitor(bb, c, g)),
                b.associator(a, bb, bb, c, f, b.unit(bb), g));
            MorId rhs = b.hcomp_mor(a, bb, c, b.left_unitor(a, bb, f), b.hom(bb, c).identity(g));
            if (lhs != rhs) r.law("triangle", "objects " + str({a, bb, c}) + " 1-cells " + str({f, g}));
          }
      }
  return r;
}

ValidationReport validate_indexed(const IndexedCat& l) {
  ValidationReport r;
  if (!l.base) {
    r.structural("indexed", "missing base bicategory");
    return r;
  }
  const FinBicategory& b = *l.base;
  r.merge(validate_bicategory(b), "base");
  if (!r.ok()) return r;
  const std::size_t n = b.num_objects;
  if (l.fibers.size() != n || l.pull.size() != n * n || l.two_cells.size() != n * n ||
      l.theta_id.size() != n || l.theta_comp.size() != n * n * n) {
    r.structural("indexed", "table sizes do not match the base");
    return r;
  }
  for (ObjId a = 0; a < n; ++a) {
    if (!l.fibers[a]) {
      r.structural("indexed", "missing fiber " + str({a}));
      return r;
    }
    r.merge(validate_fincat(l.fiber(a)), "fiber" + str({a}));
  }
  if (!r.ok()) return r;

  // pullback functors
  for (ObjId a = 0; a < n; ++a)
    for (ObjId c = 0; c < n; ++c) {
      const auto& fs = l.pull[b.hom_index(a, c)];
      if (fs.size() != b.hom(a, c).num_objects()) {
        r.structural("pull", "wrong number of functors on " + str({a, c}));
        continue;
      }
      for (ObjId f = 0; f < fs.size(); ++f) {
        if (!same_cat(fs[f].src, l.fibers[c]) || !same_cat(fs[f].dst, l.fibers[a])) {
          r.structural("pull", "functor " + str({f}) + " on " + str({a, c}) + " has wrong fibers");
          continue;
        }
        r.merge(validate_functor(fs[f]), "pull" + str({a, c, f}));
      }
    }
  if (r.has_structural()) return r;

  // 2-cells
  for (ObjId a = 0; a < n; ++a)
    for (ObjId c = 0; c < n; ++c) {
      const FinCat& hom = b.hom(a, c);
      const FinCat& fa = l.fiber(a);
      const FinCat& fc = l.fiber(c);
      const auto& ts = l.two_cells[b.hom_index(a, c)];
      if (ts.size() != hom.num_morphisms()) {
        r.structural("two-cell", "wrong number of transformations on " + str({a, c}));
        continue;
      }
      for (MorId m = 0; m < hom.num_morphisms(); ++m) {
        const auto& t = ts[m];
        if (t.components.size() != fc.num_objects()) {
          r.structural("two-cell", "component table of " + str({m}) + " on " + str({a, c}) + " has wrong length");
          continue;
        }
        const auto& fs = l.pullback(a, c, hom.src(m));
        const auto& gs = l.pullback(a, c, hom.dst(m));
        for (ObjId y = 0; y < fc.num_objects(); ++y) {
          MorId k = t.components[y];
          if (k >= fa.num_morphisms() || fa.src(k) != fs.obj(y) || fa.dst(k) != gs.obj(y))
            r.structural("two-cell", "component of " + str({m}) + " at " + str({y}) + " on " + str({a, c}) + " has wrong endpoints");
        }
        if (r.has_structural()) continue;
        for (MorId u = 0; u < fc.num_morphisms(); ++u)
          if (fa.compose(gs.mor(u), t.components[fc.src(u)]) != fa.compose(t.components[fc.dst(u)], fs.mor(u)))
            r.law("two-cell-naturality", "2-cell " + str({m}) + " on " + str({a, c}) + " at morphism " + str({u}));
      }
      if (r.has_structural()) continue;
      for (ObjId f = 0; f < hom.num_objects(); ++f)
        for (ObjId y = 0; y < fc.num_objects(); ++y)
          if (ts[hom.identity(f)].components[y] != fa.identity(l.pull_obj(a, c, f, y)))
            r.law("two-cell-identity", "identity 2-cell of " + str({f}) + " on " + str({a, c}) + " at " + str({y}));
      for (MorId m1 = 0; m1 < hom.num_morphisms(); ++m1)
        for (ObjId t = 0; t < hom.num_objects(); ++t)
          for (MorId m2 : hom.hom(hom.dst(m1), t))
            for (ObjId y = 0; y < fc.num_objects(); ++y)
              if (ts[hom.compose(m2, m1)].components[y] != fa.compose(ts[m2].components[y], ts[m1].components[y]))
                r.law("two-cell-composition", "2-cells " + str({m2, m1}) + " on " + str({a, c}) + " at " + str({y}));
    }
  if (r.has_structural()) return r;

  // theta_id
  for (ObjId a = 0; a < n; ++a) {
    const FinCat& fa = l.fiber(a);
    const auto& idstar = l.pullback(a, a, b.unit(a));
    const auto& t = l.theta_id[a];
    if (t.components.size() != fa.num_objects()) {
      r.structural("theta-id", "component table on " + str({a}) + " has wrong length");
      continue;
    }
    for (ObjId x = 0; x < fa.num_objects(); ++x) {
      MorId k = t.components[x];
      if (k >= fa.num_morphisms() || fa.src(k) != x || fa.dst(k) != idstar.obj(x))
        r.structural("theta-id", "component at " + str({a, x}) + " has wrong endpoints");
      else if (!fa.is_iso(k))
        r.law("theta-id-iso", "component at " + str({a, x}) + " is not invertible");
    }
    if (r.has_structural()) continue;
    for (MorId u = 0; u < fa.num_morphisms(); ++u)
      if (fa.compose(idstar.mor(u), t.components[fa.src(u)]) != fa.compose(t.components[fa.dst(u)], u))
        r.law("theta-id-naturality", "on " + str({a}) + " at morphism " + str({u}));
  }
  if (r.has_structural()) return r;

  // theta_comp
  for (ObjId a = 0; a < n; ++a)
    for (ObjId c = 0; c < n; ++c)
      for (ObjId d = 0; d < n; ++d) {
        const FinCat &ac = b.hom(a, c), &cd = b.hom(c, d);
        const FinCat& fa = l.fiber(a);
        const FinCat& fd = l.fiber(d);
        const auto& ts = l.theta_comp[b.triple_index(a, c, d)];
        if (ts.size() != ac.num_objects() * cd.num_objects()) {
          r.structural("theta-comp", "wrong number of transformations on " + str({a, c, d}));
          continue;
        }
        for (ObjId f = 0; f < ac.num_objects(); ++f)
          for (ObjId g = 0; g < cd.num_objects(); ++g) {
            const auto& t = ts[f * cd.num_objects() + g];
            if (t.components.size() != fd.num_objects()) {
              r.structural("theta-comp", "component table of " + str({f, g}) + " has wrong length");
              continue;
            }
            const auto& fs = l.pullback(a, c, f);
            const auto& gs = l.pullback(c, d, g);
            const auto& fgs = l.pullback(a, d, b.hcomp(a, c, d, f, g));
            for (ObjId z = 0; z < fd.num_objects(); ++z) {
              MorId k = t.components[z];
              if (k >= fa.num_morphisms() || fa.src(k) != fs.obj(gs.obj(z)) || fa.dst(k) != fgs.obj(z))
                r.structural("theta-comp", "component of " + str({f, g}) + " at " + str({z}) + " on " + str({a, c, d}) + " has wrong endpoints");
              else if (!fa.is_iso(k))
                r.law("theta-comp-iso", "component of " + str({f, g}) + " at " + str({z}) + " on " + str({a, c, d}));
            }
            if (r.has_structural()) continue;
            for (MorId u = 0; u < fd.num_morphisms(); ++u)
              if (fa.compose(fgs.mor(u), t.components[fd.src(u)]) !=
                  fa.compose(t.components[fd.dst(u)], fs.mor(gs.mor(u))))
                r.law("theta-comp-naturality", "cells " + str({f, g}) + " on " + str({a, c, d}) + " at morphism " + str({u}));
          }
        if (r.has_structural()) continue;
        // naturality in the 1-cells
        for (MorId p = 0; p < ac.num_morphisms(); ++p)
          for (MorId q = 0; q < cd.num_morphisms(); ++q)
            for (ObjId z = 0; z < fd.num_objects(); ++z) {
              ObjId f = ac.src(p), f2 = ac.dst(p), g = cd.src(q), g2 = cd.dst(q);
              MorId pq = b.hcomp_mor(a, c, d, p, q);
              MorId lhs = fa.compose(l.two_cell(a, d, pq, z), l.theta(a, c, d, f, g, z));
              MorId whisker = fa.compose(l.two_cell(a, c, p, l.pull_obj(c, d, g2, z)),
                                         l.pull_mor(a, c, f, l.two_cell(c, d, q, z)));
              MorId rhs = fa.compose(l.theta(a, c, d, f2, g2, z), whisker);
              if (lhs != rhs)
                r.law("theta-comp-2-naturality", "2-cells " + str({p, q}) + " on " + str({a, c, d}) + " at " + str({z}));
            }
      }
  if (r.has_structural()) return r;

  // unit coherences
  for (ObjId a = 0; a < n; ++a)
    for (ObjId c = 0; c < n; ++c) {
      const FinCat& fa = l.fiber(a);
      const FinCat& fc = l.fiber(c);
      for (ObjId f = 0; f < b.hom(a, c).num_objects(); ++f)
        for (ObjId y = 0; y < fc.num_objects(); ++y) {
          ObjId fy = l.pull_obj(a, c, f, y);
          MorId right = fa.compose(
              l.two_cell(a, c, b.right_unitor(a, c, f), y),
              fa.compose(l.theta(a, a, c, b.unit(a), f, y), l.theta_unit(a, fy)));
          if (right != fa.identity(fy))
            r.law("unit-coherence-right", "1-cell " + str({f}) + " on " + str({a, c}) + " at " + str({y}));
          MorId left = fa.compose(
              l.two_cell(a, c, b.left_unitor(a, c, f), y),
              fa.compose(l.theta(a, c, c, f, b.unit(c), y), l.pull_mor(a, c, f, l.theta_unit(c, y))));
          if (left != fa.identity(fy))
            r.law("unit-coherence-left", "1-cell " + str({f}) + " on " + str({a, c}) + " at " + str({y}));
        }
    }

  // associativity coherence
  for (ObjId a = 0; a < n; ++a)
    for (ObjId c = 0; c < n; ++c)
      for (ObjId d = 0; d < n; ++d)
        for (ObjId e = 0; e < n; ++e) {
          const FinCat& fa = l.fiber(a);
          const FinCat& fe = l.fiber(e);
          for (ObjId f = 0; f < b.hom(a, c).num_objects(); ++f)
            for (ObjId g = 0; g < b.hom(c, d).num_objects(); ++g)
              for (ObjId h = 0; h < b.hom(d, e).num_objects(); ++h) {
                ObjId fg = b.hcomp(a, c, d, f, g);
                ObjId gh = b.hcomp(c, d, e, g, h);
                MorId alpha = b.associator(a, c, d, e, f, g, h);
                for (ObjId w = 0; w < fe.num_objects(); ++w) {
                  ObjId hw = l.pull_obj(d, e, h, w);
                  MorId lhs = fa.compose(l.two_cell(a, e, alpha, w),
                                         fa.compose(l.theta(a, d, e, fg, h, w), l.theta(a, c, d, f, g, hw)));
                  MorId rhs = fa.compose(l.theta(a, c, e, f, gh, w), l.pull_mor(a, c, f, l.theta(c, d, e, g, h, w)));
                  if (lhs != rhs)
                    r.law("associativity-coherence",
                          "objects " + str({a, c, d, e}) + " 1-cells " + str({f, g, h}) + " at " + str({w}));
                }
              }
        }

  if (l.strict) {
    for (ObjId a = 0; a < n; ++a)
      for (ObjId x = 0; x < l.fiber(a).num_objects(); ++x)
        if (!l.fiber(a).is_identity(l.theta_unit(a, x)))
          r.law("strictness", "theta_id is not an identity at " + str({a, x}));
    for (ObjId a = 0; a < n; ++a)
      for (ObjId c = 0; c < n; ++c)
        for (ObjId d = 0; d < n; ++d)
          for (const auto& t : l.theta_comp[b.triple_index(a, c, d)])
            for (MorId k : t.components)
              if (!l.fiber(a).is_identity(k)) {
                r.law("strictness", "theta_comp is not an identity on " + str({a, c, d}));
                break;
              }
  }
  return r;
}

}  // namespace dopt
