#include "document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dopt/error.hpp"

namespace dopt::cli {

namespace {

struct Ctx {
  std::string where;

  [[noreturn]] void fail(const std::string& msg) const { throw InputError(where + ": " + msg); }

  const json& field(const json& obj, const std::string& name) const {
    if (!obj.is_object()) fail("expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) fail("missing field '" + name + "'");
    return *it;
  }
  const json* optional(const json& obj, const std::string& name) const {
    if (!obj.is_object()) fail("expected an object");
    auto it = obj.find(name);
    return it == obj.end() ? nullptr : &*it;
  }
  std::size_t index(const json& v, const std::string& what) const {
    if (!v.is_number_unsigned()) fail(what + ": expected a non-negative integer");
    return v.get<std::size_t>();
  }
  std::string name(const json& v, const std::string& what) const {
    if (!v.is_string()) fail(what + ": expected an entity name");
    return v.get<std::string>();
  }
  const json& array(const json& v, const std::string& what) const {
    if (!v.is_array()) fail(what + ": expected an array");
    return v;
  }
  std::vector<std::size_t> table(const json& v, const std::string& what) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < array(v, what).size(); ++i)
      out.push_back(index(v[i], what + "[" + std::to_string(i) + "]"));
    return out;
  }
  std::vector<std::vector<std::size_t>> tables(const json& v, const std::string& what) const {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < array(v, what).size(); ++i)
      out.push_back(table(v[i], what + "[" + std::to_string(i) + "]"));
    return out;
  }
  std::vector<std::vector<std::vector<std::size_t>>> tables3(const json& v, const std::string& what) const {
    std::vector<std::vector<std::vector<std::size_t>>> out;
    for (std::size_t i = 0; i < array(v, what).size(); ++i)
      out.push_back(tables(v[i], what + "[" + std::to_string(i) + "]"));
    return out;
  }
  std::size_t length(const json& v, std::size_t n, const std::string& what) const {
    if (array(v, what).size() != n)
      fail(what + ": expected " + std::to_string(n) + " entries, found " + std::to_string(v.size()));
    return n;
  }
  std::size_t number(const json& obj, const std::string& name, std::size_t fallback) const {
    auto* v = optional(obj, name);
    return v ? index(*v, name) : fallback;
  }
};

std::string builtin_of(const json& body) {
  auto it = body.find("builtin");
  return it != body.end() && it->is_string() ? it->get<std::string>() : "";
}

FinFn make_fn(const Ctx& c, std::vector<std::size_t> table, std::size_t cod, const std::string& what) {
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] >= cod)
      c.fail(what + ": entry " + std::to_string(i) + " is " + std::to_string(table[i]) + ", codomain has size " +
             std::to_string(cod));
  return {{table.size()}, {cod}, std::move(table)};
}

MonoidalData monoidal_by_name(const Ctx& c, const std::string& name) {
  if (name == "meet-semilattice") return meet_semilattice();
  if (name == "trivial") return trivial_monoid();
  if (name == "z2") return discrete_z2();
  c.fail("unknown monoidal category '" + name + "' (expected meet-semilattice, trivial or z2)");
}

// Computations on an optic need valid indexed categories underneath.
void require_valid(const Ctx& c, const std::string& name, const OpticEntry& o) {
  if (o.indexed_report.ok()) return;
  const auto& i = o.indexed_report.issues()[0];
  throw CheckError(i.law, c.where + ": optic '" + name + "' rests on an invalid indexed category: " + i.detail);
}

}  // namespace

const std::vector<std::string>& section_names() {
  static const std::vector<std::string> names = {
      "sets",    "functions", "categories", "functors", "bicategories", "indexed",  "optics",     "objects", "morphisms",
      "cospans", "spans",     "lenses",     "prisms",   "witnesses",    "tambara", "presheaves", "programs"};
  return names;
}

const OpticTable& OpticEntry::table() const {
  if (!table_) table_ = std::make_shared<OpticTable>(optic_table(*cat));
  return *table_;
}

class Document::Scope {
 public:
  Scope(Document& d, const Key& k) : d_(d) {
    if (std::find(d.stack_.begin(), d.stack_.end(), k) != d.stack_.end())
      throw InputError(d.where(k) + ": reference cycle");
    d.stack_.push_back(k);
  }
  ~Scope() { d_.stack_.pop_back(); }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  Document& d_;
};

void Document::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
  load_json(doc, path);
}

void Document::load_json(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw InputError(path + ": top level must be an object");
  const auto& sections = section_names();
  for (const auto& [section, entries] : doc.items()) {
    if (section == "$schema" || section == "description") continue;
    if (std::find(sections.begin(), sections.end(), section) == sections.end())
      throw InputError(path + ": unknown section '" + section + "'");
    if (!entries.is_object()) throw InputError(path + ": section '" + section + "' must map names to entities");
    for (const auto& [name, body] : entries.items()) {
      Key key{section, name};
      if (auto it = raw_.find(key); it != raw_.end())
        throw InputError(path + ": " + section + " '" + name + "' is already defined in " + it->second.path);
      raw_[key] = {path, body};
    }
  }
}

bool Document::has(const std::string& section, const std::string& name) const {
  return raw_.count({section, name}) > 0;
}

std::vector<std::string> Document::sections_of(const std::string& name) const {
  std::vector<std::string> out;
  for (const auto& s : section_names())
    if (has(s, name)) out.push_back(s);
  return out;
}

std::vector<std::string> Document::names(const std::string& section) const {
  std::vector<std::string> out;
  for (const auto& [k, r] : raw_)
    if (k.first == section) out.push_back(k.second);
  return out;
}

std::vector<Key> Document::keys() const {
  std::vector<Key> out;
  for (const auto& s : section_names())
    for (const auto& n : names(s)) out.push_back({s, n});
  return out;
}

std::string Document::where(const Key& key) const {
  auto it = raw_.find(key);
  std::string path = it == raw_.end() ? "<inputs>" : it->second.path;
  return path + ": " + key.first + " '" + key.second + "'";
}

const Document::Raw& Document::raw(const std::string& section, const std::string& name) {
  auto it = raw_.find({section, name});
  if (it != raw_.end()) return it->second;
  // the top of the stack is the missing entity itself
  if (stack_.size() < 2) throw InputError("<inputs>: no " + section + " entity named '" + name + "'");
  throw InputError(where(stack_[stack_.size() - 2]) + ": unresolved reference to " + section + " '" + name + "'");
}

void Document::depend(const Key& key) {
  if (!stack_.empty()) deps_[stack_.back()].insert(key);
}

// ---------------------------------------------------------------------------
// Builders

std::size_t Document::set(const std::string& name) {
  Key key{"sets", name};
  depend(key);
  if (auto it = sets_.find(name); it != sets_.end()) return it->second;
  Scope scope(*this, key);
  const Raw& r = raw(key.first, name);
  Ctx c{where(key)};
  return sets_[name] = c.index(r.body, "size");
}

namespace {

// Sizes are integers or names of sets.
std::size_t size_value(Document& d, const Ctx& c, const json& v, const std::string& what) {
  if (v.is_string()) return d.set(v.get<std::string>());
  return c.index(v, what);
}

// Arrays, {"dom", "cod", "table"} objects, or names of functions.
FinFn fn_value(Document& d, const Ctx& c, const json& v, std::size_t cod, const std::string& what,
               std::optional<std::size_t> dom = std::nullopt) {
  FinFn f;
  if (v.is_string()) {
    f = d.function(v.get<std::string>());
    if (f.cod.size != cod)
      c.fail(what + ": function '" + v.get<std::string>() + "' has codomain " + std::to_string(f.cod.size) +
             ", expected " + std::to_string(cod));
  } else if (v.is_object()) {
    std::size_t fc = size_value(d, c, c.field(v, "cod"), what + ".cod");
    if (fc != cod) c.fail(what + ": codomain " + std::to_string(fc) + ", expected " + std::to_string(cod));
    f = make_fn(c, c.table(c.field(v, "table"), what + ".table"), cod, what);
    if (size_value(d, c, c.field(v, "dom"), what + ".dom") != f.dom.size) c.fail(what + ": table length differs from dom");
  } else {
    f = make_fn(c, c.table(v, what), cod, what);
  }
  if (dom && f.dom.size != *dom)
    c.fail(what + ": domain has size " + std::to_string(f.dom.size) + ", expected " + std::to_string(*dom));
  return f;
}

}  // namespace

FinFn Document::function(const std::string& name) {
  Key key{"functions", name};
  depend(key);
  if (auto it = functions_.find(name); it != functions_.end()) return it->second;
  Scope scope(*this, key);
  const Raw& r = raw(key.first, name);
  Ctx c{where(key)};
  std::size_t cod = size_value(*this, c, c.field(r.body, "cod"), "cod");
  std::size_t dom = size_value(*this, c, c.field(r.body, "dom"), "dom");
  return functions_[name] = fn_value(*this, c, c.field(r.body, "table"), cod, "table", dom);
}

CatPtr Document::category(const std::string& name) {
  Key key{"categories", name};
  depend(key);
  if (auto it = categories_.find(name); it != categories_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  CatPtr out;
  std::string kind = builtin_of(b);
  if (kind == "terminal") out = terminal_category();
  else if (kind == "discrete") out = discrete_category(c.index(c.field(b, "n"), "n"));
  else if (kind == "chain") out = chain_category(c.index(c.field(b, "n"), "n"));
  else if (kind == "codiscrete") out = codiscrete_category(c.index(c.field(b, "n"), "n"));
  else if (kind == "cyclic") out = cyclic_group_category(c.index(c.field(b, "n"), "n"));
  else if (kind == "finset") out = finset_skeleton(c.index(c.field(b, "max_size"), "max_size"));
  else if (kind == "product")
    out = product_category(*category(c.name(c.field(b, "left"), "left")), *category(c.name(c.field(b, "right"), "right")));
  else if (kind == "power") out = power_category(category(c.name(c.field(b, "of"), "of")), c.index(c.field(b, "n"), "n"));
  else if (!kind.empty()) c.fail("unknown builtin category '" + kind + "'");
  else {
    std::size_t n = size_value(*this, c, c.field(b, "objects"), "objects");
    std::vector<MorphismSpec> mors;
    const json& ms = c.array(c.field(b, "morphisms"), "morphisms");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      auto t = c.table(ms[i], "morphisms[" + std::to_string(i) + "]");
      if (t.size() != 2) c.fail("morphisms[" + std::to_string(i) + "]: expected [source, target]");
      mors.push_back({t[0], t[1]});
    }
    auto ids = c.table(c.field(b, "identities"), "identities");
    std::vector<CompositionEntry> comp;
    const json& cs = c.array(c.field(b, "composition"), "composition");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      auto t = c.table(cs[i], "composition[" + std::to_string(i) + "]");
      if (t.size() != 3) c.fail("composition[" + std::to_string(i) + "]: expected [g, f, g∘f]");
      comp.push_back({t[0], t[1], t[2]});
    }
    out = std::make_shared<FinCat>(n, std::move(mors), std::move(ids), comp);
  }
  return categories_[name] = out;
}

FinFunctor Document::functor(const std::string& name) {
  Key key{"functors", name};
  depend(key);
  if (auto it = functors_.find(name); it != functors_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  FinFunctor f{category(c.name(c.field(b, "source"), "source")), category(c.name(c.field(b, "target"), "target")),
               c.table(c.field(b, "objects"), "objects"), c.table(c.field(b, "morphisms"), "morphisms")};
  return functors_[name] = f;
}

BicatPtr Document::bicategory(const std::string& name) {
  Key key{"bicategories", name};
  depend(key);
  if (auto it = bicategories_.find(name); it != bicategories_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  BicatPtr out;
  BaseInfo info;
  std::string kind = builtin_of(b);
  try {
    if (kind == "locally-discrete") {
      std::string cat = c.name(c.field(b, "category"), "category");
      out = locally_discrete(category(cat));
      if (raw("categories", cat).body.value("builtin", "") == "finset")
        info.family_max_base = category(cat)->num_objects() - 1;
    } else if (kind == "deloop") {
      out = deloop_monoidal(monoidal_by_name(c, c.name(c.field(b, "monoidal"), "monoidal")));
    } else if (kind == "bbz2") {
      out = bbz2(c.number(b, "assoc", 0));
    } else if (kind == "spans") {
      auto spans = std::make_shared<SpanBicategory>(
          span_bicategory(c.index(c.field(b, "max_base"), "max_base"), c.index(c.field(b, "max_apex"), "max_apex")));
      out = spans->bicat;
      info.spans = spans;
    } else if (!kind.empty()) {
      c.fail("unknown builtin bicategory '" + kind + "'");
    } else {
      auto bic = std::make_shared<FinBicategory>();
      std::size_t n = bic->num_objects = size_value(*this, c, c.field(b, "objects"), "objects");
      const json& homs = c.field(b, "homs");
      c.length(homs, n * n, "homs");
      for (std::size_t i = 0; i < n * n; ++i) bic->homs.push_back(category(c.name(homs[i], "homs[" + std::to_string(i) + "]")));
      bic->units = c.table(c.field(b, "units"), "units");
      const json& hc = c.field(b, "hcomp");
      c.length(hc, n * n * n, "hcomp");
      for (std::size_t i = 0; i < hc.size(); ++i) {
        std::string w = "hcomp[" + std::to_string(i) + "]";
        bic->hcomps.push_back({c.table(c.field(hc[i], "objects"), w + ".objects"),
                               c.table(c.field(hc[i], "morphisms"), w + ".morphisms")});
      }
      bic->associators = c.tables(c.field(b, "associators"), "associators");
      bic->left_unitors = c.tables(c.field(b, "left_unitors"), "left_unitors");
      bic->right_unitors = c.tables(c.field(b, "right_unitors"), "right_unitors");
      out = bic;
    }
  } catch (const Error& e) {
    c.fail(e.what());
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
  bicategory_info_[name] = info;
  return bicategories_[name] = out;
}

const BaseInfo& Document::bicategory_info(const std::string& name) {
  bicategory(name);
  return bicategory_info_.at(name);
}

const IndexedEntry& Document::indexed(const std::string& name) {
  Key key{"indexed", name};
  depend(key);
  if (auto it = indexed_.find(name); it != indexed_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  IndexedEntry out;
  std::string kind = builtin_of(b);
  try {
    if (kind == "semilattice-action") {
      out.ptr = semilattice_action();
    } else if (kind == "z2-swap") {
      out.ptr = z2_swap_action();
    } else if (kind == "trivial") {
      if (auto* of = c.optional(b, "base_of")) {
        const auto& l = indexed(c.name(*of, "base_of"));
        out = {trivial_indexed(l.ptr->base), l.base};
      } else {
        std::string base = c.name(c.field(b, "base"), "base");
        out = {trivial_indexed(bicategory(base)), bicategory_info(base)};
      }
    } else if (kind == "family") {
      std::size_t max_base = c.index(c.field(b, "max_base"), "max_base");
      out.ptr = family_indexed(category(c.name(c.field(b, "category"), "category")), max_base);
      out.base.family_max_base = max_base;
    } else if (kind == "slices") {
      auto spans = std::make_shared<SpanBicategory>(
          span_bicategory(c.index(c.field(b, "max_base"), "max_base"), c.index(c.field(b, "max_apex"), "max_apex")));
      out.ptr = slice_indexed(*spans, c.index(c.field(b, "max_size"), "max_size")).indexed;
      out.base.spans = spans;
    } else if (kind == "weaken") {
      const auto& l = indexed(c.name(c.field(b, "of"), "of"));
      std::string twist = c.name(c.field(b, "twist"), "twist");
      if (twist != "swap" && twist != "sign") c.fail("twist must be 'swap' or 'sign'");
      std::vector<ThetaSite> flipped;
      if (auto* fl = c.optional(b, "flipped"))
        for (std::size_t i = 0; i < c.array(*fl, "flipped").size(); ++i) {
          const json& s = (*fl)[i];
          std::string w = "flipped[" + std::to_string(i) + "]";
          ThetaSite site;
          site.unit = s.value("unit", false);
          site.a = c.number(s, "a", 0), site.b = c.number(s, "b", 0), site.c = c.number(s, "c", 0);
          site.f = c.number(s, "f", 0), site.g = c.number(s, "g", 0);
          flipped.push_back(site);
        }
      out = {weaken(*l.ptr, twist == "swap" ? Twist::Swap : Twist::Sign, flipped), l.base};
    } else if (!kind.empty()) {
      c.fail("unknown builtin indexed category '" + kind + "'");
    } else {
      std::string base_name = c.name(c.field(b, "base"), "base");
      auto base = bicategory(base_name);
      out.base = bicategory_info(base_name);
      if (auto br = validate_bicategory(*base); br.has_structural())
        throw CheckError(br.issues()[0].law, c.where + ": base '" + base_name + "' is malformed: " + br.issues()[0].detail);
      const std::size_t n = base->num_objects;
      auto l = std::make_shared<IndexedCat>();
      l->base = base;
      l->strict = b.value("strict", false);
      const json& fibers = c.field(b, "fibers");
      c.length(fibers, n, "fibers");
      for (std::size_t a = 0; a < n; ++a) l->fibers.push_back(category(c.name(fibers[a], "fibers[" + std::to_string(a) + "]")));
      auto functor_at = [&](ObjId a, ObjId bb, ObjId f) -> const FinFunctor& {
        return l->pull[base->hom_index(a, bb)][f];
      };
      const json& pull = c.field(b, "pull");
      c.length(pull, n * n, "pull");
      for (ObjId a = 0; a < n; ++a)
        for (ObjId bb = 0; bb < n; ++bb) {
          std::size_t h = base->hom_index(a, bb);
          std::string w = "pull[" + std::to_string(h) + "]";
          c.length(pull[h], base->hom(a, bb).num_objects(), w);
          std::vector<FinFunctor> fs;
          for (std::size_t f = 0; f < pull[h].size(); ++f) {
            std::string wf = w + "[" + std::to_string(f) + "]";
            fs.push_back({l->fibers[bb], l->fibers[a], c.table(c.field(pull[h][f], "objects"), wf + ".objects"),
                          c.table(c.field(pull[h][f], "morphisms"), wf + ".morphisms")});
          }
          l->pull.push_back(std::move(fs));
        }
      const json& two = c.field(b, "two_cells");
      c.length(two, n * n, "two_cells");
      for (ObjId a = 0; a < n; ++a)
        for (ObjId bb = 0; bb < n; ++bb) {
          std::size_t h = base->hom_index(a, bb);
          const FinCat& hom = base->hom(a, bb);
          std::string w = "two_cells[" + std::to_string(h) + "]";
          c.length(two[h], hom.num_morphisms(), w);
          std::vector<FinNatTrans> ts;
          for (MorId m = 0; m < hom.num_morphisms(); ++m)
            ts.push_back({functor_at(a, bb, hom.src(m)), functor_at(a, bb, hom.dst(m)),
                          c.table(two[h][m], w + "[" + std::to_string(m) + "]")});
          l->two_cells.push_back(std::move(ts));
        }
      const json& tid = c.field(b, "theta_id");
      c.length(tid, n, "theta_id");
      for (ObjId a = 0; a < n; ++a)
        l->theta_id.push_back({FinFunctor::identity(l->fibers[a]), functor_at(a, a, base->unit(a)),
                               c.table(tid[a], "theta_id[" + std::to_string(a) + "]")});
      const json& tc = c.field(b, "theta_comp");
      c.length(tc, n * n * n, "theta_comp");
      for (ObjId a = 0; a < n; ++a)
        for (ObjId bb = 0; bb < n; ++bb)
          for (ObjId cc = 0; cc < n; ++cc) {
            std::size_t t = base->triple_index(a, bb, cc);
            std::size_t nf = base->hom(a, bb).num_objects(), ng = base->hom(bb, cc).num_objects();
            std::string w = "theta_comp[" + std::to_string(t) + "]";
            c.length(tc[t], nf * ng, w);
            std::vector<FinNatTrans> ts;
            for (ObjId f = 0; f < nf; ++f)
              for (ObjId g = 0; g < ng; ++g)
                ts.push_back({compose(functor_at(a, bb, f), functor_at(bb, cc, g)),
                              functor_at(a, cc, base->hcomp(a, bb, cc, f, g)),
                              c.table(tc[t][f * ng + g], w + "[" + std::to_string(f * ng + g) + "]")});
            l->theta_comp.push_back(std::move(ts));
          }
      out.ptr = l;
    }
  } catch (const Error& e) {
    c.fail(e.what());
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  } catch (const std::out_of_range& e) {
    c.fail(std::string("table index out of range while building: ") + e.what());
  }
  return indexed_[name] = out;
}

const OpticEntry& Document::optic(const std::string& name) {
  Key key{"optics", name};
  depend(key);
  if (auto it = optics_.find(name); it != optics_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  const auto& l = indexed(c.name(c.field(b, "left"), "left"));
  const auto& r = indexed(c.name(c.field(b, "right"), "right"));
  OpticEntry out;
  try {
    out.cat = std::make_shared<OpticCategory>(l.ptr, r.ptr);
  } catch (const Error& e) {
    c.fail(e.what());
  }
  out.base = l.base;
  out.indexed_report.merge(validate_indexed(*l.ptr), "left");
  out.indexed_report.merge(validate_indexed(*r.ptr), "right");
  return optics_[name] = out;
}

const ObjectEntry& Document::object(const std::string& name) {
  Key key{"objects", name};
  depend(key);
  if (auto it = objects_.find(name); it != objects_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  ObjectEntry out;
  out.optic = c.name(c.field(b, "optic"), "optic");
  out.object = {c.index(c.field(b, "base"), "base"), c.index(c.field(b, "x"), "x"), c.index(c.field(b, "xp"), "xp")};
  require_valid(c, out.optic, optic(out.optic));
  if (!optic(out.optic).cat->valid_object(out.object)) c.fail("object does not exist in optic '" + out.optic + "'");
  return objects_[name] = out;
}

const MorphismEntry& Document::morphism(const std::string& name) {
  Key key{"morphisms", name};
  depend(key);
  if (auto it = morphisms_.find(name); it != morphisms_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  const auto& s = object(c.name(c.field(b, "source"), "source"));
  const auto& t = object(c.name(c.field(b, "target"), "target"));
  if (s.optic != t.optic) c.fail("source and target live in different optics");
  const auto& cat = *optic(s.optic).cat;
  MorphismEntry out{s.optic, {}};
  try {
    if (auto* cls = c.optional(b, "class")) {
      std::size_t k = c.index(*cls, "class");
      if (k >= cat.hom_size(s.object, t.object))
        c.fail("class " + std::to_string(k) + " out of range, hom has " +
               std::to_string(cat.hom_size(s.object, t.object)) + " classes");
      out.morphism = cat.morphism(s.object, t.object, k);
    } else {
      Witness w{c.index(c.field(b, "representative"), "representative"), c.index(c.field(b, "l"), "l"),
                c.index(c.field(b, "r"), "r")};
      out.morphism = cat.make(s.object, t.object, w);
    }
  } catch (const Error& e) {
    c.fail(e.what());
  }
  return morphisms_[name] = out;
}

const Cospan& Document::cospan(const std::string& name) {
  Key key{"cospans", name};
  depend(key);
  if (auto it = cospans_.find(name); it != cospans_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  std::size_t base = c.optional(b, "base") ? size_value(*this, c, b["base"], "base") : 1;
  auto leg = [&](const char* f) {
    const json& v = c.field(b, f);
    if (v.is_number_unsigned() || (v.is_string() && has("sets", v.get<std::string>()))) {
      if (base != 1) c.fail(std::string(f) + ": a bare size needs base 1");
      return FinFn::constant(size_value(*this, c, v, f), 1, 0);
    }
    return fn_value(*this, c, v, base, f);
  };
  Cospan out{leg("x"), leg("xp")};
  return cospans_[name] = out;
}

const Span& Document::span(const std::string& name) {
  Key key{"spans", name};
  depend(key);
  if (auto it = spans_.find(name); it != spans_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  std::size_t apex = c.optional(b, "apex") ? size_value(*this, c, b["apex"], "apex") : 0;
  std::size_t x = size_value(*this, c, c.field(b, "x"), "x"), xp = size_value(*this, c, c.field(b, "xp"), "xp");
  auto leg = [&](const char* f, std::size_t cod) {
    if (apex == 0 && !c.optional(b, f)) return FinFn{{0}, {cod}, {}};
    return fn_value(*this, c, c.field(b, f), cod, f, apex);
  };
  Span out{leg("leg", x), leg("leg_p", xp)};
  return spans_[name] = out;
}

const LensEntry& Document::lens(const std::string& name) {
  Key key{"lenses", name};
  depend(key);
  if (auto it = lenses_.find(name); it != lenses_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  LensEntry out{cospan(c.name(c.field(b, "source"), "source")), cospan(c.name(c.field(b, "target"), "target")), {}};
  out.lens.get = fn_value(*this, c, c.field(b, "get"), out.target.x(), "get", out.source.x());
  out.lens.put = fn_value(*this, c, c.field(b, "put"), out.source.xp(), "put");
  return lenses_[name] = out;
}

const PrismEntry& Document::prism(const std::string& name) {
  Key key{"prisms", name};
  depend(key);
  if (auto it = prisms_.find(name); it != prisms_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  PrismEntry out{span(c.name(c.field(b, "source"), "source")), span(c.name(c.field(b, "target"), "target")), {}};
  out.prism.match = fn_value(*this, c, c.field(b, "match"), out.source.xp(), "match", out.target.xp());
  using Op = LensCalculus<Opposite<FinSetCat>>;
  auto cone = Op::put_domain(as_opposite_cospan(out.target), {out.prism.match});
  out.prism.review = fn_value(*this, c, c.field(b, "review"), cone.apex, "review", out.source.x());
  return prisms_[name] = out;
}

const WitnessEntry& Document::witness(const std::string& name) {
  Key key{"witnesses", name};
  depend(key);
  if (auto it = witnesses_.find(name); it != witnesses_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  WitnessEntry out{cospan(c.name(c.field(b, "source"), "source")), cospan(c.name(c.field(b, "target"), "target")), {}};
  auto& w = out.witness;
  w.to_a = fn_value(*this, c, c.field(b, "to_a"), out.source.a(), "to_a");
  w.to_b = fn_value(*this, c, c.field(b, "to_b"), out.target.a(), "to_b", w.apex());
  w.m = fn_value(*this, c, c.field(b, "m"), w.apex(), "m", out.source.x());
  w.get = fn_value(*this, c, c.field(b, "get"), out.target.x(), "get", out.source.x());
  w.r = fn_value(*this, c, c.field(b, "r"), out.source.xp(), "r", pullback(w.to_b, out.target.leg_p).p.size);
  return witnesses_[name] = out;
}

namespace {

void patch_tambara(const Ctx& c, TambaraRep& p, const json& patches) {
  const auto& base = *p.l->base;
  for (std::size_t i = 0; i < c.array(patches, "patch").size(); ++i) {
    const json& e = patches[i];
    std::string w = "patch[" + std::to_string(i) + "]";
    auto table = c.table(c.field(e, "table"), w + ".table");
    if (auto* z = c.optional(e, "zeta")) {
      auto at = c.table(*z, w + ".zeta");
      if (at.size() != 5) c.fail(w + ".zeta: expected [a, b, f, y, y']");
      if (at[0] >= base.num_objects || at[1] >= base.num_objects || at[2] >= base.hom(at[0], at[1]).num_objects() ||
          at[3] >= p.l->fiber(at[1]).num_objects() || at[4] >= p.r->fiber(at[1]).num_objects())
        c.fail(w + ".zeta: index out of range");
      p.zeta_at(at[0], at[1], at[2], at[3], at[4]) = table;
    } else if (auto* a = c.optional(e, "action")) {
      auto at = c.table(*a, w + ".action");
      if (at.size() != 3) c.fail(w + ".action: expected [a, l, r]");
      if (at[0] >= base.num_objects || at[1] >= p.l->fiber(at[0]).num_morphisms() ||
          at[2] >= p.r->fiber(at[0]).num_morphisms())
        c.fail(w + ".action: index out of range");
      p.action[at[0]][at[1] * p.r->fiber(at[0]).num_morphisms() + at[2]] = table;
    } else {
      c.fail(w + ": expected a 'zeta' or 'action' location");
    }
  }
}

}  // namespace

const TambaraEntry& Document::tambara(const std::string& name) {
  Key key{"tambara", name};
  depend(key);
  if (auto it = tambara_.find(name); it != tambara_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  TambaraEntry out;
  out.optic = c.name(c.field(b, "optic"), "optic");
  const auto& o = optic(out.optic);
  require_valid(c, out.optic, o);
  auto& p = out.rep;
  if (auto* n = c.optional(b, "constant")) {
    p = constant_tambara(o.cat->left_ptr(), o.cat->right_ptr(), c.index(*n, "constant"));
  } else if (auto* f = c.optional(b, "encode")) {
    const auto& pre = presheaf(c.name(*f, "encode"));
    if (pre.optic != out.optic) c.fail("encoded presheaf lives over optic '" + pre.optic + "'");
    auto rep = validate_presheaf(o.table(), pre.presheaf);
    if (!rep.ok())
      throw CheckError(rep.issues()[0].law, c.where + ": presheaf '" + f->get<std::string>() + "' fails law " +
                                                rep.issues()[0].law + ": " + rep.issues()[0].detail);
    p = encode_presheaf(*o.cat, o.table(), pre.presheaf);
  } else {
    const std::size_t n = o.cat->base().num_objects;
    p.l = o.cat->left_ptr(), p.r = o.cat->right_ptr();
    p.sizes = c.tables(c.field(b, "sizes"), "sizes");
    c.length(b["sizes"], n, "sizes");
    p.action = c.tables3(c.field(b, "action"), "action");
    c.length(b["action"], n, "action");
    const json& z = c.field(b, "zeta");
    c.length(z, n * n, "zeta");
    for (std::size_t h = 0; h < n * n; ++h) p.zeta.push_back(c.tables3(z[h], "zeta[" + std::to_string(h) + "]"));
  }
  if (auto* patch = c.optional(b, "patch")) patch_tambara(c, p, *patch);
  return tambara_[name] = out;
}

const PresheafEntry& Document::presheaf(const std::string& name) {
  Key key{"presheaves", name};
  depend(key);
  if (auto it = presheaves_.find(name); it != presheaves_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  PresheafEntry out;
  out.optic = c.name(c.field(b, "optic"), "optic");
  const auto& o = optic(out.optic);
  require_valid(c, out.optic, o);
  const OpticTable& t = o.table();
  auto& f = out.presheaf;
  auto object_index = [&](const json& v, const std::string& what) -> std::size_t {
    if (v.is_string()) {
      const auto& e = object(v.get<std::string>());
      if (e.optic != out.optic) c.fail(what + ": object lives over optic '" + e.optic + "'");
      return t.index.at(e.object);
    }
    std::size_t i = c.index(v, what);
    if (i >= t.n()) c.fail(what + ": object index out of range");
    return i;
  };
  if (auto* rep = c.optional(b, "representable")) {
    f = representable(t, t.objects[object_index(*rep, "representable")]);
  } else if (auto* n = c.optional(b, "constant")) {
    f = constant_presheaf(t, c.index(*n, "constant"));
  } else if (auto* d = c.optional(b, "decode")) {
    const auto& p = tambara(c.name(*d, "decode"));
    if (p.optic != out.optic) c.fail("decoded representation lives over optic '" + p.optic + "'");
    auto rep = validate_tambara(p.rep);
    if (!rep.ok())
      throw CheckError(rep.issues()[0].law, c.where + ": representation '" + d->get<std::string>() + "' fails law " +
                                                rep.issues()[0].law + ": " + rep.issues()[0].detail);
    try {
      f = decode_tambara(*o.cat, t, p.rep);
    } catch (const WitnessDependenceError& e) {
      throw CheckError("witness-dependence", c.where + ": " + e.what());
    }
  } else {
    f.sizes = c.table(c.field(b, "sizes"), "sizes");
    f.action = c.tables3(c.field(b, "action"), "action");
  }
  if (auto* patch = c.optional(b, "patch")) {
    for (std::size_t i = 0; i < c.array(*patch, "patch").size(); ++i) {
      const json& e = (*patch)[i];
      std::string w = "patch[" + std::to_string(i) + "]";
      const json& at = c.array(c.field(e, "action"), w + ".action");
      if (at.size() != 3) c.fail(w + ".action: expected [source, target, class]");
      std::size_t s = object_index(at[0], w + ".action[0]"), u = object_index(at[1], w + ".action[1]");
      std::size_t cls = c.index(at[2], w + ".action[2]");
      if (cls >= t.hom(s, u) || s * t.n() + u >= f.action.size() || cls >= f.action[s * t.n() + u].size())
        c.fail(w + ": class out of range");
      f.action[s * t.n() + u][cls] = c.table(c.field(e, "table"), w + ".table");
    }
  }
  return presheaves_[name] = out;
}

const ad::Prog& Document::program(const std::string& name) {
  Key key{"programs", name};
  depend(key);
  if (auto it = programs_.find(name); it != programs_.end()) return it->second;
  Scope scope(*this, key);
  const json& b = raw(key.first, name).body;
  Ctx c{where(key)};
  ad::Prog p;
  p.inputs = c.index(c.field(b, "inputs"), "inputs");
  const json& nodes = c.array(c.field(b, "nodes"), "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string w = "nodes[" + std::to_string(i) + "]";
    ad::Node n;
    try {
      n.op = ad::parse_op(c.name(c.field(nodes[i], "op"), w + ".op"));
    } catch (const std::invalid_argument& e) {
      c.fail(w + ": " + e.what());
    }
    if (auto* a = c.optional(nodes[i], "args")) n.args = c.table(*a, w + ".args");
    if (auto* v = c.optional(nodes[i], "value")) {
      if (!v->is_number()) c.fail(w + ".value: expected a number");
      n.value = v->get<double>();
    }
    if (auto* in = c.optional(nodes[i], "index")) n.input = c.index(*in, w + ".index");
    p.nodes.push_back(n);
  }
  p.outputs = c.table(c.field(b, "outputs"), "outputs");
  return programs_[name] = p;
}

void Document::resolve(const Key& key) {
  const auto& [s, n] = key;
  if (s == "sets") set(n);
  else if (s == "functions") function(n);
  else if (s == "categories") category(n);
  else if (s == "functors") functor(n);
  else if (s == "bicategories") bicategory(n);
  else if (s == "indexed") indexed(n);
  else if (s == "optics") optic(n);
  else if (s == "objects") object(n);
  else if (s == "morphisms") morphism(n);
  else if (s == "cospans") cospan(n);
  else if (s == "spans") span(n);
  else if (s == "lenses") lens(n);
  else if (s == "prisms") prism(n);
  else if (s == "witnesses") witness(n);
  else if (s == "tambara") tambara(n);
  else if (s == "presheaves") presheaf(n);
  else if (s == "programs") program(n);
  else throw InputError("<inputs>: unknown section '" + s + "'");
}

std::set<Key> Document::closure(const std::vector<Key>& roots) {
  std::set<Key> seen;
  std::vector<Key> todo(roots.begin(), roots.end());
  while (!todo.empty()) {
    Key k = todo.back();
    todo.pop_back();
    if (!seen.insert(k).second) continue;
    try {
      resolve(k);
    } catch (const CheckError& e) {
      failed_.emplace(k, e);
    }
    for (const auto& d : deps_[k]) todo.push_back(d);
  }
  return seen;
}

std::vector<EntityReport> Document::validate(const std::set<Key>& keys) {
  std::vector<EntityReport> out;
  for (const auto& s : section_names())
    for (const auto& k : keys) {
      if (k.first != s) continue;
      const auto& n = k.second;
      ValidationReport r;
      if (auto it = failed_.find(k); it != failed_.end()) {
        r.law(it->second.law, it->second.what());
        out.push_back({k, raw_.at(k).path, r});
        continue;
      }
      resolve(k);
      auto guard = [&](const char* law, auto&& check) {
        try {
          check();
        } catch (const Error& e) {
          r.structural(law, e.what());
        }
      };
      if (s == "categories") r = validate_fincat(*category(n));
      else if (s == "functors") r = validate_functor(functor(n));
      else if (s == "bicategories") r = validate_bicategory(*bicategory(n));
      else if (s == "indexed") r = validate_indexed(*indexed(n).ptr);
      else if (s == "optics") {
        const auto& cat = *optic(n).cat;
        auto l = validate_indexed(cat.left()), rr = validate_indexed(cat.right());
        if (l.ok() && rr.ok()) r = cat.check_category_laws();
        else r.structural("dependency", "left or right indexed category is invalid");
      } else if (s == "cospans") {
        if (!cospan(n).well_typed()) r.structural("cospan", "legs have different codomains");
      } else if (s == "spans") {
        if (!span(n).well_typed()) r.structural("span", "legs have different domains");
      } else if (s == "lenses") {
        const auto& e = lens(n);
        guard("lens", [&] { check_dlens(e.source, e.target, e.lens); });
      } else if (s == "prisms") {
        const auto& e = prism(n);
        guard("prism", [&] { check_dprism(e.source, e.target, e.prism); });
      } else if (s == "witnesses") {
        const auto& e = witness(n);
        guard("lens-witness", [&] { dlens_canonicalize(e.source, e.target, e.witness); });
      } else if (s == "tambara") r = validate_tambara(tambara(n).rep);
      else if (s == "presheaves") {
        const auto& e = presheaf(n);
        r = validate_presheaf(optic(e.optic).table(), e.presheaf);
      } else if (s == "programs") r = ad::validate_prog(program(n));
      out.push_back({k, raw_.at(k).path, r});
    }
  return out;
}

// ---------------------------------------------------------------------------
// JSON renderings

json to_json(const FinFn& f) { return f.table; }

json to_json(const OpticObject& s) { return {{"base", s.a}, {"x", s.x}, {"xp", s.xp}}; }

json to_json(const Witness& w) { return {{"representative", w.f}, {"l", w.l}, {"r", w.r}}; }

json to_json(const DLensCanonical& c) { return {{"get", c.get.table}, {"put", c.put.table}}; }

json to_json(const DPrismCanonical& c) { return {{"match", c.match.table}, {"review", c.review.table}}; }

json to_json(const Cospan& c) { return {{"base", c.a()}, {"x", c.leg.table}, {"xp", c.leg_p.table}}; }

json to_json(const TambaraRep& p) { return {{"sizes", p.sizes}, {"action", p.action}, {"zeta", p.zeta}}; }

json to_json(const Presheaf& f) { return {{"sizes", f.sizes}, {"action", f.action}}; }

json to_json(const ValidationReport& r) {
  json out = json::array();
  for (const auto& i : r.issues())
    out.push_back({{"kind", i.kind == IssueKind::Law ? "law" : "structural"}, {"law", i.law}, {"detail", i.detail}});
  return out;
}

}  // namespace dopt::cli
