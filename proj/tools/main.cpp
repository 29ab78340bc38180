#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "document.hpp"
#include "dopt/error.hpp"
#include "support/acceptance.hpp"

using namespace dopt;
using namespace dopt::cli;

namespace {

struct Flags {
  std::string format = "json";
  std::size_t max_apex = 4;
  std::uint64_t seed = 1;
  std::size_t sample = 16;
  std::vector<std::string> inputs;
};

struct Result {
  json report;
  int code = 0;
};

// ---------------------------------------------------------------------------
// Text rendering

bool scalar_list(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (!e.is_primitive()) return false;
  return true;
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render(std::ostream& os, const json& v, const std::string& indent) {
  if (v.is_object()) {
    for (const auto& [k, e] : v.items()) {
      if (e.is_primitive()) os << indent << k << ": " << scalar(e) << "\n";
      else if (e.empty()) os << indent << k << ": " << (e.is_array() ? "[]" : "{}") << "\n";
      else if (scalar_list(e)) {
        os << indent << k << ":";
        for (const auto& x : e) os << " " << scalar(x);
        os << "\n";
      } else {
        os << indent << k << ":\n";
        render(os, e, indent + "  ");
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (e.is_primitive() || scalar_list(e)) {
        os << indent << "-";
        if (e.is_array() && e.empty()) os << " []";
        if (e.is_primitive()) os << " " << scalar(e);
        else
          for (const auto& x : e) os << " " << scalar(x);
        os << "\n";
      } else {
        os << indent << "-\n";
        render(os, e, indent + "  ");
      }
    }
  } else {
    os << indent << scalar(v) << "\n";
  }
}

void emit(const Flags& f, const json& report) {
  if (f.format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ostringstream os;
  render(os, report, "");
  std::cout << os.str();
}

// ---------------------------------------------------------------------------
// Shared plumbing

json issue_list(const Document& d, const std::vector<EntityReport>& reports, bool* ok) {
  json out = json::array();
  for (const auto& e : reports) {
    if (e.report.ok()) continue;
    *ok = false;
    for (const auto& i : e.report.issues())
      out.push_back({{"entity", d.where(e.key)},
                     {"kind", i.kind == IssueKind::Law ? "law" : "structural"},
                     {"law", i.law},
                     {"detail", i.detail}});
  }
  return out;
}

/// Validates everything the roots depend on; fills a failing report when
/// some entity is invalid.
bool prevalidate(Document& d, const std::vector<Key>& roots, Result& res, const std::set<Key>& skip = {}) {
  auto keys = d.closure(roots);
  for (const auto& k : skip) keys.erase(k);
  bool ok = true;
  json issues = issue_list(d, d.validate(keys), &ok);
  if (ok) return true;
  res.report["ok"] = false;
  res.report["invalid_inputs"] = issues;
  res.code = 1;
  return false;
}

/// The unique section holding `name` among the allowed ones.
std::string section_for(const Document& d, const std::string& name, const std::vector<std::string>& allowed,
                        const std::string& role) {
  std::vector<std::string> found;
  for (const auto& s : d.sections_of(name))
    if (std::find(allowed.begin(), allowed.end(), s) != allowed.end()) found.push_back(s);
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  if (found.empty()) throw InputError("<inputs>: " + role + " '" + name + "' is not defined in any of: " + list);
  if (found.size() > 1) throw InputError("<inputs>: " + role + " '" + name + "' is ambiguous between " + found[0] +
                                         " and " + found[1]);
  return found[0];
}

bool same(const Cospan& a, const Cospan& b) { return a.leg == b.leg && a.leg_p == b.leg_p; }
bool same(const Span& a, const Span& b) { return a.leg == b.leg && a.leg_p == b.leg_p; }

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t n = 1;
  while (e--) n *= b;
  return n;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands

Result cmd_validate(Document& d) {
  Result res;
  auto keys = d.closure(d.keys());
  auto reports = d.validate(keys);
  bool ok = true;
  json entities = json::array();
  for (const auto& e : reports)
    entities.push_back({{"entity", d.where(e.key)}, {"ok", e.report.ok()}, {"issues", to_json(e.report)}});
  issue_list(d, reports, &ok);
  res.report = {{"command", "validate"}, {"ok", ok}, {"entities", entities}, {"count", reports.size()}};
  res.code = ok ? 0 : 1;
  return res;
}

struct HomArgs {
  std::string source, target;
  bool count_only = false;
  bool audit = false;
};

Result cmd_hom(Document& d, const Flags& f, const HomArgs& a) {
  Result res;
  const std::vector<std::string> kinds = {"objects", "cospans", "spans"};
  std::string ks = section_for(d, a.source, kinds, "source"), kt = section_for(d, a.target, kinds, "target");
  if (ks != kt) throw InputError("<inputs>: source is in " + ks + " but target is in " + kt);
  res.report = {{"command", "hom"}, {"source", a.source}, {"target", a.target}};
  if (!prevalidate(d, {{ks, a.source}, {kt, a.target}}, res)) return res;
  bool ok = true;
  json list = json::array();
  if (ks == "objects") {
    const auto& s = d.object(a.source);
    const auto& t = d.object(a.target);
    if (s.optic != t.optic) throw InputError("<inputs>: source and target live in different optics");
    const auto& cat = *d.optic(s.optic).cat;
    res.report["kind"] = "optic";
    res.report["count"] = cat.hom_size(s.object, t.object);
    if (!a.count_only)
      for (const auto& m : cat.optic_hom(s.object, t.object))
        list.push_back({{"class", m.cls}, {"witness", to_json(m.witness)},
                        {"witnesses", cat.class_witnesses(s.object, t.object, m.cls).size()}});
  } else if (ks == "cospans") {
    const auto& s = d.cospan(a.source);
    const auto& t = d.cospan(a.target);
    res.report["kind"] = "lens";
    res.report["count"] = dlens_hom_count(s, t);
    if (s.a() == 1 && t.a() == 1)
      res.report["closed_form"] = power(t.x(), s.x()) * power(s.xp(), s.x() * t.xp());
    if (!a.count_only)
      for (const auto& c : dlens_hom(s, t)) list.push_back(to_json(c));
    if (a.audit) {
      auto audit = dlens_audit(s, t, {f.max_apex, f.sample, f.seed});
      ok = ok && audit.report.ok();
      res.report["audit"] = {{"max_apex", f.max_apex}, {"sample", f.sample},    {"seed", f.seed},
                             {"steps", audit.steps},   {"witnesses", audit.witnesses}, {"sampled", audit.sampled},
                             {"issues", to_json(audit.report)}};
    }
  } else {
    const auto& s = d.span(a.source);
    const auto& t = d.span(a.target);
    using Op = LensCalculus<Opposite<FinSetCat>>;
    res.report["kind"] = "prism";
    res.report["count"] = dprism_hom_count(s, t);
    res.report["opposite_lens_count"] = Op::count(as_opposite_cospan(s), as_opposite_cospan(t));
    ok = ok && res.report["count"] == res.report["opposite_lens_count"];
    if (!a.count_only)
      for (const auto& c : dprism_hom(s, t)) list.push_back(to_json(c));
  }
  if (!a.count_only) res.report["morphisms"] = list;
  res.report["ok"] = ok;
  res.code = ok ? 0 : 1;
  return res;
}

Result cmd_compose(Document& d, const std::string& first, const std::string& second) {
  Result res;
  const std::vector<std::string> kinds = {"lenses", "prisms", "morphisms"};
  std::string k1 = section_for(d, first, kinds, "first"), k2 = section_for(d, second, kinds, "second");
  if (k1 != k2) throw InputError("<inputs>: first is in " + k1 + " but second is in " + k2);
  res.report = {{"command", "compose"}, {"first", first}, {"second", second}};
  if (!prevalidate(d, {{k1, first}, {k2, second}}, res)) return res;
  auto mismatch = [&] { throw InputError("<inputs>: target of '" + first + "' is not the source of '" + second + "'"); };
  if (k1 == "lenses") {
    const auto& l1 = d.lens(first);
    const auto& l2 = d.lens(second);
    if (!same(l1.target, l2.source)) mismatch();
    res.report["kind"] = "lens";
    res.report["result"] = to_json(dlens_compose(l1.source, l1.target, l2.target, l2.lens, l1.lens));
  } else if (k1 == "prisms") {
    const auto& p1 = d.prism(first);
    const auto& p2 = d.prism(second);
    if (!same(p1.target, p2.source)) mismatch();
    res.report["kind"] = "prism";
    res.report["result"] = to_json(dprism_compose(p1.source, p1.target, p2.target, p2.prism, p1.prism));
  } else {
    const auto& m1 = d.morphism(first);
    const auto& m2 = d.morphism(second);
    if (m1.optic != m2.optic || !(m1.morphism.dst == m2.morphism.src)) mismatch();
    const auto& cat = *d.optic(m1.optic).cat;
    auto m = cat.optic_compose(m2.morphism, m1.morphism);
    res.report["kind"] = "optic";
    res.report["result"] = {{"source", to_json(m.src)}, {"target", to_json(m.dst)}, {"class", m.cls},
                            {"witness", to_json(m.witness)}};
  }
  res.report["ok"] = true;
  return res;
}

Result cmd_canonicalize(Document& d, const std::string& name) {
  Result res;
  std::string k = section_for(d, name, {"witnesses", "morphisms"}, "entity");
  res.report = {{"command", "canonicalize"}, {"entity", name}};
  if (!prevalidate(d, {{k, name}}, res)) return res;
  if (k == "witnesses") {
    const auto& w = d.witness(name);
    res.report["kind"] = "lens";
    res.report["apex"] = w.witness.apex();
    res.report["canonical"] = to_json(dlens_canonicalize(w.source, w.target, w.witness));
  } else {
    const auto& m = d.morphism(name);
    const auto& cat = *d.optic(m.optic).cat;
    res.report["kind"] = "optic";
    res.report["class"] = m.morphism.cls;
    res.report["given"] = to_json(m.morphism.witness);
    res.report["canonical"] = to_json(cat.canonical_witness(m.morphism.src, m.morphism.dst, m.morphism.cls));
  }
  res.report["ok"] = true;
  return res;
}

Result cmd_coproduct(Document& d, const std::vector<std::string>& family, const std::vector<std::string>& targets_in) {
  Result res;
  if (family.empty()) throw InputError("<inputs>: --family names no entities");
  const std::vector<std::string> kinds = {"objects", "cospans"};
  std::string k = section_for(d, family[0], kinds, "family member");
  std::vector<Key> roots;
  for (const auto& n : family) {
    if (section_for(d, n, kinds, "family member") != k) throw InputError("<inputs>: family mixes objects and cospans");
    roots.push_back({k, n});
  }
  for (const auto& n : targets_in) roots.push_back({section_for(d, n, {k}, "target"), n});
  res.report = {{"command", "coproduct"}, {"family", family}};
  if (!prevalidate(d, roots, res)) return res;
  ValidationReport rep;
  if (k == "cospans") {
    std::vector<Cospan> fam, targets;
    for (const auto& n : family) fam.push_back(d.cospan(n));
    auto names = targets_in.empty() ? d.names("cospans") : targets_in;
    for (const auto& n : names) targets.push_back(d.cospan(n));
    auto cp = dlens_coproduct(fam);
    rep = check_dlens_coproduct(cp, fam, targets);
    json inj = json::array();
    for (const auto& c : cp.injections) inj.push_back(to_json(c));
    res.report["kind"] = "lens";
    res.report["sum"] = to_json(cp.sum);
    res.report["injections"] = inj;
    res.report["targets"] = names;
  } else {
    std::string optic = d.object(family[0]).optic;
    std::vector<OpticObject> fam;
    std::vector<std::size_t> bases;
    for (const auto& n : family) {
      const auto& o = d.object(n);
      if (o.optic != optic) throw InputError("<inputs>: family members live in different optics");
      fam.push_back(o.object);
      bases.push_back(o.object.a);
    }
    const auto& entry = d.optic(optic);
    const auto& cat = *entry.cat;
    BaseCoproductData data;
    try {
      if (entry.base.family_max_base) data = family_coproduct_data(*entry.base.family_max_base, bases);
      else if (entry.base.spans) data = span_coproduct_data(*entry.base.spans, bases);
      else throw InputError("<inputs>: optic '" + optic + "' has no base with known coproducts");
    } catch (const std::invalid_argument& e) {
      throw InputError(d.where({"optics", optic}) + ": no coproduct of the family in the base: " + e.what());
    }
    rep.merge(validate_coproduct_data(cat.left(), cat.right(), data), "coproduct data");
    std::vector<OpticObject> targets;
    if (targets_in.empty()) targets = cat.objects();
    for (const auto& n : targets_in) {
      if (d.object(n).optic != optic) throw InputError("<inputs>: target '" + n + "' lives in another optic");
      targets.push_back(d.object(n).object);
    }
    res.report["kind"] = "optic";
    res.report["targets"] = targets.size();
    if (rep.ok()) {
      auto cp = optic_coproduct(cat, fam, data);
      rep.merge(check_coproduct_universal(cat, cp, fam, targets));
      json inj = json::array();
      for (const auto& m : cp.injections) inj.push_back({{"class", m.cls}, {"witness", to_json(m.witness)}});
      res.report["object"] = to_json(cp.object);
      res.report["injections"] = inj;
    }
  }
  res.report["issues"] = to_json(rep);
  res.report["ok"] = rep.ok();
  res.code = rep.ok() ? 0 : 1;
  return res;
}

Result cmd_tambara_check(Document& d, const std::string& name, bool roundtrip) {
  Result res;
  res.report = {{"command", "tambara-check"}, {"rep", name}};
  Key key{"tambara", name};
  if (!d.has(key.first, name)) throw InputError("<inputs>: no tambara entity named '" + name + "'");
  std::set<Key> skip{key};
  auto keys = d.closure({key});
  for (const auto& k : keys)
    if (k.first == "presheaves" || k.first == "tambara") skip.insert(k);
  if (!prevalidate(d, {key}, res, skip)) return res;
  bool ok = true;
  json laws = json::array();
  auto note = [&](const ValidationReport& r, const std::string& stage) {
    for (const auto& i : r.issues()) {
      ok = false;
      laws.push_back({{"stage", stage}, {"law", i.law}, {"detail", i.detail}});
    }
  };
  std::string optic;
  try {
    const auto& p = d.tambara(name);
    optic = p.optic;
    note(validate_tambara(p.rep), "validate_tambara");
  } catch (const CheckError& e) {
    ValidationReport r;
    r.law(e.law, e.what());
    note(r, "build");
  }
  if (roundtrip && !optic.empty()) {
    const auto& cat = *d.optic(optic).cat;
    note(check_iota(cat), "check_iota");
    auto rt = roundtrip_check(cat);
    note(rt.report, "roundtrip_check");
    res.report["roundtrip"] = {{"presheaves", rt.presheaves},         {"mutations", rt.mutations},
                               {"morphism_pairs", rt.morphism_pairs}, {"families", rt.families},
                               {"natural", rt.natural}};
  }
  std::vector<std::string> failing;
  for (const auto& l : laws)
    if (std::find(failing.begin(), failing.end(), l["law"].get<std::string>()) == failing.end())
      failing.push_back(l["law"].get<std::string>());
  res.report["failing_laws"] = failing;
  res.report["issues"] = laws;
  res.report["ok"] = ok;
  res.code = ok ? 0 : 1;
  return res;
}

void write_document(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << doc.dump(2) << "\n";
}

Result cmd_encode(Document& d, const std::string& name, const std::string& as, const std::string& output) {
  Result res;
  res.report = {{"command", "encode"}, {"presheaf", name}};
  if (!prevalidate(d, {{"presheaves", name}}, res)) return res;
  const auto& f = d.presheaf(name);
  const auto& entry = d.optic(f.optic);
  auto p = encode_presheaf(*entry.cat, entry.table(), f.presheaf);
  auto rep = validate_tambara(p);
  bool back = rep.ok() && decode_tambara(*entry.cat, entry.table(), p) == f.presheaf;
  json body = to_json(p);
  body["optic"] = f.optic;
  json doc = {{"tambara", {{as.empty() ? name + "-encoded" : as, body}}}};
  write_document(output, doc);
  res.report["issues"] = to_json(rep);
  res.report["decodes_back"] = back;
  res.report["document"] = doc;
  res.report["ok"] = back;
  res.code = back ? 0 : 1;
  return res;
}

Result cmd_decode(Document& d, const std::string& name, const std::string& as, const std::string& output) {
  Result res;
  res.report = {{"command", "decode"}, {"rep", name}};
  if (!prevalidate(d, {{"tambara", name}}, res)) return res;
  const auto& p = d.tambara(name);
  const auto& entry = d.optic(p.optic);
  Presheaf f;
  try {
    f = decode_tambara(*entry.cat, entry.table(), p.rep);
  } catch (const WitnessDependenceError& e) {
    res.report["ok"] = false;
    res.report["issues"] = json::array({{{"kind", "law"}, {"law", "witness-dependence"}, {"detail", e.what()}}});
    res.code = 1;
    return res;
  }
  bool back = encode_presheaf(*entry.cat, entry.table(), f) == p.rep;
  json body = to_json(f);
  body["optic"] = p.optic;
  json doc = {{"presheaves", {{as.empty() ? name + "-decoded" : as, body}}}};
  write_document(output, doc);
  res.report["encodes_back"] = back;
  res.report["document"] = doc;
  res.report["ok"] = back;
  res.code = back ? 0 : 1;
  return res;
}

Result cmd_ad_grad(Document& d, const std::string& name, const std::vector<double>& at, bool check) {
  Result res;
  res.report = {{"command", "ad-grad"}, {"program", name}};
  if (!prevalidate(d, {{"programs", name}}, res)) return res;
  const auto& p = d.program(name);
  ad::Vec g;
  try {
    g = ad::grad(p, at);
  } catch (const std::invalid_argument& e) {
    throw InputError(d.where({"programs", name}) + ": " + e.what());
  }
  res.report["gradient"] = g;
  bool ok = true;
  if (check) {
    auto fd = ad::finite_diff(p, at);
    double worst = 0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(g[i] - fd[i]) / (1 + std::abs(fd[i])));
    ok = worst <= 1e-5;
    res.report["finite_difference"] = fd;
    res.report["relative_error"] = worst;
  }
  res.report["ok"] = ok;
  res.code = ok ? 0 : 1;
  return res;
}

Result cmd_acceptance(const Flags& f, int only) {
  Result res;
  acceptance::Options opt{f.seed, f.max_apex, f.sample};
  json list = json::array();
  std::vector<std::string> lines;
  bool ok = true;
  for (int id = 1; id <= acceptance::criterion_count(); ++id) {
    if (only != 0 && id != only) continue;
    auto c = acceptance::run(id, opt);
    ok = ok && c.pass();
    std::cerr << acceptance::format_line(c) << "\n";
    lines.push_back(std::string(c.pass() ? "PASS" : "FAIL") + " [" + std::to_string(c.id) + "] " + c.name + ": " + c.detail);
    list.push_back({{"id", c.id},
                    {"name", c.name},
                    {"pass", c.pass()},
                    {"limit_seconds", c.limit},
                    {"within_limit", c.seconds < c.limit},
                    {"detail", c.detail}});
  }
  if (only != 0 && list.empty()) throw InputError("<inputs>: no acceptance criterion " + std::to_string(only));
  res.report = {{"command", "acceptance"}, {"criteria", list}, {"ok", ok}};
  if (f.format == "text") res.report = {{"criteria", lines}, {"ok", ok}};
  res.code = ok ? 0 : 1;
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Law checks and computations for finite dependent optics"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--max-apex", f.max_apex, "Span bound of the lens canonicalization audit")->capture_default_str();
  app.add_option("--seed", f.seed, "Seed of randomized suites")->capture_default_str();
  app.add_option("--sample", f.sample, "Backward maps drawn per forward pair in audits")->capture_default_str();

  auto inputs = [&](CLI::App* sub) { sub->add_option("inputs", f.inputs, "Instance documents")->check(CLI::ExistingFile); };

  auto* validate = app.add_subcommand("validate", "Run every validator on every entity");
  inputs(validate);

  HomArgs hom_args;
  auto* hom = app.add_subcommand("hom", "Enumerate a hom-set of optics, lenses or prisms");
  inputs(hom);
  hom->add_option("--source", hom_args.source)->required();
  hom->add_option("--target", hom_args.target)->required();
  hom->add_flag("--count-only", hom_args.count_only, "Omit the listing");
  hom->add_flag("--audit", hom_args.audit, "Audit lens canonicalization over spans up to --max-apex");

  std::string first, second;
  auto* comp = app.add_subcommand("compose", "Compose two lenses, prisms or optic morphisms (second after first)");
  inputs(comp);
  comp->add_option("--first", first)->required();
  comp->add_option("--second", second)->required();

  std::string entity;
  auto* canon = app.add_subcommand("canonicalize", "Canonical form of a lens witness or optic morphism");
  inputs(canon);
  canon->add_option("--entity", entity)->required();

  std::string family, targets;
  auto* cop = app.add_subcommand("coproduct", "Build a coproduct and audit its universal property");
  inputs(cop);
  cop->add_option("--family", family, "Comma-separated objects or cospans")->required();
  cop->add_option("--targets", targets, "Comma-separated targets; default all");

  std::string rep;
  bool no_roundtrip = false;
  auto* tam = app.add_subcommand("tambara-check", "Validate a Tambara representation and the encoding round trip");
  inputs(tam);
  tam->add_option("--rep", rep)->required();
  tam->add_flag("--no-roundtrip", no_roundtrip, "Skip the round trip over the generated family");

  std::string presheaf, as, output;
  auto* enc = app.add_subcommand("encode", "Presheaf on optics to Tambara representation");
  inputs(enc);
  enc->add_option("--presheaf", presheaf)->required();
  enc->add_option("--as", as, "Name of the emitted entity");
  enc->add_option("--output", output, "Also write the emitted document here");

  auto* dec = app.add_subcommand("decode", "Tambara representation to presheaf on optics");
  inputs(dec);
  dec->add_option("--rep", rep)->required();
  dec->add_option("--as", as, "Name of the emitted entity");
  dec->add_option("--output", output, "Also write the emitted document here");

  std::string program;
  std::vector<double> at;
  bool check = false;
  auto* grad = app.add_subcommand("ad-grad", "Reverse-mode gradient of a program");
  inputs(grad);
  grad->add_option("--program", program)->required();
  grad->add_option("--at", at, "Input point")->delimiter(',');
  grad->add_flag("--check", check, "Compare with central finite differences");

  int only = 0;
  auto* acc = app.add_subcommand("acceptance", "Run the acceptance suites");
  acc->add_option("--only", only, "Run a single criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Document d;
    for (const auto& p : f.inputs) d.load(p);
    Result res;
    if (*validate) res = cmd_validate(d);
    else if (*hom) res = cmd_hom(d, f, hom_args);
    else if (*comp) res = cmd_compose(d, first, second);
    else if (*canon) res = cmd_canonicalize(d, entity);
    else if (*cop) res = cmd_coproduct(d, split_names(family), split_names(targets));
    else if (*tam) res = cmd_tambara_check(d, rep, !no_roundtrip);
    else if (*enc) res = cmd_encode(d, presheaf, as, output);
    else if (*dec) res = cmd_decode(d, rep, as, output);
    else if (*grad) res = cmd_ad_grad(d, program, at, check);
    else res = cmd_acceptance(f, only);
    if (*grad && f.format == "text" && res.report.contains("gradient")) {
      std::string line;
      for (const auto& g : res.report["gradient"]) line += (line.empty() ? "" : " ") + g.dump();
      std::cout << line << "\n";
      if (res.code != 0) emit(f, res.report);
    } else {
      emit(f, res.report);
    }
    return res.code;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CheckError& e) {
    std::cerr << "check failed (" << e.law << "): " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
