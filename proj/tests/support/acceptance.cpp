#include "support/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dopt/adlens.hpp"
#include "dopt/coend.hpp"
#include "dopt/coproduct.hpp"
#include "dopt/finset.hpp"
#include "dopt/instances.hpp"
#include "dopt/optic.hpp"
#include "dopt/tambara.hpp"
#include "support/oracles.hpp"

namespace acceptance {

using namespace dopt;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (ok) detail << "FAILED: ";
    else detail << "; ";
    ok = false;
    detail << what;
  }
  void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  void report(const ValidationReport& r, const std::string& where) {
    if (r.ok()) return;
    fail(where + ": " + r.issues().front().law + " (" + r.issues().front().detail + ")" +
         (r.size() > 1 ? " and " + std::to_string(r.size() - 1) + " more" : ""));
  }
};

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

FinFn random_fn(std::mt19937_64& rng, std::size_t dom, std::size_t cod) {
  std::vector<std::size_t> t(dom);
  for (auto& v : t) v = pick(rng, 0, cod - 1);
  return FinFn{{dom}, {cod}, std::move(t)};
}

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// ---------------------------------------------------------------------------

void category_laws(const Options&, Outcome& out) {
  auto s = semilattice_action();
  auto t = trivial_indexed(s->base);
  struct Inst {
    const char* name;
    IndexedPtr l, r;
  };
  std::size_t homs = 0;
  for (const auto& [name, l, r] : {Inst{"semilattice", s, s}, Inst{"trivial", t, t}, Inst{"trivial-left", t, s}}) {
    OpticCategory cat(l, r);
    out.report(cat.check_category_laws(), name);
    for (const auto& a : cat.objects())
      for (const auto& b : cat.objects()) {
        auto raw = oracle::optic_hom_closure(*l, *r, a.a, a.x, a.xp, b.a, b.x, b.xp);
        out.require(raw.classes() == cat.hom_size(a, b), std::string(name) + ": hom size differs from the closure oracle");
        ++homs;
      }
  }
  out.detail << "3 instances, unit and associativity over every composable tuple, " << homs
             << " hom-sets against the closure oracle";
}

void coend_partition(const Options& opt, Outcome& out) {
  std::mt19937_64 rng(opt.seed);
  std::size_t elements = 0;
  for (int i = 0; i < 50; ++i) {
    auto t = oracle::random_bifunctor(rng, 4, 5);
    auto h = t.view();
    out.report(validate_bifunctor(h), "bifunctor " + std::to_string(i));
    auto c = coend(h);
    elements += c.class_of_flat.size();
    out.require(oracle::same_partition(c.class_of_flat, oracle::closure_partition(t)),
                "bifunctor " + std::to_string(i) + ": partition differs from the closure oracle");
  }
  out.detail << "50 random bifunctors, " << elements << " diagonal elements";
}

void lens_closed_form(const Options& opt, Outcome& out) {
  auto s = Cospan::over_point(2, 2), t = Cospan::over_point(3, 3);
  std::size_t formula = power(3, 2) * power(2, 2 * 3);
  auto brute = oracle::brute_lenses(s.leg.table, s.leg_p.table, t.leg.table, t.leg_p.table, 1, 1);
  std::size_t count = dlens_hom_count(s, t);
  out.require(formula == 576, "closed formula");
  out.require(brute.size() == 576, "enumeration oracle gives " + std::to_string(brute.size()));
  out.require(count == 576, "dlens_hom gives " + std::to_string(count));
  auto audit = dlens_audit(s, t, {opt.max_apex, opt.sample, opt.seed});
  out.report(audit.report, "canonicalization audit");
  out.detail << "count " << count << ", formula " << formula << ", oracle " << brute.size() << "; audit apex <= "
             << opt.max_apex << ": " << audit.steps << " relation steps, " << audit.witnesses << " witnesses, "
             << audit.report.size() << " violations" << (audit.sampled ? ", backward maps sampled" : "");
}

void prism_duality(const Options& opt, Outcome& out) {
  std::mt19937_64 rng(opt.seed);
  std::size_t total = 0;
  for (int i = 0; i < 20; ++i) {
    std::size_t a = pick(rng, 0, 3), b = pick(rng, 0, 3);
    std::size_t nx = pick(rng, a ? 1 : 0, 3), nxp = pick(rng, a ? 1 : 0, 3);
    std::size_t ny = pick(rng, b ? 1 : 0, 3), nyp = pick(rng, b ? 1 : 0, 3);
    Span s{random_fn(rng, a, nx), random_fn(rng, a, nxp)};
    Span t{random_fn(rng, b, ny), random_fn(rng, b, nyp)};
    std::size_t prisms = dprism_hom_count(s, t);
    std::size_t op = LensCalculus<Opposite<FinSetCat>>::count(as_opposite_cospan(s), as_opposite_cospan(t));
    std::size_t brute = oracle::brute_prism_count(s.leg.table, s.leg_p.table, nx, nxp, t.leg.table, t.leg_p.table, ny, nyp);
    auto where = "instance " + std::to_string(i);
    out.require(prisms == op, where + ": prism count " + std::to_string(prisms) + " vs opposite lens count " + std::to_string(op));
    out.require(prisms == brute, where + ": prism count " + std::to_string(prisms) + " vs formula oracle " + std::to_string(brute));
    total += prisms;
  }
  out.detail << "20 random span pairs, " << total << " prisms in total";
}

void coproducts(const Options& opt, Outcome& out) {
  auto fam = family_indexed(chain_category(2), 2);
  std::size_t checked = 0;
  for (const auto& r : {fam, trivial_indexed(fam->base)}) {
    OpticCategory cat(fam, r);
    auto targets = cat.objects();
    std::vector<std::vector<std::size_t>> shapes = {{}, {1}, {2}, {1, 1}, {1, 0}, {0, 1}, {2, 0}, {0, 2}, {0, 0}};
    for (const auto& sizes : shapes) {
      auto d = family_coproduct_data(2, sizes);
      out.report(validate_coproduct_data(*fam, *r, d), "coproduct data");
      std::vector<std::vector<OpticObject>> families{{}};
      for (auto n : sizes) {
        std::vector<std::vector<OpticObject>> next;
        for (const auto& f : families)
          for (const auto& o : cat.objects_over(n)) {
            next.push_back(f);
            next.back().push_back(o);
          }
        families = std::move(next);
      }
      for (const auto& f : families) {
        auto cp = optic_coproduct(cat, f, d);
        out.report(check_coproduct_universal(cat, cp, f, targets), "optic coproduct");
        ++checked;
      }
    }
  }

  std::vector<Cospan> cospans;
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t x = 0; x <= 2; ++x)
      for (std::size_t xp = 0; xp <= 2; ++xp)
        for_each_function(x, a, [&](const FinFn& l) {
          for_each_function(xp, a, [&](const FinFn& lp) { return cospans.push_back({l, lp}), true; });
          return true;
        });
  std::mt19937_64 rng(opt.seed);
  std::size_t lens_families = 0, lens_targets = 0, skipped = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Cospan> family;
    std::size_t k = pick(rng, 0, 3);
    for (std::size_t i = 0; i < k; ++i) family.push_back(cospans[pick(rng, 0, cospans.size() - 1)]);
    std::vector<Cospan> targets;
    for (int i = 0; i < 20; ++i) {
      const auto& t = cospans[pick(rng, 0, cospans.size() - 1)];
      std::size_t product = 1;
      for (const auto& c : family) product *= dlens_hom_count(c, t);
      if (product <= 20000) targets.push_back(t), ++lens_targets;
      else ++skipped;
    }
    out.report(check_dlens_coproduct(dlens_coproduct(family), family, targets), "lens coproduct");
    ++lens_families;
  }
  for (std::size_t a1 = 0; a1 <= 2; ++a1)
    for (std::size_t a2 = 0; a2 <= 2; ++a2) out.report(check_slice_decomposition(a1, a2, 2), "slice decomposition");
  out.detail << checked << " optic coproducts over all enumerated targets, " << lens_families
             << " lens coproduct families against " << lens_targets << " targets (" << skipped
             << " with more than 20000 maps skipped), slice decompositions for bases <= 2";
}

void closed_reduction(const Options& opt, Outcome& out) {
  std::size_t lenses = 0, steps = 0, pairs = 0;
  bool sampled = false;
  for (std::size_t x = 0; x <= 3; ++x)
    for (std::size_t xp = 0; xp <= 3; ++xp)
      for (std::size_t y = 0; y <= 3; ++y)
        for (std::size_t yp = 0; yp <= 3; ++yp) {
          auto s = Cospan::over_point(x, xp), t = Cospan::over_point(y, yp);
          CartesianClosed cs{yp, xp};
          auto where = "sizes (" + std::to_string(x) + "," + std::to_string(xp) + ")->(" + std::to_string(y) + "," +
                       std::to_string(yp) + ")";
          std::set<std::vector<std::size_t>> image;
          auto hom = dlens_hom(s, t);
          for (const auto& c : hom) image.insert(closed_reduce(cs, s, t, dlens_normal_witness(s, t, c)).table);
          std::size_t reduced = power(y * cs.exponent(), x);
          out.require(image.size() == hom.size(), where + ": reduction not injective");
          out.require(hom.size() == reduced, where + ": " + std::to_string(hom.size()) + " classes vs " +
                                                 std::to_string(reduced) + " reduced maps");
          lenses += hom.size();
          ++pairs;

          // reading the reduction back as (get, put) and auditing it along the relation
          auto decode = [cs, y, yp](const Cospan& a, const Cospan& b, const LensWitness& w) {
            auto red = closed_reduce(cs, a, b, w);
            DLensCanonical c{FinFn{{red.dom.size}, {y}, {}}, FinFn{{red.dom.size * yp}, {a.xp()}, {}}};
            for (std::size_t i = 0; i < red.dom.size; ++i) {
              c.get.table.push_back(red(i) % y);
              for (std::size_t j = 0; j < yp; ++j) c.put.table.push_back(cs.eval(red(i) / y, j));
            }
            return c;
          };
          if (hom.empty() || y == 0) continue;
          std::size_t apex = x <= 2 && y <= 2 ? 3 : 2;
          auto audit = dlens_audit(s, t, {apex, opt.sample, opt.seed}, decode);
          out.report(audit.report, where);
          steps += audit.steps;
          sampled = sampled || audit.sampled;
        }
  out.detail << pairs << " size quadruples <= 3, " << lenses << " classes reduced injectively onto the reduced hom; "
             << steps << " relation steps with constant reduction (apex <= 3 for |X|,|Y| <= 2, else <= 2"
             << (sampled ? ", backward maps sampled" : "") << ")";
}

void tambara_encoding(const Options&, Outcome& out) {
  auto s = semilattice_action();
  OpticCategory cat(s, s);
  out.report(check_iota(cat), "iota lemmas");
  auto res = roundtrip_check(cat);
  out.report(res.report, "round trip");
  out.require(res.presheaves > 0 && res.morphism_pairs > 0, "empty family");
  out.detail << res.presheaves << " presheaves (" << res.mutations << " functorial mutations), " << res.morphism_pairs
             << " pairs with " << res.families << " component families of which " << res.natural
             << " natural; iota functor, right, left and Tambara laws on all enumerated data";
}

void ad_demo(const Options& opt, Outcome& out) {
  ad::AdCheckOptions o;
  o.seed = opt.seed;
  auto res = ad::ad_check(o);
  out.report(res.report, "AD");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu programs x %zu points, worst gradient error %.2e, linearity %.2e, associativity %.2e",
                res.programs, o.points, res.worst_grad, res.worst_linear, res.worst_assoc);
  out.detail << buf;
}

struct Spec {
  const char* name;
  double limit;
  std::function<void(const Options&, Outcome&)> body;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> v = {
      {"optic category laws", 30, category_laws},
      {"coend partitions", 10, coend_partition},
      {"lens closed form and canonicalization audit", 60, lens_closed_form},
      {"prism duality", 60, prism_duality},
      {"coproducts", 60, coproducts},
      {"closed reduction", 60, closed_reduction},
      {"tambara encoding", 120, tambara_encoding},
      {"reverse-mode AD", 30, ad_demo},
  };
  return v;
}

}  // namespace

int criterion_count() { return static_cast<int>(specs().size()); }

Criterion run(int id, const Options& opt) {
  if (id < 1 || id > criterion_count()) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  const auto& sp = specs()[static_cast<std::size_t>(id - 1)];
  Criterion c;
  c.id = id;
  c.name = sp.name;
  c.limit = sp.limit;
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    sp.body(opt, out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.checks_ok = out.ok;
  c.detail = out.detail.str();
  return c;
}

std::vector<Criterion> run_all(const Options& opt) {
  std::vector<Criterion> out;
  for (int i = 1; i <= criterion_count(); ++i) out.push_back(run(i, opt));
  return out;
}

std::string format_line(const Criterion& c) {
  char head[160];
  std::snprintf(head, sizeof head, "%s [%d] %s (%.2f s / %.0f s)", c.pass() ? "PASS" : "FAIL", c.id, c.name.c_str(),
                c.seconds, c.limit);
  std::string line = head;
  if (c.checks_ok && !c.pass()) line += " time limit exceeded;";
  return line + ": " + c.detail;
}

}  // namespace acceptance
