#include "dopt/adlens.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dopt::ad {

namespace {

struct OpInfo {
  Op op;
  const char* name;
  std::size_t arity;
};

constexpr OpInfo kOps[] = {{Op::Input, "input", 0}, {Op::Const, "const", 0}, {Op::Add, "add", 2},
                           {Op::Mul, "mul", 2},     {Op::Neg, "neg", 1},     {Op::Exp, "exp", 1},
                           {Op::Sin, "sin", 1}};

Tape slice(const Tape& t, std::size_t from, std::size_t n) {
  return Tape(t.begin() + static_cast<std::ptrdiff_t>(from), t.begin() + static_cast<std::ptrdiff_t>(from + n));
}

RLens copy_lens() {
  return {1, 1, {}, [](const Vec& x) { return std::pair{Tape{}, x}; },
          [](const Tape&, const Vec& d) { return d; }};
}

}  // namespace

Op parse_op(const std::string& name) {
  for (const auto& i : kOps)
    if (name == i.name) return i.op;
  throw std::invalid_argument("unknown primitive '" + name + "'");
}

std::string op_name(Op op) {
  for (const auto& i : kOps)
    if (i.op == op) return i.name;
  return "?";
}

std::size_t op_arity(Op op) {
  for (const auto& i : kOps)
    if (i.op == op) return i.arity;
  return 0;
}

ValidationReport validate_prog(const Prog& p) {
  ValidationReport rep;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const auto& n = p.nodes[i];
    auto where = "node " + std::to_string(i) + " (" + op_name(n.op) + ")";
    if (n.args.size() != op_arity(n.op)) rep.structural("arity", where + " has " + std::to_string(n.args.size()) + " operands");
    for (auto a : n.args)
      if (a >= i) rep.structural("acyclic", where + " reads node " + std::to_string(a));
    if (n.op == Op::Input && n.input >= p.inputs)
      rep.structural("input-range", where + " reads input " + std::to_string(n.input));
  }
  for (auto o : p.outputs)
    if (o >= p.nodes.size()) rep.structural("output-range", "output node " + std::to_string(o));
  return rep;
}

namespace {

Vec node_values(const Prog& p, const Vec& x) {
  Vec v(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const auto& n = p.nodes[i];
    switch (n.op) {
      case Op::Input: v[i] = x[n.input]; break;
      case Op::Const: v[i] = n.value; break;
      case Op::Add: v[i] = v[n.args[0]] + v[n.args[1]]; break;
      case Op::Mul: v[i] = v[n.args[0]] * v[n.args[1]]; break;
      case Op::Neg: v[i] = -v[n.args[0]]; break;
      case Op::Exp: v[i] = std::exp(v[n.args[0]]); break;
      case Op::Sin: v[i] = std::sin(v[n.args[0]]); break;
    }
  }
  return v;
}

}  // namespace

Vec eval(const Prog& p, const Vec& x) {
  if (x.size() != p.inputs) throw std::invalid_argument("eval: expected " + std::to_string(p.inputs) + " inputs");
  auto v = node_values(p, x);
  Vec out;
  for (auto o : p.outputs) out.push_back(v[o]);
  return out;
}

std::size_t depth(const Prog& p) {
  std::vector<std::size_t> d(p.nodes.size(), 0);
  for (std::size_t i = 0; i < p.nodes.size(); ++i)
    for (auto a : p.nodes[i].args) d[i] = std::max(d[i], d[a] + 1);
  std::size_t out = 0;
  for (auto o : p.outputs) out = std::max(out, d[o]);
  return out;
}

std::size_t TapeShape::total() const {
  std::size_t n = doubles;
  for (const auto& p : parts) n += p.total();
  return n;
}

RLens lens_of_primitive(Op op, double value) {
  switch (op) {
    case Op::Const:
      return {0, 1, {}, [value](const Vec&) { return std::pair{Tape{}, Vec{value}}; },
              [](const Tape&, const Vec&) { return Vec{}; }};
    case Op::Add:
      return {2, 1, {}, [](const Vec& x) { return std::pair{Tape{}, Vec{x[0] + x[1]}}; },
              [](const Tape&, const Vec& d) { return Vec{d[0], d[0]}; }};
    case Op::Mul:
      return {2, 1, {2, {}}, [](const Vec& x) { return std::pair{Tape{x[0], x[1]}, Vec{x[0] * x[1]}}; },
              [](const Tape& t, const Vec& d) { return Vec{d[0] * t[1], d[0] * t[0]}; }};
    case Op::Neg:
      return {1, 1, {}, [](const Vec& x) { return std::pair{Tape{}, Vec{-x[0]}}; },
              [](const Tape&, const Vec& d) { return Vec{-d[0]}; }};
    case Op::Exp:
      return {1, 1, {1, {}},
              [](const Vec& x) {
                double e = std::exp(x[0]);
                return std::pair{Tape{e}, Vec{e}};
              },
              [](const Tape& t, const Vec& d) { return Vec{d[0] * t[0]}; }};
    case Op::Sin:
      return {1, 1, {1, {}}, [](const Vec& x) { return std::pair{Tape{std::cos(x[0])}, Vec{std::sin(x[0])}}; },
              [](const Tape& t, const Vec& d) { return Vec{d[0] * t[0]}; }};
    case Op::Input: break;
  }
  throw std::invalid_argument("'" + op_name(op) + "' is not a registered primitive");
}

RLens lens_of_primitive(const std::string& name, double value) { return lens_of_primitive(parse_op(name), value); }

RLens rlens_identity(std::size_t n) {
  return {n, n, {}, [](const Vec& x) { return std::pair{Tape{}, x}; },
          [](const Tape&, const Vec& d) { return d; }};
}

RLens rlens_compose(const RLens& l2, const RLens& l1) {
  if (l1.out != l2.in)
    throw std::invalid_argument("rlens_compose: output arity " + std::to_string(l1.out) + " does not match input arity " +
                                std::to_string(l2.in));
  std::size_t split = l1.shape.total();
  auto f1 = l1.forward, f2 = l2.forward;
  auto b1 = l1.backward, b2 = l2.backward;
  return {l1.in, l2.out, {0, {l1.shape, l2.shape}},
          [f1, f2](const Vec& x) {
            auto [t1, y] = f1(x);
            auto [t2, z] = f2(y);
            t1.insert(t1.end(), t2.begin(), t2.end());
            return std::pair{std::move(t1), std::move(z)};
          },
          [b1, b2, split](const Tape& t, const Vec& dz) {
            auto dy = b2(slice(t, split, t.size() - split), dz);
            return b1(slice(t, 0, split), dy);
          }};
}

RLens rlens_extend(const RLens& prim, std::size_t k, const std::vector<std::size_t>& positions) {
  if (positions.size() != prim.in) throw std::invalid_argument("rlens_extend: operand count does not match arity");
  if (prim.out != 1) throw std::invalid_argument("rlens_extend: primitive must be scalar-valued");
  for (auto p : positions)
    if (p >= k) throw std::invalid_argument("rlens_extend: operand position out of range");
  auto fwd = prim.forward;
  auto bwd = prim.backward;
  return {k, k + 1, prim.shape,
          [fwd, positions](const Vec& x) {
            Vec args;
            for (auto p : positions) args.push_back(x[p]);
            auto [t, y] = fwd(args);
            Vec out = x;
            out.push_back(y[0]);
            return std::pair{std::move(t), std::move(out)};
          },
          [bwd, positions](const Tape& t, const Vec& d) {
            Vec out(d.begin(), d.end() - 1);
            auto da = bwd(t, Vec{d.back()});
            for (std::size_t i = 0; i < positions.size(); ++i) out[positions[i]] += da[i];
            return out;
          }};
}

RLens rlens_select(std::size_t k, const std::vector<std::size_t>& positions) {
  for (auto p : positions)
    if (p >= k) throw std::invalid_argument("rlens_select: position out of range");
  return {k, positions.size(), {},
          [positions](const Vec& x) {
            Vec out;
            for (auto p : positions) out.push_back(x[p]);
            return std::pair{Tape{}, std::move(out)};
          },
          [k, positions](const Tape&, const Vec& d) {
            Vec out(k, 0.0);
            for (std::size_t i = 0; i < positions.size(); ++i) out[positions[i]] += d[i];
            return out;
          }};
}

std::vector<RLens> prog_layers(const Prog& p) {
  auto v = validate_prog(p);
  if (!v.ok()) throw std::invalid_argument("invalid program: " + v.issues().front().detail);
  std::vector<RLens> out;
  std::size_t k = p.inputs;
  for (const auto& n : p.nodes) {
    std::vector<std::size_t> pos;
    for (auto a : n.args) pos.push_back(p.inputs + a);
    if (n.op == Op::Input)
      out.push_back(rlens_extend(copy_lens(), k, {n.input}));
    else
      out.push_back(rlens_extend(lens_of_primitive(n.op, n.value), k, pos));
    ++k;
  }
  std::vector<std::size_t> outs;
  for (auto o : p.outputs) outs.push_back(p.inputs + o);
  out.push_back(rlens_select(k, outs));
  return out;
}

RLens lens_of_prog(const Prog& p) {
  auto layers = prog_layers(p);
  RLens acc = rlens_identity(p.inputs);
  for (const auto& l : layers) acc = rlens_compose(l, acc);
  return acc;
}

namespace {

void check_scalar(const Prog& p, const Vec& x) {
  if (p.outputs.size() != 1) throw std::invalid_argument("gradient needs exactly one output");
  if (x.size() != p.inputs)
    throw std::invalid_argument("expected " + std::to_string(p.inputs) + " inputs, got " + std::to_string(x.size()));
}

}  // namespace

Vec grad(const Prog& p, const Vec& x) {
  check_scalar(p, x);
  auto l = lens_of_prog(p);
  auto [tape, y] = l.forward(x);
  return l.backward(tape, Vec{1.0});
}

Vec finite_diff(const Prog& p, const Vec& x, double eps) {
  check_scalar(p, x);
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Vec hi = x, lo = x;
    hi[i] += eps;
    lo[i] -= eps;
    g[i] = (eval(p, hi)[0] - eval(p, lo)[0]) / (2 * eps);
  }
  return g;
}

namespace {

Prog draw_prog(std::mt19937_64& rng, const CorpusOptions& opt) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  Prog p;
  p.inputs = pick(1, std::max<std::size_t>(1, opt.max_inputs));
  std::vector<std::size_t> d, e;
  for (std::size_t i = 0; i < p.inputs; ++i) {
    p.nodes.push_back({Op::Input, {}, 0, i});
    d.push_back(0);
    e.push_back(0);
  }
  static constexpr Op ops[] = {Op::Const, Op::Add, Op::Mul, Op::Neg, Op::Exp, Op::Sin};
  std::size_t extra = pick(1, std::max<std::size_t>(1, opt.max_nodes));
  for (std::size_t k = 0; k < extra; ++k) {
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
      if (d[i] < opt.max_depth) ok.push_back(i);
    Node n;
    n.op = ok.empty() ? Op::Const : ops[pick(0, 5)];
    if (n.op == Op::Const) n.value = std::uniform_real_distribution<double>(-1, 1)(rng);
    std::size_t nd = 0, ne = 0;
    for (std::size_t a = 0; a < op_arity(n.op); ++a) {
      // bias towards recent nodes so that depth actually grows
      std::size_t j = ok[ok.size() - 1 - std::min(ok.size() - 1, pick(0, ok.size() - 1) / 2)];
      n.args.push_back(j);
      nd = std::max(nd, d[j] + 1);
      ne = std::max(ne, e[j]);
    }
    if (n.op == Op::Exp && ++ne > opt.max_exp_chain) n.op = Op::Sin;
    p.nodes.push_back(n);
    d.push_back(nd);
    e.push_back(n.op == Op::Exp ? ne : std::min(ne, opt.max_exp_chain));
  }
  p.outputs = {p.nodes.size() - 1};
  return p;
}

}  // namespace

Prog random_prog(std::mt19937_64& rng, const CorpusOptions& opt) {
  std::uniform_real_distribution<double> unit(-1, 1);
  for (;;) {
    auto p = draw_prog(rng, opt);
    bool tame = true;
    for (std::size_t k = 0; k < opt.probes && tame; ++k) {
      Vec x(p.inputs);
      for (auto& v : x) v = unit(rng);
      for (double v : node_values(p, x)) tame = tame && std::abs(v) <= opt.max_magnitude;
    }
    if (tame) return p;
  }
}

AdCheckResult ad_check(const AdCheckOptions& opt) {
  AdCheckResult res;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(-1, 1);
  auto rel = [](double a, double b) { return std::abs(a - b) / (1 + std::abs(b)); };
  for (std::size_t k = 0; k < opt.programs; ++k) {
    auto p = random_prog(rng);
    ++res.programs;
    auto layers = prog_layers(p);
    auto whole = lens_of_prog(p);
    std::size_t c1 = std::uniform_int_distribution<std::size_t>(0, layers.size())(rng);
    std::size_t c2 = std::uniform_int_distribution<std::size_t>(c1, layers.size())(rng);
    auto stage = [&](std::size_t from, std::size_t to, std::size_t width) {
      RLens acc = rlens_identity(width);
      for (std::size_t i = from; i < to; ++i) acc = rlens_compose(layers[i], acc);
      return acc;
    };
    auto s1 = stage(0, c1, p.inputs);
    auto s2 = stage(c1, c2, s1.out);
    auto s3 = stage(c2, layers.size(), s2.out);
    auto left = rlens_compose(rlens_compose(s3, s2), s1);
    auto right = rlens_compose(s3, rlens_compose(s2, s1));
    auto where = "program " + std::to_string(k);

    for (std::size_t j = 0; j < opt.points; ++j) {
      Vec x(p.inputs);
      for (auto& v : x) v = unit(rng);
      ++res.evaluations;
      auto g = grad(p, x);
      auto fd = finite_diff(p, x, opt.eps);
      for (std::size_t i = 0; i < g.size(); ++i) {
        double e = rel(g[i], fd[i]);
        res.worst_grad = std::max(res.worst_grad, e);
        if (!(e <= opt.grad_tol))
          res.report.law("gradient", where + " coordinate " + std::to_string(i) + ": " + std::to_string(g[i]) +
                                         " vs " + std::to_string(fd[i]));
      }

      auto [tape, y] = whole.forward(x);
      if (tape.size() * sizeof(double) != whole.shape.bytes()) res.report.law("tape-shape", where);
      double a = unit(rng), b = unit(rng), d1 = unit(rng), d2 = unit(rng);
      auto lin = whole.backward(tape, Vec{a * d1 + b * d2});
      auto g1 = whole.backward(tape, Vec{d1}), g2 = whole.backward(tape, Vec{d2});
      for (std::size_t i = 0; i < lin.size(); ++i) {
        double e = rel(lin[i], a * g1[i] + b * g2[i]);
        res.worst_linear = std::max(res.worst_linear, e);
        if (!(e <= opt.exact_tol)) res.report.law("linearity", where + " coordinate " + std::to_string(i));
      }

      auto [tl, yl] = left.forward(x);
      auto [tr, yr] = right.forward(x);
      auto gl = left.backward(tl, Vec{1.0}), gr = right.backward(tr, Vec{1.0});
      for (std::size_t i = 0; i < gl.size(); ++i) {
        double e = rel(gl[i], gr[i]);
        res.worst_assoc = std::max(res.worst_assoc, e);
        if (!(e <= opt.exact_tol) || !(rel(yl[0], yr[0]) <= opt.exact_tol))
          res.report.law("associativity", where + " coordinate " + std::to_string(i));
      }
    }
  }
  return res;
}

}  // namespace dopt::ad
