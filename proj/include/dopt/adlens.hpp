#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dopt/report.hpp"

namespace dopt::ad {

using Vec = std::vector<double>;

enum class Op { Input, Const, Add, Mul, Neg, Exp, Sin };

/// Parses "input", "const", "add", "mul", "neg", "exp", "sin".
/// Throws std::invalid_argument on anything else.
Op parse_op(const std::string& name);
std::string op_name(Op op);
std::size_t op_arity(Op op);

struct Node {
  Op op = Op::Const;
  std::vector<std::size_t> args;  // earlier node ids
  double value = 0;               // Const
  std::size_t input = 0;          // Input
};

/// A straight-line program; node i may only read nodes < i.
struct Prog {
  std::size_t inputs = 0;
  std::vector<Node> nodes;
  std::vector<std::size_t> outputs;
};

/// Laws "acyclic" (operands precede their node), "arity", "input-range",
/// "output-range".
ValidationReport validate_prog(const Prog& p);
Vec eval(const Prog& p, const Vec& x);
/// Longest operand chain from an input or constant to an output.
std::size_t depth(const Prog& p);

/// Layout of a tape: a flat block of doubles, or the concatenation of the
/// tapes of a composite.
struct TapeShape {
  std::size_t doubles = 0;
  std::vector<TapeShape> parts;

  std::size_t total() const;
  std::size_t bytes() const { return total() * sizeof(double); }
  friend bool operator==(const TapeShape&, const TapeShape&) = default;
};

using Tape = std::vector<double>;

/// A reverse-mode lens R^in → R^out whose representative is the tape.
struct RLens {
  std::size_t in = 0;
  std::size_t out = 0;
  TapeShape shape;
  std::function<std::pair<Tape, Vec>(const Vec&)> forward;
  std::function<Vec(const Tape&, const Vec&)> backward;
};

/// add, mul, neg, exp, sin as lenses R^k → R; const c as R^0 → R.
/// Throws std::invalid_argument for Input, which is wiring.
RLens lens_of_primitive(Op op, double value = 0);
RLens lens_of_primitive(const std::string& name, double value = 0);

RLens rlens_identity(std::size_t n);
/// Forward runs l1 then l2 with the tapes concatenated; backward runs l2
/// then l1. Throws std::invalid_argument when l1.out ≠ l2.in.
RLens rlens_compose(const RLens& l2, const RLens& l1);

/// R^k → R^{k+1}: keeps its input and appends prim applied to the given
/// positions. Backward adds the primitive's cotangent into those positions.
RLens rlens_extend(const RLens& prim, std::size_t k, const std::vector<std::size_t>& positions);
/// R^k → R^{|positions|}; the backward map scatters.
RLens rlens_select(std::size_t k, const std::vector<std::size_t>& positions);

/// One extension per node (inputs copy their coordinate), then the output
/// selection. Throws std::invalid_argument if validate_prog fails.
std::vector<RLens> prog_layers(const Prog& p);
/// The composite of prog_layers, left to right.
RLens lens_of_prog(const Prog& p);

/// Throws std::invalid_argument unless the program has exactly one output
/// and x has the declared arity.
Vec grad(const Prog& p, const Vec& x);
Vec finite_diff(const Prog& p, const Vec& x, double eps = 1e-6);

struct CorpusOptions {
  std::size_t max_inputs = 3;
  std::size_t max_depth = 6;
  std::size_t max_nodes = 12;
  /// Bound on exp nodes along any operand chain; e^e^e^x already defeats
  /// central differences at ε = 1e-6.
  std::size_t max_exp_chain = 2;
  /// Programs with an intermediate value above this at one of `probes`
  /// random points of [-1, 1]^n are redrawn.
  double max_magnitude = 8;
  std::size_t probes = 16;
};

/// Random program with scalar output. Constants lie in [-1, 1].
Prog random_prog(std::mt19937_64& rng, const CorpusOptions& opt = {});

struct AdCheckOptions {
  std::size_t programs = 100;
  std::size_t points = 10;
  std::uint64_t seed = 1;
  double eps = 1e-6;
  double grad_tol = 1e-5;
  double exact_tol = 1e-12;
};

struct AdCheckResult {
  ValidationReport report;
  std::size_t programs = 0;
  std::size_t evaluations = 0;
  double worst_grad = 0;     // max |grad − fd| / (1 + |fd|)
  double worst_linear = 0;
  double worst_assoc = 0;
};

/// Laws "gradient" (against central differences), "linearity" (backward at
/// aδ₁ + bδ₂), "associativity" (three-stage splits grouped both ways) and
/// "tape-shape" (tape byte size equals the shape descriptor).
AdCheckResult ad_check(const AdCheckOptions& opt = {});

}  // namespace dopt::ad
