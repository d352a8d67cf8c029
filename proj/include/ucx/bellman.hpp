#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ucx/domain.hpp"
#include "ucx/report.hpp"

namespace ucx {

/// Seeded generator: std::mt19937_64 (bit-exact across standard libraries),
/// with uniforms built directly from the top 53 bits so that no
/// implementation-defined distribution is involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, index), mixed through splitmix64.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct Atom {
  double weight;
  double f;
  double g;
};

/// Piecewise-constant pair (f, g) on a unit-mass interval: atom j takes the
/// values (f_j, g_j) on a set of measure weight_j.
struct StepPair {
  std::vector<Atom> atoms;

  /// InvalidArgument unless nonempty, weights >= 0 and summing to 1 (1e-12).
  void validate() const;

  /// Weights λ and 1-λ on two copies: the concatenation from the concavity
  /// argument.
  static StepPair concatenate(const StepPair& a, const StepPair& b, double lambda);

  StepPair scaled(double factor) const;
};

/// Σ a_j (|f_j|^p, |g_j|^p, |f_j - g_j|^p).
LambdaPoint moment(const StepPair& pair, Exponent p);

/// Σ a_j |θ f_j + (1-θ) g_j|^p.
double payoff(const StepPair& pair, Exponent p, Theta theta);

struct SearchBudget {
  std::size_t restarts = 200;
  std::size_t local_steps = 2000;
  std::uint64_t seed = 1;
  double penalty = 10.0;  // initial quadratic penalty weight
};

struct BruteForceResult {
  LambdaPoint x;        // requested point
  LambdaPoint reached;  // moment(witness)
  double p = 0.0;
  double theta = 0.0;
  double value = 0.0;     // payoff(witness)
  double residual = 0.0;  // max_i |reached_i - x_i| / max_i x_i
  std::size_t restart = 0;  // == restarts for the exact face witness
  StepPair witness;

  /// Header `x=<x1>,<x2>,<x3> p=<p> theta=<θ> value=<v> residual=<r>`,
  /// then one `w=<a> f=<f> g=<g>` line per atom.
  std::string serialize() const;
};

inline constexpr std::size_t kWitnessAtoms = 4;
inline constexpr double kFeasibleResidual = 1e-6;

/// Lower-bound oracle for B(x): penalized pattern search over 4-atom step
/// pairs with seeded restarts, then projection onto the constraint (exact
/// weight solve when possible, else the homogeneity rescale). Restarts run
/// in parallel; the reduction is by value among restarts with residual
/// <= kFeasibleResidual, ties to the lowest index. Points on a face also get
/// the exact one-atom witness. InfeasibleStart if x is Outside Λ.
BruteForceResult brute_force_B(const LambdaPoint& x, Exponent p, Theta theta, const SearchBudget& budget);

/// One side of a shared partition: (weight, value) per atom.
struct MarginalAtom {
  double weight;
  double value;
};

/// LHS - RHS of ‖f+g‖^p + ‖f-g‖^p >= (‖f‖+‖g‖)^p + |‖f‖-‖g‖|^p.
/// p >= 1. PartitionMismatch when the weights differ.
double hanner_gap(std::span<const MarginalAtom> f, std::span<const MarginalAtom> g, double p);
double hanner_gap(const StepPair& pair, double p);

/// L^p norm of f (or g) of a step pair.
double norm_f(const StepPair& pair, double p);
double norm_g(const StepPair& pair, double p);

/// Random shared-partition pair: 1..max_atoms atoms, values from a mixture
/// of uniform[-2, 2] and ±1 spikes.
StepPair sample_step_pair(Rng& rng, std::size_t max_atoms = 4);

struct WitnessReport {
  VerificationReport report;
  std::size_t survivors = 0;
  double max_midpoint_norm = 0.0;
  double bound = 0.0;  // 1 - δ(ε)
};

/// Monte Carlo check of ‖(f+g)/2‖ <= 1 - δ(ε) over unit pairs with ‖f-g‖ >= ε.
WitnessReport witness_test(Exponent p, double eps, std::size_t trials, std::uint64_t seed);

}  // namespace ucx
