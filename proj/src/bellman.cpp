#include "ucx/bellman.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ucx/error.hpp"
#include "ucx/moduli.hpp"
#include "ucx/parallel.hpp"

namespace ucx {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

void StepPair::validate() const {
  if (atoms.empty()) throw Error(ErrorCode::InvalidArgument, "step pair needs at least one atom");
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.weight >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative atom weight");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "atom weights sum to " << total;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

StepPair StepPair::concatenate(const StepPair& a, const StepPair& b, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0,1]");
  StepPair out;
  out.atoms.reserve(a.atoms.size() + b.atoms.size());
  for (const Atom& atom : a.atoms) out.atoms.push_back({lambda * atom.weight, atom.f, atom.g});
  for (const Atom& atom : b.atoms) out.atoms.push_back({(1.0 - lambda) * atom.weight, atom.f, atom.g});
  return out;
}

StepPair StepPair::scaled(double factor) const {
  StepPair out = *this;
  for (Atom& a : out.atoms) {
    a.f *= factor;
    a.g *= factor;
  }
  return out;
}

LambdaPoint moment(const StepPair& pair, Exponent p) {
  const double e = p.value();
  LambdaPoint m;
  for (const Atom& a : pair.atoms) {
    m.x1 += a.weight * std::pow(std::abs(a.f), e);
    m.x2 += a.weight * std::pow(std::abs(a.g), e);
    m.x3 += a.weight * std::pow(std::abs(a.f - a.g), e);
  }
  return m;
}

double payoff(const StepPair& pair, Exponent p, Theta theta) {
  const double th = theta.value();
  double total = 0.0;
  for (const Atom& a : pair.atoms) total += a.weight * std::pow(std::abs(th * a.f + (1.0 - th) * a.g), p.value());
  return total;
}

std::string BruteForceResult::serialize() const {
  std::ostringstream os;
  os << "x=" << format_double(x.x1) << ',' << format_double(x.x2) << ',' << format_double(x.x3)
     << " p=" << format_double(p) << " theta=" << format_double(theta) << " value=" << format_double(value)
     << " residual=" << format_double(residual) << '\n';
  for (const Atom& a : witness.atoms) {
    os << "w=" << format_double(a.weight) << " f=" << format_double(a.f) << " g=" << format_double(a.g) << '\n';
  }
  return os.str();
}

namespace {

constexpr std::size_t kAtoms = kWitnessAtoms;
constexpr std::size_t kCoords = 3 * kAtoms;  // raw weight, f, g per atom
constexpr std::size_t kStages = 8;

double sample_value(Rng& rng) {
  if (rng.uniform() < 0.5) return rng.uniform(-2.0, 2.0);
  return rng.uniform() < 0.5 ? -1.0 : 1.0;
}

// Penalized objective with per-atom caches so a coordinate move costs one
// atom re-evaluation.
class PenalizedSearch {
 public:
  PenalizedSearch(const std::array<double, 3>& target, double p, double theta)
      : target_(target), p_(p), theta_(theta) {}

  void set(const std::array<double, kCoords>& params) {
    params_ = params;
    for (std::size_t j = 0; j < kAtoms; ++j) refresh(j);
  }

  const std::array<double, kCoords>& params() const { return params_; }

  double objective(double mu) const {
    double w = 0.0;
    std::array<double, 3> m{};
    double h = 0.0;
    for (std::size_t j = 0; j < kAtoms; ++j) {
      const double r = params_[3 * j];
      w += r;
      for (int i = 0; i < 3; ++i) m[i] += r * cache_[j].m[i];
      h += r * cache_[j].h;
    }
    if (!(w > 0.0)) return -std::numeric_limits<double>::infinity();
    double pen = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double d = m[i] / w - target_[i];
      pen += d * d;
    }
    return h / w - mu * pen;
  }

  // Pattern move on coordinate c; keeps the change iff the objective improves.
  bool try_move(std::size_t c, double delta, double mu, double& current) {
    const double old = params_[c];
    double next = old + delta;
    if (c % 3 == 0) next = std::max(0.0, next);
    if (next == old) return false;
    params_[c] = next;
    const std::size_t j = c / 3;
    const Cache saved = cache_[j];
    refresh(j);
    const double value = objective(mu);
    if (value > current) {
      current = value;
      return true;
    }
    params_[c] = old;
    cache_[j] = saved;
    return false;
  }

 private:
  struct Cache {
    std::array<double, 3> m;
    double h;
  };

  void refresh(std::size_t j) {
    const double f = params_[3 * j + 1];
    const double g = params_[3 * j + 2];
    cache_[j].m = {std::pow(std::abs(f), p_), std::pow(std::abs(g), p_), std::pow(std::abs(f - g), p_)};
    cache_[j].h = std::pow(std::abs(theta_ * f + (1.0 - theta_) * g), p_);
  }

  std::array<double, 3> target_;
  double p_;
  double theta_;
  std::array<double, kCoords> params_{};
  std::array<Cache, kAtoms> cache_{};
};

StepPair to_pair(const std::array<double, kCoords>& params) {
  double w = 0.0;
  for (std::size_t j = 0; j < kAtoms; ++j) w += params[3 * j];
  StepPair out;
  for (std::size_t j = 0; j < kAtoms; ++j) {
    out.atoms.push_back({params[3 * j] / w, params[3 * j + 1], params[3 * j + 2]});
  }
  return out;
}

// Gaussian elimination with partial pivoting on a 4x4 system.
bool solve4(std::array<std::array<double, 5>, 4> a, std::array<double, 4>& x) {
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 4; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-13) return false;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      for (std::size_t k = col; k < 5; ++k) a[r][k] -= factor * a[col][k];
    }
  }
  for (std::size_t r = 0; r < 4; ++r) x[r] = a[r][4] / a[r][r];
  return true;
}

double relative_residual(const LambdaPoint& got, const LambdaPoint& want) {
  const double scale = std::max(want.max_coord(), std::numeric_limits<double>::min());
  return std::max({std::abs(got.x1 - want.x1), std::abs(got.x2 - want.x2), std::abs(got.x3 - want.x3)}) / scale;
}

// Feasibility projection: keep the atom values and solve for the weights
// exactly; fall back to (or finish with) the homogeneity rescale that
// matches the largest coordinate of the target.
StepPair project(StepPair pair, const LambdaPoint& target, Exponent p) {
  const double e = p.value();
  std::array<std::array<double, 5>, 4> sys{};
  for (std::size_t j = 0; j < kAtoms; ++j) {
    const Atom& a = pair.atoms[j];
    sys[0][j] = std::pow(std::abs(a.f), e);
    sys[1][j] = std::pow(std::abs(a.g), e);
    sys[2][j] = std::pow(std::abs(a.f - a.g), e);
    sys[3][j] = 1.0;
  }
  sys[0][4] = target.x1;
  sys[1][4] = target.x2;
  sys[2][4] = target.x3;
  sys[3][4] = 1.0;
  std::array<double, 4> w{};
  if (solve4(sys, w) && std::all_of(w.begin(), w.end(), [](double v) { return v >= -1e-14; })) {
    StepPair solved = pair;
    double total = 0.0;
    for (std::size_t j = 0; j < kAtoms; ++j) total += solved.atoms[j].weight = std::max(0.0, w[j]);
    for (Atom& a : solved.atoms) a.weight /= total;
    if (relative_residual(moment(solved, p), target) <= relative_residual(moment(pair, p), target)) pair = solved;
  }

  const LambdaPoint m = moment(pair, p);
  const std::array<double, 3> want = target.as_array();
  const std::array<double, 3> got = m.as_array();
  const auto k = static_cast<std::size_t>(std::max_element(want.begin(), want.end()) - want.begin());
  if (got[k] > 0.0) pair = pair.scaled(std::pow(want[k] / got[k], 1.0 / e));
  return pair;
}

}  // namespace

BruteForceResult brute_force_B(const LambdaPoint& x, Exponent p, Theta theta, const SearchBudget& budget) {
  if (contains(x, p) == BoundaryFace::Outside) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << x.x1 << ", " << x.x2 << ", " << x.x3 << ") lies outside the cone";
    throw Error(ErrorCode::InfeasibleStart, os.str());
  }
  if (budget.restarts == 0 || budget.local_steps == 0 || !(budget.penalty > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "search budget entries must be positive");
  }

  BruteForceResult best;
  best.x = x;
  best.p = p.value();
  best.theta = theta.value();

  const double scale = x.max_coord();
  if (scale == 0.0) {
    best.witness.atoms = {{1.0, 0.0, 0.0}};
    return best;
  }
  const LambdaPoint unit = x.scaled(1.0 / scale);
  const std::array<double, 3> target = unit.as_array();
  const std::size_t sweeps_per_stage = std::max<std::size_t>(1, budget.local_steps / kStages);

  std::vector<StepPair> candidates(budget.restarts);
  parallel_for(budget.restarts, [&](std::size_t r) {
    Rng rng = Rng::stream(budget.seed, r);
    std::array<double, kCoords> params{};
    for (std::size_t j = 0; j < kAtoms; ++j) {
      params[3 * j] = rng.uniform(0.1, 1.0);
      params[3 * j + 1] = sample_value(rng);
      params[3 * j + 2] = sample_value(rng);
    }
    // Restarts cycle through independent g, g = -f, g = +-f and g a cyclic
    // shift of f; boundary points are reached exactly only by the structured
    // starts.
    switch (r % 4) {
      case 1:
        for (std::size_t j = 0; j < kAtoms; ++j) params[3 * j + 2] = -params[3 * j + 1];
        break;
      case 2:
        for (std::size_t j = 0; j < kAtoms; ++j) {
          params[3 * j + 2] = rng.uniform() < 0.5 ? -params[3 * j + 1] : params[3 * j + 1];
        }
        break;
      case 3:
        for (std::size_t j = 0; j < kAtoms; ++j) params[3 * j + 2] = params[3 * ((j + 1) % kAtoms) + 1];
        break;
      default:
        break;
    }
    PenalizedSearch search(target, p.value(), theta.value());
    search.set(params);

    double mu = budget.penalty;
    for (std::size_t stage = 0; stage < kStages; ++stage, mu *= 10.0) {
      std::array<double, kCoords> step;
      step.fill(0.1);
      double current = search.objective(mu);
      for (std::size_t sweep = 0; sweep < sweeps_per_stage; ++sweep) {
        bool active = false;
        for (std::size_t c = 0; c < kCoords; ++c) {
          if (step[c] < 1e-13) continue;
          active = true;
          if (!search.try_move(c, step[c], mu, current) && !search.try_move(c, -step[c], mu, current)) {
            step[c] *= 0.5;
          }
        }
        if (!active) break;
      }
    }
    candidates[r] = project(to_pair(search.params()), unit, p);
  });

  // On a face the Minkowski equality forces f and g to be proportional, and
  // one atom reaches the point exactly.
  const BoundaryFace face = contains(unit, p);
  if (is_face(face)) {
    const double r1 = std::pow(unit.x1, 1.0 / p.value());
    const double r2 = std::pow(unit.x2, 1.0 / p.value());
    StepPair exact;
    exact.atoms = {{1.0, r1, face == BoundaryFace::Face3 ? -r2 : r2}};
    candidates.push_back(std::move(exact));
  }

  const double back = std::pow(scale, 1.0 / p.value());
  bool have_feasible = false;
  double best_residual = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < candidates.size(); ++r) {
    StepPair pair = candidates[r].scaled(back);
    const LambdaPoint reached = moment(pair, p);
    const double residual = relative_residual(reached, x);
    const double value = payoff(pair, p, theta);
    const bool feasible = residual <= kFeasibleResidual;
    bool take = false;
    if (feasible) {
      take = !have_feasible || value > best.value;
    } else if (!have_feasible) {
      take = residual < best_residual;
    }
    if (take) {
      have_feasible = have_feasible || feasible;
      best_residual = residual;
      best.value = value;
      best.residual = residual;
      best.reached = reached;
      best.restart = r;
      best.witness = std::move(pair);
    }
  }
  return best;
}

double hanner_gap(std::span<const MarginalAtom> f, std::span<const MarginalAtom> g, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::DomainError, "Hanner gap needs p >= 1");
  if (f.size() != g.size()) throw Error(ErrorCode::PartitionMismatch, "marginals have different atom counts");
  double nf = 0.0, ng = 0.0, plus = 0.0, minus = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j].weight != g[j].weight) throw Error(ErrorCode::PartitionMismatch, "atom weights differ");
    const double a = f[j].weight;
    nf += a * std::pow(std::abs(f[j].value), p);
    ng += a * std::pow(std::abs(g[j].value), p);
    plus += a * std::pow(std::abs(f[j].value + g[j].value), p);
    minus += a * std::pow(std::abs(f[j].value - g[j].value), p);
  }
  const double a = std::pow(nf, 1.0 / p);
  const double b = std::pow(ng, 1.0 / p);
  return plus + minus - std::pow(a + b, p) - std::pow(std::abs(a - b), p);
}

double hanner_gap(const StepPair& pair, double p) {
  std::vector<MarginalAtom> f, g;
  for (const Atom& a : pair.atoms) {
    f.push_back({a.weight, a.f});
    g.push_back({a.weight, a.g});
  }
  return hanner_gap(f, g, p);
}

double norm_f(const StepPair& pair, double p) {
  double s = 0.0;
  for (const Atom& a : pair.atoms) s += a.weight * std::pow(std::abs(a.f), p);
  return std::pow(s, 1.0 / p);
}

double norm_g(const StepPair& pair, double p) {
  double s = 0.0;
  for (const Atom& a : pair.atoms) s += a.weight * std::pow(std::abs(a.g), p);
  return std::pow(s, 1.0 / p);
}

StepPair sample_step_pair(Rng& rng, std::size_t max_atoms) {
  const std::size_t k = 1 + rng.below(std::max<std::size_t>(1, max_atoms));
  StepPair pair;
  double total = 0.0;
  const bool equal_weights = rng.uniform() < 0.5;
  for (std::size_t j = 0; j < k; ++j) {
    const double w = equal_weights ? 1.0 : rng.uniform(0.05, 1.0);
    pair.atoms.push_back({w, sample_value(rng), 0.0});
    total += w;
  }
  for (Atom& a : pair.atoms) a.weight /= total;

  // g is drawn independently, as a signed copy of f, or as a permutation of
  // f: the last two cover the extremal shapes for p >= 2 and p < 2.
  const double mode = rng.uniform();
  if (mode < 0.5) {
    for (Atom& a : pair.atoms) a.g = sample_value(rng);
  } else if (mode < 0.75) {
    for (Atom& a : pair.atoms) a.g = rng.uniform() < 0.5 ? -a.f : a.f;
  } else {
    for (std::size_t j = 0; j < k; ++j) pair.atoms[j].g = pair.atoms[(j + 1) % k].f;
  }
  return pair;
}

WitnessReport witness_test(Exponent p, double eps, std::size_t trials, std::uint64_t seed) {
  if (!(eps > 0.0)) throw Error(ErrorCode::DomainError, "witness test needs epsilon > 0");
  const double pv = p.value();
  WitnessReport out;
  out.bound = 1.0 - delta(ModulusQuery(p, eps));

  Rng rng(splitmix64(seed));
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t worst_at = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const StepPair raw = sample_step_pair(rng);
    const double nf = norm_f(raw, pv);
    const double ng = norm_g(raw, pv);
    if (nf == 0.0 || ng == 0.0) continue;
    StepPair unit = raw;
    for (Atom& a : unit.atoms) {
      a.f /= nf;
      a.g /= ng;
    }
    double diff = 0.0, mid = 0.0;
    for (const Atom& a : unit.atoms) {
      diff += a.weight * std::pow(std::abs(a.f - a.g), pv);
      mid += a.weight * std::pow(std::abs(0.5 * (a.f + a.g)), pv);
    }
    if (std::pow(diff, 1.0 / pv) < eps * (1.0 - 1e-12)) continue;
    ++out.survivors;
    const double mid_norm = std::pow(mid, 1.0 / pv);
    out.max_midpoint_norm = std::max(out.max_midpoint_norm, mid_norm);
    if (mid_norm - out.bound > worst) {
      worst = mid_norm - out.bound;
      worst_at = trial;
    }
  }
  if (out.survivors == 0) worst = -out.bound;
  out.report = {"witness", trials, worst, static_cast<double>(worst_at), worst <= 1e-9};
  return out;
}

}  // namespace ucx
