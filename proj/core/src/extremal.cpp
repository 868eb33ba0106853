#include "majorant_lab/extremal.hpp"

#include <cmath>
#include <numbers>

#include "majorant_lab/error.hpp"
#include "majorant_lab/rng.hpp"
#include "powers.hpp"

namespace majorant_lab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxHalvings = 10;
constexpr double kTieTolerance = 1e-12;

void require_problem(const FrequencySet& support, double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw ValidationError("p", "must be a finite real >= 2");
  if (support.empty()) throw ValidationError("support", "empty support");
}

Grid working_grid(const FrequencySet& support, double p, const OptimizerConfig& cfg) {
  Grid grid = is_even_integer(p)
                  ? exact_even_grid(support, p)
                  : adaptive_grid(TrigPolynomial::all_ones(support), p, cfg.working_rel_tol,
                                  AdaptiveOptions{cfg.max_grid_points});
  if (grid_points(grid) > cfg.max_grid_points) {
    throw BudgetError("working grid exceeds max_grid_points");
  }
  return grid;
}

// g = f |f|^{p-2}, in place.
void apply_duality_map(std::vector<Complex>& values, double p) {
  if (p == 2.0) return;
  const detail::SquarePower power((p - 2.0) / 2.0);
  for (auto& v : values) v *= power(std::norm(v));
}

double wrap_angle(double angle) { return angle - kTwoPi * std::round(angle / kTwoPi); }

std::vector<Complex> unimodular(const std::vector<double>& phases) {
  std::vector<Complex> out(phases.size());
  for (std::size_t j = 0; j < phases.size(); ++j) out[j] = std::polar(1.0, phases[j]);
  return out;
}

struct RestartOutcome {
  std::vector<Complex> coeffs;
  int iterations = 0;
  bool converged = false;
};

class Ascent {
 public:
  Ascent(const FrequencySet& support, Grid grid, double p)
      : evaluator_(support, std::move(grid)), p_(p), projected_(support.size()) {}

  const Grid& grid() const { return evaluator_.grid(); }

  // ||f||_p on the working grid; leaves f in values_.
  double objective(const std::vector<Complex>& coeffs) {
    evaluator_.evaluate(coeffs, values_);
    return std::pow(GridEvaluator::power_mean(values_, p_), 1.0 / p_);
  }

  // Fourier coefficients of f|f|^{p-2} for the f last passed to objective().
  const std::vector<Complex>& gradient_direction() {
    apply_duality_map(values_, p_);
    evaluator_.project(values_, projected_);
    return projected_;
  }

  RestartOutcome phase_ascent(std::vector<double> phases, const OptimizerConfig& cfg) {
    RestartOutcome out;
    auto coeffs = unimodular(phases);
    double current = objective(coeffs);
    std::vector<double> proposal(phases.size());
    std::vector<double> trial(phases.size());
    for (out.iterations = 0; out.iterations < cfg.max_iters;) {
      const auto& direction = gradient_direction();
      for (std::size_t j = 0; j < phases.size(); ++j) {
        proposal[j] = std::abs(direction[j]) > 0.0 ? std::arg(direction[j]) : phases[j];
      }
      ++out.iterations;

      bool accepted = false;
      double step = 1.0;
      double next = current;
      std::vector<Complex> next_coeffs;
      for (int halving = 0; halving <= kMaxHalvings; ++halving, step *= 0.5) {
        for (std::size_t j = 0; j < phases.size(); ++j) {
          trial[j] = phases[j] + step * wrap_angle(proposal[j] - phases[j]);
        }
        next_coeffs = unimodular(trial);
        next = objective(next_coeffs);
        if (next >= current) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        out.converged = true;
        break;
      }
      const double change = (next - current) / current;
      phases = trial;
      coeffs = std::move(next_coeffs);
      current = next;
      if (change < cfg.rel_tol) {
        out.converged = true;
        break;
      }
    }
    out.coeffs = std::move(coeffs);
    return out;
  }

  RestartOutcome power_iteration(std::vector<Complex> coeffs, const OptimizerConfig& cfg) {
    RestartOutcome out;
    double current = objective(coeffs);
    std::vector<Complex> next(coeffs.size());
    for (out.iterations = 0; out.iterations < cfg.max_iters;) {
      const auto& direction = gradient_direction();
      double norm2 = 0.0;
      for (const auto& c : direction) norm2 += std::norm(c);
      ++out.iterations;
      if (!(norm2 > 0.0)) {
        out.converged = true;
        break;
      }
      const double scale = 1.0 / std::sqrt(norm2);
      for (std::size_t j = 0; j < next.size(); ++j) next[j] = direction[j] * scale;
      const double candidate = objective(next);
      if (candidate < current) {
        out.converged = true;  // ascent exhausted at working precision
        break;
      }
      const double change = (candidate - current) / current;
      coeffs = next;
      current = candidate;
      if (change < cfg.rel_tol) {
        out.converged = true;
        break;
      }
    }
    out.coeffs = std::move(coeffs);
    return out;
  }

 private:
  GridEvaluator evaluator_;
  double p_;
  std::vector<Complex> values_;
  std::vector<Complex> projected_;
};

void normalize_l2(std::vector<Complex>& coeffs) {
  double norm2 = 0.0;
  for (const auto& c : coeffs) norm2 += std::norm(c);
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& c : coeffs) c *= scale;
}

// Folds restart r into the running result; lowest index wins ties.
void merge_restart(ExtremalResult& result, int restart, double value, RestartOutcome&& outcome) {
  result.restart_values.push_back(value);
  result.total_iterations += outcome.iterations;
  if (restart == 0 || value > result.value * (1.0 + kTieTolerance)) {
    result.value = value;
    result.coeffs = std::move(outcome.coeffs);
    result.iterations_used = outcome.iterations;
    result.converged = outcome.converged;
    result.best_restart = restart;
  }
}

}  // namespace

void validate(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw ValidationError("restarts", "must be >= 1");
  if (cfg.max_iters < 1) throw ValidationError("max_iters", "must be >= 1");
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) {
    throw ValidationError("rel_tol", "must lie in (0, 1)");
  }
  if (!(cfg.norm_rel_tol > 0.0 && cfg.norm_rel_tol < 1.0)) {
    throw ValidationError("norm_rel_tol", "must lie in (0, 1)");
  }
  if (!(cfg.working_rel_tol > 0.0 && cfg.working_rel_tol < 1.0)) {
    throw ValidationError("working_rel_tol", "must lie in (0, 1)");
  }
}

double reported_norm(const FrequencySet& support, const std::vector<Complex>& coeffs, double p,
                     const OptimizerConfig& cfg) {
  TrigPolynomial poly(support, coeffs);
  if (is_even_integer(p)) return lp_norm_quadrature(poly, p, exact_even_grid(support, p)).value;
  return lp_norm_adaptive(poly, p, cfg.norm_rel_tol, AdaptiveOptions{cfg.max_grid_points}).value;
}

ExtremalResult majorant_numerator(const FrequencySet& support, double p,
                                  const OptimizerConfig& cfg) {
  require_problem(support, p);
  validate(cfg);
  const std::size_t size = support.size();
  const std::vector<Complex> ones(size, Complex{1.0, 0.0});
  const double all_ones_value = reported_norm(support, ones, p, cfg);

  Ascent ascent(support, working_grid(support, p, cfg), p);
  ExtremalResult result;
  result.working_grid = ascent.grid();
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::vector<double> phases(size, 0.0);
    if (restart > 0) {
      SeededRng rng(cfg.seed, static_cast<std::uint64_t>(restart));
      for (auto& theta : phases) theta = kTwoPi * rng.uniform01();
    }
    auto outcome = ascent.phase_ascent(std::move(phases), cfg);
    double value = reported_norm(support, outcome.coeffs, p, cfg);
    if (restart == 0 && value < all_ones_value) {
      // The all-ones start is itself a candidate of this restart.
      outcome.coeffs = ones;
      value = all_ones_value;
    }
    merge_restart(result, restart, value, std::move(outcome));
  }
  return result;
}

double majorant_ratio(const FrequencySet& support, double p, const OptimizerConfig& cfg) {
  const auto numerator = majorant_numerator(support, p, cfg);
  const std::vector<Complex> ones(support.size(), Complex{1.0, 0.0});
  return numerator.value / reported_norm(support, ones, p, cfg);
}

ExtremalResult lambda_p_constant(const FrequencySet& support, double p,
                                 const OptimizerConfig& cfg) {
  require_problem(support, p);
  validate(cfg);
  const std::size_t size = support.size();
  const std::vector<Complex> equal(size, Complex{1.0 / std::sqrt(static_cast<double>(size)), 0.0});
  const double equal_value = reported_norm(support, equal, p, cfg);

  Ascent ascent(support, working_grid(support, p, cfg), p);
  ExtremalResult result;
  result.working_grid = ascent.grid();
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::vector<Complex> start = equal;
    if (restart > 0) {
      SeededRng rng(cfg.seed, static_cast<std::uint64_t>(restart));
      for (auto& c : start) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        c = Complex{re, im};
      }
      normalize_l2(start);
    }
    auto outcome = ascent.power_iteration(std::move(start), cfg);
    normalize_l2(outcome.coeffs);
    double value = reported_norm(support, outcome.coeffs, p, cfg);
    if (restart == 0 && value < equal_value) {
      outcome.coeffs = equal;
      value = equal_value;
    }
    merge_restart(result, restart, value, std::move(outcome));
  }
  return result;
}

}  // namespace majorant_lab
