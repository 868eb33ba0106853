#pragma once

// Coefficient optimizers for the two extremal problems on a fixed support:
//
//   majorant numerator  sup_{|a_n| <= 1}    || sum a_n e(n.x) ||_p
//   Lambda(p) constant  sup_{|a|_{l^2} <= 1} || sum a_n e(n.x) ||_p
//
// Both optimizers return certified lower bounds: the reported value is the
// norm of the reported (feasible) coefficients.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "majorant_lab/frequency_set.hpp"
#include "majorant_lab/trigpoly.hpp"

namespace majorant_lab {

struct OptimizerConfig {
  int restarts = 8;
  int max_iters = 500;
  double rel_tol = 1e-8;       // stop on relative objective change below this
  double norm_rel_tol = 1e-9;  // forwarded to lp_norm_adaptive
  /// Adaptive tolerance of the grid the iterations run on (non-even p).
  /// Reported values are always re-evaluated at norm_rel_tol.
  double working_rel_tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t max_grid_points = std::size_t{1} << 24;
};

void validate(const OptimizerConfig& cfg);

struct ExtremalResult {
  double value = 0.0;
  std::vector<Complex> coeffs;
  int iterations_used = 0;  // iterations of the winning restart
  int total_iterations = 0;
  bool converged = false;   // winning restart met rel_tol before max_iters
  int best_restart = 0;
  std::vector<double> restart_values;
  Grid working_grid;        // grid the iterations ran on
};

/// Phase-only fixed-point ascent a_n <- phase <f |f|^{p-2}, e(n.x)>, guarded
/// by step halving. Restart 0 starts from all ones, so the result is never
/// below the all-ones norm.
ExtremalResult majorant_numerator(const FrequencySet& support, double p,
                                  const OptimizerConfig& cfg = {});

/// majorant_numerator(...).value over the all-ones norm of the support.
double majorant_ratio(const FrequencySet& support, double p, const OptimizerConfig& cfg = {});

/// Nonlinear power iteration a <- P_S(f |f|^{p-2}) / |.|_2 on the unit
/// sphere. Restart 0 starts from equal weights |S|^{-1/2}.
ExtremalResult lambda_p_constant(const FrequencySet& support, double p,
                                 const OptimizerConfig& cfg = {});

/// The L^p norm the optimizers report for a coefficient vector: exact
/// quadrature for even p, lp_norm_adaptive otherwise.
double reported_norm(const FrequencySet& support, const std::vector<Complex>& coeffs, double p,
                     const OptimizerConfig& cfg = {});

enum class Constraint { polydisc, sphere };

struct BruteForceResult {
  double value = 0.0;
  std::vector<Complex> coeffs;
  /// Polydisc with |S| <= 2 only: whether some radius in {0.5, 0.75}
  /// beat every unimodular choice on the coarse phase grid.
  bool interior_beats_boundary = false;
};

/// Exhaustive search over a phase grid of spacing 2 pi / grid_density
/// (polydisc) or an angle grid of the unit sphere, followed by a local
/// zoom around the best grid point. Supports with at most three elements.
BruteForceResult brute_force_sup(const FrequencySet& support, double p, Constraint constraint,
                                 int grid_density);

}  // namespace majorant_lab
