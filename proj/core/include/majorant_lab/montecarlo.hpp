#pragma once

// Seeded trial ensembles over random set models, and the desk-scale checks
// built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "majorant_lab/extremal.hpp"
#include "majorant_lab/randsets.hpp"
#include "majorant_lab/trigpoly.hpp"

namespace majorant_lab {

enum class Statistic {
  set_size,
  i_pn,               // || sum_{n in S} e(n.x) ||_p^p
  all_ones_norm,      // || sum_{n in S} e(n.x) ||_p
  majorant_ratio,
  lambda_k_to_the_p,  // lambda_p_constant(S, p)^p
  selector_block_sum, // sum_{i in targets} 1_S(i)
};

enum class NormPolicy { adaptive, exact_even };

std::string to_string(Statistic statistic);
Statistic statistic_from_string(const std::string& name);

struct ExperimentSpec {
  RandomSetModel model = BernoulliSelector{};
  double p = 2.0;
  Statistic statistic = Statistic::set_size;
  int trials = 1;
  std::uint64_t master_seed = 0;
  NormPolicy norm_policy = NormPolicy::adaptive;
  double norm_rel_tol = 1e-9;
  OptimizerConfig optimizer;
  std::vector<std::int64_t> targets;  // selector_block_sum only
  /// Worker threads; 0 reads MAJORANT_LAB_THREADS, then all cores.
  unsigned threads = 0;
};

void validate(const ExperimentSpec& spec);

struct TrialRecord {
  std::uint64_t trial = 0;
  double value = 0.0;
  std::string norm_method;
  Grid grid;
  bool failed = false;
};

struct ExperimentReport {
  nlohmann::json spec_echo;
  std::vector<TrialRecord> per_trial;
  double mean = 0.0;
  double var = 0.0;  // sample variance (n - 1 denominator)
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
  double ci99_halfwidth = 0.0;
  std::optional<double> fitted_constant;
  std::vector<std::string> flags;
  double runtime_seconds = 0.0;
  std::size_t excluded_trials = 0;
  nlohmann::json extra = nlohmann::json::object();

  /// Values of trials that did not fail, in trial order.
  std::vector<double> values() const;
};

/// Runs trials t = 0..trials-1, trial t sampling with stream id t. The
/// report is independent of thread count and scheduling. Trials whose norm
/// does not converge are excluded when they are under 1% of the total;
/// otherwise ExperimentFailure is thrown.
ExperimentReport run_trials(const ExperimentSpec& spec);

/// Worker count for `requested` (0 = environment, then hardware).
unsigned resolve_threads(unsigned requested);

// Summary statistics used by the report; exposed for tests.
struct Summary {
  double mean = 0.0;
  double var = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
  double ci99_halfwidth = 0.0;
};
Summary summarize(const std::vector<double>& values);
/// Linear-interpolation quantile of sorted data (Hyndman-Fan type 7).
double quantile_sorted(const std::vector<double>& sorted, double probability);
/// Least-squares slope of y against x, with its standard error.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Checks of the quantitative bounds.

struct ChernoffCheck {
  double probability = 0.0;   // fraction of trials with |S| in [tau N / 2, 2 tau N]
  double standard_error = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  ExperimentReport report;
};

/// Requires tau N >= 8.
ChernoffCheck check_chernoff(const BernoulliSelector& model, int trials, std::uint64_t seed,
                             unsigned threads = 0);

struct LowerBoundCheck {
  double fitted_constant = 0.0;  // MC mean of I_{p,N} over the bound expression
  double bound = 0.0;
  double mean = 0.0;
  double standard_error = 0.0;   // of the mean of I_{p,N}
  ExperimentReport report;
};

/// Bound tau^p N^{p - sum alpha} + (tau N)^{p/2} for Bernoulli selectors,
/// optionally curve-embedded. The statistic is forced to I_{p,N}.
LowerBoundCheck check_lower_bound_product(ExperimentSpec spec);

/// Bound L^{p-1} / s + L^{p/2} for the perturbed progression.
LowerBoundCheck check_lower_bound_pap(const PerturbedAP& model, double p, int trials,
                                      std::uint64_t seed,
                                      NormPolicy policy = NormPolicy::exact_even,
                                      unsigned threads = 0);

struct SelectorMomentCheck {
  double moment_root = 0.0;      // (E X^q)^{1/q}, X = sum_{i in A} 1_S(i)
  double standard_error = 0.0;   // delta-method error of moment_root
  double bound = 0.0;            // l/s + q / log(2 + q s / l)
  double fitted_constant = 0.0;  // moment_root / bound
  ExperimentReport report;
};

/// `targets` must hit each block at most once.
SelectorMomentCheck check_selector_moment(const BlockUniform& model,
                                          const std::vector<std::int64_t>& targets, double q,
                                          int trials, std::uint64_t seed, unsigned threads = 0);

/// The model with its scale parameter replaced by n.
RandomSetModel with_scale(const RandomSetModel& model, std::int64_t n);

struct ScalingPoint {
  std::int64_t n = 0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
  double mean = 0.0;
};

struct ScalingStudy {
  double slope = 0.0;  // of log(q95 ratio) against log N
  double slope_stderr = 0.0;
  std::vector<ScalingPoint> points;
  std::vector<ExperimentReport> reports;
};

/// Majorant ratio quantiles over an increasing list of at least three scales.
ScalingStudy majorant_scaling_study(const RandomSetModel& family,
                                    const std::vector<std::int64_t>& scales, double p,
                                    int trials, std::uint64_t seed,
                                    const OptimizerConfig& cfg = {}, unsigned threads = 0);

struct ProbabilityCurve {
  std::vector<double> thresholds;
  std::vector<double> probabilities;  // P(ratio >= threshold), same trial set
  ExperimentReport report;
};

ProbabilityCurve probability_estimate(const RandomSetModel& model, double p,
                                      const std::vector<double>& thresholds, int trials,
                                      std::uint64_t seed, const OptimizerConfig& cfg = {},
                                      unsigned threads = 0);

/// Report on K_p(omega)^p for PerturbedAP or BlockUniform models. Flags
/// `lower_estimate_of_sup` always and `non_critical_exponent` when p is not
/// the critical exponent of the model.
ExperimentReport lambda_expectation(const RandomSetModel& model, double p,
                                    const OptimizerConfig& cfg, int trials, std::uint64_t seed,
                                    unsigned threads = 0);

// ---------------------------------------------------------------------------
// Serialization.

nlohmann::json to_json(const RandomSetModel& model);
nlohmann::json to_json(const OptimizerConfig& cfg);
nlohmann::json to_json(const ExperimentSpec& spec);
nlohmann::json to_json(const ExperimentReport& report);
/// Header "trial,seed_stream,statistic_value,norm_method,grid".
std::string per_trial_csv(const ExperimentReport& report);
std::string format_grid(const Grid& grid);

}  // namespace majorant_lab
