#include <algorithm>
#include <cmath>

#include "majorant_lab/error.hpp"
#include "majorant_lab/montecarlo.hpp"

namespace majorant_lab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_bernoulli_family(const RandomSetModel& model) {
  if (std::holds_alternative<BernoulliSelector>(model)) return true;
  if (const auto* curve = std::get_if<CurveEmbedding>(&model)) {
    return std::holds_alternative<BernoulliSelector>(curve->base);
  }
  return false;
}

double standard_error_of_mean(const ExperimentReport& report) {
  const auto n = static_cast<double>(report.values().size());
  return n > 0 ? std::sqrt(report.var / n) : 0.0;
}

// Worst-case grid a trial of `spec` could need, from the model's ambient box.
std::size_t ambient_grid_points(const ExperimentSpec& spec) {
  const auto n = scale_of(spec.model);
  std::vector<double> exponents;
  if (const auto* curve = std::get_if<CurveEmbedding>(&spec.model)) {
    switch (curve->kind) {
      case CurveKind::squares: exponents = {2.0}; break;
      case CurveKind::parabola: exponents = {1.0, 2.0}; break;
      case CurveKind::paraboloid: exponents = {0.5, 0.5, 1.0}; break;
    }
  } else {
    exponents = {1.0};
  }
  const BoxBounds box{n, exponents};
  const double factor = is_even_integer(spec.p) ? spec.p / 2.0 : 2.0;
  double points = 1.0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    points *= factor * static_cast<double>(box.upper(i) - 1) + 1.0;
  }
  return static_cast<std::size_t>(std::min(points, 1e18));
}

}  // namespace

ChernoffCheck check_chernoff(const BernoulliSelector& model, int trials, std::uint64_t seed,
                             unsigned threads) {
  validate(RandomSetModel{model});
  const double expected = model.tau() * static_cast<double>(model.n);
  if (expected < 8.0) throw ValidationError("delta", "tau N >= 8 required, got " + std::to_string(expected));

  ExperimentSpec spec;
  spec.model = model;
  spec.statistic = Statistic::set_size;
  spec.trials = trials;
  spec.master_seed = seed;
  spec.threads = threads;

  ChernoffCheck out;
  out.report = run_trials(spec);
  out.window_lo = expected / 2.0;
  out.window_hi = 2.0 * expected;
  const auto values = out.report.values();
  const auto inside = std::count_if(values.begin(), values.end(), [&](double size) {
    return size >= out.window_lo && size <= out.window_hi;
  });
  const auto count = static_cast<double>(values.size());
  out.probability = static_cast<double>(inside) / count;
  out.standard_error = std::sqrt(out.probability * (1.0 - out.probability) / count);
  out.report.extra = {{"empirical_probability", out.probability},
                      {"standard_error", out.standard_error},
                      {"window", {out.window_lo, out.window_hi}},
                      {"tau_n", expected}};
  return out;
}

LowerBoundCheck check_lower_bound_product(ExperimentSpec spec) {
  if (!is_bernoulli_family(spec.model)) {
    throw ValidationError("model", "lower-bound-product needs a Bernoulli selector model");
  }
  spec.statistic = Statistic::i_pn;
  validate(spec);
  if (ambient_grid_points(spec) > spec.optimizer.max_grid_points) {
    throw BudgetError("ambient quadrature grid for d = " +
                      std::to_string(dimension_of(spec.model)) + " exceeds the grid budget");
  }
  const double tau = selector_mean(spec.model);
  const auto n = static_cast<double>(scale_of(spec.model));
  const double p = spec.p;
  const double bound = std::pow(tau, p) * std::pow(n, p - box_exponent_sum(spec.model)) +
                       std::pow(tau * n, p / 2.0);

  LowerBoundCheck out;
  out.report = run_trials(spec);
  out.bound = bound;
  out.mean = out.report.mean;
  out.standard_error = standard_error_of_mean(out.report);
  out.fitted_constant = out.mean / bound;
  out.report.fitted_constant = out.fitted_constant;
  out.report.extra = {{"bound", bound}, {"standard_error", out.standard_error}};
  return out;
}

LowerBoundCheck check_lower_bound_pap(const PerturbedAP& model, double p, int trials,
                                      std::uint64_t seed, NormPolicy policy, unsigned threads) {
  ExperimentSpec spec;
  spec.model = model;
  spec.p = p;
  spec.statistic = Statistic::i_pn;
  spec.trials = trials;
  spec.master_seed = seed;
  spec.norm_policy = is_even_integer(p) ? policy : NormPolicy::adaptive;
  spec.threads = threads;
  validate(spec);

  const auto l = static_cast<double>(model.l);
  const auto s = static_cast<double>(model.s);
  const double bound = std::pow(l, p - 1.0) / s + std::pow(l, p / 2.0);

  LowerBoundCheck out;
  out.report = run_trials(spec);
  out.bound = bound;
  out.mean = out.report.mean;
  out.standard_error = standard_error_of_mean(out.report);
  out.fitted_constant = out.mean / bound;
  out.report.fitted_constant = out.fitted_constant;
  out.report.extra = {{"bound", bound}, {"standard_error", out.standard_error}};
  return out;
}

SelectorMomentCheck check_selector_moment(const BlockUniform& model,
                                          const std::vector<std::int64_t>& targets, double q,
                                          int trials, std::uint64_t seed, unsigned threads) {
  validate(RandomSetModel{model});
  if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("q", "must be >= 1");
  if (targets.empty()) throw ValidationError("targets", "must be nonempty");
  std::vector<int> per_block(static_cast<std::size_t>(model.l), 0);
  for (auto i : targets) {
    if (i < 1 || i > model.n) throw ValidationError("targets", "element outside [1, N]");
    const auto block = std::min((i - 1) / model.block_size(), model.l - 1);
    if (++per_block[static_cast<std::size_t>(block)] > 1) {
      throw ValidationError("targets", "more than one element in block " + std::to_string(block + 1));
    }
  }

  ExperimentSpec spec;
  spec.model = model;
  spec.statistic = Statistic::selector_block_sum;
  spec.targets = targets;
  spec.trials = trials;
  spec.master_seed = seed;
  spec.threads = threads;

  SelectorMomentCheck out;
  out.report = run_trials(spec);
  const auto values = out.report.values();
  std::vector<double> powered;
  powered.reserve(values.size());
  for (double x : values) powered.push_back(std::pow(x, q));
  const auto moment = summarize(powered);
  out.moment_root = std::pow(moment.mean, 1.0 / q);
  const double se_moment = std::sqrt(moment.var / static_cast<double>(powered.size()));
  out.standard_error =
      moment.mean > 0.0 ? std::pow(moment.mean, 1.0 / q - 1.0) * se_moment / q : 0.0;

  const auto l = static_cast<double>(targets.size());
  const auto s = static_cast<double>(model.block_size());
  out.bound = l / s + q / std::log(2.0 + q * s / l);
  out.fitted_constant = out.moment_root / out.bound;
  out.report.fitted_constant = out.fitted_constant;
  out.report.extra = {{"q", q},
                      {"moment_root", out.moment_root},
                      {"standard_error", out.standard_error},
                      {"bound", out.bound}};
  return out;
}

RandomSetModel with_scale(const RandomSetModel& model, std::int64_t n) {
  auto rescale_base = [n](BaseModel base) {
    std::visit([n](auto& m) { m.n = n; }, base);
    return base;
  };
  return std::visit(Overloaded{
                        [&](const CurveEmbedding& c) -> RandomSetModel {
                          return CurveEmbedding{rescale_base(c.base), c.kind};
                        },
                        [&](auto m) -> RandomSetModel {
                          m.n = n;
                          return m;
                        },
                    },
                    model);
}

ScalingStudy majorant_scaling_study(const RandomSetModel& family,
                                    const std::vector<std::int64_t>& scales, double p,
                                    int trials, std::uint64_t seed, const OptimizerConfig& cfg,
                                    unsigned threads) {
  if (scales.size() < 3) throw ValidationError("n_list", "needs at least three scales");
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (scales[i] <= scales[i - 1]) throw ValidationError("n_list", "must be increasing");
  }
  ScalingStudy out;
  std::vector<double> log_n, log_q95;
  for (auto n : scales) {
    ExperimentSpec spec;
    spec.model = with_scale(family, n);
    spec.p = p;
    spec.statistic = Statistic::majorant_ratio;
    spec.trials = trials;
    spec.master_seed = derive_seed(seed, static_cast<std::uint64_t>(n));
    spec.optimizer = cfg;
    spec.threads = threads;
    auto report = run_trials(spec);
    out.points.push_back({n, report.q05, report.q50, report.q95, report.mean});
    log_n.push_back(std::log(static_cast<double>(n)));
    log_q95.push_back(std::log(report.q95));
    out.reports.push_back(std::move(report));
  }
  const auto fit = least_squares(log_n, log_q95);
  out.slope = fit.slope;
  out.slope_stderr = fit.slope_stderr;
  return out;
}

ProbabilityCurve probability_estimate(const RandomSetModel& model, double p,
                                      const std::vector<double>& thresholds, int trials,
                                      std::uint64_t seed, const OptimizerConfig& cfg,
                                      unsigned threads) {
  if (thresholds.empty()) throw ValidationError("thresholds", "must be nonempty");
  for (double c : thresholds) {
    if (!(c > 0.0)) throw ValidationError("thresholds", "must be positive");
  }
  ExperimentSpec spec;
  spec.model = model;
  spec.p = p;
  spec.statistic = Statistic::majorant_ratio;
  spec.trials = trials;
  spec.master_seed = seed;
  spec.optimizer = cfg;
  spec.threads = threads;

  ProbabilityCurve out;
  out.report = run_trials(spec);
  out.thresholds = thresholds;
  const auto values = out.report.values();
  for (double c : thresholds) {
    const auto hits = std::count_if(values.begin(), values.end(), [c](double r) { return r >= c; });
    out.probabilities.push_back(static_cast<double>(hits) / static_cast<double>(values.size()));
  }
  out.report.extra = {{"thresholds", out.thresholds}, {"probabilities", out.probabilities}};
  return out;
}

ExperimentReport lambda_expectation(const RandomSetModel& model, double p,
                                    const OptimizerConfig& cfg, int trials, std::uint64_t seed,
                                    unsigned threads) {
  double critical = 0.0;
  if (const auto* ap = std::get_if<PerturbedAP>(&model)) {
    critical = ap->critical_exponent();
  } else if (const auto* block = std::get_if<BlockUniform>(&model)) {
    critical = block->critical_exponent();
  } else {
    throw ValidationError("model", "lambda expectation needs perturbed_ap or block_uniform");
  }
  ExperimentSpec spec;
  spec.model = model;
  spec.p = p;
  spec.statistic = Statistic::lambda_k_to_the_p;
  spec.trials = trials;
  spec.master_seed = seed;
  spec.optimizer = cfg;
  spec.threads = threads;

  auto report = run_trials(spec);
  if (!(std::abs(p - critical) <= 1e-6 * p)) report.flags.push_back("non_critical_exponent");
  report.extra = {{"critical_exponent", std::isfinite(critical) ? nlohmann::json(critical)
                                                                : nlohmann::json(nullptr)}};
  return report;
}

}  // namespace majorant_lab
