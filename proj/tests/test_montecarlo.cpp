#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "majorant_lab/error.hpp"
#include "majorant_lab/montecarlo.hpp"
#include "oracles.hpp"

namespace majorant_lab {
namespace {

ExperimentSpec set_size_spec(std::int64_t n, double delta, int trials, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.model = BernoulliSelector{n, delta};
  spec.statistic = Statistic::set_size;
  spec.trials = trials;
  spec.master_seed = seed;
  return spec;
}

TEST(StatsTest, SummaryAndQuantiles) {
  const auto summary = summarize({4.0, 1.0, 3.0, 2.0, 5.0});
  EXPECT_DOUBLE_EQ(summary.mean, 3.0);
  EXPECT_DOUBLE_EQ(summary.var, 2.5);
  EXPECT_DOUBLE_EQ(summary.q50, 3.0);
  EXPECT_DOUBLE_EQ(summary.q05, 1.2);
  EXPECT_DOUBLE_EQ(summary.q95, 4.8);
  EXPECT_NEAR(summary.ci99_halfwidth, 2.5758293035489004 * std::sqrt(0.5), 1e-15);
  EXPECT_DOUBLE_EQ(quantile_sorted({7.0}, 0.95), 7.0);

  const auto fit = least_squares({1.0, 2.0, 3.0, 4.0}, {3.0, 5.0, 7.0, 9.0});
  EXPECT_NEAR(fit.slope, 2.0, 1e-14);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-14);
  EXPECT_NEAR(fit.slope_stderr, 0.0, 1e-14);
  EXPECT_THROW(least_squares({1.0}, {1.0}), ValidationError);
}

TEST(RunTrialsTest, SetSizeMean) {
  const auto report = run_trials(set_size_spec(1000, 0.5, 10000, 1));
  const double tau_n = std::sqrt(1000.0);
  EXPECT_LE(std::abs(report.mean - tau_n), report.ci99_halfwidth);
  EXPECT_LE(report.q05, report.q50);
  EXPECT_LE(report.q50, report.q95);
  EXPECT_GE(report.ci99_halfwidth, 0.0);
  EXPECT_EQ(report.per_trial.size(), 10000u);
}

TEST(RunTrialsTest, RejectsInvalidSpecs) {
  auto spec = set_size_spec(100, 0.5, 0, 1);
  EXPECT_THROW(run_trials(spec), ValidationError);
  spec.trials = 10;
  spec.p = 1.5;
  EXPECT_THROW(run_trials(spec), ValidationError);
  spec.p = 3.0;
  spec.norm_policy = NormPolicy::exact_even;
  EXPECT_THROW(run_trials(spec), ValidationError);
  spec = set_size_spec(100, 0.5, 10, 1);
  spec.statistic = Statistic::selector_block_sum;
  EXPECT_THROW(run_trials(spec), ValidationError);
  spec.model = CurveEmbedding{BernoulliSelector{10, 0.5}, CurveKind::parabola};
  spec.targets = {1};
  EXPECT_THROW(run_trials(spec), ValidationError);
}

TEST(RunTrialsTest, ParsevalShortcutIsExact) {
  for (const RandomSetModel& model :
       {RandomSetModel{BernoulliSelector{500, 0.3}}, RandomSetModel{PerturbedAP{200, 12, 3, 15, 4}},
        RandomSetModel{CurveEmbedding{BernoulliSelector{30, 0.2}, CurveKind::parabola}}}) {
    ExperimentSpec spec;
    spec.model = model;
    spec.p = 2.0;
    spec.statistic = Statistic::i_pn;
    spec.trials = 50;
    spec.master_seed = 4;
    const auto norms = run_trials(spec);
    spec.statistic = Statistic::set_size;
    const auto sizes = run_trials(spec);
    for (std::size_t t = 0; t < 50; ++t) {
      EXPECT_EQ(norms.per_trial[t].value, sizes.per_trial[t].value);
      EXPECT_EQ(norms.per_trial[t].norm_method, sizes.per_trial[t].value > 0 ? "parseval" : "empty");
    }
    EXPECT_EQ(norms.mean, sizes.mean);
  }
}

TEST(RunTrialsTest, ReproducibleAndScheduleIndependent) {
  ExperimentSpec spec;
  spec.model = BernoulliSelector{200, 0.4};
  spec.p = 3.0;
  spec.statistic = Statistic::majorant_ratio;
  spec.trials = 6;
  spec.master_seed = 2718;
  spec.optimizer.restarts = 2;
  spec.threads = 1;
  auto a = run_trials(spec);
  spec.threads = 3;
  auto b = run_trials(spec);
  auto c = run_trials(spec);
  a.runtime_seconds = b.runtime_seconds = c.runtime_seconds = 0.0;
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(to_json(b).dump(), to_json(c).dump());
  EXPECT_EQ(per_trial_csv(a), per_trial_csv(b));
  for (const auto& record : a.per_trial) EXPECT_GE(record.value, 1.0 - 1e-9);
  EXPECT_NE(std::find(a.flags.begin(), a.flags.end(), "lower_estimate_of_sup"), a.flags.end());
}

TEST(RunTrialsTest, EmptySetsAreFlagged) {
  ExperimentSpec spec;
  spec.model = BernoulliSelector{20, 0.9};  // tau N ~ 1.35
  spec.p = 3.0;
  spec.statistic = Statistic::majorant_ratio;
  spec.trials = 40;
  spec.optimizer.restarts = 1;
  const auto report = run_trials(spec);
  EXPECT_NE(std::find(report.flags.begin(), report.flags.end(), "empty_sets_present"),
            report.flags.end());
  for (const auto& record : report.per_trial) {
    if (record.norm_method == "empty") EXPECT_EQ(record.value, 1.0);
  }
}

TEST(RunTrialsTest, NonConvergenceFailsLoudly) {
  ExperimentSpec spec;
  spec.model = BernoulliSelector{300, 0.2};
  spec.p = 3.0;
  spec.statistic = Statistic::all_ones_norm;
  spec.trials = 5;
  spec.norm_rel_tol = 1e-15;
  spec.optimizer.max_grid_points = 4096;
  EXPECT_THROW(run_trials(spec), ExperimentFailure);
}

TEST(RunTrialsTest, ThreadResolution) {
  EXPECT_EQ(resolve_threads(3), 3u);
  ::setenv("MAJORANT_LAB_THREADS", "2", 1);
  EXPECT_EQ(resolve_threads(0), 2u);
  ::setenv("MAJORANT_LAB_THREADS", "0", 1);
  EXPECT_GE(resolve_threads(0), 1u);
  ::unsetenv("MAJORANT_LAB_THREADS");
}

TEST(SerializationTest, ReportShape) {
  auto spec = set_size_spec(64, 0.5, 3, 9);
  const auto report = run_trials(spec);
  const auto json = to_json(report);
  for (const char* key : {"spec_echo", "per_trial", "mean", "var", "q05", "q50", "q95",
                          "ci99_halfwidth", "fitted_constant", "flags", "runtime_seconds"}) {
    EXPECT_TRUE(json.contains(key)) << key;
  }
  EXPECT_EQ(json["spec_echo"]["model"]["model"], "bernoulli");
  EXPECT_EQ(json["spec_echo"]["master_seed"], 9);
  EXPECT_EQ(json["per_trial"].size(), 3u);
  const auto csv = per_trial_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "trial,seed_stream,statistic_value,norm_method,grid");
  EXPECT_EQ(format_grid({4, 8}), "4x8");
}

TEST(ChernoffTest, DeskScaleAgainstBinomialOracle) {
  const BernoulliSelector model{4096, 0.5};
  const auto check = check_chernoff(model, 2000, 1);
  EXPECT_GE(check.probability, 0.99);
  const double exact = oracle::binomial_window_probability(4096, 1.0 / 64.0, 32.0, 128.0);
  const double se = std::sqrt(exact * (1.0 - exact) / 2000.0);
  EXPECT_LE(std::abs(check.probability - exact), 3.0 * se);
  EXPECT_TRUE(check.report.extra.contains("empirical_probability"));
}

TEST(ChernoffTest, EdgeCases) {
  EXPECT_EQ(check_chernoff(BernoulliSelector{100, 0.0}, 20, 3).probability, 1.0);
  EXPECT_THROW(check_chernoff(BernoulliSelector{49, 0.5}, 20, 3), ValidationError);  // tau N = 7
}

TEST(LowerBoundProductTest, PTwoExactRatio) {
  ExperimentSpec spec;
  spec.model = BernoulliSelector{1024, 0.5};
  spec.p = 2.0;
  spec.trials = 400;
  spec.master_seed = 5;
  const auto check = check_lower_bound_product(spec);
  const double tau = 1.0 / 32.0;
  const double exact = tau * 1024.0 / (tau * tau * 1024.0 + tau * 1024.0);
  EXPECT_NEAR(check.fitted_constant, exact, 3.0 * check.standard_error / check.bound);
}

TEST(LowerBoundProductTest, PFourMatchesEnergyOracle) {
  ExperimentSpec spec;
  spec.model = BernoulliSelector{1024, 0.5};
  spec.p = 4.0;
  spec.trials = 500;
  spec.master_seed = 6;
  spec.norm_policy = NormPolicy::exact_even;
  const auto check = check_lower_bound_product(spec);
  EXPECT_GE(check.fitted_constant, 0.1);
  EXPECT_LE(check.fitted_constant, 10.0);
  EXPECT_NEAR(check.mean, oracle::expected_bernoulli_energy(1024, 1.0 / 32.0),
              4.0 * check.standard_error);
}

TEST(LowerBoundProductTest, ParabolaEmbedding) {
  ExperimentSpec spec;
  spec.model = CurveEmbedding{BernoulliSelector{64, 0.5}, CurveKind::parabola};
  spec.p = 4.0;
  spec.trials = 200;
  spec.master_seed = 7;
  spec.norm_policy = NormPolicy::exact_even;
  const auto check = check_lower_bound_product(spec);
  EXPECT_GE(check.fitted_constant, 0.05);
  EXPECT_LE(check.fitted_constant, 20.0);
  // Points of a parabola only have trivial quadruples: E[2|S|^2 - |S|].
  const double tau = 1.0 / 8.0, n = 64.0;
  const double exact = 2.0 * (n * tau * (1.0 - tau) + n * n * tau * tau) - n * tau;
  EXPECT_NEAR(check.mean, exact, 4.0 * check.standard_error);
}

TEST(LowerBoundProductTest, RejectsOtherModelsAndBudget) {
  ExperimentSpec spec;
  spec.model = BlockUniform{64, 8};
  spec.p = 4.0;
  EXPECT_THROW(check_lower_bound_product(spec), ValidationError);
  spec.model = CurveEmbedding{BernoulliSelector{1 << 12, 0.5}, CurveKind::parabola};
  EXPECT_THROW(check_lower_bound_product(spec), BudgetError);
}

TEST(LowerBoundPapTest, PTwoIsExactPerTrial) {
  const PerturbedAP model{1000, 32, 8, 20, 5};
  const auto check = check_lower_bound_pap(model, 2.0, 30, 1);
  for (const auto& record : check.report.per_trial) EXPECT_EQ(record.value, 32.0);
  EXPECT_DOUBLE_EQ(check.fitted_constant, 8.0 / 9.0);
  const auto single = check_lower_bound_pap(PerturbedAP{30, 1, 4, 10, 3}, 5.0, 10, 1);
  for (const auto& record : single.report.per_trial) EXPECT_NEAR(record.value, 1.0, 1e-12);
  EXPECT_NEAR(single.fitted_constant, 1.0 / (1.0 / 4.0 + 1.0), 1e-12);
}

TEST(LowerBoundPapTest, PFourMatchesEnumeratedOracle) {
  const PerturbedAP model{60, 4, 2, 10, 3};
  const auto check = check_lower_bound_pap(model, 4.0, 3000, 2);
  EXPECT_NEAR(check.mean, oracle::expected_perturbed_ap_energy(4, 2, 10, 3, 2),
              4.0 * check.standard_error);
  const auto six = check_lower_bound_pap(model, 6.0, 3000, 2);
  EXPECT_NEAR(six.mean, oracle::expected_perturbed_ap_energy(4, 2, 10, 3, 3), 4.0 * six.standard_error);
}

TEST(SelectorMomentTest, OracleAgreement) {
  struct Case {
    std::int64_t l, s;
    double q;
  };
  for (const auto& c : {Case{64, 16, 1.0}, Case{64, 16, 4.0}, Case{16, 16, 1.0}, Case{20, 8, 3.0}}) {
    std::vector<std::int64_t> targets;
    for (std::int64_t j = 0; j < c.l; ++j) targets.push_back(j * c.s + 1);
    const BlockUniform model{c.l * c.s, c.l};
    const auto check = check_selector_moment(model, targets, c.q, 5000, 11);
    const double exact =
        std::pow(oracle::binomial_moment(c.l, 1.0 / static_cast<double>(c.s), c.q), 1.0 / c.q);
    EXPECT_NEAR(check.moment_root, exact, 3.0 * check.standard_error) << c.l << " " << c.s << " " << c.q;
    if (c.q == 1.0) EXPECT_LT(check.fitted_constant, 1.0);
  }
}

TEST(SelectorMomentTest, WithinFivePercentAtQEight) {
  std::vector<std::int64_t> targets;
  for (std::int64_t j = 0; j < 64; ++j) targets.push_back(j * 16 + 3);
  const auto check = check_selector_moment(BlockUniform{1024, 64}, targets, 8.0, 5000, 12);
  const double exact = std::pow(oracle::binomial_moment(64, 1.0 / 16.0, 8.0), 1.0 / 8.0);
  EXPECT_NEAR(check.moment_root / exact, 1.0, 0.05);
}

TEST(SelectorMomentTest, RejectsBadTargets) {
  const BlockUniform model{64, 4};
  EXPECT_THROW(check_selector_moment(model, {1, 2}, 2.0, 10, 1), ValidationError);
  EXPECT_THROW(check_selector_moment(model, {0}, 2.0, 10, 1), ValidationError);
  EXPECT_THROW(check_selector_moment(model, {1}, 0.5, 10, 1), ValidationError);
}

TEST(ScalingStudyTest, EvenPIsFlat) {
  OptimizerConfig cfg;
  cfg.restarts = 2;
  const auto study = majorant_scaling_study(BernoulliSelector{0, 0.5}, {32, 64, 128}, 4.0, 5, 3, cfg);
  for (const auto& point : study.points) EXPECT_NEAR(point.q95, 1.0, 1e-6);
  EXPECT_NEAR(study.slope, 0.0, 1e-6);
  EXPECT_THROW(majorant_scaling_study(BernoulliSelector{0, 0.5}, {64}, 4.0, 5, 3, cfg), ValidationError);
  EXPECT_THROW(majorant_scaling_study(BernoulliSelector{0, 0.5}, {64, 32, 128}, 4.0, 5, 3, cfg),
               ValidationError);
}

TEST(ProbabilityTest, ThresholdExamples) {
  OptimizerConfig cfg;
  cfg.restarts = 2;
  const BernoulliSelector model{256, 0.5};
  const auto trivial = probability_estimate(model, 3.0, {1.0 - 1e-9}, 10, 4, cfg);
  EXPECT_EQ(trivial.probabilities[0], 1.0);
  const auto even = probability_estimate(model, 4.0, {1.01}, 10, 4, cfg);
  EXPECT_EQ(even.probabilities[0], 0.0);
  const auto sweep = probability_estimate(BernoulliSelector{512, 0.5}, 3.0, {1.0, 1.005, 1.01, 1.1, 1.5, 2.0}, 10, 4, cfg);
  for (std::size_t i = 1; i < sweep.probabilities.size(); ++i) {
    EXPECT_LE(sweep.probabilities[i], sweep.probabilities[i - 1]);
  }
  EXPECT_THROW(probability_estimate(model, 3.0, {}, 10, 4, cfg), ValidationError);
  EXPECT_THROW(probability_estimate(model, 3.0, {0.0}, 10, 4, cfg), ValidationError);
}

TEST(LambdaExpectationTest, DegenerateAndFlags) {
  const auto single = lambda_expectation(BlockUniform{5, 1}, 4.0, OptimizerConfig{}, 10, 1);
  for (const auto& record : single.per_trial) EXPECT_NEAR(record.value, 1.0, 1e-12);
  const auto has = [](const ExperimentReport& r, const char* flag) {
    return std::find(r.flags.begin(), r.flags.end(), flag) != r.flags.end();
  };
  EXPECT_TRUE(has(single, "lower_estimate_of_sup"));

  OptimizerConfig cfg;
  cfg.restarts = 2;
  const auto critical = lambda_expectation(BlockUniform{256, 16}, 4.0, cfg, 4, 1);
  EXPECT_FALSE(has(critical, "non_critical_exponent"));
  EXPECT_NEAR(critical.extra["critical_exponent"].get<double>(), 4.0, 1e-12);
  const auto off = lambda_expectation(BlockUniform{256, 16}, 3.0, cfg, 4, 1);
  EXPECT_TRUE(has(off, "non_critical_exponent"));
  const auto ap = lambda_expectation(PerturbedAP{600, 16, 16, 36, 5}, 4.0, cfg, 2, 1);
  EXPECT_FALSE(has(ap, "non_critical_exponent"));
  for (double v : critical.values()) EXPECT_GE(v, 1.0 - 1e-9);
  EXPECT_THROW(lambda_expectation(BernoulliSelector{64, 0.5}, 4.0, cfg, 2, 1), ValidationError);
}

TEST(MonteCarloProperties, CiCoverage) {
  int covered = 0;
  const double tau_n = std::sqrt(1000.0);
  for (std::uint64_t meta = 0; meta < 100; ++meta) {
    const auto report = run_trials(set_size_spec(1000, 0.5, 400, 1000 + meta));
    covered += std::abs(report.mean - tau_n) <= report.ci99_halfwidth ? 1 : 0;
  }
  EXPECT_GE(covered, 95);
}

}  // namespace
}  // namespace majorant_lab
