#include "majorant_lab/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "majorant_lab/error.hpp"

namespace majorant_lab {

namespace {

struct TrialOutcome {
  TrialRecord record;
  bool empty_set = false;
  std::exception_ptr error;
};

NormResult all_ones_norm(const FrequencySet& set, const ExperimentSpec& spec) {
  auto poly = TrigPolynomial::all_ones(set);
  if (spec.p == 2.0) return parseval_norm(poly);
  if (spec.norm_policy == NormPolicy::exact_even) {
    return lp_norm_quadrature(poly, spec.p, exact_even_grid(set, spec.p));
  }
  return lp_norm_adaptive(poly, spec.p, spec.norm_rel_tol,
                          AdaptiveOptions{spec.optimizer.max_grid_points});
}

OptimizerConfig trial_optimizer(const ExperimentSpec& spec, std::uint64_t trial) {
  OptimizerConfig cfg = spec.optimizer;
  cfg.seed = derive_seed(spec.master_seed, trial);
  return cfg;
}

TrialRecord evaluate_trial(const ExperimentSpec& spec, std::uint64_t trial, bool& empty_set) {
  SeededRng rng(spec.master_seed, trial);
  const FrequencySet set = sample(spec.model, rng);
  TrialRecord record;
  record.trial = trial;
  record.norm_method = "none";
  empty_set = set.empty();

  switch (spec.statistic) {
    case Statistic::set_size:
      record.value = static_cast<double>(set.size());
      return record;
    case Statistic::selector_block_sum: {
      std::size_t hits = 0;
      for (auto target : spec.targets) hits += set.contains(Frequency{target}) ? 1 : 0;
      record.value = static_cast<double>(hits);
      return record;
    }
    default: break;
  }

  if (set.empty()) {
    // Sums over the empty set vanish; the majorant ratio 0/0 is taken as 1.
    record.norm_method = "empty";
    record.value = spec.statistic == Statistic::majorant_ratio ? 1.0 : 0.0;
    return record;
  }

  switch (spec.statistic) {
    case Statistic::i_pn:
    case Statistic::all_ones_norm: {
      const auto norm = all_ones_norm(set, spec);
      record.norm_method = std::string(to_string(norm.method));
      record.grid = norm.grid;
      record.value = spec.statistic == Statistic::i_pn
                         ? (spec.p == 2.0 ? static_cast<double>(set.size())
                                          : std::pow(norm.value, spec.p))
                         : norm.value;
      return record;
    }
    case Statistic::majorant_ratio: {
      const auto cfg = trial_optimizer(spec, trial);
      const auto numerator = majorant_numerator(set, spec.p, cfg);
      const std::vector<Complex> ones(set.size(), Complex{1.0, 0.0});
      record.value = numerator.value / reported_norm(set, ones, spec.p, cfg);
      record.norm_method = "optimizer";
      record.grid = numerator.working_grid;
      return record;
    }
    case Statistic::lambda_k_to_the_p: {
      const auto result = lambda_p_constant(set, spec.p, trial_optimizer(spec, trial));
      record.value = std::pow(result.value, spec.p);
      record.norm_method = "optimizer";
      record.grid = result.working_grid;
      return record;
    }
    default: break;
  }
  throw ValidationError("statistic", "unhandled statistic");
}

}  // namespace

std::string to_string(Statistic statistic) {
  switch (statistic) {
    case Statistic::set_size: return "set_size";
    case Statistic::i_pn: return "I_pN";
    case Statistic::all_ones_norm: return "all_ones_norm";
    case Statistic::majorant_ratio: return "majorant_ratio";
    case Statistic::lambda_k_to_the_p: return "lambda_K_to_the_p";
    case Statistic::selector_block_sum: return "selector_block_sum";
  }
  return "unknown";
}

Statistic statistic_from_string(const std::string& name) {
  for (auto s : {Statistic::set_size, Statistic::i_pn, Statistic::all_ones_norm,
                 Statistic::majorant_ratio, Statistic::lambda_k_to_the_p,
                 Statistic::selector_block_sum}) {
    if (to_string(s) == name) return s;
  }
  throw ValidationError("statistic", "unknown statistic '" + name + "'");
}

void validate(const ExperimentSpec& spec) {
  validate(spec.model);
  if (spec.trials < 1) throw ValidationError("trials", "must be >= 1");
  if (!(spec.p >= 2.0) || !std::isfinite(spec.p)) {
    throw ValidationError("p", "must be a finite real >= 2");
  }
  if (!(spec.norm_rel_tol > 0.0 && spec.norm_rel_tol < 1.0)) {
    throw ValidationError("rel_tol", "must lie in (0, 1)");
  }
  validate(spec.optimizer);
  if (spec.norm_policy == NormPolicy::exact_even && !is_even_integer(spec.p)) {
    throw ValidationError("p", "exact-even norm policy needs an even integer p");
  }
  if (spec.statistic == Statistic::selector_block_sum) {
    if (dimension_of(spec.model) != 1) {
      throw ValidationError("statistic", "selector_block_sum needs a one-dimensional model");
    }
    if (spec.targets.empty()) throw ValidationError("targets", "must be nonempty");
  }
}

std::vector<double> ExperimentReport::values() const {
  std::vector<double> out;
  out.reserve(per_trial.size());
  for (const auto& r : per_trial) {
    if (!r.failed) out.push_back(r.value);
  }
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MAJORANT_LAB_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentReport run_trials(const ExperimentSpec& spec) {
  validate(spec);
  const auto start = std::chrono::steady_clock::now();
  const auto trials = static_cast<std::size_t>(spec.trials);
  std::vector<TrialOutcome> outcomes(trials);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      auto& outcome = outcomes[t];
      try {
        outcome.record = evaluate_trial(spec, t, outcome.empty_set);
      } catch (const ConvergenceError&) {
        outcome.record.trial = t;
        outcome.record.failed = true;
        outcome.record.norm_method = "failed";
        outcome.record.value = std::nan("");
      } catch (...) {
        outcome.error = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(resolve_threads(spec.threads), trials);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  ExperimentReport report;
  report.spec_echo = to_json(spec);
  bool any_empty = false;
  for (auto& outcome : outcomes) {
    if (outcome.error) std::rethrow_exception(outcome.error);
    any_empty = any_empty || outcome.empty_set;
    if (outcome.record.failed) ++report.excluded_trials;
    report.per_trial.push_back(std::move(outcome.record));
  }
  if (report.excluded_trials * 100 >= trials && report.excluded_trials > 0) {
    throw ExperimentFailure(std::to_string(report.excluded_trials) + " of " +
                            std::to_string(trials) +
                            " trials failed to converge (allowance is under 1%)");
  }
  if (report.excluded_trials > 0) report.flags.push_back("excluded_nonconverged_trials");
  if (any_empty) report.flags.push_back("empty_sets_present");
  if (spec.statistic == Statistic::majorant_ratio ||
      spec.statistic == Statistic::lambda_k_to_the_p) {
    report.flags.push_back("lower_estimate_of_sup");
  }

  const auto summary = summarize(report.values());
  report.mean = summary.mean;
  report.var = summary.var;
  report.q05 = summary.q05;
  report.q50 = summary.q50;
  report.q95 = summary.q95;
  report.ci99_halfwidth = summary.ci99_halfwidth;
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace majorant_lab
