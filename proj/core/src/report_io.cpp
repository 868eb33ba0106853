#include <cmath>
#include <cstdio>
#include <sstream>

#include "majorant_lab/montecarlo.hpp"

namespace majorant_lab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

nlohmann::json number_or_null(double value) {
  return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

nlohmann::json base_to_json(const BaseModel& base) {
  return std::visit(
      Overloaded{
          [](const BernoulliSelector& m) {
            return nlohmann::json{{"model", "bernoulli"}, {"n", m.n}, {"delta", m.delta}};
          },
          [](const PerturbedAP& m) {
            return nlohmann::json{{"model", "perturbed_ap"}, {"n", m.n}, {"l", m.l},
                                  {"s", m.s},                {"a", m.a}, {"b", m.b}};
          },
          [](const BlockUniform& m) {
            return nlohmann::json{{"model", "block_uniform"}, {"n", m.n}, {"l", m.l}};
          },
          [](const NestedBlock& m) {
            return nlohmann::json{{"model", "nested_block"}, {"n", m.n}, {"p", m.p}, {"p1", m.p1}};
          },
          [](const CorrelatedDyadic& m) {
            return nlohmann::json{{"model", "correlated_dyadic"}, {"n", m.n}, {"delta", m.delta}};
          },
          [](const FullRange& m) { return nlohmann::json{{"model", "full_range"}, {"n", m.n}}; },
      },
      base);
}

}  // namespace

std::string format_grid(const Grid& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) out += 'x';
    out += std::to_string(grid[i]);
  }
  return out;
}

nlohmann::json to_json(const RandomSetModel& model) {
  if (const auto* curve = std::get_if<CurveEmbedding>(&model)) {
    return {{"model", "curve"}, {"kind", to_string(curve->kind)}, {"base", base_to_json(curve->base)}};
  }
  return std::visit(
      Overloaded{
          [](const CurveEmbedding&) { return nlohmann::json(); },
          [](const auto& m) { return base_to_json(BaseModel{m}); },
      },
      model);
}

nlohmann::json to_json(const OptimizerConfig& cfg) {
  return {{"restarts", cfg.restarts},
          {"max_iters", cfg.max_iters},
          {"rel_tol", cfg.rel_tol},
          {"norm_rel_tol", cfg.norm_rel_tol},
          {"working_rel_tol", cfg.working_rel_tol},
          {"seed", cfg.seed},
          {"max_grid_points", cfg.max_grid_points}};
}

nlohmann::json to_json(const ExperimentSpec& spec) {
  nlohmann::json out{{"model", to_json(spec.model)},
                     {"p", spec.p},
                     {"statistic", to_string(spec.statistic)},
                     {"trials", spec.trials},
                     {"master_seed", spec.master_seed},
                     {"norm_policy", spec.norm_policy == NormPolicy::exact_even ? "exact_even"
                                                                                : "adaptive"},
                     {"norm_rel_tol", spec.norm_rel_tol}};
  if (spec.statistic == Statistic::majorant_ratio ||
      spec.statistic == Statistic::lambda_k_to_the_p) {
    out["optimizer"] = to_json(spec.optimizer);
  }
  if (spec.statistic == Statistic::selector_block_sum) out["targets"] = spec.targets;
  return out;
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json per_trial = nlohmann::json::array();
  for (const auto& r : report.per_trial) {
    per_trial.push_back({{"trial", r.trial},
                         {"seed_stream", r.trial},
                         {"statistic_value", number_or_null(r.value)},
                         {"norm_method", r.norm_method},
                         {"grid", format_grid(r.grid)}});
  }
  return {{"spec_echo", report.spec_echo},
          {"per_trial", per_trial},
          {"mean", number_or_null(report.mean)},
          {"var", number_or_null(report.var)},
          {"q05", number_or_null(report.q05)},
          {"q50", number_or_null(report.q50)},
          {"q95", number_or_null(report.q95)},
          {"ci99_halfwidth", number_or_null(report.ci99_halfwidth)},
          {"fitted_constant", report.fitted_constant ? number_or_null(*report.fitted_constant)
                                                     : nlohmann::json(nullptr)},
          {"flags", report.flags},
          {"runtime_seconds", report.runtime_seconds},
          {"excluded_trials", report.excluded_trials},
          {"extra", report.extra}};
}

std::string per_trial_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "trial,seed_stream,statistic_value,norm_method,grid\n";
  for (const auto& r : report.per_trial) {
    os << r.trial << ',' << r.trial << ',' << format_double(r.value) << ',' << r.norm_method << ','
       << format_grid(r.grid) << '\n';
  }
  return os.str();
}

}  // namespace majorant_lab
