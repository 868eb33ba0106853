#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "majorant_lab/error.hpp"
#include "majorant_lab/montecarlo.hpp"

namespace majorant_lab::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kModels{"bernoulli",   "perturbed_ap",      "block_uniform",
                                       "nested_block", "correlated_dyadic", "full_range"};
const std::vector<std::string> kExperiments{"chernoff",         "lower-bound-product",
                                            "lower-bound-pap",  "selector-moment",
                                            "majorant-scaling", "probability",
                                            "lambda-expectation"};

struct RunConfig {
  std::string model;
  std::int64_t n = 0;
  double delta = 0.5;
  double p = 2.0;
  double p1 = 0.0;
  std::int64_t l = 0;
  std::int64_t s = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::string kind = "none";

  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string set_file;

  std::string method;
  double rel_tol = 1e-9;
  std::string grid;
  int restarts = OptimizerConfig{}.restarts;
  int max_iters = OptimizerConfig{}.max_iters;
  double opt_rel_tol = OptimizerConfig{}.rel_tol;

  std::string name;
  int trials = 1;
  double q = 1.0;
  std::vector<std::int64_t> n_list;
  std::vector<double> thresholds;
  std::vector<std::int64_t> targets;

  std::string config;
  std::string out;
  std::string format;
  bool record_runtime = false;
};

std::string flag_name(std::string parameter) {
  std::replace(parameter.begin(), parameter.end(), '_', '-');
  return "--" + parameter;
}

// ---------------------------------------------------------------------------
// Option registration.

void add_model_options(CLI::App* app, RunConfig& c) {
  app->add_option("--model", c.model, "Random set model")->check(CLI::IsMember(kModels));
  app->add_option("--n", c.n, "Scale N");
  app->add_option("--delta", c.delta, "Selector exponent, tau = N^-delta")->capture_default_str();
  app->add_option("--p1", c.p1, "Inner exponent of nested_block");
  app->add_option("--l", c.l, "Number of windows or blocks");
  app->add_option("--s", c.s, "Window half-width of perturbed_ap");
  app->add_option("--a", c.a, "Progression step of perturbed_ap");
  app->add_option("--b", c.b, "Progression offset of perturbed_ap");
  app->add_option("--kind", c.kind, "Curve embedding")
      ->check(CLI::IsMember({"none", "squares", "parabola", "paraboloid"}))
      ->capture_default_str();
  app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
}

void add_set_source(CLI::App* app, RunConfig& c) {
  add_model_options(app, c);
  app->add_option("--stream", c.stream, "Stream id used when sampling the set")
      ->capture_default_str();
  app->add_option("--set-file", c.set_file, "Read the set from a file instead of sampling");
}

void add_optimizer_options(CLI::App* app, RunConfig& c) {
  app->add_option("--restarts", c.restarts, "Optimizer restarts")->capture_default_str();
  app->add_option("--max-iters", c.max_iters, "Iterations per restart")->capture_default_str();
  app->add_option("--opt-rel-tol", c.opt_rel_tol, "Optimizer stopping tolerance")
      ->capture_default_str();
}

void add_output_options(CLI::App* app, RunConfig& c, const std::string& default_format) {
  app->add_option("--out", c.out, "Output path (default: standard output)");
  app->add_option("--format", c.format, "Output format (default " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--config", c.config, "key = value file; flags given here take precedence");
}

// ---------------------------------------------------------------------------
// Config files.

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& arg) {
    return arg == flag || arg.rfind(flag + "=", 0) == 0;
  });
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 < args.size()) return args[i + 1];
      return std::nullopt;
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Appends `--flag value` for every config entry whose flag is absent from
// the command line. Keys accepted by some other command are skipped.
std::vector<std::string> merge_config(std::vector<std::string> args, CLI::App& app) {
  const auto path = config_path(args);
  if (!path || args.empty()) return args;
  CLI::App* command = nullptr;
  for (auto* sub : app.get_subcommands({})) {
    if (sub->get_name() == args[0]) command = sub;
  }
  if (command == nullptr) return args;

  std::ifstream in(*path);
  if (!in) throw ValidationError("config", "cannot read '" + *path + "'");
  std::string line;
  int line_number = 0;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_number);
    if (eq == std::string::npos) throw ValidationError("config", where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key.find('-') != std::string::npos || key == "config") {
      throw ValidationError("config", where + ": invalid key '" + key + "'");
    }
    const std::string flag = flag_name(key);
    bool known = false;
    for (auto* sub : app.get_subcommands({})) {
      known = known || sub->get_option_no_throw(flag) != nullptr;
    }
    if (!known) throw ValidationError("config", where + ": unknown key '" + key + "'");
    const CLI::Option* option = command->get_option_no_throw(flag);
    if (option == nullptr || has_flag(args, flag)) continue;
    if (option->get_expected_max() == 0) {
      if (value == "true") {
        extra.push_back(flag);
      } else if (value != "false") {
        throw ValidationError("config", where + ": " + key + " expects true or false");
      }
      continue;
    }
    extra.push_back(flag);
    extra.push_back(value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

// ---------------------------------------------------------------------------
// Helpers shared by the commands.

RandomSetModel build_model(const RunConfig& c) {
  if (c.model.empty()) throw ValidationError("model", "required");
  BaseModel base;
  if (c.model == "bernoulli") {
    base = BernoulliSelector{c.n, c.delta};
  } else if (c.model == "perturbed_ap") {
    base = PerturbedAP{c.n, c.l, c.s, c.a, c.b};
  } else if (c.model == "block_uniform") {
    base = BlockUniform{c.n, c.l};
  } else if (c.model == "nested_block") {
    base = NestedBlock{c.n, c.p, c.p1};
  } else if (c.model == "correlated_dyadic") {
    base = CorrelatedDyadic{c.n, c.delta};
  } else {
    base = FullRange{c.n};
  }
  RandomSetModel model = std::visit([](const auto& m) -> RandomSetModel { return m; }, base);
  if (c.kind != "none") model = CurveEmbedding{base, curve_kind_from_string(c.kind)};
  validate(model);
  return model;
}

json set_to_json(const FrequencySet& set) {
  json out = json::array();
  for (const auto& n : set.freqs()) {
    if (set.dim() == 1) {
      out.push_back(n[0]);
    } else {
      out.push_back(n);
    }
  }
  return out;
}

FrequencySet load_set(const RunConfig& c, json& echo) {
  if (!c.set_file.empty()) {
    if (!c.model.empty()) throw ValidationError("set_file", "give either --set-file or --model");
    std::ifstream in(c.set_file);
    if (!in) throw ValidationError("set_file", "cannot open '" + c.set_file + "'");
    auto set = read_frequency_set(in);
    echo["set_file"] = c.set_file;
    echo["set"] = set_to_json(set);
    return set;
  }
  const auto model = build_model(c);
  echo["model"] = to_json(model);
  echo["seed"] = c.seed;
  echo["stream"] = c.stream;
  SeededRng rng(c.seed, c.stream);
  auto set = sample(model, rng);
  echo["set"] = set_to_json(set);
  return set;
}

void require_nonempty(const FrequencySet& set) {
  if (set.empty()) throw ValidationError("set", "the frequency set is empty");
}

OptimizerConfig optimizer_config(const RunConfig& c) {
  OptimizerConfig cfg;
  cfg.restarts = c.restarts;
  cfg.max_iters = c.max_iters;
  cfg.rel_tol = c.opt_rel_tol;
  cfg.norm_rel_tol = c.rel_tol;
  cfg.seed = c.seed;
  validate(cfg);
  return cfg;
}

void require_p(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw ValidationError("p", "must be a finite real >= 2");
}

Grid parse_grid(const std::string& text, std::size_t dim) {
  Grid grid;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty() || value < 1) {
      throw ValidationError("grid", "expected positive sizes joined by 'x', got '" + text + "'");
    }
    grid.push_back(static_cast<std::size_t>(value));
  }
  if (grid.size() != dim) {
    throw ValidationError("grid", "needs " + std::to_string(dim) + " dimension(s)");
  }
  return grid;
}

std::string csv_echo(const json& echo) { return "# spec_echo " + echo.dump() + "\n"; }

std::string json_text(const json& value) { return value.dump(2) + "\n"; }

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

json coeffs_to_json(const std::vector<Complex>& coeffs) {
  json out = json::array();
  for (const auto& c : coeffs) out.push_back({c.real(), c.imag()});
  return out;
}

json optimizer_echo(const RunConfig& c) {
  return {{"restarts", c.restarts},
          {"max_iters", c.max_iters},
          {"opt_rel_tol", c.opt_rel_tol},
          {"rel_tol", c.rel_tol},
          {"seed", c.seed}};
}

// ---------------------------------------------------------------------------
// Commands. Each returns the full output text.

std::string run_gen(const RunConfig& c) {
  const auto model = build_model(c);
  const json echo{{"command", "gen"},  {"model", to_json(model)}, {"seed", c.seed},
                  {"stream", c.stream}, {"format", c.format}};
  SeededRng rng(c.seed, c.stream);
  const auto set = sample(model, rng);
  if (c.format == "json") {
    return json_text({{"spec_echo", echo}, {"size", set.size()}, {"set", set_to_json(set)}});
  }
  return csv_echo(echo) + format_frequency_set(set);
}

std::string run_norm(const RunConfig& c) {
  json echo{{"command", "norm"}, {"p", c.p}, {"method", c.method}, {"format", c.format}};
  require_p(c.p);
  if (c.method == "adaptive") echo["rel_tol"] = c.rel_tol;
  if (c.method == "exact-even" && !is_even_integer(c.p)) {
    throw ValidationError("p", "exact-even needs an even integer p");
  }
  if (c.method == "parseval" && c.p != 2.0) throw ValidationError("p", "parseval needs p = 2");
  const auto set = load_set(c, echo);
  require_nonempty(set);
  const auto poly = TrigPolynomial::all_ones(set);

  NormResult result;
  if (c.method == "adaptive") {
    result = lp_norm_adaptive(poly, c.p, c.rel_tol);
  } else if (c.method == "exact-even") {
    result = lp_norm_even_exact(poly, static_cast<int>(std::llround(c.p / 2.0)));
  } else if (c.method == "parseval") {
    result = parseval_norm(poly);
  } else {
    const Grid grid = c.grid.empty() ? (is_even_integer(c.p) ? exact_even_grid(set, c.p)
                                                             : alias_free_grid(set))
                                     : parse_grid(c.grid, set.dim());
    echo["grid"] = format_grid(grid);
    result = lp_norm_quadrature(poly, c.p, grid);
  }
  const std::string method(to_string(result.method));
  if (c.format == "csv") {
    return csv_echo(echo) + "p,value,method,rel_error_estimate,grid\n" + format_number(c.p) +
           "," + format_number(result.value) + "," + method + "," +
           format_number(result.rel_error_estimate) + "," + format_grid(result.grid) + "\n";
  }
  return json_text({{"spec_echo", echo},
                    {"p", c.p},
                    {"value", result.value},
                    {"method", method},
                    {"rel_error_estimate", result.rel_error_estimate},
                    {"grid", format_grid(result.grid)}});
}

std::string run_optimizer(const RunConfig& c, bool lambda) {
  json echo{{"command", lambda ? "lambdap" : "majorant"},
            {"p", c.p},
            {"optimizer", optimizer_echo(c)},
            {"format", c.format}};
  require_p(c.p);
  const auto cfg = optimizer_config(c);
  const auto set = load_set(c, echo);
  require_nonempty(set);

  const std::vector<Complex> ones(set.size(), Complex{1.0, 0.0});
  const double all_ones = reported_norm(set, ones, c.p, cfg);
  const auto result = lambda ? lambda_p_constant(set, c.p, cfg) : majorant_numerator(set, c.p, cfg);

  json out{{"spec_echo", echo},
           {"p", c.p},
           {"value", result.value},
           {"all_ones_norm", all_ones},
           {"best_restart", result.best_restart},
           {"restart_values", result.restart_values},
           {"iterations_used", result.iterations_used},
           {"total_iterations", result.total_iterations},
           {"converged", result.converged},
           {"working_grid", format_grid(result.working_grid)},
           {"coeffs", coeffs_to_json(result.coeffs)},
           {"flags", {"lower_estimate_of_sup"}}};
  double derived = 0.0;
  std::string derived_name;
  if (lambda) {
    derived_name = "value_to_the_p";
    derived = std::pow(result.value, c.p);
    out["equal_weight_norm"] = all_ones / std::sqrt(static_cast<double>(set.size()));
  } else {
    derived_name = "ratio";
    derived = result.value / all_ones;
  }
  out[derived_name] = derived;
  if (c.format == "csv") {
    return csv_echo(echo) + "p,value,all_ones_norm," + derived_name + ",best_restart,converged\n" +
           format_number(c.p) + "," + format_number(result.value) + "," + format_number(all_ones) +
           "," + format_number(derived) + "," + std::to_string(result.best_restart) + "," +
           (result.converged ? "true" : "false") + "\n";
  }
  return json_text(out);
}

NormPolicy norm_policy(const RunConfig& c) {
  if (c.method.empty()) return is_even_integer(c.p) ? NormPolicy::exact_even : NormPolicy::adaptive;
  if (c.method == "exact-even") {
    if (!is_even_integer(c.p)) throw ValidationError("method", "exact-even needs an even integer p");
    return NormPolicy::exact_even;
  }
  return NormPolicy::adaptive;
}

template <class Model>
Model require_model(const RandomSetModel& model, const RunConfig& c, const char* expected) {
  const auto* m = std::get_if<Model>(&model);
  if (m == nullptr) {
    throw ValidationError("model", "experiment " + c.name + " needs --model " + expected +
                                       " without --kind");
  }
  return *m;
}

std::string render_report(ExperimentReport report, json echo, const RunConfig& c) {
  echo["run"] = report.spec_echo;
  if (!c.record_runtime) report.runtime_seconds = 0.0;
  if (c.format == "csv") return csv_echo(echo) + per_trial_csv(report);
  auto out = to_json(report);
  out["spec_echo"] = echo;
  return json_text(out);
}

std::string run_scaling(const RunConfig& c, const RandomSetModel& family, json echo) {
  const auto cfg = optimizer_config(c);
  if (c.n_list.size() < 3) throw ValidationError("n_list", "needs at least three scales");
  for (auto n : c.n_list) validate(with_scale(family, n));
  auto study = majorant_scaling_study(family, c.n_list, c.p, c.trials, c.seed, cfg);
  if (c.format == "csv") {
    std::string text = csv_echo(echo) + "n,q05,q50,q95,mean\n";
    for (const auto& point : study.points) {
      text += std::to_string(point.n) + "," + format_number(point.q05) + "," +
              format_number(point.q50) + "," + format_number(point.q95) + "," +
              format_number(point.mean) + "\n";
    }
    return text;
  }
  json points = json::array();
  json reports = json::array();
  for (std::size_t i = 0; i < study.points.size(); ++i) {
    const auto& point = study.points[i];
    points.push_back({{"n", point.n},
                      {"q05", point.q05},
                      {"q50", point.q50},
                      {"q95", point.q95},
                      {"mean", point.mean}});
    auto& report = study.reports[i];
    if (!c.record_runtime) report.runtime_seconds = 0.0;
    reports.push_back(to_json(report));
  }
  return json_text({{"spec_echo", echo},
                    {"slope", study.slope},
                    {"slope_stderr", study.slope_stderr},
                    {"points", points},
                    {"flags", {"lower_estimate_of_sup"}},
                    {"reports", reports}});
}

// Model used by an experiment when --model is absent.
std::string default_model(const std::string& name) {
  if (name == "lower-bound-pap") return "perturbed_ap";
  if (name == "selector-moment" || name == "lambda-expectation") return "block_uniform";
  return "bernoulli";
}

std::string run_experiment(RunConfig c) {
  if (c.model.empty()) c.model = default_model(c.name);
  if (c.name == "majorant-scaling" && c.n == 0 && !c.n_list.empty()) c.n = c.n_list.front();
  if (c.trials < 1) throw ValidationError("trials", "must be >= 1");
  require_p(c.p);
  const auto model = build_model(c);
  json echo{{"command", "experiment"}, {"name", c.name},     {"model", to_json(model)},
            {"p", c.p},                {"trials", c.trials}, {"seed", c.seed},
            {"format", c.format},      {"record_runtime", c.record_runtime}};

  if (c.name == "chernoff") {
    const auto bernoulli = require_model<BernoulliSelector>(model, c, "bernoulli");
    return render_report(check_chernoff(bernoulli, c.trials, c.seed).report, echo, c);
  }
  if (c.name == "lower-bound-product") {
    ExperimentSpec spec;
    spec.model = model;
    spec.p = c.p;
    spec.trials = c.trials;
    spec.master_seed = c.seed;
    spec.norm_policy = norm_policy(c);
    spec.norm_rel_tol = c.rel_tol;
    echo["method"] = spec.norm_policy == NormPolicy::exact_even ? "exact-even" : "adaptive";
    echo["rel_tol"] = c.rel_tol;
    return render_report(check_lower_bound_product(spec).report, echo, c);
  }
  if (c.name == "lower-bound-pap") {
    const auto ap = require_model<PerturbedAP>(model, c, "perturbed_ap");
    const auto policy = norm_policy(c);
    echo["method"] = policy == NormPolicy::exact_even ? "exact-even" : "adaptive";
    return render_report(check_lower_bound_pap(ap, c.p, c.trials, c.seed, policy).report, echo, c);
  }
  if (c.name == "selector-moment") {
    const auto block = require_model<BlockUniform>(model, c, "block_uniform");
    std::vector<std::int64_t> targets = c.targets;
    if (targets.empty()) {
      for (std::int64_t j = 0; j < block.l; ++j) targets.push_back(block.block_first(j));
    }
    echo["q"] = c.q;
    echo["targets"] = targets;
    return render_report(check_selector_moment(block, targets, c.q, c.trials, c.seed).report, echo,
                         c);
  }
  echo["optimizer"] = optimizer_echo(c);
  if (c.name == "majorant-scaling") {
    echo["n_list"] = c.n_list;
    return run_scaling(c, model, echo);
  }
  const auto cfg = optimizer_config(c);
  if (c.name == "probability") {
    echo["thresholds"] = c.thresholds;
    return render_report(
        probability_estimate(model, c.p, c.thresholds, c.trials, c.seed, cfg).report, echo, c);
  }
  return render_report(lambda_expectation(model, c.p, cfg, c.trials, c.seed), echo, c);
}

void write_output(const std::string& text, const RunConfig& c, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + c.out + "' for writing");
  file << text;
  if (!file) throw Error("failed writing '" + c.out + "'");
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Random frequency sets, L^p norms, majorant and Lambda(p) experiments",
               "majorant_lab"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Sample a random frequency set");
  add_model_options(gen, c);
  gen->add_option("--p", c.p, "Exponent p (nested_block only)");
  gen->add_option("--stream", c.stream, "Stream id")->capture_default_str();

  auto* norm = app.add_subcommand("norm", "L^p norm of the all-ones polynomial on a set");
  add_set_source(norm, c);
  norm->add_option("--p", c.p, "Exponent p >= 2")->capture_default_str();
  norm->add_option("--method", c.method, "Norm method")
      ->check(CLI::IsMember({"adaptive", "exact-even", "quadrature", "parseval"}))
      ->default_val("adaptive");
  norm->add_option("--rel-tol", c.rel_tol, "Adaptive tolerance")->capture_default_str();
  norm->add_option("--grid", c.grid, "Quadrature grid, e.g. 64 or 64x128");

  auto* majorant = app.add_subcommand("majorant", "Optimize the majorant numerator on a set");
  auto* lambdap = app.add_subcommand("lambdap", "Estimate the Lambda(p) constant of a set");
  for (auto* sub : {majorant, lambdap}) {
    add_set_source(sub, c);
    sub->add_option("--p", c.p, "Exponent p >= 2")->capture_default_str();
    sub->add_option("--rel-tol", c.rel_tol, "Tolerance of reported norms")->capture_default_str();
    add_optimizer_options(sub, c);
  }

  auto* experiment = app.add_subcommand("experiment", "Run a named Monte Carlo experiment");
  experiment->add_option("--name", c.name, "Experiment")
      ->check(CLI::IsMember(kExperiments))
      ->required();
  add_model_options(experiment, c);
  experiment->add_option("--p", c.p, "Exponent p >= 2")->capture_default_str();
  experiment->add_option("--trials", c.trials, "Number of trials")->capture_default_str();
  experiment->add_option("--method", c.method, "Norm policy (default exact-even for even p)")
      ->check(CLI::IsMember({"adaptive", "exact-even"}));
  experiment->add_option("--rel-tol", c.rel_tol, "Adaptive norm tolerance")->capture_default_str();
  add_optimizer_options(experiment, c);
  experiment->add_option("--q", c.q, "Moment order (selector-moment)")->capture_default_str();
  experiment->add_option("--targets", c.targets, "Target set A (selector-moment)")->delimiter(',');
  experiment->add_option("--n-list", c.n_list, "Scales (majorant-scaling)")->delimiter(',');
  experiment->add_option("--thresholds", c.thresholds, "Ratio thresholds (probability)")
      ->delimiter(',');
  experiment->add_flag("--record-runtime", c.record_runtime,
                       "Write the measured runtime instead of 0");

  add_output_options(gen, c, "csv");
  add_output_options(norm, c, "json");
  add_output_options(majorant, c, "json");
  add_output_options(lambdap, c, "json");
  add_output_options(experiment, c, "json");

  try {
    auto merged = merge_config(args, app);
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
    if (c.format.empty()) c.format = gen->parsed() ? "csv" : "json";

    std::string text;
    if (gen->parsed()) {
      text = run_gen(c);
    } else if (norm->parsed()) {
      text = run_norm(c);
    } else if (majorant->parsed()) {
      text = run_optimizer(c, false);
    } else if (lambdap->parsed()) {
      text = run_optimizer(c, true);
    } else {
      text = run_experiment(c);
    }
    write_output(text, c, out);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const ValidationError& e) {
    err << "error: invalid " << flag_name(e.parameter()) << ": " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
}

}  // namespace majorant_lab::cli
