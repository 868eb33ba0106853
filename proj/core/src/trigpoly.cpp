#include "majorant_lab/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "powers.hpp"
#include "majorant_lab/error.hpp"

namespace majorant_lab {

namespace {

void require_p(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw ValidationError("p", "must be a finite real >= 2");
}

void require_nonempty(const TrigPolynomial& poly) {
  if (poly.support().empty()) throw ValidationError("support", "empty support");
}

std::vector<std::size_t> row_major_strides(const Grid& grid) {
  std::vector<std::size_t> strides(grid.size(), 1);
  for (std::size_t i = grid.size(); i-- > 1;) strides[i - 1] = strides[i] * grid[i];
  return strides;
}

double quadrature_value(const TrigPolynomial& poly, double p, const Grid& grid) {
  GridEvaluator evaluator(poly.support(), grid);
  std::vector<Complex> values;
  evaluator.evaluate(poly.coeffs(), values);
  return std::pow(GridEvaluator::power_mean(values, p), 1.0 / p);
}

double relative_change(double previous, double current) {
  const double diff = std::abs(current - previous);
  if (diff == 0.0) return 0.0;
  return diff / std::max(std::abs(current), std::abs(previous));
}

}  // namespace

TrigPolynomial::TrigPolynomial(FrequencySet support, std::vector<Complex> coeffs)
    : support_(std::move(support)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != support_.size()) {
    throw ValidationError("coeffs", "expected " + std::to_string(support_.size()) +
                                        " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

TrigPolynomial TrigPolynomial::all_ones(FrequencySet support) {
  std::vector<Complex> ones(support.size(), Complex{1.0, 0.0});
  return TrigPolynomial(std::move(support), std::move(ones));
}

Complex TrigPolynomial::operator()(std::span<const double> x) const {
  if (x.size() != support_.dim()) throw ValidationError("x", "dimension mismatch");
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      phase += static_cast<double>(support_[j][i]) * x[i];
    }
    phase -= std::floor(phase);
    sum += coeffs_[j] * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return sum;
}

std::string_view to_string(NormMethod method) {
  switch (method) {
    case NormMethod::parseval: return "parseval";
    case NormMethod::even_convolution: return "even_convolution";
    case NormMethod::quadrature: return "quadrature";
  }
  return "unknown";
}

Complex GridValues::at(std::span<const std::size_t> index) const {
  const auto strides = row_major_strides(shape);
  std::size_t flat = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) flat += index[i] * strides[i];
  return values.at(flat);
}

bool is_even_integer(double p) {
  return p >= 2.0 && std::isfinite(p) && p == 2.0 * std::round(p / 2.0);
}

Grid alias_free_grid(const FrequencySet& support) {
  const auto spread = support.spread();
  Grid grid(spread.size());
  for (std::size_t i = 0; i < spread.size(); ++i) grid[i] = static_cast<std::size_t>(spread[i]) + 1;
  return grid;
}

Grid exact_even_grid(const FrequencySet& support, double p) {
  if (!is_even_integer(p)) throw ValidationError("p", "exact quadrature needs an even integer");
  const auto half = static_cast<std::size_t>(std::llround(p / 2.0));
  const auto spread = support.spread();
  Grid grid(spread.size());
  for (std::size_t i = 0; i < spread.size(); ++i) {
    grid[i] = half * static_cast<std::size_t>(spread[i]) + 1;
  }
  return grid;
}

std::size_t grid_points(const Grid& grid) {
  std::size_t total = 1;
  for (auto m : grid) total *= m;
  return total;
}

GridEvaluator::GridEvaluator(const FrequencySet& support, Grid grid, AliasPolicy policy)
    : grid_(std::move(grid)) {
  if (support.empty()) throw ValidationError("support", "empty support");
  if (grid_.size() != support.dim()) {
    throw ValidationError("grid", "expected " + std::to_string(support.dim()) + " dimensions");
  }
  const auto spread = support.spread();
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (grid_[i] < 1) throw ValidationError("grid", "sample counts must be >= 1");
    if (policy == AliasPolicy::require_free &&
        grid_[i] <= static_cast<std::size_t>(spread[i])) {
      throw ValidationError("grid", "M_" + std::to_string(i) + " = " + std::to_string(grid_[i]) +
                                        " does not exceed the coordinate spread " +
                                        std::to_string(spread[i]));
    }
  }
  points_ = grid_points(grid_);
  const auto strides = row_major_strides(grid_);
  slots_.reserve(support.size());
  for (const auto& n : support.freqs()) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto m = static_cast<std::int64_t>(grid_[i]);
      const auto r = ((n[i] % m) + m) % m;
      flat += static_cast<std::size_t>(r) * strides[i];
    }
    slots_.push_back(flat);
  }
}

void GridEvaluator::evaluate(std::span<const Complex> coeffs, std::vector<Complex>& out) const {
  if (coeffs.size() != slots_.size()) throw ValidationError("coeffs", "size mismatch");
  out.assign(points_, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < slots_.size(); ++j) out[slots_[j]] += coeffs[j];
  detail::fft_inplace(out, grid_, detail::FftSign::backward);
}

void GridEvaluator::project(std::vector<Complex>& values, std::span<Complex> coeffs_out) const {
  if (values.size() != points_) throw ValidationError("values", "size mismatch");
  if (coeffs_out.size() != slots_.size()) throw ValidationError("coeffs", "size mismatch");
  detail::fft_inplace(values, grid_, detail::FftSign::forward);
  const double scale = 1.0 / static_cast<double>(points_);
  for (std::size_t j = 0; j < slots_.size(); ++j) coeffs_out[j] = values[slots_[j]] * scale;
}

double GridEvaluator::power_mean(std::span<const Complex> values, double p) {
  const detail::SquarePower power(p / 2.0);
  double sum = 0.0;
  for (const auto& v : values) sum += power(std::norm(v));
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

GridValues evaluate_on_grid(const TrigPolynomial& poly, const Grid& grid, AliasPolicy policy) {
  require_nonempty(poly);
  GridEvaluator evaluator(poly.support(), grid, policy);
  GridValues out;
  out.shape = grid;
  evaluator.evaluate(poly.coeffs(), out.values);
  return out;
}

NormResult parseval_norm(const TrigPolynomial& poly) {
  double sum = 0.0;
  for (const auto& c : poly.coeffs()) sum += std::norm(c);
  return NormResult{2.0, std::sqrt(sum), NormMethod::parseval, {}, 0.0};
}

NormResult lp_norm_quadrature(const TrigPolynomial& poly, double p, const Grid& grid) {
  require_p(p);
  require_nonempty(poly);
  NormResult result{p, quadrature_value(poly, p, grid), NormMethod::quadrature, grid, 0.0};

  bool exact = is_even_integer(p);
  if (exact) {
    const auto half = static_cast<std::size_t>(std::llround(p / 2.0));
    const auto spread = poly.support().spread();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      exact = exact && grid[i] > half * static_cast<std::size_t>(spread[i]);
    }
  }
  if (!exact) {
    Grid doubled = grid;
    for (auto& m : doubled) m *= 2;
    result.rel_error_estimate = relative_change(result.value, quadrature_value(poly, p, doubled));
  }
  return result;
}

NormResult lp_norm_even_exact(const TrigPolynomial& poly, int m, std::size_t max_support_cells) {
  if (m < 1) throw ValidationError("m", "must be >= 1");
  require_nonempty(poly);
  const auto& support = poly.support();
  const std::size_t dim = support.dim();
  const auto lo = support.min_coords();
  const auto spread = support.spread();

  Grid final_box(dim);
  std::size_t final_cells = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    final_box[i] = static_cast<std::size_t>(m) * static_cast<std::size_t>(spread[i]) + 1;
    if (final_cells > max_support_cells / final_box[i]) {
      throw BudgetError("m-fold convolution support exceeds " +
                        std::to_string(max_support_cells) + " cells");
    }
    final_cells *= final_box[i];
  }

  // Offsets of each shifted frequency in the row-major layout of `box`.
  auto offsets_in = [&](const Grid& box) {
    const auto strides = row_major_strides(box);
    std::vector<std::size_t> offsets;
    offsets.reserve(support.size());
    for (const auto& n : support.freqs()) {
      std::size_t flat = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        flat += static_cast<std::size_t>(n[i] - lo[i]) * strides[i];
      }
      offsets.push_back(flat);
    }
    return offsets;
  };

  Grid box(dim);
  for (std::size_t i = 0; i < dim; ++i) box[i] = static_cast<std::size_t>(spread[i]) + 1;
  std::vector<Complex> current(grid_points(box), Complex{0.0, 0.0});
  {
    const auto offsets = offsets_in(box);
    for (std::size_t j = 0; j < offsets.size(); ++j) current[offsets[j]] = poly.coeffs()[j];
  }

  for (int power = 2; power <= m; ++power) {
    Grid next_box(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      next_box[i] = static_cast<std::size_t>(power) * static_cast<std::size_t>(spread[i]) + 1;
    }
    const auto next_strides = row_major_strides(next_box);
    const auto offsets = offsets_in(next_box);
    std::vector<Complex> next(grid_points(next_box), Complex{0.0, 0.0});

    std::vector<std::size_t> index(dim, 0);
    for (std::size_t flat = 0; flat < current.size(); ++flat) {
      if (current[flat] != Complex{0.0, 0.0}) {
        std::size_t base = 0;
        for (std::size_t i = 0; i < dim; ++i) base += index[i] * next_strides[i];
        for (std::size_t j = 0; j < offsets.size(); ++j) {
          next[base + offsets[j]] += current[flat] * poly.coeffs()[j];
        }
      }
      for (std::size_t i = dim; i-- > 0;) {
        if (++index[i] < box[i]) break;
        index[i] = 0;
      }
    }
    current = std::move(next);
    box = std::move(next_box);
  }

  double energy = 0.0;
  for (const auto& c : current) energy += std::norm(c);
  return NormResult{2.0 * m, std::pow(energy, 1.0 / (2.0 * m)), NormMethod::even_convolution, {},
                    0.0};
}

namespace {

struct AdaptiveOutcome {
  Grid grid;
  Grid settled;  // the grid before the final doubling
  double value = 0.0;
  double change = 0.0;
};

// Stops after two successive doublings that each change the value by less
// than rel_tol. A single agreement can be a coincidence: when |f| has period
// 1/g the M- and 2M-point sums may sample the same points.
AdaptiveOutcome run_adaptive(const TrigPolynomial& poly, double p, double rel_tol,
                             const AdaptiveOptions& options) {
  require_p(p);
  require_nonempty(poly);
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ValidationError("rel_tol", "must lie in (0, 1)");

  Grid grid = alias_free_grid(poly.support());
  if (grid_points(grid) > options.max_grid_points) {
    throw BudgetError("alias-free grid already exceeds the grid budget");
  }
  double previous = quadrature_value(poly, p, grid);
  bool settled_once = false;
  while (true) {
    Grid next = grid;
    for (auto& m : next) m *= 2;
    if (grid_points(next) > options.max_grid_points) {
      throw ConvergenceError("adaptive L^p quadrature hit the grid budget", previous, previous);
    }
    const double current = quadrature_value(poly, p, next);
    const double change = relative_change(previous, current);
    if (change < rel_tol) {
      if (settled_once) return {std::move(next), std::move(grid), current, change};
      settled_once = true;
    } else {
      settled_once = false;
    }
    if (grid_points(next) * (std::size_t{1} << next.size()) > options.max_grid_points) {
      throw ConvergenceError("adaptive L^p quadrature hit the grid budget", previous, current);
    }
    grid = std::move(next);
    previous = current;
  }
}

}  // namespace

NormResult lp_norm_adaptive(const TrigPolynomial& poly, double p, double rel_tol,
                            const AdaptiveOptions& options) {
  auto outcome = run_adaptive(poly, p, rel_tol, options);
  return NormResult{p, outcome.value, NormMethod::quadrature, std::move(outcome.grid),
                    outcome.change};
}

Grid adaptive_grid(const TrigPolynomial& poly, double p, double rel_tol,
                   const AdaptiveOptions& options) {
  return run_adaptive(poly, p, rel_tol, options).settled;
}

}  // namespace majorant_lab
