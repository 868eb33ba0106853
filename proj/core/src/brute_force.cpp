#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "majorant_lab/error.hpp"
#include "majorant_lab/extremal.hpp"
#include "powers.hpp"

namespace majorant_lab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kZoomLevels = 6;
constexpr int kZoomHalfWidth = 4;

// |f|_p for a support of at most three frequencies, by direct summation
// against a precomputed character table.
class SmallObjective {
 public:
  SmallObjective(const FrequencySet& support, double p)
      : p_(p), power_(p / 2.0), size_(support.size()) {
    Grid grid;
    if (is_even_integer(p)) {
      grid = exact_even_grid(support, p);
    } else {
      grid = adaptive_grid(TrigPolynomial::all_ones(support), p, 1e-10);
      const auto spread = support.spread();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = std::max(4 * grid[i], 16 * (static_cast<std::size_t>(spread[i]) + 1));
      }
    }
    const std::size_t points = grid_points(grid);
    table_.resize(points * size_);
    std::vector<std::size_t> index(grid.size(), 0);
    for (std::size_t k = 0; k < points; ++k) {
      for (std::size_t j = 0; j < size_; ++j) {
        double phase = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          phase += static_cast<double>(support[j][i]) * static_cast<double>(index[i]) /
                   static_cast<double>(grid[i]);
        }
        phase -= std::floor(phase);
        table_[k * size_ + j] = std::polar(1.0, 2.0 * kPi * phase);
      }
      for (std::size_t i = grid.size(); i-- > 0;) {
        if (++index[i] < grid[i]) break;
        index[i] = 0;
      }
    }
    points_ = points;
  }

  double operator()(const std::vector<Complex>& coeffs) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < points_; ++k) {
      Complex f{0.0, 0.0};
      for (std::size_t j = 0; j < size_; ++j) f += coeffs[j] * table_[k * size_ + j];
      sum += power_(std::norm(f));
    }
    return std::pow(sum / static_cast<double>(points_), 1.0 / p_);
  }

 private:
  double p_;
  detail::SquarePower power_;
  std::size_t size_;
  std::size_t points_ = 0;
  std::vector<Complex> table_;
};

using AngleMap = std::function<std::vector<Complex>(const std::vector<double>&)>;

struct Candidate {
  double value = -1.0;
  std::vector<double> angles;
};

// Visits every point of a product grid of angles.
void for_each_grid_point(const std::vector<std::vector<double>>& axes,
                         const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<double> angles(axes.size());
  std::vector<std::size_t> index(axes.size(), 0);
  if (axes.empty()) {
    visit(angles);
    return;
  }
  while (true) {
    for (std::size_t i = 0; i < axes.size(); ++i) angles[i] = axes[i][index[i]];
    visit(angles);
    std::size_t i = axes.size();
    while (i-- > 0) {
      if (++index[i] < axes[i].size()) break;
      index[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

Candidate grid_search(const SmallObjective& objective, const AngleMap& to_coeffs,
                      const std::vector<std::vector<double>>& axes) {
  Candidate best;
  for_each_grid_point(axes, [&](const std::vector<double>& angles) {
    const double value = objective(to_coeffs(angles));
    if (value > best.value) best = {value, angles};
  });
  return best;
}

// Successively finer local grids around the incumbent; `lo`/`hi` clamp
// bounded angles.
Candidate zoom(const SmallObjective& objective, const AngleMap& to_coeffs, Candidate best,
               std::vector<double> step, const std::vector<double>& lo,
               const std::vector<double>& hi) {
  for (int level = 0; level < kZoomLevels; ++level) {
    for (auto& h : step) h /= kZoomHalfWidth;
    std::vector<std::vector<double>> axes(best.angles.size());
    for (std::size_t i = 0; i < axes.size(); ++i) {
      for (int k = -kZoomHalfWidth; k <= kZoomHalfWidth; ++k) {
        axes[i].push_back(std::clamp(best.angles[i] + k * step[i], lo[i], hi[i]));
      }
    }
    const auto local = grid_search(objective, to_coeffs, axes);
    if (local.value > best.value) best = local;
  }
  return best;
}

std::vector<double> uniform_axis(double lo, double hi, int count, bool include_end) {
  std::vector<double> axis;
  const int intervals = include_end ? count - 1 : count;
  for (int k = 0; k < count; ++k) axis.push_back(lo + (hi - lo) * k / intervals);
  return axis;
}

BruteForceResult polydisc(const FrequencySet& support, double p, int density) {
  const std::size_t size = support.size();
  const SmallObjective objective(support, p);
  // Global phase is a symmetry: the first coefficient stays real.
  const std::size_t free = size - 1;
  AngleMap boundary = [size](const std::vector<double>& angles) {
    std::vector<Complex> coeffs(size, Complex{1.0, 0.0});
    for (std::size_t j = 1; j < size; ++j) coeffs[j] = std::polar(1.0, angles[j - 1]);
    return coeffs;
  };
  std::vector<std::vector<double>> axes(free, uniform_axis(0.0, 2.0 * kPi, density, false));
  auto best = grid_search(objective, boundary, axes);
  best = zoom(objective, boundary, best, std::vector<double>(free, 2.0 * kPi / density),
              std::vector<double>(free, -1e300), std::vector<double>(free, 1e300));

  BruteForceResult out{best.value, boundary(best.angles), false};
  if (size <= 2) {
    const std::vector<double> radii{0.5, 0.75, 1.0};
    double interior = -1.0;
    std::vector<Complex> interior_coeffs;
    std::vector<std::vector<double>> scan = axes;
    for (std::size_t j = 0; j < size; ++j) scan.push_back(radii);
    for_each_grid_point(scan, [&](const std::vector<double>& point) {
      bool on_boundary = true;
      for (std::size_t j = 0; j < size; ++j) on_boundary = on_boundary && point[free + j] == 1.0;
      if (on_boundary) return;
      auto coeffs = boundary(std::vector<double>(point.begin(), point.begin() + free));
      for (std::size_t j = 0; j < size; ++j) coeffs[j] *= point[free + j];
      const double value = objective(coeffs);
      if (value > interior) {
        interior = value;
        interior_coeffs = std::move(coeffs);
      }
    });
    const double coarse_boundary = grid_search(objective, boundary, axes).value;
    out.interior_beats_boundary = interior > coarse_boundary * (1.0 + 1e-12);
    if (interior > out.value) {
      out.value = interior;
      out.coeffs = std::move(interior_coeffs);
    }
  }
  return out;
}

BruteForceResult sphere(const FrequencySet& support, double p, int density) {
  const std::size_t size = support.size();
  const SmallObjective objective(support, p);
  if (size == 1) {
    const std::vector<Complex> coeffs{Complex{1.0, 0.0}};
    return {objective(coeffs), coeffs, false};
  }
  // Moduli angles in [0, pi/2] (size - 1 of them), then phases of all but
  // the first coefficient.
  const std::size_t moduli = size - 1;
  AngleMap to_coeffs = [size, moduli](const std::vector<double>& angles) {
    std::vector<double> radius(size);
    double remaining = 1.0;
    for (std::size_t j = 0; j < moduli; ++j) {
      radius[j] = remaining * std::cos(angles[j]);
      remaining *= std::sin(angles[j]);
    }
    radius[size - 1] = remaining;
    std::vector<Complex> coeffs(size);
    coeffs[0] = Complex{radius[0], 0.0};
    for (std::size_t j = 1; j < size; ++j) coeffs[j] = std::polar(radius[j], angles[moduli + j - 1]);
    return coeffs;
  };
  std::vector<std::vector<double>> axes;
  std::vector<double> step, lo, hi;
  for (std::size_t j = 0; j < moduli; ++j) {
    axes.push_back(uniform_axis(0.0, kPi / 2.0, density + 1, true));
    step.push_back(kPi / 2.0 / density);
    lo.push_back(0.0);
    hi.push_back(kPi / 2.0);
  }
  for (std::size_t j = 1; j < size; ++j) {
    axes.push_back(uniform_axis(0.0, 2.0 * kPi, density, false));
    step.push_back(2.0 * kPi / density);
    lo.push_back(-1e300);
    hi.push_back(1e300);
  }
  auto best = grid_search(objective, to_coeffs, axes);
  best = zoom(objective, to_coeffs, best, step, lo, hi);
  return {best.value, to_coeffs(best.angles), false};
}

}  // namespace

BruteForceResult brute_force_sup(const FrequencySet& support, double p, Constraint constraint,
                                 int grid_density) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw ValidationError("p", "must be a finite real >= 2");
  if (support.empty()) throw ValidationError("support", "empty support");
  if (support.size() > 3) throw ValidationError("support", "brute force needs |S| <= 3");
  if (grid_density < 8) throw ValidationError("grid_density", "must be >= 8");
  return constraint == Constraint::polydisc ? polydisc(support, p, grid_density)
                                            : sphere(support, p, grid_density);
}

}  // namespace majorant_lab
