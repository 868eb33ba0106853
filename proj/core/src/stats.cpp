#include <algorithm>
#include <cmath>

#include "majorant_lab/error.hpp"
#include "majorant_lab/montecarlo.hpp"

namespace majorant_lab {

namespace {
// Two-sided 99% standard normal quantile.
constexpr double kZ99 = 2.5758293035489004;
}  // namespace

double quantile_sorted(const std::vector<double>& sorted, double probability) {
  if (sorted.empty()) return 0.0;
  const double position = probability * static_cast<double>(sorted.size() - 1);
  const auto lower = static_cast<std::size_t>(std::floor(position));
  const auto upper = std::min(lower + 1, sorted.size() - 1);
  const double weight = position - static_cast<double>(lower);
  return sorted[lower] + weight * (sorted[upper] - sorted[lower]);
}

Summary summarize(const std::vector<double>& values) {
  Summary out;
  if (values.empty()) return out;
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / n;
  if (values.size() > 1) {
    double squares = 0.0;
    for (double v : values) squares += (v - out.mean) * (v - out.mean);
    out.var = squares / (n - 1.0);
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  out.q05 = quantile_sorted(sorted, 0.05);
  out.q50 = quantile_sorted(sorted, 0.50);
  out.q95 = quantile_sorted(sorted, 0.95);
  out.ci99_halfwidth = kZ99 * std::sqrt(out.var / n);
  return out;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("points", "least squares needs two or more paired points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("points", "abscissae must not all coincide");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double residual = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      residual += r * r;
    }
    fit.slope_stderr = std::sqrt(residual / (n - 2.0) / sxx);
  }
  return fit;
}

}  // namespace majorant_lab
