#pragma once

// Trigonometric polynomials f(x) = sum_n a_n e(n.x) on the d-torus and their
// L^p([0,1]^d) norms.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "majorant_lab/frequency_set.hpp"

namespace majorant_lab {

using Complex = std::complex<double>;

/// Per-dimension sample counts M_1, ..., M_d of a uniform torus grid.
using Grid = std::vector<std::size_t>;

/// A frequency set with one complex coefficient per frequency, in the set's
/// lexicographic order.
class TrigPolynomial {
 public:
  TrigPolynomial(FrequencySet support, std::vector<Complex> coeffs);

  /// All coefficients equal to one.
  static TrigPolynomial all_ones(FrequencySet support);

  const FrequencySet& support() const noexcept { return support_; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Direct evaluation at a point of the torus (O(|S| d)).
  Complex operator()(std::span<const double> x) const;

 private:
  FrequencySet support_;
  std::vector<Complex> coeffs_;
};

enum class NormMethod { parseval, even_convolution, quadrature };

std::string_view to_string(NormMethod method);

struct NormResult {
  double p = 2.0;
  double value = 0.0;
  NormMethod method = NormMethod::quadrature;
  Grid grid;  // empty for exact methods
  double rel_error_estimate = 0.0;
};

enum class AliasPolicy {
  allow,          // coefficients that collide modulo M are summed
  require_free,   // every M_i must exceed the spread of coordinate i
};

/// Values of a polynomial on a uniform grid, row-major with the last
/// coordinate varying fastest.
struct GridValues {
  Grid shape;
  std::vector<Complex> values;

  Complex at(std::span<const std::size_t> index) const;
};

/// True when p is an even integer >= 2.
bool is_even_integer(double p);

/// spread_i + 1 in every coordinate: the smallest grid on which a polynomial
/// is recovered without aliasing.
Grid alias_free_grid(const FrequencySet& support);

/// (p/2) spread_i + 1: the smallest grid on which the Riemann sum of |f|^p
/// is exact for even integer p.
Grid exact_even_grid(const FrequencySet& support, double p);

std::size_t grid_points(const Grid& grid);

/// Reusable FFT machinery for one support on one grid. Thread-compatible:
/// a const evaluator may be shared; buffers are supplied by the caller.
class GridEvaluator {
 public:
  GridEvaluator(const FrequencySet& support, Grid grid,
                AliasPolicy policy = AliasPolicy::require_free);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t points() const noexcept { return points_; }
  std::size_t support_size() const noexcept { return slots_.size(); }

  /// out[k] = sum_n coeffs[n] e(sum_i n_i k_i / M_i).
  void evaluate(std::span<const Complex> coeffs, std::vector<Complex>& out) const;

  /// Fourier coefficients (1/|grid|) sum_k g(k) e(-n.k/M) at each support
  /// frequency. `values` is used as scratch and overwritten.
  void project(std::vector<Complex>& values, std::span<Complex> coeffs_out) const;

  /// (1/|grid|) sum_k |values[k]|^p.
  static double power_mean(std::span<const Complex> values, double p);

 private:
  Grid grid_;
  std::size_t points_ = 0;
  std::vector<std::size_t> slots_;  // flat grid index of each frequency mod M
};

/// Evaluates the polynomial on a grid by zero-embedding and an inverse DFT.
GridValues evaluate_on_grid(const TrigPolynomial& poly, const Grid& grid,
                            AliasPolicy policy = AliasPolicy::allow);

/// l^2 norm of the coefficients, which equals the L^2 norm.
NormResult parseval_norm(const TrigPolynomial& poly);

/// Riemann-sum L^p norm on the given alias-free grid. Exact (error estimate
/// zero) for even p once M_i > (p/2) spread_i; otherwise the error estimate
/// is the relative change against a grid doubled in every dimension.
NormResult lp_norm_quadrature(const TrigPolynomial& poly, double p, const Grid& grid);

/// Exact L^{2m} norm via ||f||_{2m}^{2m} = ||f^m||_2^2, where the
/// coefficients of f^m are the m-fold convolution of the coefficients.
/// `max_support_cells` caps the dense convolution box.
NormResult lp_norm_even_exact(const TrigPolynomial& poly, int m,
                              std::size_t max_support_cells = std::size_t{1} << 26);

struct AdaptiveOptions {
  std::size_t max_grid_points = std::size_t{1} << 24;
};

/// Doubles every grid dimension from the alias-free minimum until three
/// successive values agree pairwise to `rel_tol`. Throws ConvergenceError carrying the
/// last two values when the grid budget is exhausted first.
NormResult lp_norm_adaptive(const TrigPolynomial& poly, double p, double rel_tol,
                            const AdaptiveOptions& options = {});

/// The grid before the final doubling of `lp_norm_adaptive`, for reuse
/// across many coefficient vectors on the same support.
Grid adaptive_grid(const TrigPolynomial& poly, double p, double rel_tol,
                   const AdaptiveOptions& options = {});

}  // namespace majorant_lab
