#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's FFT, convolution or sampling paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

/// Number of ordered quadruples (n1, n2, n3, n4) in S^4 with n1 + n2 = n3 + n4.
inline std::int64_t quadruple_count(const std::vector<std::int64_t>& set) {
  std::map<std::int64_t, std::int64_t> pair_sums;
  for (auto a : set) {
    for (auto b : set) ++pair_sums[a + b];
  }
  std::int64_t total = 0;
  for (const auto& [sum, count] : pair_sums) total += count * count;
  return total;
}

/// Number of ordered 2m-tuples with x1 + .. + xm = y1 + .. + ym, by brute
/// force over S^m. Equals || sum_{n in S} e(nx) ||_{2m}^{2m}.
inline std::int64_t tuple_energy(const std::vector<std::int64_t>& set, int m) {
  std::map<std::int64_t, std::int64_t> sums{{0, 1}};
  for (int k = 0; k < m; ++k) {
    std::map<std::int64_t, std::int64_t> next;
    for (const auto& [sum, count] : sums) {
      for (auto x : set) next[sum + x] += count;
    }
    sums = std::move(next);
  }
  std::int64_t total = 0;
  for (const auto& [sum, count] : sums) total += count * count;
  return total;
}

/// Riemann sum of |f|^p on M equispaced points of [0, 1), f evaluated by
/// direct summation of exponentials (one-dimensional).
inline double direct_lp_norm(const std::vector<std::int64_t>& freqs,
                             const std::vector<std::complex<double>>& coeffs, double p,
                             std::size_t points) {
  double sum = 0.0;
  for (std::size_t k = 0; k < points; ++k) {
    std::complex<double> f{0.0, 0.0};
    for (std::size_t j = 0; j < freqs.size(); ++j) {
      const double phase = static_cast<double>(freqs[j] * static_cast<std::int64_t>(k) %
                                               static_cast<std::int64_t>(points)) /
                           static_cast<double>(points);
      f += coeffs[j] * std::polar(1.0, 2.0 * std::numbers::pi * phase);
    }
    sum += std::pow(std::abs(f), p);
  }
  return std::pow(sum / static_cast<double>(points), 1.0 / p);
}

inline double log_binomial_coefficient(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

inline double binomial_pmf(std::int64_t n, double prob, std::int64_t k) {
  if (prob <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (prob >= 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_binomial_coefficient(n, k) + static_cast<double>(k) * std::log(prob) +
                  static_cast<double>(n - k) * std::log1p(-prob));
}

/// P(lo <= Binomial(n, prob) <= hi).
inline double binomial_window_probability(std::int64_t n, double prob, double lo, double hi) {
  double total = 0.0;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (static_cast<double>(k) >= lo && static_cast<double>(k) <= hi) total += binomial_pmf(n, prob, k);
  }
  return total;
}

/// E[X^q] for X ~ Binomial(n, prob).
inline double binomial_moment(std::int64_t n, double prob, double q) {
  double total = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) total += binomial_pmf(n, prob, k) * std::pow(k, q);
  return total;
}

/// Exact E || sum_{n in S} e(nx) ||_4^4 for S = {n in [1, N] : xi_n = 1},
/// xi_n i.i.d. Bernoulli(tau): each ordered solution of n1 + n2 = n3 + n4
/// contributes tau^(number of distinct values among n1..n4).
inline double expected_bernoulli_energy(std::int64_t n, double tau) {
  double total = 0.0;
  for (std::int64_t k = 2; k <= 2 * n; ++k) {
    const auto r = static_cast<double>(std::min(k - 1, 2 * n + 1 - k));  // ordered pairs
    const double d = (k % 2 == 0) ? 1.0 : 0.0;                            // pair (k/2, k/2)
    const double one = d;
    const double two = 2.0 * (r - d);
    const double three = 2.0 * d * (r - d);
    const double four = r * r - one - two - three;
    total += one * tau + two * tau * tau + three * std::pow(tau, 3) + four * std::pow(tau, 4);
  }
  return total;
}

/// Exact E I_{2m} for the perturbed progression by enumerating every
/// outcome of (eta_1, ..., eta_L), each uniform on 2s+1 integers.
inline double expected_perturbed_ap_energy(std::int64_t l, std::int64_t s, std::int64_t a,
                                           std::int64_t b, int m) {
  const std::int64_t width = 2 * s + 1;
  std::int64_t outcomes = 1;
  for (std::int64_t j = 0; j < l; ++j) outcomes *= width;
  double total = 0.0;
  std::vector<std::int64_t> set(static_cast<std::size_t>(l));
  for (std::int64_t code = 0; code < outcomes; ++code) {
    std::int64_t rest = code;
    for (std::int64_t j = 1; j <= l; ++j) {
      set[static_cast<std::size_t>(j - 1)] = b + a * j - s + rest % width;
      rest /= width;
    }
    total += static_cast<double>(tuple_energy(set, m));
  }
  return total / static_cast<double>(outcomes);
}

}  // namespace oracle
