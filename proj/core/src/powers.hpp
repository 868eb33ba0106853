#pragma once

#include <cmath>

namespace majorant_lab::detail {

// Evaluates x^e for x >= 0 with multiplications and one sqrt when 2e is a
// small nonnegative integer, falling back to pow otherwise.
class SquarePower {
 public:
  explicit SquarePower(double exponent) : exponent_(exponent) {
    const double twice = 2.0 * exponent;
    if (twice >= 0.0 && twice <= 64.0 && twice == std::floor(twice)) {
      const auto k = static_cast<int>(twice);
      whole_ = k / 2;
      with_sqrt_ = (k % 2) == 1;
      fast_ = true;
    }
  }

  double operator()(double x) const {
    if (!fast_) return std::pow(x, exponent_);
    double out = with_sqrt_ ? std::sqrt(x) : 1.0;
    for (int k = 0; k < whole_; ++k) out *= x;
    return out;
  }

 private:
  double exponent_;
  int whole_ = 0;
  bool with_sqrt_ = false;
  bool fast_ = false;
};

}  // namespace majorant_lab::detail
