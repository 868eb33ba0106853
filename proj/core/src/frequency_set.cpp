#include "majorant_lab/frequency_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "majorant_lab/error.hpp"

namespace majorant_lab {

std::int64_t BoxBounds::upper(std::size_t coordinate) const {
  const double raw = std::pow(static_cast<double>(scale), exponents.at(coordinate));
  return static_cast<std::int64_t>(std::ceil(raw - 1e-9 * std::max(1.0, raw)));
}

double BoxBounds::exponent_sum() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0.0);
}

FrequencySet FrequencySet::from_points(std::size_t dim, std::vector<Frequency> freqs) {
  if (dim == 0) throw ValidationError("dim", "must be positive");
  for (const auto& n : freqs) {
    if (n.size() != dim) {
      throw ValidationError("freqs", "vector of length " + std::to_string(n.size()) +
                                         " in a set of dimension " + std::to_string(dim));
    }
  }
  std::sort(freqs.begin(), freqs.end());
  if (std::adjacent_find(freqs.begin(), freqs.end()) != freqs.end()) {
    throw ValidationError("freqs", "frequencies must be distinct");
  }
  FrequencySet out;
  out.dim_ = dim;
  out.freqs_ = std::move(freqs);
  return out;
}

FrequencySet FrequencySet::in_box(std::vector<Frequency> freqs, BoxBounds box) {
  if (box.scale < 1) throw ValidationError("N", "scale must be >= 1");
  if (box.exponents.empty()) throw ValidationError("box_exponents", "must be nonempty");
  for (double a : box.exponents) {
    if (!(a > 0.0)) throw ValidationError("box_exponents", "must be positive");
  }
  FrequencySet out = from_points(box.exponents.size(), std::move(freqs));
  for (const auto& n : out.freqs_) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (n[i] < 1 || n[i] > box.upper(i)) {
        throw ValidationError("freqs", "coordinate " + std::to_string(i) + " value " +
                                           std::to_string(n[i]) + " outside [1, " +
                                           std::to_string(box.upper(i)) + "]");
      }
    }
  }
  out.box_ = std::move(box);
  return out;
}

FrequencySet FrequencySet::from_integers(const std::vector<std::int64_t>& values) {
  std::vector<Frequency> freqs;
  freqs.reserve(values.size());
  for (auto v : values) freqs.push_back({v});
  return from_points(1, std::move(freqs));
}

Frequency FrequencySet::min_coords() const {
  if (freqs_.empty()) throw ValidationError("support", "empty frequency set");
  Frequency lo = freqs_.front();
  for (const auto& n : freqs_) {
    for (std::size_t i = 0; i < dim_; ++i) lo[i] = std::min(lo[i], n[i]);
  }
  return lo;
}

std::vector<std::int64_t> FrequencySet::spread() const {
  std::vector<std::int64_t> out(dim_, 0);
  if (freqs_.empty()) return out;
  Frequency lo = freqs_.front();
  Frequency hi = freqs_.front();
  for (const auto& n : freqs_) {
    for (std::size_t i = 0; i < dim_; ++i) {
      lo[i] = std::min(lo[i], n[i]);
      hi[i] = std::max(hi[i], n[i]);
    }
  }
  for (std::size_t i = 0; i < dim_; ++i) out[i] = hi[i] - lo[i];
  return out;
}

bool FrequencySet::contains(const Frequency& n) const {
  return std::binary_search(freqs_.begin(), freqs_.end(), n);
}

FrequencySet FrequencySet::translated(const Frequency& shift) const {
  if (shift.size() != dim_) throw ValidationError("shift", "dimension mismatch");
  std::vector<Frequency> moved = freqs_;
  for (auto& n : moved) {
    for (std::size_t i = 0; i < dim_; ++i) n[i] += shift[i];
  }
  return from_points(dim_, std::move(moved));
}

}  // namespace majorant_lab
