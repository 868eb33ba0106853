#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace majorant_lab {

/// An integer frequency vector n in Z^d.
using Frequency = std::vector<std::int64_t>;

/// Records that coordinate i of every frequency lies in [1, ceil(scale^exponents[i])].
struct BoxBounds {
  std::int64_t scale = 1;
  std::vector<double> exponents;

  /// ceil(scale^exponents[i]), guarded against floating-point fuzz.
  std::int64_t upper(std::size_t coordinate) const;
  double exponent_sum() const;

  friend bool operator==(const BoxBounds&, const BoxBounds&) = default;
};

/// A finite set of distinct integer frequencies, kept in lexicographic order.
///
/// Sets built with `in_box` carry box metadata and are checked against it.
/// Sets built with `from_points` accept any integers (including zero and
/// negatives) and only require distinct vectors of a common dimension.
class FrequencySet {
 public:
  FrequencySet() = default;

  static FrequencySet from_points(std::size_t dim, std::vector<Frequency> freqs);
  static FrequencySet in_box(std::vector<Frequency> freqs, BoxBounds box);
  /// One-dimensional convenience.
  static FrequencySet from_integers(const std::vector<std::int64_t>& values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return freqs_.size(); }
  bool empty() const noexcept { return freqs_.empty(); }
  const std::vector<Frequency>& freqs() const noexcept { return freqs_; }
  const Frequency& operator[](std::size_t i) const { return freqs_[i]; }
  const std::optional<BoxBounds>& box() const noexcept { return box_; }

  /// Per-coordinate min over the set. Requires a nonempty set.
  Frequency min_coords() const;
  /// Per-coordinate max - min. Zero for an empty set.
  std::vector<std::int64_t> spread() const;
  bool contains(const Frequency& n) const;

  /// Adds `shift` to every frequency. The result carries no box metadata.
  FrequencySet translated(const Frequency& shift) const;

  friend bool operator==(const FrequencySet&, const FrequencySet&) = default;

 private:
  std::size_t dim_ = 1;
  std::vector<Frequency> freqs_;
  std::optional<BoxBounds> box_;
};

}  // namespace majorant_lab
