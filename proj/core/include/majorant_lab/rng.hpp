#pragma once

#include <array>
#include <cstdint>

namespace majorant_lab {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream keyed by (master_seed, stream_id).
///
/// Draw k of a stream is Philox applied to the counter (k, stream_id) under
/// the key master_seed, so streams are independent of call order between
/// streams and reproducible bit for bit on every platform. All derived
/// variates use integer arithmetic or IEEE-exact scaling only, except
/// `gaussian`, which relies on libm log/cos/sin.
class SeededRng {
 public:
  SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform integer on [lo, hi], unbiased (Lemire's multiply-and-reject).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double probability);
  /// Standard normal via Box-Muller; consumes two 53-bit uniforms per pair.
  double gaussian();

 private:
  void refill();

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_counter_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  bool has_spare_gaussian_ = false;
  double spare_gaussian_ = 0.0;
};

/// Mixes two 64-bit words into a derived seed (SplitMix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace majorant_lab
