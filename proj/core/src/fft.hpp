#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace majorant_lab::detail {

enum class FftSign { forward = -1, backward = +1 };

/// Unnormalized in-place multidimensional DFT over a row-major array:
/// X[k] = sum_j x[j] exp(sign 2 pi i sum_i j_i k_i / M_i).
/// Safe to call concurrently; plans are cached process-wide.
void fft_inplace(std::span<std::complex<double>> data, std::span<const std::size_t> shape,
                 FftSign sign);

}  // namespace majorant_lab::detail
