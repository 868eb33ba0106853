#pragma once

// Random frequency-set models and their samplers.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "majorant_lab/frequency_set.hpp"
#include "majorant_lab/rng.hpp"
#include "majorant_lab/trigpoly.hpp"

namespace majorant_lab {

/// Each n in [1, N] kept independently with probability tau = N^-delta.
struct BernoulliSelector {
  std::int64_t n = 1;
  double delta = 0.5;

  double tau() const;
};

/// One uniform element from each window I_j = [(b + a j) - s, (b + a j) + s],
/// j = 1..L.
struct PerturbedAP {
  std::int64_t n = 1;
  std::int64_t l = 1;
  std::int64_t s = 1;
  std::int64_t a = 3;
  std::int64_t b = 1;

  std::int64_t center(std::int64_t j) const { return b + a * j; }
  /// The exponent p with L = (L s)^{2/p}.
  double critical_exponent() const;
};

/// One uniform element from each of L consecutive blocks of size
/// s = floor(N / L); the last block absorbs the remainder of [1, N].
struct BlockUniform {
  std::int64_t n = 1;
  std::int64_t l = 1;

  std::int64_t block_size() const { return n / l; }
  std::int64_t block_first(std::int64_t j) const { return j * block_size() + 1; }
  std::int64_t block_last(std::int64_t j) const {
    return j + 1 == l ? n : (j + 1) * block_size();
  }
  /// The exponent p with L = N^{2/p}.
  double critical_exponent() const;
};

/// Two-stage sampler for p > 4: one uniform element in each fine block, then
/// one uniformly chosen fine block inside each coarse block.
///
/// L = floor(N^{2/p}) coarse blocks of size c = floor(N / L); each holds
/// s' = floor(L1 / L) fine blocks of size floor(c / s'), L1 = floor(N^{2/p1}).
struct NestedBlock {
  std::int64_t n = 1;
  double p = 6.0;
  double p1 = 4.0;

  std::int64_t coarse_count() const;
  std::int64_t fine_count() const;
  std::int64_t fine_per_coarse() const;
  std::int64_t coarse_size() const;
  std::int64_t fine_size() const;
};

/// xi_j(omega) = 1[frac(2^j omega) < tau] for a single uniform omega.
struct CorrelatedDyadic {
  std::int64_t n = 1;
  double delta = 0.5;

  double tau() const;
};

/// The deterministic set [1, N].
struct FullRange {
  std::int64_t n = 1;
};

enum class CurveKind { squares, parabola, paraboloid };

using BaseModel =
    std::variant<BernoulliSelector, PerturbedAP, BlockUniform, NestedBlock, CorrelatedDyadic,
                 FullRange>;

/// Lifts a base set onto {n^2}, {(n, n^2)} or {(n, m, n^2 + m^2)}.
///
/// For the paraboloid the base selects pairs (n, m) in [1, M]^2 with
/// M = floor(sqrt(N / 2)), so that n^2 + m^2 <= N; only Bernoulli and
/// full-range bases have a two-dimensional form.
struct CurveEmbedding {
  BaseModel base;
  CurveKind kind = CurveKind::squares;
};

using RandomSetModel = std::variant<BernoulliSelector, PerturbedAP, BlockUniform, NestedBlock,
                                    CorrelatedDyadic, FullRange, CurveEmbedding>;

/// Throws ValidationError naming the violated constraint.
void validate(const RandomSetModel& model);

/// Scale parameter N of any model.
std::int64_t scale_of(const RandomSetModel& model);
/// Dimension of the sets a model produces.
std::size_t dimension_of(const RandomSetModel& model);
/// Selector mean tau for Bernoulli-type models (possibly curve-embedded).
double selector_mean(const RandomSetModel& model);
/// Sum of box exponents of the ambient box of the model's sets.
double box_exponent_sum(const RandomSetModel& model);
std::string model_name(const RandomSetModel& model);

FrequencySet sample(const RandomSetModel& model, SeededRng& rng);

FrequencySet embed_curve(const FrequencySet& base, CurveKind kind);

FrequencySet full_range(std::int64_t n);
TrigPolynomial dirichlet(std::int64_t n);

/// PerturbedAP with L = floor(N^eps0) and s = floor(N^eps1).
PerturbedAP perturbed_ap_from_exponents(std::int64_t n, double eps0, double eps1, std::int64_t a,
                                        std::int64_t b);

/// floor(N^exponent), robust to pow() landing just below an integer.
std::int64_t floor_power(std::int64_t n, double exponent);

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& name);

// Set files: one frequency per line, coordinates comma-separated, sorted
// lexicographically. Blank lines and lines starting with '#' are ignored on
// read.
void write_frequency_set(std::ostream& os, const FrequencySet& set);
std::string format_frequency_set(const FrequencySet& set);
FrequencySet read_frequency_set(std::istream& is);

}  // namespace majorant_lab
