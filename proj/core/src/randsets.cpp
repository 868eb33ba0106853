#include "majorant_lab/randsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "majorant_lab/error.hpp"

namespace majorant_lab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

BoxBounds line_box(std::int64_t n) { return BoxBounds{n, {1.0}}; }

void require(bool condition, const char* parameter, const std::string& constraint) {
  if (!condition) throw ValidationError(parameter, "violates " + constraint);
}

void require_delta(double delta) {
  require(delta >= 0.0 && delta < 1.0, "delta", "0 <= delta < 1");
}

void validate_base(const BaseModel& base) {
  std::visit(Overloaded{
                 [](const BernoulliSelector& m) {
                   require(m.n >= 1, "n", "N >= 1");
                   require_delta(m.delta);
                 },
                 [](const PerturbedAP& m) {
                   require(m.n >= 1, "n", "N >= 1");
                   require(m.l >= 1, "l", "L >= 1");
                   require(m.s >= 1, "s", "s >= 1");
                   require(2 * m.s < m.a, "a", "2s < a");
                   require(m.b > 0 && m.b < m.a, "b", "0 < b < a");
                   require(m.b + m.a * m.l + m.s <= m.n, "n", "b + aL + s <= N");
                 },
                 [](const BlockUniform& m) {
                   require(m.n >= 1, "n", "N >= 1");
                   require(m.l >= 1 && m.l <= m.n, "l", "1 <= L <= N");
                 },
                 [](const NestedBlock& m) {
                   require(m.n >= 1, "n", "N >= 1");
                   require(m.p > 4.0, "p", "p > 4");
                   require(m.p1 > m.p / 2.0 && m.p1 < m.p, "p1", "p/2 < p1 < p");
                   require(m.coarse_count() >= 1, "n", "floor(N^{2/p}) >= 1");
                   require(m.fine_per_coarse() >= 1, "p1", "s' = floor(L1/L) >= 1");
                   require(m.fine_size() >= 1, "n", "fine block size floor(floor(N/L)/s') >= 1");
                 },
                 [](const CorrelatedDyadic& m) {
                   require(m.n >= 1, "n", "N >= 1");
                   require_delta(m.delta);
                 },
                 [](const FullRange& m) { require(m.n >= 1, "n", "N >= 1"); },
             },
             base);
}

BaseModel as_base(const RandomSetModel& model) {
  return std::visit(Overloaded{
                        [](const CurveEmbedding&) -> BaseModel {
                          throw ValidationError("model", "nested curve embedding");
                        },
                        [](const auto& m) -> BaseModel { return m; },
                    },
                    model);
}

std::int64_t paraboloid_side(std::int64_t n) {
  auto m = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(n) / 2.0)));
  while ((m + 1) * (m + 1) * 2 <= n) ++m;
  while (m > 0 && m * m * 2 > n) --m;
  return m;
}

FrequencySet sample_bernoulli(std::int64_t n, double tau, SeededRng& rng) {
  std::vector<Frequency> out;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (rng.bernoulli(tau)) out.push_back({k});
  }
  return FrequencySet::in_box(std::move(out), line_box(n));
}

FrequencySet sample_correlated(const CorrelatedDyadic& m, SeededRng& rng) {
  // Bits of omega after the binary point, most significant first: bit b
  // (0-based) is bit (b % 64) from the top of word b / 64.
  const auto total_bits = static_cast<std::size_t>(m.n) + 64;
  std::vector<std::uint64_t> words(total_bits / 64 + 2);
  for (auto& w : words) w = rng.next_u64();

  const double tau = m.tau();
  std::vector<Frequency> out;
  if (tau >= 1.0) {
    for (std::int64_t j = 1; j <= m.n; ++j) out.push_back({j});
    return FrequencySet::in_box(std::move(out), line_box(m.n));
  }
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(static_cast<long double>(tau), 64));
  for (std::int64_t j = 1; j <= m.n; ++j) {
    // frac(2^j omega) = 0.b_{j+1} b_{j+2} ...; window of bits j+1 .. j+64.
    const auto bit = static_cast<std::size_t>(j);
    const std::size_t word = bit / 64;
    const unsigned offset = bit % 64;
    std::uint64_t window = words[word] << offset;
    if (offset != 0) window |= words[word + 1] >> (64 - offset);
    if (window < threshold) out.push_back({j});
  }
  return FrequencySet::in_box(std::move(out), line_box(m.n));
}

FrequencySet sample_base(const BaseModel& base, SeededRng& rng) {
  return std::visit(
      Overloaded{
          [&](const BernoulliSelector& m) { return sample_bernoulli(m.n, m.tau(), rng); },
          [&](const PerturbedAP& m) {
            std::vector<Frequency> out;
            out.reserve(static_cast<std::size_t>(m.l));
            for (std::int64_t j = 1; j <= m.l; ++j) {
              out.push_back({rng.uniform_int(m.center(j) - m.s, m.center(j) + m.s)});
            }
            return FrequencySet::in_box(std::move(out), line_box(m.n));
          },
          [&](const BlockUniform& m) {
            std::vector<Frequency> out;
            out.reserve(static_cast<std::size_t>(m.l));
            for (std::int64_t j = 0; j < m.l; ++j) {
              out.push_back({rng.uniform_int(m.block_first(j), m.block_last(j))});
            }
            return FrequencySet::in_box(std::move(out), line_box(m.n));
          },
          [&](const NestedBlock& m) {
            const auto coarse = m.coarse_count();
            const auto fine = m.fine_per_coarse();
            const auto coarse_size = m.coarse_size();
            const auto fine_size = m.fine_size();
            // Stage one: an element of every fine block.
            std::vector<std::int64_t> picks(static_cast<std::size_t>(coarse * fine));
            for (std::int64_t j = 0; j < coarse; ++j) {
              for (std::int64_t k = 0; k < fine; ++k) {
                const auto first = j * coarse_size + k * fine_size + 1;
                picks[static_cast<std::size_t>(j * fine + k)] =
                    rng.uniform_int(first, first + fine_size - 1);
              }
            }
            // Stage two: keep one fine block per coarse block.
            std::vector<Frequency> out;
            out.reserve(static_cast<std::size_t>(coarse));
            for (std::int64_t j = 0; j < coarse; ++j) {
              const auto k = rng.uniform_int(0, fine - 1);
              out.push_back({picks[static_cast<std::size_t>(j * fine + k)]});
            }
            return FrequencySet::in_box(std::move(out), line_box(m.n));
          },
          [&](const CorrelatedDyadic& m) { return sample_correlated(m, rng); },
          [&](const FullRange& m) { return full_range(m.n); },
      },
      base);
}

FrequencySet sample_paraboloid_base(const BaseModel& base, SeededRng& rng) {
  std::int64_t n = 0;
  double tau = 1.0;
  if (const auto* m = std::get_if<BernoulliSelector>(&base)) {
    n = m->n;
    tau = m->tau();
  } else if (const auto* f = std::get_if<FullRange>(&base)) {
    n = f->n;
  } else {
    throw ValidationError("kind", "paraboloid needs a Bernoulli or full-range base");
  }
  const auto side = paraboloid_side(n);
  std::vector<Frequency> out;
  for (std::int64_t a = 1; a <= side; ++a) {
    for (std::int64_t b = 1; b <= side; ++b) {
      if (tau >= 1.0 || rng.bernoulli(tau)) out.push_back({a, b});
    }
  }
  return FrequencySet::in_box(std::move(out), BoxBounds{n, {0.5, 0.5}});
}

}  // namespace

double BernoulliSelector::tau() const {
  return std::pow(static_cast<double>(n), -delta);
}

double CorrelatedDyadic::tau() const {
  return std::pow(static_cast<double>(n), -delta);
}

double PerturbedAP::critical_exponent() const {
  if (l <= 1) return std::numeric_limits<double>::infinity();
  return 2.0 * std::log(static_cast<double>(l * s)) / std::log(static_cast<double>(l));
}

double BlockUniform::critical_exponent() const {
  if (l <= 1) return std::numeric_limits<double>::infinity();
  return 2.0 * std::log(static_cast<double>(n)) / std::log(static_cast<double>(l));
}

std::int64_t NestedBlock::coarse_count() const { return floor_power(n, 2.0 / p); }
std::int64_t NestedBlock::fine_count() const { return floor_power(n, 2.0 / p1); }
std::int64_t NestedBlock::fine_per_coarse() const {
  const auto coarse = coarse_count();
  return coarse > 0 ? fine_count() / coarse : 0;
}
std::int64_t NestedBlock::coarse_size() const {
  const auto coarse = coarse_count();
  return coarse > 0 ? n / coarse : 0;
}
std::int64_t NestedBlock::fine_size() const {
  const auto per = fine_per_coarse();
  return per > 0 ? coarse_size() / per : 0;
}

std::int64_t floor_power(std::int64_t n, double exponent) {
  const double raw = std::pow(static_cast<double>(n), exponent);
  auto value = static_cast<std::int64_t>(std::floor(raw + 1e-9 * std::max(1.0, raw)));
  return value;
}

void validate(const RandomSetModel& model) {
  if (const auto* curve = std::get_if<CurveEmbedding>(&model)) {
    validate_base(curve->base);
    if (curve->kind == CurveKind::paraboloid) {
      const bool ok = std::holds_alternative<BernoulliSelector>(curve->base) ||
                      std::holds_alternative<FullRange>(curve->base);
      require(ok, "kind", "paraboloid base must be bernoulli or full range");
      std::int64_t n = std::visit([](const auto& m) { return m.n; }, curve->base);
      require(paraboloid_side(n) >= 1, "n", "floor(sqrt(N/2)) >= 1");
    }
    return;
  }
  validate_base(as_base(model));
}

std::int64_t scale_of(const RandomSetModel& model) {
  return std::visit(Overloaded{
                        [](const CurveEmbedding& c) {
                          return std::visit([](const auto& m) { return m.n; }, c.base);
                        },
                        [](const auto& m) { return m.n; },
                    },
                    model);
}

std::size_t dimension_of(const RandomSetModel& model) {
  if (const auto* curve = std::get_if<CurveEmbedding>(&model)) {
    switch (curve->kind) {
      case CurveKind::squares: return 1;
      case CurveKind::parabola: return 2;
      case CurveKind::paraboloid: return 3;
    }
  }
  return 1;
}

double selector_mean(const RandomSetModel& model) {
  const BaseModel base = std::holds_alternative<CurveEmbedding>(model)
                             ? std::get<CurveEmbedding>(model).base
                             : as_base(model);
  return std::visit(Overloaded{
                        [](const BernoulliSelector& m) { return m.tau(); },
                        [](const CorrelatedDyadic& m) { return m.tau(); },
                        [](const FullRange&) { return 1.0; },
                        [](const auto&) -> double {
                          throw ValidationError("model", "has no selector mean tau");
                        },
                    },
                    base);
}

double box_exponent_sum(const RandomSetModel& model) {
  if (const auto* curve = std::get_if<CurveEmbedding>(&model)) {
    switch (curve->kind) {
      case CurveKind::squares: return 2.0;
      case CurveKind::parabola: return 3.0;
      case CurveKind::paraboloid: return 2.0;
    }
  }
  return 1.0;
}

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::squares: return "squares";
    case CurveKind::parabola: return "parabola";
    case CurveKind::paraboloid: return "paraboloid";
  }
  return "unknown";
}

CurveKind curve_kind_from_string(const std::string& name) {
  if (name == "squares") return CurveKind::squares;
  if (name == "parabola") return CurveKind::parabola;
  if (name == "paraboloid") return CurveKind::paraboloid;
  throw ValidationError("kind", "unknown curve kind '" + name + "'");
}

std::string model_name(const RandomSetModel& model) {
  return std::visit(Overloaded{
                        [](const BernoulliSelector&) -> std::string { return "bernoulli"; },
                        [](const PerturbedAP&) -> std::string { return "perturbed_ap"; },
                        [](const BlockUniform&) -> std::string { return "block_uniform"; },
                        [](const NestedBlock&) -> std::string { return "nested_block"; },
                        [](const CorrelatedDyadic&) -> std::string { return "correlated_dyadic"; },
                        [](const FullRange&) -> std::string { return "full_range"; },
                        [](const CurveEmbedding& c) -> std::string {
                          return "curve_" + to_string(c.kind) + "_" +
                                 model_name(RandomSetModel(
                                     std::visit([](const auto& m) -> RandomSetModel { return m; },
                                                c.base)));
                        },
                    },
                    model);
}

FrequencySet sample(const RandomSetModel& model, SeededRng& rng) {
  validate(model);
  if (const auto* curve = std::get_if<CurveEmbedding>(&model)) {
    if (curve->kind == CurveKind::paraboloid) {
      return embed_curve(sample_paraboloid_base(curve->base, rng), curve->kind);
    }
    return embed_curve(sample_base(curve->base, rng), curve->kind);
  }
  return sample_base(as_base(model), rng);
}

FrequencySet embed_curve(const FrequencySet& base, CurveKind kind) {
  const std::size_t expected_dim = kind == CurveKind::paraboloid ? 2 : 1;
  if (base.dim() != expected_dim) {
    throw ValidationError("set", to_string(kind) + " needs a " + std::to_string(expected_dim) +
                                     "-dimensional base, got dimension " +
                                     std::to_string(base.dim()));
  }
  std::vector<Frequency> out;
  out.reserve(base.size());
  std::vector<double> exponents;
  for (const auto& n : base.freqs()) {
    switch (kind) {
      case CurveKind::squares: out.push_back({n[0] * n[0]}); break;
      case CurveKind::parabola: out.push_back({n[0], n[0] * n[0]}); break;
      case CurveKind::paraboloid: out.push_back({n[0], n[1], n[0] * n[0] + n[1] * n[1]}); break;
    }
  }
  switch (kind) {
    case CurveKind::squares: exponents = {2.0}; break;
    case CurveKind::parabola: exponents = {1.0, 2.0}; break;
    case CurveKind::paraboloid: exponents = {0.5, 0.5, 1.0}; break;
  }
  if (base.box()) return FrequencySet::in_box(std::move(out), BoxBounds{base.box()->scale, exponents});
  return FrequencySet::from_points(exponents.size(), std::move(out));
}

FrequencySet full_range(std::int64_t n) {
  if (n < 1) throw ValidationError("n", "N >= 1");
  std::vector<Frequency> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) out.push_back({k});
  return FrequencySet::in_box(std::move(out), line_box(n));
}

TrigPolynomial dirichlet(std::int64_t n) { return TrigPolynomial::all_ones(full_range(n)); }

PerturbedAP perturbed_ap_from_exponents(std::int64_t n, double eps0, double eps1, std::int64_t a,
                                        std::int64_t b) {
  if (!(eps0 > 0.0)) throw ValidationError("eps0", "must be positive");
  if (!(eps1 > 0.0)) throw ValidationError("eps1", "must be positive");
  PerturbedAP model{n, floor_power(n, eps0), floor_power(n, eps1), a, b};
  validate(model);
  return model;
}

}  // namespace majorant_lab
