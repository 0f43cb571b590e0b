#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cspace/concept.hpp"
#include "cspace/cuboid.hpp"
#include "cspace/error.hpp"
#include "cspace/space.hpp"
#include "cspace/weights.hpp"

namespace cspace {

/// The sensitivity and weights under which sizes are evaluated.
struct MeasureContext {
  MeasureContext(double c_, Weights weights_) : c(c_), weights(std::move(weights_)) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("measure context needs c > 0");
  }

  double c;
  Weights weights;
};

/// Upper bound on the number of cuboids for inclusion-exclusion.
inline constexpr std::size_t kMaxSizeCuboids = 20;

namespace detail {

// n! * pi^(n/2) / Gamma(n/2 + 1), through log-Gamma.
inline double domain_factor(std::size_t n) {
  const double nd = static_cast<double>(n);
  return std::exp(std::lgamma(nd + 1.0) + nd / 2.0 * std::log(std::numbers::pi) - std::lgamma(nd / 2.0 + 1.0));
}

}  // namespace detail

/// Integral of the membership function of one fuzzified cuboid over the
/// dimensions of `ctx`. Evaluates the closed form term by term: for every
/// subset of dimensions, the product of a_d over the excluded dimensions times
/// the per-domain ball factors of the remaining structure.
inline double fuzzy_cuboid_hypervolume(const Cuboid& cuboid, double mu0, const MeasureContext& ctx) {
  struct Dim {
    std::size_t domain;
    double scale;  // w_delta * sqrt(w_d)
    double a;
  };
  std::vector<Dim> dims;
  std::size_t domain_count = 0;
  for (const auto& [id, dw] : ctx.weights.domain_weights()) {
    for (const auto& [d, wd] : ctx.weights.dimension_weights().at(id)) {
      if (d >= cuboid.n_dims() || !cuboid.bounded(d)) {
        throw UnboundedSizeError("cuboid is unbounded on measured dimension " + std::to_string(d));
      }
      const double scale = dw * std::sqrt(wd);
      dims.push_back({domain_count, scale, ctx.c * scale * (cuboid.p_max()[d] - cuboid.p_min()[d])});
    }
    ++domain_count;
  }
  const std::size_t n = dims.size();
  if (n >= 63) throw SizeLimitError("too many measured dimensions");

  std::vector<double> factor(n + 1);
  for (std::size_t k = 0; k <= n; ++k) factor[k] = detail::domain_factor(k);

  double sum = 0.0;
  std::vector<std::size_t> per_domain(domain_count);
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
    std::fill(per_domain.begin(), per_domain.end(), 0);
    double term = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if ((subset >> j) & 1U) {
        ++per_domain[dims[j].domain];
      } else {
        term *= dims[j].a;
      }
    }
    for (std::size_t count : per_domain) {
      if (count != 0) term *= factor[count];
    }
    sum += term;
  }
  double denom = std::pow(ctx.c, static_cast<double>(n));
  for (const auto& dim : dims) denom *= dim.scale;
  return mu0 * sum / denom;
}

/// Size of a concept by inclusion-exclusion over its cuboids. Crisp
/// intersections of cuboid subsets are measured with the concept's mu0; empty
/// ones contribute nothing. `ctx` defaults to the concept's own c and weights.
inline double concept_size(const Concept& t, const std::optional<MeasureContext>& ctx = std::nullopt) {
  const MeasureContext context = ctx ? *ctx : MeasureContext(t.c(), t.weights());
  if (context.weights.domains() != t.domains()) {
    throw DomainMismatchError("measure context must cover exactly the concept's domains");
  }
  const auto& cuboids = t.core().cuboids();
  const std::size_t m = cuboids.size();
  if (m > kMaxSizeCuboids) {
    throw SizeLimitError("size of a core with " + std::to_string(m) + " cuboids exceeds the limit of " +
                         std::to_string(kMaxSizeCuboids));
  }
  double total = 0.0;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << m); ++subset) {
    std::optional<Cuboid> acc;
    std::size_t count = 0;
    bool empty = false;
    for (std::size_t i = 0; i < m && !empty; ++i) {
      if (((subset >> i) & 1U) == 0) continue;
      ++count;
      acc = acc ? intersect(*acc, cuboids[i]) : std::optional<Cuboid>(cuboids[i]);
      empty = !acc.has_value();
    }
    if (empty) continue;
    const double v = fuzzy_cuboid_hypervolume(*acc, t.mu0(), context);
    total += (count % 2 == 1) ? v : -v;
  }
  return total;
}

/// Degree to which t1 is a subset of t2: size(t1 ∩ t2) / size(t1) with both
/// sizes measured under t2's sensitivity and weights. Both concepts are first
/// projected onto their common domains; without common domains the degree is 0.
inline double subsethood(const Concept& t1, const Concept& t2, const Space& space) {
  DomainSet common;
  for (const auto& id : t1.domains()) {
    if (t2.domains().count(id) != 0) common.insert(id);
  }
  if (common.empty()) return 0.0;
  const Concept p1 = common == t1.domains() ? t1 : project(t1, common, space);
  const Concept p2 = common == t2.domains() ? t2 : project(t2, common, space);
  const MeasureContext ctx(p2.c(), p2.weights());
  const double numerator = concept_size(intersect(p1, p2), ctx);
  const double denominator = concept_size(p1, ctx);
  return std::clamp(numerator / denominator, 0.0, 1.0);
}

/// Implication t1 => t2, defined as the subsethood of t1 in t2.
inline double implies(const Concept& t1, const Concept& t2, const Space& space) { return subsethood(t1, t2, space); }

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) for (seed, counter); independent of evaluation order.
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x632BE59BD9B4E019ULL));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct MonteCarloEstimate {
  double value;
  double std_error;
};

inline constexpr std::size_t kMinMonteCarloSamples = 10000;

/// Mean membership over uniform samples in `bounds` times its volume, with the
/// standard error of that estimate. Sample i, coordinate d uses counter
/// i * n_dims + d, so results depend only on the seed.
inline MonteCarloEstimate monte_carlo_estimate(const Concept& t, const Cuboid& bounds, std::size_t samples,
                                               std::uint64_t seed) {
  if (samples < kMinMonteCarloSamples) {
    throw ParameterError("Monte-Carlo size needs at least " + std::to_string(kMinMonteCarloSamples) + " samples");
  }
  const std::size_t n = bounds.n_dims();
  double volume = 1.0;
  for (DimIndex d = 0; d < n; ++d) {
    const double w = bounds.p_max()[d] - bounds.p_min()[d];
    if (!std::isfinite(w) || !(w > 0.0)) throw ParameterError("Monte-Carlo bounds must be finite with positive width");
    volume *= w;
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  Point x{std::vector<double>(n)};
  for (std::size_t i = 0; i < samples; ++i) {
    for (DimIndex d = 0; d < n; ++d) {
      const double u = detail::counter_uniform(seed, static_cast<std::uint64_t>(i) * n + d);
      x[d] = bounds.p_min()[d] + u * (bounds.p_max()[d] - bounds.p_min()[d]);
    }
    const double mu = membership(t, x);
    sum += mu;
    sum_sq += mu * mu;
  }
  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  const double variance = std::max(0.0, sum_sq / count - mean * mean);
  return {mean * volume, volume * std::sqrt(variance / (count - 1.0))};
}

inline double monte_carlo_size(const Concept& t, const Cuboid& bounds, std::size_t samples, std::uint64_t seed) {
  return monte_carlo_estimate(t, bounds, samples, seed).value;
}

/// Bounds around the core of `t` beyond which its membership is below
/// `cutoff`, measured along each axis alone.
inline Cuboid monte_carlo_bounds(const Concept& t, double cutoff = 1e-6) {
  const auto& front = t.core().cuboids().front();
  const std::size_t n = front.n_dims();
  std::vector<double> lo(n, kInf), hi(n, -kInf);
  for (const auto& c : t.core().cuboids()) {
    for (DimIndex d = 0; d < n; ++d) {
      if (!c.bounded(d)) throw UnboundedSizeError("concept is unbounded on dimension " + std::to_string(d));
      lo[d] = std::min(lo[d], c.p_min()[d]);
      hi[d] = std::max(hi[d], c.p_max()[d]);
    }
  }
  for (DimIndex d = 0; d < n; ++d) {
    const auto [dw, wd] = t.weights().weights_of_dimension(d);
    const double margin = std::log(t.mu0() / cutoff) / (t.c() * dw * std::sqrt(wd));
    lo[d] -= margin;
    hi[d] += margin;
  }
  return Cuboid(detail::trusted, std::move(lo), std::move(hi), t.domains());
}

}  // namespace cspace
