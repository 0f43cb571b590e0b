#pragma once

// Reference computations written against raw arrays, without going through the
// library's metric, clamp or size code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cspace/cspace.hpp"

namespace oracle {

/// One domain of a raw weight structure.
struct RawDomain {
  double weight;
  std::vector<std::size_t> dims;
  std::vector<double> dim_weights;
};

/// A fuzzified union of boxes written out by hand.
struct RawConcept {
  std::vector<std::vector<double>> lo;
  std::vector<std::vector<double>> hi;
  double mu0;
  double c;
  std::vector<RawDomain> domains;
};

inline std::vector<RawDomain> raw_weights(const cspace::Weights& w) {
  std::vector<RawDomain> out;
  for (const auto& [id, dw] : w.domain_weights()) {
    RawDomain r{dw, {}, {}};
    for (const auto& [d, wd] : w.dimension_weights().at(id)) {
      r.dims.push_back(d);
      r.dim_weights.push_back(wd);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline RawConcept raw(const cspace::Concept& t) {
  RawConcept r{{}, {}, t.mu0(), t.c(), raw_weights(t.weights())};
  for (const auto& c : t.core().cuboids()) {
    r.lo.push_back(c.p_min());
    r.hi.push_back(c.p_max());
  }
  return r;
}

inline double distance(const std::vector<RawDomain>& w, const std::vector<double>& x, const std::vector<double>& y) {
  double total = 0.0;
  for (const auto& dom : w) {
    double sq = 0.0;
    for (std::size_t k = 0; k < dom.dims.size(); ++k) {
      const double v = x[dom.dims[k]] - y[dom.dims[k]];
      sq += dom.dim_weights[k] * v * v;
    }
    total += dom.weight * std::sqrt(sq);
  }
  return total;
}

// Distance from x to one box: per coordinate, the excess beyond the interval.
inline double box_distance(const std::vector<RawDomain>& w, const std::vector<double>& lo,
                           const std::vector<double>& hi, const std::vector<double>& x) {
  std::vector<double> nearest(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (x[d] < lo[d]) {
      nearest[d] = lo[d];
    } else if (x[d] > hi[d]) {
      nearest[d] = hi[d];
    } else {
      nearest[d] = x[d];
    }
  }
  return distance(w, x, nearest);
}

inline double membership(const RawConcept& t, const std::vector<double>& x) {
  double best = 0.0;
  for (std::size_t i = 0; i < t.lo.size(); ++i) {
    best = std::max(best, t.mu0 * std::exp(-t.c * box_distance(t.domains, t.lo[i], t.hi[i], x)));
  }
  return best;
}

/// max_x min(mu1(x), mu2(x)) by repeated grid refinement over `lo`..`hi`.
inline double max_min_membership(const RawConcept& t1, const RawConcept& t2, std::vector<double> lo,
                                 std::vector<double> hi, int points = 21, int rounds = 40) {
  const std::size_t n = lo.size();
  std::vector<double> best_x(n);
  double best = -1.0;
  std::size_t total = 1;
  for (std::size_t d = 0; d < n; ++d) total *= static_cast<std::size_t>(points);
  for (int round = 0; round < rounds; ++round) {
    std::vector<double> x(n);
    for (std::size_t g = 0; g < total; ++g) {
      std::size_t rem = g;
      for (std::size_t d = 0; d < n; ++d) {
        const double s = static_cast<double>(rem % points) / (points - 1);
        rem /= points;
        x[d] = lo[d] + s * (hi[d] - lo[d]);
      }
      const double v = std::min(membership(t1, x), membership(t2, x));
      if (v > best) {
        best = v;
        best_x = x;
      }
    }
    for (std::size_t d = 0; d < n; ++d) {
      const double half = (hi[d] - lo[d]) / 4.0;
      lo[d] = best_x[d] - half;
      hi[d] = best_x[d] + half;
    }
  }
  return best;
}

namespace detail {

// -log min(mu1, mu2) for single-box concepts; convex in x.
inline double neg_log_min(const RawConcept& t1, const RawConcept& t2, const std::vector<double>& x) {
  return std::max(t1.c * box_distance(t1.domains, t1.lo[0], t1.hi[0], x) - std::log(t1.mu0),
                  t2.c * box_distance(t2.domains, t2.lo[0], t2.hi[0], x) - std::log(t2.mu0));
}

// Minimizes over coordinates k.. by nested golden-section search; the partial
// minimum of a convex function stays convex, so each level is unimodal.
inline double nested_golden(const RawConcept& t1, const RawConcept& t2, std::vector<double>& x, std::size_t k,
                            const std::vector<double>& lo, const std::vector<double>& hi, int iters) {
  if (k == x.size()) return neg_log_min(t1, t2, x);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double v) {
    x[k] = v;
    return nested_golden(t1, t2, x, k + 1, lo, hi, iters);
  };
  double a = lo[k], b = hi[k];
  double p = b - g * (b - a), q = a + g * (b - a);
  double fp = f(p), fq = f(q);
  for (int i = 0; i < iters; ++i) {
    if (fp <= fq) {
      b = q;
      q = p;
      fq = fp;
      p = b - g * (b - a);
      fp = f(p);
    } else {
      a = p;
      p = q;
      fp = fq;
      q = a + g * (b - a);
      fq = f(q);
    }
  }
  const double best = std::min({fp, fq, f(a), f(b)});
  return best;
}

}  // namespace detail

/// max_x min(mu1(x), mu2(x)) for two single-box concepts, over lo..hi.
inline double max_min_membership_exact(const RawConcept& t1, const RawConcept& t2, const std::vector<double>& lo,
                                       const std::vector<double>& hi, int iters = 60) {
  std::vector<double> x(lo.size());
  return std::exp(-detail::nested_golden(t1, t2, x, 0, lo, hi, iters));
}

/// Integral of exp(-c * w_dom * ||u||_w) over the outer shell of one domain,
/// written as a sum over which coordinates lie outside the box.
inline double domain_integral(const RawDomain& dom, const std::vector<double>& lengths, double c) {
  const std::size_t k = dom.dims.size();
  double total = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    double term = 1.0;
    std::size_t outside = 0;
    double scale = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((mask >> j) & 1U) {
        ++outside;
        scale *= std::sqrt(dom.dim_weights[j]);
      } else {
        term *= lengths[j];
      }
    }
    // Over R^m: integral of exp(-a |u|) = m! * V_m / a^m with V_m the unit-ball volume.
    const double m = static_cast<double>(outside);
    const double ball = std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
    term *= std::tgamma(m + 1.0) * ball / (std::pow(c * dom.weight, m) * scale);
    total += term;
  }
  return total;
}

/// Size of one fuzzified box: the integrand factorizes over domains.
inline double box_size(const std::vector<RawDomain>& w, const std::vector<double>& lo, const std::vector<double>& hi,
                       double mu0, double c) {
  double product = mu0;
  for (const auto& dom : w) {
    std::vector<double> lengths;
    for (std::size_t d : dom.dims) lengths.push_back(hi[d] - lo[d]);
    product *= domain_integral(dom, lengths, c);
  }
  return product;
}

/// Inclusion-exclusion over crisp box intersections, each measured with box_size.
inline double concept_size(const RawConcept& t) {
  const std::size_t m = t.lo.size();
  double total = 0.0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<double> lo(t.lo[0].size(), -INFINITY);
    std::vector<double> hi(t.lo[0].size(), INFINITY);
    int count = 0;
    bool empty = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (((mask >> i) & 1U) == 0) continue;
      ++count;
      for (std::size_t d = 0; d < lo.size(); ++d) {
        lo[d] = std::max(lo[d], t.lo[i][d]);
        hi[d] = std::min(hi[d], t.hi[i][d]);
        if (lo[d] > hi[d]) empty = true;
      }
    }
    if (empty) continue;
    const double v = box_size(t.domains, lo, hi, t.mu0, t.c);
    total += count % 2 == 1 ? v : -v;
  }
  return total;
}

/// Size of a one-dimensional fuzzy interval.
inline double interval_size(double lo, double hi, double mu0, double c) { return mu0 * ((hi - lo) + 2.0 / c); }

/// Random spaces and concepts with a fixed generator.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  /// n dimensions split into randomly sized consecutive domains d0, d1, ...
  cspace::Space space(std::size_t n) {
    cspace::Space::DomainTable table;
    std::size_t d = 0;
    int id = 0;
    while (d < n) {
      const std::size_t len = 1 + index(n - d);
      auto& dims = table["d" + std::to_string(id++)];
      for (std::size_t k = 0; k < len; ++k) dims.push_back(d++);
    }
    return cspace::Space(n, std::move(table));
  }

  cspace::Weights weights(const cspace::Space& space, const cspace::DomainSet& domains) {
    cspace::Weights::DomainMap dom;
    cspace::Weights::DimensionTable dims;
    for (const auto& id : domains) {
      dom[id] = uniform(0.2, 2.0);
      for (auto d : space.dims_of(id)) dims[id][d] = uniform(0.2, 2.0);
    }
    return cspace::make_weights(std::move(dom), std::move(dims));
  }

  /// Box over `domains` around `anchor`, which it always contains.
  cspace::Cuboid cuboid(const cspace::Space& space, const cspace::DomainSet& domains, const std::vector<double>& anchor,
                        double spread = 0.3) {
    std::vector<double> lo(space.n_dims(), -INFINITY), hi(space.n_dims(), INFINITY);
    for (const auto& id : domains) {
      for (auto d : space.dims_of(id)) {
        lo[d] = anchor[d] - uniform(0.0, spread);
        hi[d] = anchor[d] + uniform(0.0, spread);
      }
    }
    return cspace::Cuboid(lo, hi, domains, space);
  }

  cspace::Concept concept_on(const cspace::Space& space, const cspace::DomainSet& domains, std::size_t max_cuboids = 3,
                             double center_spread = 1.0) {
    std::vector<double> anchor(space.n_dims());
    for (auto& v : anchor) v = uniform(-center_spread, center_spread);
    std::vector<cspace::Cuboid> cuboids;
    const std::size_t m = 1 + index(max_cuboids);
    for (std::size_t i = 0; i < m; ++i) cuboids.push_back(cuboid(space, domains, anchor));
    return cspace::Concept(cspace::make_core(std::move(cuboids), domains), uniform(0.1, 1.0), uniform(1.0, 20.0),
                           weights(space, domains));
  }

  cspace::Concept concept_in(const cspace::Space& space, std::size_t max_cuboids = 3) {
    return concept_on(space, space.domain_ids(), max_cuboids);
  }

  cspace::Point point(std::size_t n, double lo = -2.0, double hi = 2.0) {
    std::vector<double> x(n);
    for (auto& v : x) v = uniform(lo, hi);
    return cspace::Point(std::move(x));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool close_rel(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max(std::abs(want), 1e-300);
}

}  // namespace oracle
