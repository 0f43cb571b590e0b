#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cspace/core.hpp"
#include "cspace/cuboid.hpp"
#include "cspace/detail/crossing_search.hpp"
#include "cspace/error.hpp"
#include "cspace/space.hpp"
#include "cspace/weights.hpp"

namespace cspace {

/// Fuzzy simple star-shaped set: a core, the maximal membership mu0 in (0, 1],
/// the sensitivity c > 0 and salience weights over the core's domains.
class Concept {
 public:
  Concept(Core core, double mu0, double c, Weights weights)
      : core_(std::move(core)), mu0_(mu0), c_(c), weights_(std::move(weights)), metric_(weights_) {
    if (!(mu0_ > 0.0 && mu0_ <= 1.0)) throw ParameterError("mu0 must lie in (0, 1], got " + std::to_string(mu0_));
    if (!(c_ > 0.0) || !std::isfinite(c_)) throw ParameterError("c must be positive, got " + std::to_string(c_));
    if (weights_.domains() != core_.domains()) {
      throw DomainMismatchError("concept weights must cover exactly the core's domains");
    }
  }

  const Core& core() const noexcept { return core_; }
  double mu0() const noexcept { return mu0_; }
  double c() const noexcept { return c_; }
  const Weights& weights() const noexcept { return weights_; }
  const DomainSet& domains() const noexcept { return core_.domains(); }
  const detail::Metric& metric() const noexcept { return metric_; }

  friend bool operator==(const Concept& a, const Concept& b) {
    return a.core_ == b.core_ && a.mu0_ == b.mu0_ && a.c_ == b.c_ && a.weights_ == b.weights_;
  }

 private:
  Core core_;
  double mu0_;
  double c_;
  Weights weights_;
  detail::Metric metric_;
};

/// Membership of x in the fuzzified version of a single cuboid of `t`.
inline double cuboid_membership(const Concept& t, const Cuboid& cuboid, const Point& x) {
  const double dist = t.metric().norm([&](DimIndex d) {
    return x[d] - std::clamp(x[d], cuboid.p_min()[d], cuboid.p_max()[d]);
  });
  return t.mu0() * std::exp(-t.c() * dist);
}

/// mu0 * max over core points y of exp(-c * d(x, y)). The maximizing y in each
/// cuboid is the clamp of x into it.
inline double membership(const Concept& t, const Point& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& cuboid : t.core().cuboids()) {
    best = std::min(best, t.metric().norm([&](DimIndex d) {
      return x[d] - std::clamp(x[d], cuboid.p_min()[d], cuboid.p_max()[d]);
    }));
  }
  return t.mu0() * std::exp(-t.c() * best);
}

struct CrossingPoint {
  Point point;
  double alpha;
};

/// Point x* between the closest points a (of a cuboid of t1) and b (of a
/// cuboid of t2) where both fuzzified cuboids have equal membership and that
/// membership is maximal. Requires memberships to interleave: mu_1(b) < mu0 of
/// t2 and mu_2(a) < mu0 of t1.
inline CrossingPoint find_crossing_point(const Point& a, const Point& b, const Concept& t1, const Concept& t2) {
  std::vector<DimIndex> free;
  for (DimIndex d = 0; d < a.size(); ++d) {
    if (a[d] != b[d]) free.push_back(d);
  }
  const detail::AnchoredMembership m1{&t1.metric(), t1.c(), std::log(t1.mu0()), &a};
  const detail::AnchoredMembership m2{&t2.metric(), t2.c(), std::log(t2.mu0()), &b};
  if (free.empty()) return {a, std::min(t1.mu0(), t2.mu0())};

  if (free.size() == 1) {
    // Both log-memberships are linear in the offset from a, solve directly.
    const DimIndex d = free.front();
    const auto [dw1, ww1] = t1.weights().weights_of_dimension(d);
    const auto [dw2, ww2] = t2.weights().weights_of_dimension(d);
    const double s1 = t1.c() * dw1 * std::sqrt(ww1);
    const double s2 = t2.c() * dw2 * std::sqrt(ww2);
    const double gap = std::abs(b[d] - a[d]);
    const double offset = std::clamp((m1.log_mu0 - m2.log_mu0 + s2 * gap) / (s1 + s2), 0.0, gap);
    Point x = a;
    x[d] = b[d] > a[d] ? a[d] + offset : a[d] - offset;
    return {x, m1.membership(x)};
  }

  auto result = detail::search_crossing(m1, m2, a, b, free);
  return {std::move(result.point), result.alpha};
}

struct CuboidIntersection {
  double alpha;
  Cuboid cuboid;
};

namespace detail {

inline DomainSet domain_union(const DomainSet& a, const DomainSet& b) {
  DomainSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

// Bounding box of {x in `other` : membership in the fuzzified `cuboid` of `t` >= level}.
// The set is convex; its extent along d is reached by keeping every other
// coordinate at its smallest possible excess over `cuboid`.
inline Cuboid cut_box(const Concept& t, const Cuboid& cuboid, double level, const Cuboid& other,
                      const Point& inside) {
  const std::size_t n = cuboid.n_dims();
  const double radius = std::log(t.mu0() / level) / t.c();
  std::vector<double> gap(n, 0.0);
  for (DimIndex d = 0; d < n; ++d) {
    gap[d] = std::max({0.0, other.p_min()[d] - cuboid.p_max()[d], cuboid.p_min()[d] - other.p_max()[d]});
  }
  std::vector<double> lo = other.p_min();
  std::vector<double> hi = other.p_max();
  const auto& terms = t.metric().terms();
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    double rest = 0.0;
    for (std::size_t tj = 0; tj < terms.size(); ++tj) {
      if (tj == ti) continue;
      double sq = 0.0;
      for (const auto& dim : terms[tj].dims) sq += dim.weight * gap[dim.index] * gap[dim.index];
      rest += terms[tj].weight * std::sqrt(sq);
    }
    const double budget = std::max(0.0, radius - rest) / terms[ti].weight;
    for (const auto& dim : terms[ti].dims) {
      double base = 0.0;
      for (const auto& o : terms[ti].dims) {
        if (o.index != dim.index) base += o.weight * gap[o.index] * gap[o.index];
      }
      const double excess = std::sqrt(std::max(0.0, budget * budget - base) / dim.weight);
      const DimIndex d = dim.index;
      lo[d] = std::max(lo[d], cuboid.p_min()[d] - excess);
      hi[d] = std::min(hi[d], cuboid.p_max()[d] + excess);
      lo[d] = std::min(lo[d], inside[d]);
      hi[d] = std::max(hi[d], inside[d]);
    }
  }
  return Cuboid(trusted, std::move(lo), std::move(hi), domain_union(cuboid.domains(), other.domains()));
}

// Points on the i-faces (i = 1, 2, ...) of the a-b box where both fuzzified
// cuboids reach `alpha`. Each face is scanned on a 20-point grid over all but
// one free dimension; along the last one the equal-membership point is found
// by bisection. Stops at the first i that yields points.
inline std::vector<Point> face_level_points(const AnchoredMembership& m1, const AnchoredMembership& m2,
                                            const Point& a, const Point& b, const std::vector<DimIndex>& differing,
                                            double alpha) {
  constexpr std::size_t kGrid = 20;
  constexpr double kLevelTolerance = 1e-6;
  const std::size_t k = differing.size();
  std::vector<Point> found;
  for (std::size_t i = 1; i < k; ++i) {
    // Free-dimension subsets of size i as bitmasks over `differing`.
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != i) continue;
      std::vector<DimIndex> free, fixed;
      for (std::size_t j = 0; j < k; ++j) ((mask >> j) & 1U ? free : fixed).push_back(differing[j]);
      const DimIndex line_dim = free.back();
      free.pop_back();
      std::size_t grid_points = 1;
      for (std::size_t j = 0; j < free.size(); ++j) grid_points *= kGrid;
      for (std::size_t corner = 0; corner < (std::size_t{1} << fixed.size()); ++corner) {
        for (std::size_t g = 0; g < grid_points; ++g) {
          Point x = a;
          for (std::size_t j = 0; j < fixed.size(); ++j) x[fixed[j]] = ((corner >> j) & 1U) ? b[fixed[j]] : a[fixed[j]];
          std::size_t rem = g;
          for (DimIndex d : free) {
            const double s = static_cast<double>(rem % kGrid) / static_cast<double>(kGrid - 1);
            rem /= kGrid;
            x[d] = a[d] + s * (b[d] - a[d]);
          }
          auto diff_at = [&](double s) {
            x[line_dim] = a[line_dim] + s * (b[line_dim] - a[line_dim]);
            return m1.log_membership(x) - m2.log_membership(x);
          };
          // Moving from a toward b lowers mu_1 and raises mu_2.
          if (diff_at(0.0) < 0.0 || diff_at(1.0) > 0.0) continue;
          double s_lo = 0.0, s_hi = 1.0;
          for (int step = 0; step < 100 && s_hi - s_lo > 1e-16; ++step) {
            const double s = (s_lo + s_hi) / 2.0;
            (diff_at(s) > 0.0 ? s_lo : s_hi) = s;
          }
          diff_at((s_lo + s_hi) / 2.0);
          if (std::abs(m1.membership(x) - alpha) <= kLevelTolerance &&
              std::abs(m2.membership(x) - alpha) <= kLevelTolerance) {
            found.push_back(x);
          }
        }
      }
    }
    if (!found.empty()) break;
  }
  return found;
}

}  // namespace detail

/// Highest non-empty alpha-cut intersection of two fuzzified cuboids, c1 taken
/// from t1 and c2 from t2, approximated by a cuboid.
inline CuboidIntersection intersect_fuzzy_cuboids(const Cuboid& c1, const Cuboid& c2, const Concept& t1,
                                                  const Concept& t2) {
  if (auto crisp = intersect(c1, c2)) return {std::min(t1.mu0(), t2.mu0()), std::move(*crisp)};

  auto [a, b] = closest_points(c1, c2);
  if (cuboid_membership(t1, c1, b) >= t2.mu0()) {
    return {t2.mu0(), detail::cut_box(t1, c1, t2.mu0(), c2, b)};
  }
  if (cuboid_membership(t2, c2, a) >= t1.mu0()) {
    return {t1.mu0(), detail::cut_box(t2, c2, t1.mu0(), c1, a)};
  }

  std::vector<DimIndex> differing;
  std::set<DimIndex> differing_set;
  for (DimIndex d = 0; d < a.size(); ++d) {
    if (a[d] != b[d]) {
      differing.push_back(d);
      differing_set.insert(d);
    }
  }
  auto [x_star, alpha] = find_crossing_point(a, b, t1, t2);

  std::vector<Point> points;
  if (differing.size() >= 2 && linearly_dependent(t1.weights(), t2.weights(), differing_set)) {
    const detail::AnchoredMembership m1{&t1.metric(), t1.c(), std::log(t1.mu0()), &a};
    const detail::AnchoredMembership m2{&t2.metric(), t2.c(), std::log(t2.mu0()), &b};
    points = detail::face_level_points(m1, m2, a, b, differing, alpha);
  }
  points.push_back(x_star);

  // Bounding box on the differing dimensions, crisp overlap everywhere else.
  const std::size_t n = a.size();
  std::vector<double> lo(n), hi(n);
  for (DimIndex d = 0; d < n; ++d) {
    if (differing_set.count(d) != 0) {
      lo[d] = hi[d] = points.front()[d];
      for (const auto& p : points) {
        lo[d] = std::min(lo[d], p[d]);
        hi[d] = std::max(hi[d], p[d]);
      }
    } else {
      lo[d] = std::max(c1.p_min()[d], c2.p_min()[d]);
      hi[d] = std::min(c1.p_max()[d], c2.p_max()[d]);
    }
  }
  return {alpha, Cuboid(detail::trusted, std::move(lo), std::move(hi),
                        detail::domain_union(c1.domains(), c2.domains()))};
}

namespace detail {

// Drops cuboids contained in another one; of identical cuboids the first is kept.
inline std::vector<Cuboid> drop_contained(const std::vector<Cuboid>& cuboids) {
  std::vector<Cuboid> out;
  for (std::size_t i = 0; i < cuboids.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < cuboids.size() && !redundant; ++j) {
      if (i == j || !contains(cuboids[j], cuboids[i])) continue;
      redundant = !contains(cuboids[i], cuboids[j]) || j < i;
    }
    if (!redundant) out.push_back(cuboids[i]);
  }
  return out;
}

}  // namespace detail

/// Pair results within this distance of the best alpha join the new core.
inline constexpr double kAlphaTieTolerance = 1e-9;

/// Intersection: the core is the highest intersecting alpha-cut of both
/// concepts, approximated by cuboids and repaired if needed.
inline Concept intersect(const Concept& t1, const Concept& t2) {
  std::vector<CuboidIntersection> results;
  double best = 0.0;
  for (const auto& c1 : t1.core().cuboids()) {
    for (const auto& c2 : t2.core().cuboids()) {
      results.push_back(intersect_fuzzy_cuboids(c1, c2, t1, t2));
      best = std::max(best, results.back().alpha);
    }
  }
  std::vector<Cuboid> kept;
  for (auto& r : results) {
    if (r.alpha >= best - kAlphaTieTolerance) kept.push_back(std::move(r.cuboid));
  }
  DomainSet domains = detail::domain_union(t1.domains(), t2.domains());
  Core core = make_core(detail::repair(detail::drop_contained(kept)), domains);
  return Concept(std::move(core), best, std::min(t1.c(), t2.c()), interpolate(t1.weights(), t2.weights()));
}

inline Concept unify(const Concept& t1, const Concept& t2) {
  if (t1.domains() != t2.domains()) throw DomainMismatchError("union of concepts over different domains");
  return Concept(union_with_repair(t1.core(), t2.core()), std::max(t1.mu0(), t2.mu0()), std::min(t1.c(), t2.c()),
                 interpolate(t1.weights(), t2.weights()));
}

inline Concept project(const Concept& t, const DomainSet& kept, const Space& space) {
  return Concept(project_core(t.core(), kept, space), t.mu0(), t.c(), project_weights(t.weights(), kept));
}

/// Axis-parallel cut at x_dim = v. First element: the part with x_dim >= v.
inline std::pair<std::optional<Concept>, std::optional<Concept>> cut(const Concept& t, DimIndex dim, double v) {
  auto [plus, minus] = cut_core(t.core(), dim, v);
  std::optional<Concept> up, down;
  if (plus) up.emplace(std::move(*plus), t.mu0(), t.c(), t.weights());
  if (minus) down.emplace(std::move(*minus), t.mu0(), t.c(), t.weights());
  return {std::move(up), std::move(down)};
}

/// 1.0 iff the midpoint of `middle` lies between the midpoints of `first` and
/// `second` under the combined distance with uniform weights, else 0.0.
inline double between_concepts(const Concept& first, const Concept& middle, const Concept& second,
                               const Space& space, double tol = 1e-8) {
  return between(midpoint(first.core()), midpoint(middle.core()), midpoint(second.core()), uniform_weights(space),
                 space, tol)
             ? 1.0
             : 0.0;
}

/// Similarity of the two core midpoints, measured with c and the weights of
/// `context` (the second concept).
inline double similarity_concepts(const Concept& t, const Concept& context, const Space& space) {
  return similarity(midpoint(t.core()), midpoint(context.core()), context.c(), context.weights(), space);
}

}  // namespace cspace
