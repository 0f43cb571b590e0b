#pragma once

// Search for the point maximizing min(mu_1, mu_2) between two fuzzified
// cuboids whose crisp cuboids are disjoint.
//
// Between the closest points a and b, the log-membership of each fuzzified
// cuboid is  log(mu0) - c * N(x - anchor)  with N a weighted sum of weighted
// Euclidean norms, hence concave. Their minimum is concave too, so the problem
// is a convex minimization of F(x) = max(-L1(x), -L2(x)). It is solved with a
// central-cut ellipsoid method over the dimensions on which a and b differ,
// then the optimum is moved onto the equal-membership surface by bisection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "cspace/error.hpp"
#include "cspace/space.hpp"

namespace cspace::detail {

/// Membership of a fuzzified cuboid seen from inside the a-b box, where the
/// distance to the cuboid is the distance to its closest point `anchor`.
struct AnchoredMembership {
  const Metric* metric;
  double c;
  double log_mu0;
  const Point* anchor;

  double log_membership(const Point& x) const {
    return log_mu0 - c * metric->norm([&](DimIndex d) { return x[d] - (*anchor)[d]; });
  }

  double membership(const Point& x) const { return std::exp(log_membership(x)); }

  /// Adds the gradient of -log_membership over the free dimensions to `grad`.
  void add_descent_gradient(const Point& x, const std::vector<DimIndex>& free, std::vector<double>& grad) const {
    for (const auto& term : metric->terms()) {
      double sq = 0.0;
      for (const auto& dim : term.dims) {
        const double v = x[dim.index] - (*anchor)[dim.index];
        sq += dim.weight * v * v;
      }
      if (sq <= 0.0) continue;  // zero is a valid subgradient at the kink
      const double scale = c * term.weight / std::sqrt(sq);
      for (std::size_t k = 0; k < free.size(); ++k) {
        for (const auto& dim : term.dims) {
          if (dim.index == free[k]) grad[k] += scale * dim.weight * (x[dim.index] - (*anchor)[dim.index]);
        }
      }
    }
  }
};

struct CrossingSearchSettings {
  std::size_t max_iterations = 10000;
  double gap_tolerance = 1e-13;    // on max(-log mu_1, -log mu_2)
  double equality_tolerance = 1e-10;  // on |mu_1 - mu_2| at the returned point
};

struct CrossingSearchResult {
  Point point;
  double alpha;
  std::size_t iterations;
};

inline CrossingSearchResult search_crossing(const AnchoredMembership& m1, const AnchoredMembership& m2,
                                            const Point& a, const Point& b, const std::vector<DimIndex>& free,
                                            const CrossingSearchSettings& settings = {}) {
  const std::size_t k = free.size();
  auto objective = [&](const Point& x) { return std::max(-m1.log_membership(x), -m2.log_membership(x)); };

  Point x = a;
  std::vector<double> lo(k), hi(k);
  std::vector<double> P(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const DimIndex d = free[i];
    lo[i] = std::min(a[d], b[d]);
    hi[i] = std::max(a[d], b[d]);
    x[d] = (a[d] + b[d]) / 2.0;
    const double half = (hi[i] - lo[i]) / 2.0;
    P[i * k + i] = static_cast<double>(k) * half * half;
  }

  Point best = x;
  double best_f = objective(x);
  double lower = -std::numeric_limits<double>::infinity();
  std::size_t it = 0;
  std::vector<double> g(k), Pg(k);
  const double kd = static_cast<double>(k);

  for (; it < settings.max_iterations; ++it) {
    std::fill(g.begin(), g.end(), 0.0);
    bool feasibility_cut = false;
    for (std::size_t i = 0; i < k; ++i) {
      const double v = x[free[i]];
      if (v < lo[i]) {
        g[i] = -1.0;
        feasibility_cut = true;
        break;
      }
      if (v > hi[i]) {
        g[i] = 1.0;
        feasibility_cut = true;
        break;
      }
    }
    if (!feasibility_cut) {
      const double l1 = m1.log_membership(x);
      const double l2 = m2.log_membership(x);
      const double f = std::max(-l1, -l2);
      if (f < best_f) {
        best_f = f;
        best = x;
      }
      (-l1 >= -l2 ? m1 : m2).add_descent_gradient(x, free, g);
    }

    double gPg = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      Pg[i] = 0.0;
      for (std::size_t j = 0; j < k; ++j) Pg[i] += P[i * k + j] * g[j];
      gPg += g[i] * Pg[i];
    }
    if (!(gPg > 0.0)) break;  // zero subgradient: x is optimal
    const double width = std::sqrt(gPg);
    if (!feasibility_cut) {
      lower = std::max(lower, objective(x) - width);
      if (best_f - lower <= settings.gap_tolerance) break;
    }

    for (std::size_t i = 0; i < k; ++i) {
      Pg[i] /= width;
      x[free[i]] -= Pg[i] / (kd + 1.0);
    }
    const double scale = kd * kd / (kd * kd - 1.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        P[i * k + j] = scale * (P[i * k + j] - 2.0 / (kd + 1.0) * Pg[i] * Pg[j]);
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const double s = (P[i * k + j] + P[j * k + i]) / 2.0;
        P[i * k + j] = P[j * k + i] = s;
      }
    }
  }
  if (best_f - lower > 1e-9 && it >= settings.max_iterations) {
    throw NumericFailureError("crossing-point search did not converge within " +
                              std::to_string(settings.max_iterations) + " iterations");
  }

  // Move onto mu_1 = mu_2 along the segment toward a (if mu_1 is too low) or b.
  const double diff0 = m1.log_membership(best) - m2.log_membership(best);
  const Point& target = diff0 < 0.0 ? a : b;
  auto at = [&](double s) {
    Point p = best;
    for (DimIndex d : free) p[d] = best[d] + s * (target[d] - best[d]);
    return p;
  };
  double s_lo = 0.0;
  double s_hi = 1.0;
  Point x_star = best;
  for (int step = 0; step < 200 && diff0 != 0.0; ++step) {
    const double s = (s_lo + s_hi) / 2.0;
    x_star = at(s);
    const double diff = m1.log_membership(x_star) - m2.log_membership(x_star);
    if (diff == 0.0) break;
    if ((diff < 0.0) == (diff0 < 0.0)) {
      s_lo = s;
    } else {
      s_hi = s;
    }
    if (s_hi - s_lo <= 1e-17) break;
  }
  const double mu1 = m1.membership(x_star);
  const double mu2 = m2.membership(x_star);
  if (std::abs(mu1 - mu2) > settings.equality_tolerance) {
    throw NumericFailureError("crossing point violates membership equality by " + std::to_string(std::abs(mu1 - mu2)));
  }
  return {x_star, mu1, it};
}

}  // namespace cspace::detail
