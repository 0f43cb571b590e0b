#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cspace/error.hpp"
#include "cspace/space.hpp"

namespace cspace {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {
struct TrustedTag {};
inline constexpr TrustedTag trusted{};
}  // namespace detail

/// Axis-parallel box over the domains in `domains()`. On every dimension of
/// those domains the bounds are finite with p_min <= p_max; on every other
/// dimension they are (-inf, +inf). Degenerate boxes are allowed.
class Cuboid {
 public:
  Cuboid(std::vector<double> p_min, std::vector<double> p_max, DomainSet domains, const Space& space)
      : p_min_(std::move(p_min)), p_max_(std::move(p_max)), domains_(std::move(domains)) {
    const std::size_t n = space.n_dims();
    if (p_min_.size() != n || p_max_.size() != n) {
      throw ParameterError("cuboid bounds must have " + std::to_string(n) + " entries");
    }
    for (const auto& id : domains_) {
      if (!space.has_domain(id)) throw DomainMismatchError("cuboid names unknown domain '" + id + "'");
    }
    for (DimIndex d = 0; d < n; ++d) {
      const double lo = p_min_[d];
      const double hi = p_max_[d];
      if (domains_.count(space.domain_of(d)) != 0) {
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
          throw ParameterError("cuboid bound on dimension " + std::to_string(d) + " of domain '" +
                               space.domain_of(d) + "' must be finite");
        }
        if (lo > hi) {
          throw ParameterError("cuboid has p_min > p_max on dimension " + std::to_string(d));
        }
      } else if (lo != -kInf || hi != kInf) {
        throw ParameterError("cuboid must be unbounded on dimension " + std::to_string(d) +
                             " outside its domains");
      }
    }
  }

  /// Skips validation. Callers guarantee the class invariant.
  Cuboid(detail::TrustedTag, std::vector<double> p_min, std::vector<double> p_max, DomainSet domains)
      : p_min_(std::move(p_min)), p_max_(std::move(p_max)), domains_(std::move(domains)) {}

  const std::vector<double>& p_min() const noexcept { return p_min_; }
  const std::vector<double>& p_max() const noexcept { return p_max_; }
  const DomainSet& domains() const noexcept { return domains_; }
  std::size_t n_dims() const noexcept { return p_min_.size(); }

  /// Dimensions on which the cuboid is bounded (those of its domains).
  bool bounded(DimIndex d) const { return std::isfinite(p_min_[d]); }

  friend bool operator==(const Cuboid&, const Cuboid&) = default;

 private:
  std::vector<double> p_min_;
  std::vector<double> p_max_;
  DomainSet domains_;
};

/// Midpoint of an interval; 0 if both ends are infinite, the finite end if
/// only one is.
inline double interval_midpoint(double lo, double hi) {
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (lo_inf && hi_inf) return 0.0;
  if (lo_inf) return hi;
  if (hi_inf) return lo;
  return (lo + hi) / 2.0;
}

inline bool contains(const Cuboid& c, const Point& x) {
  for (DimIndex d = 0; d < c.n_dims(); ++d) {
    if (x[d] < c.p_min()[d] || x[d] > c.p_max()[d]) return false;
  }
  return true;
}

/// True iff every point of `inner` lies in `outer`.
inline bool contains(const Cuboid& outer, const Cuboid& inner) {
  for (DimIndex d = 0; d < outer.n_dims(); ++d) {
    if (inner.p_min()[d] < outer.p_min()[d] || inner.p_max()[d] > outer.p_max()[d]) return false;
  }
  return true;
}

inline std::optional<Cuboid> intersect(const Cuboid& c1, const Cuboid& c2) {
  const std::size_t n = c1.n_dims();
  std::vector<double> lo(n), hi(n);
  for (DimIndex d = 0; d < n; ++d) {
    lo[d] = std::max(c1.p_min()[d], c2.p_min()[d]);
    hi[d] = std::min(c1.p_max()[d], c2.p_max()[d]);
    if (lo[d] > hi[d]) return std::nullopt;
  }
  DomainSet domains = c1.domains();
  domains.insert(c2.domains().begin(), c2.domains().end());
  return Cuboid(detail::trusted, std::move(lo), std::move(hi), std::move(domains));
}

/// The point of `c` closest to `x` (componentwise clamp).
inline Point clamp(const Cuboid& c, const Point& x) {
  std::vector<double> out(x.size());
  for (DimIndex d = 0; d < x.size(); ++d) out[d] = std::clamp(x[d], c.p_min()[d], c.p_max()[d]);
  return Point(std::move(out));
}

/// Closest pair a in c1, b in c2. On dimensions where the intervals overlap
/// both coordinates sit at the overlap midpoint; elsewhere they are the facing
/// interval ends.
inline std::pair<Point, Point> closest_points(const Cuboid& c1, const Cuboid& c2) {
  const std::size_t n = c1.n_dims();
  std::vector<double> a(n), b(n);
  for (DimIndex d = 0; d < n; ++d) {
    const double lo = std::max(c1.p_min()[d], c2.p_min()[d]);
    const double hi = std::min(c1.p_max()[d], c2.p_max()[d]);
    if (lo <= hi) {
      a[d] = b[d] = interval_midpoint(lo, hi);
    } else if (c1.p_max()[d] < c2.p_min()[d]) {
      a[d] = c1.p_max()[d];
      b[d] = c2.p_min()[d];
    } else {
      a[d] = c1.p_min()[d];
      b[d] = c2.p_max()[d];
    }
  }
  return {Point(std::move(a)), Point(std::move(b))};
}

/// Forgets the bounds on all domains not in `kept`.
inline Cuboid project_cuboid(const Cuboid& c, const DomainSet& kept, const Space& space) {
  if (kept.empty()) throw ParameterError("projection needs at least one domain");
  for (const auto& id : kept) {
    if (c.domains().count(id) == 0) {
      throw ParameterError("cannot project onto domain '" + id + "': cuboid is not defined on it");
    }
  }
  std::vector<double> lo = c.p_min();
  std::vector<double> hi = c.p_max();
  for (DimIndex d = 0; d < c.n_dims(); ++d) {
    if (kept.count(space.domain_of(d)) == 0) {
      lo[d] = -kInf;
      hi[d] = kInf;
    }
  }
  return Cuboid(detail::trusted, std::move(lo), std::move(hi), kept);
}

/// Smallest cuboid over `domains` containing every point. Dimensions outside
/// `domains` are left unbounded.
inline Cuboid bounding_box(const std::vector<Point>& points, const DomainSet& domains, const Space& space) {
  if (points.empty()) throw ParameterError("bounding box of an empty point set");
  for (const auto& p : points) space.check_point(p);
  const std::size_t n = space.n_dims();
  std::vector<double> lo(n), hi(n);
  for (DimIndex d = 0; d < n; ++d) {
    if (domains.count(space.domain_of(d)) == 0) {
      lo[d] = -kInf;
      hi[d] = kInf;
      continue;
    }
    lo[d] = hi[d] = points.front()[d];
    for (const auto& p : points) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  return Cuboid(std::move(lo), std::move(hi), domains, space);
}

/// Replaces the bounds on the listed dimensions. A bounded dimension must stay
/// bounded and an unbounded one must stay (-inf, +inf).
inline Cuboid extrude(const Cuboid& c, const std::map<DimIndex, std::pair<double, double>>& ranges) {
  std::vector<double> lo = c.p_min();
  std::vector<double> hi = c.p_max();
  for (const auto& [d, range] : ranges) {
    if (d >= c.n_dims()) throw ParameterError("extrusion names dimension " + std::to_string(d) + " out of range");
    const auto [r_lo, r_hi] = range;
    if (!(r_lo <= r_hi)) throw ParameterError("extrusion range has lo > hi on dimension " + std::to_string(d));
    const bool finite = std::isfinite(r_lo) && std::isfinite(r_hi);
    if (c.bounded(d) ? !finite : (r_lo != -kInf || r_hi != kInf)) {
      throw ParameterError("extrusion would change whether dimension " + std::to_string(d) + " is bounded");
    }
    lo[d] = r_lo;
    hi[d] = r_hi;
  }
  return Cuboid(detail::trusted, std::move(lo), std::move(hi), c.domains());
}

/// Componentwise midpoint, using interval_midpoint() on unbounded dimensions.
inline Point center(const Cuboid& c) {
  std::vector<double> out(c.n_dims());
  for (DimIndex d = 0; d < c.n_dims(); ++d) out[d] = interval_midpoint(c.p_min()[d], c.p_max()[d]);
  return Point(std::move(out));
}

/// Minimal componentwise enlargement of `c` so that it contains `x`.
inline Cuboid enlarge_to(const Cuboid& c, const Point& x) {
  std::vector<double> lo = c.p_min();
  std::vector<double> hi = c.p_max();
  for (DimIndex d = 0; d < c.n_dims(); ++d) {
    lo[d] = std::min(lo[d], x[d]);
    hi[d] = std::max(hi[d], x[d]);
  }
  return Cuboid(detail::trusted, std::move(lo), std::move(hi), c.domains());
}

}  // namespace cspace
