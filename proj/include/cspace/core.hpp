#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cspace/cuboid.hpp"
#include "cspace/error.hpp"
#include "cspace/space.hpp"

namespace cspace {

/// A simple star-shaped set: the union of cuboids over a common domain set
/// whose intersection (the central region) is non-empty.
class Core {
 public:
  const std::vector<Cuboid>& cuboids() const noexcept { return cuboids_; }
  const DomainSet& domains() const noexcept { return domains_; }

  friend bool operator==(const Core&, const Core&) = default;

 private:
  Core(std::vector<Cuboid> cuboids, DomainSet domains)
      : cuboids_(std::move(cuboids)), domains_(std::move(domains)) {}

  friend Core make_core(std::vector<Cuboid> cuboids, DomainSet domains);

  std::vector<Cuboid> cuboids_;
  DomainSet domains_;
};

namespace detail {

inline std::optional<Cuboid> common_intersection(const std::vector<Cuboid>& cuboids) {
  std::optional<Cuboid> acc = cuboids.front();
  for (std::size_t i = 1; i < cuboids.size() && acc; ++i) acc = intersect(*acc, cuboids[i]);
  return acc;
}

// Extends every cuboid toward the mean of all cuboid centers if they share no
// common point.
inline std::vector<Cuboid> repair(std::vector<Cuboid> cuboids) {
  if (common_intersection(cuboids)) return cuboids;
  const std::size_t n = cuboids.front().n_dims();
  std::vector<double> mean(n, 0.0);
  for (const auto& c : cuboids) {
    const Point m = center(c);
    for (DimIndex d = 0; d < n; ++d) mean[d] += m[d];
  }
  for (double& v : mean) v /= static_cast<double>(cuboids.size());
  const Point target(std::move(mean));
  for (auto& c : cuboids) c = enlarge_to(c, target);
  return cuboids;
}

}  // namespace detail

inline Core make_core(std::vector<Cuboid> cuboids, DomainSet domains) {
  if (cuboids.empty()) throw ParameterError("a core needs at least one cuboid");
  for (const auto& c : cuboids) {
    if (c.domains() != domains) throw DomainMismatchError("cuboid domains differ from the core's domains");
    if (c.n_dims() != cuboids.front().n_dims()) throw ParameterError("cuboids live in different spaces");
  }
  if (!detail::common_intersection(cuboids)) {
    throw EmptyIntersectionError("the cuboids of a core must have a non-empty common intersection");
  }
  return Core(std::move(cuboids), std::move(domains));
}

/// Intersection of all cuboids of the core.
inline Cuboid central_region(const Core& s) { return *detail::common_intersection(s.cuboids()); }

/// Center of the central region, with unbounded dimensions mapped by
/// interval_midpoint().
inline Point midpoint(const Core& s) { return center(central_region(s)); }

inline bool contains(const Core& s, const Point& x) {
  for (const auto& c : s.cuboids()) {
    if (contains(c, x)) return true;
  }
  return false;
}

/// Union of two cores over the same domains, repaired toward the mean cuboid
/// center when the combined cuboids have no common point.
inline Core union_with_repair(const Core& s1, const Core& s2) {
  if (s1.domains() != s2.domains()) throw DomainMismatchError("union of cores over different domains");
  std::vector<Cuboid> all = s1.cuboids();
  all.insert(all.end(), s2.cuboids().begin(), s2.cuboids().end());
  return make_core(detail::repair(std::move(all)), s1.domains());
}

/// Splits every cuboid at x_dim = v. First element holds the pieces with
/// x_dim >= v, second those with x_dim <= v. A cuboid touching v lands on both
/// sides; a side without pieces is empty.
inline std::pair<std::optional<Core>, std::optional<Core>> cut_core(const Core& s, DimIndex dim, double v) {
  const auto& front = s.cuboids().front();
  if (dim >= front.n_dims() || !front.bounded(dim)) {
    throw ParameterError("cut dimension " + std::to_string(dim) + " is not part of the core's domains");
  }
  if (!std::isfinite(v)) throw ParameterError("cut value must be finite");
  std::vector<Cuboid> plus, minus;
  for (const auto& c : s.cuboids()) {
    const double lo = c.p_min()[dim];
    const double hi = c.p_max()[dim];
    if (hi >= v) plus.push_back(lo >= v ? c : extrude(c, {{dim, {v, hi}}}));
    if (lo <= v) minus.push_back(hi <= v ? c : extrude(c, {{dim, {lo, v}}}));
  }
  std::optional<Core> up, down;
  if (!plus.empty()) up = make_core(std::move(plus), s.domains());
  if (!minus.empty()) down = make_core(std::move(minus), s.domains());
  return {std::move(up), std::move(down)};
}

inline Core project_core(const Core& s, const DomainSet& kept, const Space& space) {
  std::vector<Cuboid> out;
  out.reserve(s.cuboids().size());
  for (const auto& c : s.cuboids()) out.push_back(project_cuboid(c, kept, space));
  return make_core(std::move(out), kept);
}

}  // namespace cspace
