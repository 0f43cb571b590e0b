#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cspace/error.hpp"
#include "cspace/weights.hpp"

namespace cspace {

/// A location in the conceptual space, one coordinate per quality dimension.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t d) const { return coords_[d]; }
  double& operator[](std::size_t d) { return coords_[d]; }
  const std::vector<double>& coords() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Domain structure of a conceptual space: the dimension indices
/// 0..n_dims-1 partitioned into named domains.
class Space {
 public:
  using DomainTable = std::map<DomainId, std::vector<DimIndex>>;

  Space(std::size_t n_dims, DomainTable domains) : n_dims_(n_dims), domains_(std::move(domains)) {
    owner_.assign(n_dims_, DomainId{});
    for (const auto& [id, dims] : domains_) {
      if (id.empty()) throw ParameterError("domain identifiers must not be empty");
      if (dims.empty()) throw ParameterError("domain '" + id + "' has no dimensions");
      for (DimIndex d : dims) {
        if (d >= n_dims_) {
          throw ParameterError("domain '" + id + "' names dimension " + std::to_string(d) +
                               " outside 0.." + std::to_string(n_dims_ - 1));
        }
        if (!owner_[d].empty()) {
          throw ParameterError("dimension " + std::to_string(d) + " belongs to both '" + owner_[d] +
                               "' and '" + id + "'");
        }
        owner_[d] = id;
      }
    }
    for (DimIndex d = 0; d < n_dims_; ++d) {
      if (owner_[d].empty()) {
        throw ParameterError("dimension " + std::to_string(d) + " belongs to no domain");
      }
    }
  }

  std::size_t n_dims() const noexcept { return n_dims_; }
  const DomainTable& domains() const noexcept { return domains_; }
  const DomainId& domain_of(DimIndex d) const { return owner_.at(d); }
  bool has_domain(const DomainId& id) const { return domains_.count(id) != 0; }

  const std::vector<DimIndex>& dims_of(const DomainId& id) const {
    auto it = domains_.find(id);
    if (it == domains_.end()) throw DomainMismatchError("unknown domain '" + id + "'");
    return it->second;
  }

  DomainSet domain_ids() const {
    DomainSet out;
    for (const auto& [id, dims] : domains_) out.insert(id);
    return out;
  }

  void check_point(const Point& x) const {
    if (x.size() != n_dims_) {
      throw ParameterError("point has " + std::to_string(x.size()) + " coordinates, space has " +
                           std::to_string(n_dims_));
    }
    for (double v : x) {
      if (!std::isfinite(v)) throw ParameterError("point coordinates must be finite");
    }
  }

  /// Throws unless every domain of `w` exists here with exactly the same dimensions.
  void check_weights(const Weights& w) const {
    for (const auto& [id, dims] : w.dimension_weights()) {
      auto it = domains_.find(id);
      if (it == domains_.end()) throw DomainMismatchError("weights name unknown domain '" + id + "'");
      if (it->second.size() != dims.size()) {
        throw DomainMismatchError("weights of domain '" + id + "' do not match its dimensions");
      }
      for (DimIndex d : it->second) {
        if (dims.count(d) == 0) {
          throw DomainMismatchError("weights of domain '" + id + "' do not match its dimensions");
        }
      }
    }
  }

  friend bool operator==(const Space& a, const Space& b) {
    return a.n_dims_ == b.n_dims_ && a.domains_ == b.domains_;
  }

 private:
  std::size_t n_dims_;
  DomainTable domains_;
  std::vector<DomainId> owner_;  // dimension -> domain
};

namespace detail {

/// Flattened form of a weight structure for the hot distance loops.
class Metric {
 public:
  struct Dim {
    DimIndex index;
    double weight;
  };
  struct Term {
    double weight;
    std::vector<Dim> dims;
  };

  Metric() = default;
  explicit Metric(const Weights& w) {
    for (const auto& [id, dw] : w.domain_weights()) {
      Term term{dw, {}};
      for (const auto& [d, wd] : w.dimension_weights().at(id)) term.dims.push_back({d, wd});
      terms_.push_back(std::move(term));
    }
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Weighted sum over domains of weighted Euclidean norms of `diff`.
  template <typename Diff>
  double norm(const Diff& diff) const {
    double total = 0.0;
    for (const auto& term : terms_) {
      double sq = 0.0;
      for (const auto& dim : term.dims) {
        const double v = diff(dim.index);
        sq += dim.weight * v * v;
      }
      total += term.weight * std::sqrt(sq);
    }
    return total;
  }

  double distance(const Point& x, const Point& y) const {
    return norm([&](DimIndex d) { return x[d] - y[d]; });
  }

 private:
  std::vector<Term> terms_;
};

}  // namespace detail

/// Combined distance: Manhattan combination over the weight structure's
/// domains of weighted Euclidean distances inside each domain. Domains of the
/// space that the weights do not mention do not contribute.
inline double combined_distance(const Point& x, const Point& y, const Weights& w, const Space& space) {
  space.check_point(x);
  space.check_point(y);
  space.check_weights(w);
  return detail::Metric(w).distance(x, y);
}

/// Betweenness under the combined distance: d(x,y) + d(y,z) equals d(x,z) up to `tol`.
inline bool between(const Point& x, const Point& y, const Point& z, const Weights& w, const Space& space,
                    double tol = 1e-10) {
  if (!(tol > 0.0)) throw ParameterError("betweenness tolerance must be positive");
  space.check_point(x);
  space.check_point(y);
  space.check_point(z);
  space.check_weights(w);
  const detail::Metric m(w);
  return std::abs(m.distance(x, y) + m.distance(y, z) - m.distance(x, z)) <= tol;
}

/// exp(-c * d(x, y)).
inline double similarity(const Point& x, const Point& y, double c, const Weights& w, const Space& space) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("sensitivity c must be positive");
  return std::exp(-c * combined_distance(x, y, w, space));
}

/// Weights with every domain weighted 1 and the dimensions of each domain
/// weighted equally.
inline Weights uniform_weights(const Space& space) {
  Weights::DomainMap dom;
  Weights::DimensionTable dims;
  for (const auto& [id, ds] : space.domains()) {
    dom[id] = 1.0;
    for (DimIndex d : ds) dims[id][d] = 1.0 / static_cast<double>(ds.size());
  }
  return make_weights(std::move(dom), std::move(dims));
}

}  // namespace cspace
