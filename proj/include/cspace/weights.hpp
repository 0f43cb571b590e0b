#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "cspace/error.hpp"

namespace cspace {

using DomainId = std::string;
using DomainSet = std::set<DomainId>;
using DimIndex = std::size_t;

/// Salience weights: one positive weight per domain and one per dimension
/// inside each domain. Domain weights sum to the number of domains, the
/// dimension weights of each domain sum to one. Only make_weights() and the
/// operations below produce values, so every Weights object is normalized.
class Weights {
 public:
  using DimensionMap = std::map<DimIndex, double>;
  using DomainMap = std::map<DomainId, double>;
  using DimensionTable = std::map<DomainId, DimensionMap>;

  const DomainMap& domain_weights() const noexcept { return domain_weights_; }
  const DimensionTable& dimension_weights() const noexcept { return dimension_weights_; }

  DomainSet domains() const {
    DomainSet out;
    for (const auto& [id, w] : domain_weights_) out.insert(id);
    return out;
  }

  bool has_domain(const DomainId& id) const { return domain_weights_.count(id) != 0; }

  double domain_weight(const DomainId& id) const {
    auto it = domain_weights_.find(id);
    if (it == domain_weights_.end()) throw DomainMismatchError("weights have no domain '" + id + "'");
    return it->second;
  }

  /// Weight of a single dimension together with the weight of its domain.
  std::pair<double, double> weights_of_dimension(DimIndex d) const {
    for (const auto& [id, dims] : dimension_weights_) {
      auto it = dims.find(d);
      if (it != dims.end()) return {domain_weights_.at(id), it->second};
    }
    throw DomainMismatchError("weights do not cover dimension " + std::to_string(d));
  }

  friend bool operator==(const Weights&, const Weights&) = default;

 private:
  Weights(DomainMap domain_weights, DimensionTable dimension_weights)
      : domain_weights_(std::move(domain_weights)), dimension_weights_(std::move(dimension_weights)) {}

  friend Weights make_weights(Weights::DomainMap raw_domain_w, Weights::DimensionTable raw_dim_w);

  DomainMap domain_weights_;
  DimensionTable dimension_weights_;
};

namespace detail {

// Rescales a group so that it sums to `target`. Groups already within a
// relative 1e-12 of the target are left bit-identical, which makes
// normalization idempotent.
template <typename Map>
void rescale_group(Map& group, double target) {
  double sum = 0.0;
  for (const auto& [key, w] : group) sum += w;
  if (std::abs(sum - target) <= 1e-12 * target) return;
  const double factor = target / sum;
  for (auto& [key, w] : group) w *= factor;
}

inline void check_positive(double w, const std::string& what) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw ParameterError(what + " must be a positive finite number, got " + std::to_string(w));
  }
}

}  // namespace detail

/// Builds normalized weights from arbitrary positive raw values. Ratios inside
/// each group are preserved.
inline Weights make_weights(Weights::DomainMap raw_domain_w, Weights::DimensionTable raw_dim_w) {
  if (raw_domain_w.empty()) throw ParameterError("weights need at least one domain");
  if (raw_domain_w.size() != raw_dim_w.size()) {
    throw DomainMismatchError("domain weights and dimension weights name different domains");
  }
  std::set<DimIndex> seen;
  for (const auto& [id, w] : raw_domain_w) {
    detail::check_positive(w, "weight of domain '" + id + "'");
    auto it = raw_dim_w.find(id);
    if (it == raw_dim_w.end()) {
      throw DomainMismatchError("no dimension weights for domain '" + id + "'");
    }
    if (it->second.empty()) throw ParameterError("domain '" + id + "' has no dimension weights");
    for (const auto& [d, wd] : it->second) {
      detail::check_positive(wd, "weight of dimension " + std::to_string(d));
      if (!seen.insert(d).second) {
        throw DomainMismatchError("dimension " + std::to_string(d) + " is weighted in two domains");
      }
    }
  }
  detail::rescale_group(raw_domain_w, static_cast<double>(raw_domain_w.size()));
  for (auto& [id, dims] : raw_dim_w) detail::rescale_group(dims, 1.0);
  return Weights(std::move(raw_domain_w), std::move(raw_dim_w));
}

/// Arithmetic mean of two weight structures, renormalized. A domain present in
/// only one argument keeps that argument's weights. Shared domains must cover
/// the same dimensions.
inline Weights interpolate(const Weights& w1, const Weights& w2) {
  Weights::DomainMap dom;
  Weights::DimensionTable dims;
  for (const auto& [id, w] : w1.domain_weights()) {
    dom[id] = w;
    dims[id] = w1.dimension_weights().at(id);
  }
  for (const auto& [id, w] : w2.domain_weights()) {
    const auto& other = w2.dimension_weights().at(id);
    auto it = dom.find(id);
    if (it == dom.end()) {
      dom[id] = w;
      dims[id] = other;
      continue;
    }
    auto& mine = dims[id];
    if (mine.size() != other.size()) {
      throw DomainMismatchError("domain '" + id + "' has different dimensions in the two weights");
    }
    it->second = (it->second + w) / 2.0;
    for (auto& [d, wd] : mine) {
      auto jt = other.find(d);
      if (jt == other.end()) {
        throw DomainMismatchError("domain '" + id + "' has different dimensions in the two weights");
      }
      wd = (wd + jt->second) / 2.0;
    }
  }
  return make_weights(std::move(dom), std::move(dims));
}

/// Drops the weights of all domains not in `kept` and renormalizes the domain
/// weights. Dimension weights of kept domains are untouched.
inline Weights project_weights(const Weights& w, const DomainSet& kept) {
  if (kept.empty()) throw ParameterError("projection needs at least one domain");
  Weights::DomainMap dom;
  Weights::DimensionTable dims;
  for (const auto& id : kept) {
    if (!w.has_domain(id)) {
      throw ParameterError("cannot project onto domain '" + id + "': not part of the weights");
    }
    dom[id] = w.domain_weights().at(id);
    dims[id] = w.dimension_weights().at(id);
  }
  return make_weights(std::move(dom), std::move(dims));
}

/// True iff the effective per-dimension scale w_delta * sqrt(w_d) of `w1` is a
/// positive multiple of that of `w2` on every dimension in `dims`. Ratios are
/// compared with a relative tolerance of 1e-9.
inline bool linearly_dependent(const Weights& w1, const Weights& w2, const std::set<DimIndex>& dims) {
  if (dims.empty()) throw ParameterError("linear dependence needs at least one dimension");
  double first = 0.0;
  bool have_first = false;
  for (DimIndex d : dims) {
    auto [dw1, ww1] = w1.weights_of_dimension(d);
    auto [dw2, ww2] = w2.weights_of_dimension(d);
    const double ratio = (dw1 * std::sqrt(ww1)) / (dw2 * std::sqrt(ww2));
    if (!have_first) {
      first = ratio;
      have_first = true;
    } else if (std::abs(ratio - first) > 1e-9 * std::max(std::abs(ratio), std::abs(first))) {
      return false;
    }
  }
  return true;
}

}  // namespace cspace
