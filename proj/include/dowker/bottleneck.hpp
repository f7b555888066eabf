#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"
#include "persistence.hpp"

namespace dowker {

namespace detail {

inline double linf(const diagram_point& p, const diagram_point& q) {
  return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

// Cost of sending a point to its diagonal projection.
inline double half_persistence(const diagram_point& p) {
  return (p.death - p.birth) / 2.0;
}

inline void require_finite(const persistence_diagram& d) {
  for (const auto& p : d.points)
    if (!std::isfinite(p.birth) || !std::isfinite(p.death))
      throw domain_error(
          "diagram carries an infinite coordinate; cap essential bars first");
}

// Kuhn augmenting paths: can every index in `forced` be matched
// simultaneously along `adj`?
inline bool saturates(const std::vector<std::vector<int>>& adj,
                      const std::vector<int>& forced, std::size_t right_count) {
  std::vector<int> match_right(right_count, -1);
  std::vector<char> visited(right_count, 0);
  auto try_match = [&](auto&& self, int u) -> bool {
    for (int v : adj[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] < 0 || self(self, match_right[v])) {
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  for (int u : forced) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!try_match(try_match, u)) return false;
  }
  return true;
}

// A matching of cost <= t exists iff the points too persistent to reach the
// diagonal on each side can all be matched across at L-infinity cost <= t.
inline bool matching_feasible(const std::vector<diagram_point>& a,
                              const std::vector<diagram_point>& b, double t) {
  std::vector<int> forced_a, forced_b;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (half_persistence(a[i]) > t) forced_a.push_back(static_cast<int>(i));
  for (std::size_t j = 0; j < b.size(); ++j)
    if (half_persistence(b[j]) > t) forced_b.push_back(static_cast<int>(j));
  if (forced_a.empty() && forced_b.empty()) return true;
  std::vector<std::vector<int>> adj_a(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (linf(a[i], b[j]) <= t) adj_a[i].push_back(static_cast<int>(j));
  if (!saturates(adj_a, forced_a, b.size())) return false;
  std::vector<std::vector<int>> adj_b(b.size());
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i)
      if (linf(a[i], b[j]) <= t) adj_b[j].push_back(static_cast<int>(i));
  return saturates(adj_b, forced_b, a.size());
}

}  // namespace detail

// Bottleneck distance between two capped diagrams of the same dimension:
// the smallest threshold t at which every point can be matched to an
// opposite point or its diagonal projection within L-infinity cost t.
// Binary search over the exact candidate set, so exact on exact inputs.
inline double bottleneck_distance(const persistence_diagram& d1,
                                  const persistence_diagram& d2) {
  if (d1.dimension != d2.dimension)
    throw domain_error("bottleneck_distance: dimension mismatch");
  detail::require_finite(d1);
  detail::require_finite(d2);
  std::vector<double> candidates{0.0};
  for (const auto& p : d1.points)
    candidates.push_back(detail::half_persistence(p));
  for (const auto& q : d2.points)
    candidates.push_back(detail::half_persistence(q));
  for (const auto& p : d1.points)
    for (const auto& q : d2.points)
      candidates.push_back(detail::linf(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (detail::matching_feasible(d1.points, d2.points, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

// Exhaustive oracle over all matchings; exact minimum of the max cost.
// Limited to 8 points in total.
inline double bottleneck_oracle(const persistence_diagram& d1,
                                const persistence_diagram& d2) {
  if (d1.dimension != d2.dimension)
    throw domain_error("bottleneck_oracle: dimension mismatch");
  detail::require_finite(d1);
  detail::require_finite(d2);
  const auto& a = d1.points;
  const auto& b = d2.points;
  if (a.size() + b.size() > 8)
    throw size_error("bottleneck_oracle supports at most 8 points in total");
  double best = std::numeric_limits<double>::infinity();
  auto recurse = [&](auto&& self, std::size_t i, unsigned used,
                     double current) -> void {
    if (current >= best) return;
    if (i == a.size()) {
      double total = current;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!(used & (1u << j)))
          total = std::max(total, detail::half_persistence(b[j]));
      best = std::min(best, total);
      return;
    }
    self(self, i + 1, used,
         std::max(current, detail::half_persistence(a[i])));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used & (1u << j)) continue;
      self(self, i + 1, used | (1u << j),
           std::max(current, detail::linf(a[i], b[j])));
    }
  };
  recurse(recurse, 0, 0u, 0.0);
  return best;
}

// Distance between two diagram sets: the largest per-dimension bottleneck
// distance over dimensions 0..max_dim, with missing dimensions treated as
// empty. Requires a shared cap.
inline double diagram_distance(std::span<const persistence_diagram> a,
                               std::span<const persistence_diagram> b,
                               int max_dim = 1) {
  std::optional<double> cap;
  auto check_cap = [&](const persistence_diagram& d) {
    if (!cap)
      cap = d.cap;
    else if (*cap != d.cap)
      throw domain_error("diagram_distance: cap mismatch between diagrams");
  };
  for (const auto& d : a) check_cap(d);
  for (const auto& d : b) check_cap(d);
  auto find_dim = [](std::span<const persistence_diagram> set, int dim)
      -> const persistence_diagram* {
    for (const auto& d : set)
      if (d.dimension == dim) return &d;
    return nullptr;
  };
  double best = 0.0;
  for (int dim = 0; dim <= max_dim; ++dim) {
    const persistence_diagram* pa = find_dim(a, dim);
    const persistence_diagram* pb = find_dim(b, dim);
    const persistence_diagram empty{dim, cap.value_or(0.0), {}};
    best = std::max(best, bottleneck_distance(pa ? *pa : empty,
                                              pb ? *pb : empty));
  }
  return best;
}

}  // namespace dowker
