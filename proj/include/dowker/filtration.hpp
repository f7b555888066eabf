#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "errors.hpp"
#include "network.hpp"

namespace dowker {

struct simplex {
  std::vector<int> vertices;  // strictly increasing node indices
  double value = 0.0;         // filtration value

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }
};

// Deterministic filtration order: value, then dimension, then the vertex
// list lexicographically. Faces always precede their cofaces.
inline bool filtration_less(const simplex& a, const simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.vertices.size() != b.vertices.size())
    return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

struct filtered_complex {
  std::vector<simplex> simplices;  // sorted by filtration_less
  int max_dim = 0;                 // declared dimension bound
};

// Level at which a vertex set enters the sink filtration: the best common
// sink over all nodes, where a candidate sink p costs the largest distance
// from any member to p. The sink may itself be a member.
inline double simplex_value(const effective_distance_network& g,
                            std::span<const int> verts) {
  if (verts.empty()) throw domain_error("simplex_value: empty vertex set");
  const int n = static_cast<int>(g.size());
  for (int v : verts)
    if (v < 0 || v >= n)
      throw domain_error("simplex_value: vertex index out of range");
  double best = std::numeric_limits<double>::infinity();
  for (int p = 0; p < n; ++p) {
    double worst = 0.0;
    for (int v : verts) worst = std::max(worst, g.distances[v][p]);
    best = std::min(best, worst);
  }
  return best;
}

// Builds the full sink filtration up to max_dim: every vertex subset of size
// <= max_dim + 1 with its entry level, in filtration order. Networks of
// interest stay small, so complete enumeration is affordable. With
// include_sentinel_level = false, simplices entering only at the sentinel
// are skipped; capped diagrams are unaffected.
inline filtered_complex build_filtration(const effective_distance_network& g,
                                         int max_dim,
                                         bool include_sentinel_level = true) {
  if (max_dim < 0)
    throw domain_error("build_filtration: max_dim must be nonnegative");
  const int n = static_cast<int>(g.size());
  filtered_complex fc;
  fc.max_dim = max_dim;
  for (int k = 1; k <= max_dim + 1 && k <= n; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      const double value = simplex_value(g, idx);
      if (include_sentinel_level || value < g.sentinel)
        fc.simplices.push_back({idx, value});
      // next k-combination of {0, ..., n-1}
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  std::sort(fc.simplices.begin(), fc.simplices.end(), filtration_less);
  return fc;
}

}  // namespace dowker
