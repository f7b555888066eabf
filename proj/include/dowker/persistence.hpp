#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "filtration.hpp"
#include "network.hpp"
#include "union_find.hpp"

namespace dowker {

struct diagram_point {
  double birth = 0.0;
  double death = 0.0;
  bool essential = false;  // never dies; death holds the cap value
};

struct persistence_diagram {
  int dimension = 0;
  double cap = 0.0;  // death assigned to essential classes
  std::vector<diagram_point> points;
};

// Total persistence: sum of bar lengths, essential bars included at the cap.
inline double total_persistence(const persistence_diagram& d) {
  double s = 0.0;
  for (const auto& p : d.points) s += p.death - p.birth;
  return s;
}

namespace detail {

inline void xor_into(std::vector<int>& a, const std::vector<int>& b,
                     std::vector<int>& tmp) {
  tmp.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(tmp));
  a.swap(tmp);
}

inline bool point_less(const diagram_point& a, const diagram_point& b) {
  if (a.birth != b.birth) return a.birth < b.birth;
  if (a.death != b.death) return a.death < b.death;
  return a.essential < b.essential;
}

}  // namespace detail

// Persistence by column reduction of the boundary matrix over the
// two-element field, processed in filtration order. Pairs (i, j) give a bar
// [value(i), value(j)) in dimension dim(i); unpaired cycles become essential
// bars capped at `cap`. Zero-length pairs are dropped unless requested.
inline std::vector<persistence_diagram> compute_persistence(
    const filtered_complex& f, int max_hom_dim, double cap,
    bool include_zero_persistence = false) {
  if (max_hom_dim < 0)
    throw domain_error("compute_persistence: max_hom_dim must be nonnegative");
  if (f.max_dim < max_hom_dim + 1)
    throw dimension_error("complex of dimension " + std::to_string(f.max_dim) +
                          " cannot support homology in dimension " +
                          std::to_string(max_hom_dim) +
                          "; build it to dimension " +
                          std::to_string(max_hom_dim + 1));
  const auto& s = f.simplices;
  const int m = static_cast<int>(s.size());
  for (int i = 1; i < m; ++i)
    if (filtration_less(s[i], s[i - 1]))
      throw domain_error("simplices are not in filtration order");
  if (m > 0 && cap < s.back().value)
    throw domain_error("cap lies below the largest filtration value");

  std::map<std::vector<int>, int> position;
  for (int j = 0; j < m; ++j) position.emplace(s[j].vertices, j);

  std::vector<int> pivot_owner(m, -1);
  std::vector<std::vector<int>> reduced(m);
  std::vector<char> is_death(m, 0);
  std::vector<char> paired_birth(m, 0);
  struct pairing {
    int birth_idx, death_idx;
  };
  std::vector<pairing> pairs;
  std::vector<int> tmp;

  for (int j = 0; j < m; ++j) {
    const int dim = s[j].dimension();
    if (dim == 0 || dim > max_hom_dim + 1) continue;
    std::vector<int> col;
    col.reserve(dim + 1);
    std::vector<int> face;
    face.reserve(dim);
    for (int skip = 0; skip <= dim; ++skip) {
      face.clear();
      for (int t = 0; t <= dim; ++t)
        if (t != skip) face.push_back(s[j].vertices[t]);
      auto it = position.find(face);
      if (it == position.end())
        throw domain_error("complex is not closed under faces");
      col.push_back(it->second);
    }
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      const int owner = pivot_owner[col.back()];
      if (owner < 0) break;
      detail::xor_into(col, reduced[owner], tmp);
    }
    if (!col.empty()) {
      const int low = col.back();
      pivot_owner[low] = j;
      is_death[j] = 1;
      paired_birth[low] = 1;
      pairs.push_back({low, j});
      reduced[j] = std::move(col);
    }
  }

  std::vector<persistence_diagram> out(max_hom_dim + 1);
  for (int d = 0; d <= max_hom_dim; ++d) {
    out[d].dimension = d;
    out[d].cap = cap;
  }
  for (const auto& p : pairs) {
    const int d = s[p.birth_idx].dimension();
    if (d > max_hom_dim) continue;
    const double b = s[p.birth_idx].value;
    const double dv = s[p.death_idx].value;
    if (b == dv && !include_zero_persistence) continue;
    out[d].points.push_back({b, dv, false});
  }
  for (int j = 0; j < m; ++j) {
    const int d = s[j].dimension();
    if (d > max_hom_dim || is_death[j] || paired_birth[j]) continue;
    out[d].points.push_back({s[j].value, cap, true});
  }
  for (auto& diagram : out)
    std::sort(diagram.points.begin(), diagram.points.end(),
              detail::point_less);
  return out;
}

// Fast path for dimension-0 deaths: sweep the Dowker edge levels in
// ascending order with union-find; each union records a death and the one
// surviving component records the sentinel. Output length equals the node
// count and matches the dimension-0 multiset of compute_persistence.
inline std::vector<double> h0_deaths_unionfind(
    const effective_distance_network& g) {
  const int n = static_cast<int>(g.size());
  std::vector<double> deaths;
  if (n == 0) return deaths;
  struct edge {
    double value;
    int a, b;
  };
  std::vector<edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double best = g.sentinel;
      for (int p = 0; p < n; ++p)
        best = std::min(best,
                        std::max(g.distances[i][p], g.distances[j][p]));
      edges.push_back({best, i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const edge& x, const edge& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  union_find uf(static_cast<std::size_t>(n));
  deaths.reserve(n);
  for (const auto& e : edges)
    if (uf.unite(e.a, e.b)) deaths.push_back(e.value);
  deaths.push_back(g.sentinel);
  return deaths;
}

}  // namespace dowker
