#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bottleneck.hpp"
#include "errors.hpp"
#include "filtration.hpp"
#include "network.hpp"
#include "parallel.hpp"
#include "persistence.hpp"
#include "union_find.hpp"

namespace dowker {

inline constexpr std::string_view standard_label = "STANDARD";

// Diagram sets compared in the impact hierarchy: one per deleted node,
// labeled by the node, plus the full network's diagrams labeled STANDARD.
struct labeled_object_set {
  std::vector<std::string> labels;
  std::vector<std::vector<persistence_diagram>> diagrams;  // aligned
  double cap = 0.0;
};

inline labeled_object_set build_object_set(const effective_distance_network& g,
                                           int max_hom_dim = 1,
                                           unsigned threads = 0) {
  const std::size_t n = g.size();
  if (n < 2) throw domain_error("build_object_set requires at least two nodes");
  for (const auto& label : g.nodes)
    if (label == standard_label)
      throw domain_error("node label 'STANDARD' is reserved");
  labeled_object_set s;
  s.cap = g.sentinel;
  s.labels = g.nodes;
  s.labels.emplace_back(standard_label);
  s.diagrams.resize(n + 1);
  parallel_for(n + 1, threads, [&](std::size_t k) {
    if (k < n) {
      const effective_distance_network sub = detail::delete_index(g, k);
      s.diagrams[k] = compute_persistence(
          build_filtration(sub, max_hom_dim + 1), max_hom_dim, g.sentinel);
    } else {
      s.diagrams[k] = compute_persistence(
          build_filtration(g, max_hom_dim + 1), max_hom_dim, g.sentinel);
    }
  });
  return s;
}

// Symmetric matrix of pairwise diagram distances over the object set.
inline std::vector<std::vector<double>> bottleneck_matrix(
    const labeled_object_set& s, int max_hom_dim = 1, unsigned threads = 0) {
  const std::size_t m = s.labels.size();
  std::vector<std::vector<double>> dist(m, std::vector<double>(m, 0.0));
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) work.emplace_back(i, j);
  parallel_for(work.size(), threads, [&](std::size_t k) {
    const auto [i, j] = work[k];
    dist[i][j] = diagram_distance(s.diagrams[i], s.diagrams[j], max_hom_dim);
  });
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) dist[j][i] = dist[i][j];
  return dist;
}

struct dendrogram_merge {
  int left = 0;   // block id: leaves are 0..n-1, merge k creates block n+k
  int right = 0;
  double height = 0.0;
};

struct dendrogram {
  std::vector<std::string> leaves;
  std::vector<dendrogram_merge> merges;  // heights nondecreasing

  double final_height() const {
    return merges.empty() ? 0.0 : merges.back().height;
  }
};

// Single-linkage agglomeration: repeatedly join the two blocks at minimum
// inter-block distance. Ties break on the lexicographically smallest pair of
// block representatives (each block is named by its smallest member label),
// so the merge sequence is reproducible across platforms.
inline dendrogram single_linkage(const std::vector<std::vector<double>>& dist,
                                 const std::vector<std::string>& labels) {
  const std::size_t n = labels.size();
  if (n == 0) throw domain_error("single_linkage: empty input");
  if (dist.size() != n)
    throw domain_error("single_linkage: matrix does not match label count");
  {
    std::vector<std::string_view> sorted_labels(labels.begin(), labels.end());
    std::sort(sorted_labels.begin(), sorted_labels.end());
    if (std::adjacent_find(sorted_labels.begin(), sorted_labels.end()) !=
        sorted_labels.end())
      throw domain_error("single_linkage: duplicate labels");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n)
      throw domain_error("single_linkage: matrix is not square");
    if (dist[i][i] != 0.0)
      throw domain_error("single_linkage: nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(dist[i][j]) || dist[i][j] < 0.0)
        throw domain_error(
            "single_linkage: distances must be finite and nonnegative");
      if (dist[i][j] != dist[j][i])
        throw domain_error("single_linkage: matrix is not symmetric");
    }
  }
  dendrogram out;
  out.leaves = labels;
  struct block {
    int id;
    std::string min_label;
  };
  std::vector<block> active;
  active.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    active.push_back({static_cast<int>(i), labels[i]});
  std::vector<std::vector<double>> d = dist;
  for (std::size_t step = 0; active.size() > 1; ++step) {
    std::size_t bi = 0, bj = 1;
    auto key = [&](std::size_t i, std::size_t j) {
      return active[i].min_label <= active[j].min_label
                 ? std::pair(std::string_view(active[i].min_label),
                             std::string_view(active[j].min_label))
                 : std::pair(std::string_view(active[j].min_label),
                             std::string_view(active[i].min_label));
    };
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        if (i == bi && j == bj) continue;
        if (d[i][j] < d[bi][bj] ||
            (d[i][j] == d[bi][bj] && key(i, j) < key(bi, bj))) {
          bi = i;
          bj = j;
        }
      }
    }
    const double h = d[bi][bj];
    const bool left_first = active[bi].min_label < active[bj].min_label;
    const int left = left_first ? active[bi].id : active[bj].id;
    const int right = left_first ? active[bj].id : active[bi].id;
    out.merges.push_back({left, right, h});
    block merged{static_cast<int>(n + step),
                 std::min(active[bi].min_label, active[bj].min_label)};
    std::vector<double> row(active.size(), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k)
      row[k] = std::min(d[bi][k], d[bj][k]);
    // drop bj first (bj > bi), then bi, then append the merged block
    auto drop = [&](std::size_t pos) {
      active.erase(active.begin() + pos);
      d.erase(d.begin() + pos);
      for (auto& r : d) r.erase(r.begin() + pos);
      row.erase(row.begin() + pos);
    };
    drop(bj);
    drop(bi);
    active.push_back(merged);
    for (std::size_t k = 0; k < d.size(); ++k) d[k].push_back(row[k]);
    row.push_back(0.0);
    d.push_back(std::move(row));
  }
  return out;
}

namespace detail {

inline std::size_t leaf_index(const dendrogram& d, std::string_view label) {
  for (std::size_t i = 0; i < d.leaves.size(); ++i)
    if (d.leaves[i] == label) return i;
  throw lookup_error("unknown leaf label '" + std::string(label) + "'");
}

}  // namespace detail

// Block of the partition at parameter t containing `label`, in leaf order.
inline std::vector<std::string> block_containing(const dendrogram& d,
                                                 std::string_view label,
                                                 double t) {
  if (!(t >= 0.0)) throw domain_error("block_containing: t must be >= 0");
  const std::size_t target = detail::leaf_index(d, label);
  const std::size_t n = d.leaves.size();
  union_find uf(n);
  std::vector<std::size_t> rep(n + d.merges.size(), 0);
  for (std::size_t i = 0; i < n; ++i) rep[i] = i;
  for (std::size_t k = 0;
       k < d.merges.size() && d.merges[k].height <= t; ++k) {
    const auto& m = d.merges[k];
    uf.unite(rep[m.left], rep[m.right]);
    rep[n + k] = rep[m.left];
  }
  std::vector<std::string> out;
  const std::size_t root = uf.find(target);
  for (std::size_t i = 0; i < n; ++i)
    if (uf.find(i) == root) out.push_back(d.leaves[i]);
  return out;
}

// Smallest t at which `label` shares a block with `reference`; the node's
// topological-impact score when the reference is STANDARD.
inline double join_time(const dendrogram& d, std::string_view label,
                        std::string_view reference = standard_label) {
  const std::size_t a = detail::leaf_index(d, label);
  const std::size_t b = detail::leaf_index(d, reference);
  if (a == b) return 0.0;
  const std::size_t n = d.leaves.size();
  union_find uf(n);
  std::vector<std::size_t> rep(n + d.merges.size(), 0);
  for (std::size_t i = 0; i < n; ++i) rep[i] = i;
  for (std::size_t k = 0; k < d.merges.size(); ++k) {
    const auto& m = d.merges[k];
    uf.unite(rep[m.left], rep[m.right]);
    rep[n + k] = rep[m.left];
    if (uf.connected(a, b)) return d.merges[k].height;
  }
  throw domain_error("dendrogram never joins '" + std::string(label) +
                     "' with '" + std::string(reference) + "'");
}

// Join times of every non-reference leaf, sorted by descending impact
// (ties break on the label so the ranking is deterministic).
inline std::vector<std::pair<std::string, double>> join_time_ranking(
    const dendrogram& d, std::string_view reference = standard_label) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& leaf : d.leaves) {
    if (leaf == reference) continue;
    out.emplace_back(leaf, join_time(d, leaf, reference));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  return out;
}

}  // namespace dowker
