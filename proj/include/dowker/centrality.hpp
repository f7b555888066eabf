#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "linalg.hpp"
#include "network.hpp"
#include "parallel.hpp"
#include "persistence.hpp"

namespace dowker {

struct centrality_report {
  std::string measure;
  std::vector<std::string> nodes;
  std::vector<double> scores;  // aligned with nodes
  std::map<std::string, std::string> params;

  double score_of(std::string_view label) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == label) return scores[i];
    throw lookup_error("unknown node label '" + std::string(label) + "'");
  }
};

namespace detail {

// Signed sum of the multiset difference: deaths shared by both multisets
// cancel exactly, so unchanged bars contribute no floating-point noise.
// Both inputs must be sorted ascending.
inline double sum_multiset_difference(const std::vector<double>& plus,
                                      const std::vector<double>& minus) {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < plus.size() && j < minus.size()) {
    if (plus[i] == minus[j]) {
      ++i;
      ++j;
    } else if (plus[i] < minus[j]) {
      s += plus[i++];
    } else {
      s -= minus[j++];
    }
  }
  for (; i < plus.size(); ++i) s += plus[i];
  for (; j < minus.size(); ++j) s -= minus[j];
  return s;
}

}  // namespace detail

// Quasi-centrality of every node: the change in total dimension-0
// persistence caused by deleting the node, plus the node's minimum incident
// distance. Nonnegative for every node of a dissimilarity network.
inline centrality_report quasi_centrality(const effective_distance_network& g,
                                          unsigned threads = 0) {
  const std::size_t n = g.size();
  if (n < 2)
    throw domain_error("quasi_centrality requires at least two nodes");
  const std::vector<double> base = h0_deaths_unionfind(g);
  std::vector<double> scores(n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    const effective_distance_network sub = detail::delete_index(g, i);
    const std::vector<double> deleted = h0_deaths_unionfind(sub);
    const double mu = detail::min_incident(g, i);
    scores[i] = detail::sum_multiset_difference(deleted, base) + mu;
  });
  centrality_report r{"quasi", g.nodes, std::move(scores), {}};
  r.params["cap"] = fmt_shortest(g.sentinel);
  return r;
}

// Flow networks are transformed with the given epsilon first; dissimilarity
// networks are used as given.
inline centrality_report quasi_centrality(
    const directed_network& g, double epsilon, unsigned threads = 0,
    distance_normalization norm = distance_normalization::source_out) {
  if (g.kind == weight_kind::flow) {
    auto r = quasi_centrality(effective_distance(g, epsilon, norm), threads);
    r.params["epsilon"] = fmt_shortest(epsilon);
    return r;
  }
  return quasi_centrality(as_effective_distance(g), threads);
}

// In- and out-degree: counts of nonzero off-diagonal entries per column and
// per row.
inline std::pair<centrality_report, centrality_report> degree_centrality(
    const directed_network& g) {
  const std::size_t n = g.size();
  std::vector<double> in(n, 0.0), out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && g.weights[i][j] > 0.0) {
        out[i] += 1.0;
        in[j] += 1.0;
      }
  return {centrality_report{"in_degree", g.nodes, std::move(in), {}},
          centrality_report{"out_degree", g.nodes, std::move(out), {}}};
}

// Katz centrality: x = alpha * A x + beta * 1 where A[i][j] aggregates the
// contribution of node j into node i along the edge j -> i (binary by
// default). Solved directly; requires alpha below 1/spectral radius.
inline centrality_report katz(const directed_network& g, double alpha = 0.1,
                              double beta = 1.0, bool binary = true) {
  if (!(alpha >= 0.0)) throw domain_error("katz: alpha must be nonnegative");
  if (!(beta > 0.0)) throw domain_error("katz: beta must be positive");
  const std::size_t n = g.size();
  centrality_report r{"katz", g.nodes, std::vector<double>(n, 0.0), {}};
  r.params["alpha"] = fmt_shortest(alpha);
  r.params["beta"] = fmt_shortest(beta);
  r.params["adjacency"] = binary ? "binary" : "weighted";
  r.params["normalization"] = "l2";
  if (n == 0) return r;
  detail::dense_matrix a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && g.weights[j][i] > 0.0)
        a[i][j] = binary ? 1.0 : g.weights[j][i];
  const double rho = detail::spectral_radius_estimate(a);
  if (alpha * rho >= 1.0)
    throw convergence_error("katz: alpha " + fmt_shortest(alpha) +
                            " is not below 1/spectral radius (radius ~ " +
                            fmt_sig6(rho) + ")");
  detail::dense_matrix system(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      system[i][j] = (i == j ? 1.0 : 0.0) - alpha * a[i][j];
  }
  std::vector<double> x =
      detail::solve_dense(std::move(system), std::vector<double>(n, beta));
  const double norm = detail::l2_norm(x);
  if (norm > 0.0)
    for (double& v : x) v /= norm;
  r.scores = std::move(x);
  return r;
}

// PageRank by power iteration on the weighted adjacency: each node splits
// its score across outgoing edges in proportion to their weight; dangling
// nodes redistribute uniformly. L1-normalized.
inline centrality_report pagerank(const directed_network& g,
                                  double alpha = 0.85,
                                  std::optional<double> beta = std::nullopt,
                                  bool reversed = false, double tol = 1e-12,
                                  int max_iterations = 10000) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw domain_error("pagerank: alpha must lie in (0, 1)");
  if (reversed) {
    auto r = pagerank(transpose(g), alpha, beta, false, tol, max_iterations);
    r.measure = "pagerank_reversed";
    r.params["reversed"] = "true";
    return r;
  }
  const std::size_t n = g.size();
  centrality_report r{"pagerank", g.nodes, std::vector<double>(n, 0.0), {}};
  r.params["alpha"] = fmt_shortest(alpha);
  r.params["tolerance"] = fmt_shortest(tol);
  r.params["max_iterations"] = std::to_string(max_iterations);
  r.params["reversed"] = "false";
  r.params["adjacency"] = "weighted";
  if (n == 0) return r;
  const double b = beta ? *beta : (1.0 - alpha) / static_cast<double>(n);
  r.params["beta"] = fmt_shortest(b);
  std::vector<double> out_sum(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) out_sum[j] += g.weights[j][k];
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  for (int it = 1; it <= max_iterations; ++it) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (out_sum[j] == 0.0) dangling += x[j];
    for (std::size_t i = 0; i < n; ++i) {
      double s = dangling / static_cast<double>(n);
      for (std::size_t j = 0; j < n; ++j)
        if (g.weights[j][i] > 0.0) s += g.weights[j][i] / out_sum[j] * x[j];
      next[i] = alpha * s + b;
    }
    const double norm = detail::l1_norm(next);
    if (norm > 0.0)
      for (double& v : next) v /= norm;
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - x[i]);
    x.swap(next);
    if (delta < tol) {
      r.params["iterations"] = std::to_string(it);
      r.scores = std::move(x);
      return r;
    }
  }
  throw convergence_error("pagerank did not converge within " +
                          std::to_string(max_iterations) + " iterations");
}

// HITS hubs and authorities: alternating power iteration y = W x, x = W^T y
// on the weighted adjacency, L2-normalized each half-step.
inline std::pair<centrality_report, centrality_report> hits(
    const directed_network& g, double tol = 1e-12,
    int max_iterations = 10000) {
  const std::size_t n = g.size();
  bool any_edge = false;
  for (std::size_t i = 0; i < n && !any_edge; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.weights[i][j] > 0.0) {
        any_edge = true;
        break;
      }
  if (!any_edge) throw domain_error("hits requires at least one edge");
  std::vector<double> auth(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> hub(n, 0.0);
  std::vector<double> prev_auth(n, 0.0), prev_hub(n, 0.0);
  int used = max_iterations;
  for (int it = 1; it <= max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += g.weights[i][j] * auth[j];
      hub[i] = s;
    }
    double hn = detail::l2_norm(hub);
    for (double& v : hub) v /= hn;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += g.weights[j][i] * hub[j];
      auth[i] = s;
    }
    double an = detail::l2_norm(auth);
    for (double& v : auth) v /= an;
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      delta = std::max({delta, std::abs(hub[i] - prev_hub[i]),
                        std::abs(auth[i] - prev_auth[i])});
    if (delta < tol) {
      used = it;
      break;
    }
    if (it == max_iterations)
      throw convergence_error("hits did not converge within " +
                              std::to_string(max_iterations) + " iterations");
    prev_hub = hub;
    prev_auth = auth;
  }
  std::map<std::string, std::string> params{
      {"tolerance", fmt_shortest(tol)},
      {"max_iterations", std::to_string(max_iterations)},
      {"iterations", std::to_string(used)},
      {"adjacency", "weighted"},
      {"normalization", "l2"}};
  return {centrality_report{"hits_hub", g.nodes, std::move(hub), params},
          centrality_report{"hits_authority", g.nodes, std::move(auth),
                            std::move(params)}};
}

}  // namespace dowker
