#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dowker {

enum class weight_kind { flow, dissimilarity };

// Directed weighted network over labeled nodes. weights[i][j] is the weight
// of the edge from node i to node j; the diagonal is always zero. Node order
// is first-appearance order from the input and is preserved by every
// operation, so downstream outputs are deterministic.
struct directed_network {
  std::vector<std::string> nodes;
  std::vector<std::vector<double>> weights;
  weight_kind kind = weight_kind::flow;

  std::size_t size() const { return nodes.size(); }

  std::optional<std::size_t> find(std::string_view label) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == label) return i;
    return std::nullopt;
  }

  std::size_t index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw lookup_error("unknown node label '" + std::string(label) + "'");
  }
};

// Dissimilarity network in effective-distance form. distances[i][j] is the
// distance from node i to node j; pairs without an underlying edge hold
// exactly `sentinel`, which is also an upper bound for every entry.
struct effective_distance_network {
  std::vector<std::string> nodes;
  std::vector<std::vector<double>> distances;
  double sentinel = 0.0;

  std::size_t size() const { return nodes.size(); }

  std::optional<std::size_t> find(std::string_view label) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == label) return i;
    return std::nullopt;
  }

  std::size_t index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw lookup_error("unknown node label '" + std::string(label) + "'");
  }
};

enum class distance_normalization {
  source_out,  // divide by the total outgoing weight of the source (default)
  target_in,   // divide by the total incoming weight of the target
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

// Non-blank lines paired with their 1-based line numbers. Accepts LF and
// CRLF endings and strips a UTF-8 BOM.
inline std::vector<std::pair<std::string_view, std::size_t>> split_lines(
    std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      ++line_no;
      std::string_view line = text.substr(start, i - start);
      if (!trim(line).empty()) out.emplace_back(line, line_no);
      start = i + 1;
      if (i == text.size()) break;
    }
  }
  return out;
}

inline double parse_weight(std::string_view field, std::size_t line_no) {
  field = trim(field);
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last)
    throw parse_error("line " + std::to_string(line_no) +
                      ": cannot parse weight '" + std::string(field) + "'");
  if (!std::isfinite(value))
    throw domain_error("line " + std::to_string(line_no) +
                       ": weight must be finite");
  if (value < 0.0)
    throw domain_error("line " + std::to_string(line_no) +
                       ": negative weight " + std::string(field));
  return value;
}

inline std::vector<std::vector<double>> matrix_minor(
    const std::vector<std::vector<double>>& m, std::size_t drop) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> out;
  out.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == drop) continue;
    std::vector<double> row;
    row.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != drop) row.push_back(m[i][j]);
    out.push_back(std::move(row));
  }
  return out;
}

inline std::vector<std::string> labels_minus(const std::vector<std::string>& v,
                                             std::size_t drop) {
  std::vector<std::string> out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != drop) out.push_back(v[i]);
  return out;
}

inline directed_network delete_index(const directed_network& g,
                                     std::size_t idx) {
  return {labels_minus(g.nodes, idx), matrix_minor(g.weights, idx), g.kind};
}

inline effective_distance_network delete_index(
    const effective_distance_network& g, std::size_t idx) {
  return {labels_minus(g.nodes, idx), matrix_minor(g.distances, idx),
          g.sentinel};
}

inline double min_incident(const effective_distance_network& g,
                           std::size_t idx) {
  double best = g.sentinel;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (j == idx) continue;
    best = std::min(best, std::min(g.distances[idx][j], g.distances[j][idx]));
  }
  return best;
}

}  // namespace detail

// Throws when the network violates a structural invariant.
inline void validate(const directed_network& g) {
  const std::size_t n = g.size();
  if (g.weights.size() != n)
    throw domain_error("weight matrix does not match the node count");
  std::set<std::string_view> seen;
  for (const auto& label : g.nodes) {
    if (label.empty()) throw domain_error("empty node label");
    if (label.find_first_of(",;\n\r") != std::string::npos)
      throw domain_error("node label '" + label +
                         "' contains a reserved character");
    if (!seen.insert(label).second)
      throw domain_error("duplicate node label '" + label + "'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (g.weights[i].size() != n)
      throw domain_error("weight matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const double w = g.weights[i][j];
      if (!std::isfinite(w) || w < 0.0)
        throw domain_error("weights must be finite and nonnegative");
      if (i == j && w != 0.0)
        throw domain_error("nonzero diagonal entry for node '" + g.nodes[i] +
                           "'");
      if (i != j && g.kind == weight_kind::dissimilarity && w <= 0.0)
        throw domain_error(
            "dissimilarity networks require positive off-diagonal entries");
    }
  }
}

inline void validate(const effective_distance_network& g) {
  const std::size_t n = g.size();
  if (g.distances.size() != n)
    throw domain_error("distance matrix does not match the node count");
  if (!std::isfinite(g.sentinel) || g.sentinel <= 0.0)
    throw domain_error("sentinel must be finite and positive");
  std::set<std::string_view> seen;
  for (const auto& label : g.nodes) {
    if (label.empty()) throw domain_error("empty node label");
    if (label.find_first_of(",;\n\r") != std::string::npos)
      throw domain_error("node label '" + label +
                         "' contains a reserved character");
    if (!seen.insert(label).second)
      throw domain_error("duplicate node label '" + label + "'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (g.distances[i].size() != n)
      throw domain_error("distance matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = g.distances[i][j];
      if (!std::isfinite(d)) throw domain_error("distances must be finite");
      if (i == j && d != 0.0)
        throw domain_error("nonzero diagonal entry for node '" + g.nodes[i] +
                           "'");
      if (i != j && d <= 0.0)
        throw domain_error("off-diagonal distances must be positive");
      if (d > g.sentinel)
        throw domain_error("distance above the sentinel for node pair ('" +
                           g.nodes[i] + "', '" + g.nodes[j] + "')");
    }
  }
}

// Parses a `source,target,weight` CSV edge list. Nodes appear in
// first-appearance order; missing pairs get weight 0.
inline directed_network parse_edge_list(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty())
    throw parse_error("empty input: expected header 'source,target,weight'");
  {
    const auto hdr = detail::split_fields(lines[0].first);
    if (hdr.size() != 3 || hdr[0] != "source" || hdr[1] != "target" ||
        hdr[2] != "weight")
      throw parse_error("line " + std::to_string(lines[0].second) +
                        ": expected header 'source,target,weight'");
  }
  std::vector<std::string> nodes;
  std::map<std::string, std::size_t, std::less<>> index;
  auto intern = [&](std::string_view label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    nodes.emplace_back(label);
    return index.emplace(std::string(label), nodes.size() - 1).first->second;
  };
  struct row_t {
    std::size_t src, tgt;
    double w;
  };
  std::vector<row_t> rows;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [line, line_no] = lines[k];
    const auto fields = detail::split_fields(line);
    if (fields.size() != 3)
      throw parse_error("line " + std::to_string(line_no) +
                        ": expected 3 fields, found " +
                        std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty())
      throw parse_error("line " + std::to_string(line_no) +
                        ": empty node label");
    const double w = detail::parse_weight(fields[2], line_no);
    const std::size_t src = intern(fields[0]);
    const std::size_t tgt = intern(fields[1]);
    if (src == tgt && w > 0.0)
      throw domain_error("line " + std::to_string(line_no) + ": self-loop '" +
                         std::string(fields[0]) + "' with positive weight");
    if (!seen.emplace(src, tgt).second)
      throw duplicate_error("line " + std::to_string(line_no) +
                            ": duplicate edge '" + std::string(fields[0]) +
                            "' -> '" + std::string(fields[1]) + "'");
    rows.push_back({src, tgt, w});
  }
  const std::size_t n = nodes.size();
  directed_network g{std::move(nodes),
                     std::vector<std::vector<double>>(
                         n, std::vector<double>(n, 0.0)),
                     weight_kind::flow};
  for (const auto& r : rows)
    if (r.src != r.tgt) g.weights[r.src][r.tgt] = r.w;
  return g;
}

// Parses a labeled square adjacency table: first row and first column carry
// identical node labels, entry (row, column) = weight of row -> column.
// Nonzero diagonal entries are forced to zero with a warning.
inline directed_network parse_adjacency_csv(
    std::string_view text, std::vector<std::string>* warnings = nullptr) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw parse_error("empty input: expected a header row");
  const auto hdr = detail::split_fields(lines[0].first);
  if (hdr.size() < 2)
    throw parse_error("line " + std::to_string(lines[0].second) +
                      ": header row carries no node labels");
  std::vector<std::string> labels(hdr.begin() + 1, hdr.end());
  const std::size_t n = labels.size();
  {
    std::set<std::string_view> seen;
    for (const auto& l : labels) {
      if (l.empty())
        throw parse_error("line " + std::to_string(lines[0].second) +
                          ": empty column label");
      if (!seen.insert(l).second)
        throw parse_error("line " + std::to_string(lines[0].second) +
                          ": duplicate column label '" + l + "'");
    }
  }
  if (lines.size() - 1 != n)
    throw parse_error("expected " + std::to_string(n) + " data rows, found " +
                      std::to_string(lines.size() - 1));
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto [line, line_no] = lines[i + 1];
    const auto fields = detail::split_fields(line);
    if (fields.size() != n + 1)
      throw parse_error("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(n + 1) + " fields, found " +
                        std::to_string(fields.size()));
    if (fields[0] != labels[i])
      throw parse_error("line " + std::to_string(line_no) +
                        ": row label '" + std::string(fields[0]) +
                        "' does not match column label '" + labels[i] + "'");
    for (std::size_t j = 0; j < n; ++j) {
      double v = detail::parse_weight(fields[j + 1], line_no);
      if (i == j && v != 0.0) {
        if (warnings)
          warnings->push_back("line " + std::to_string(line_no) +
                              ": nonzero diagonal entry for node '" +
                              labels[i] + "' set to 0");
        v = 0.0;
      }
      w[i][j] = v;
    }
  }
  return {std::move(labels), std::move(w), weight_kind::flow};
}

// Effective-distance transform: an edge carrying a large share of its
// source's outgoing flow maps to a small distance, m = 1 - ln(share).
// Absent edges get the sentinel 1 - ln(epsilon); real edges are clamped at
// the sentinel so it stays an upper bound for the whole matrix.
inline effective_distance_network effective_distance(
    const directed_network& g, double epsilon,
    distance_normalization norm = distance_normalization::source_out) {
  if (g.kind != weight_kind::flow)
    throw domain_error("effective_distance expects a flow network");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw domain_error("epsilon must lie in (0, 1)");
  const std::size_t n = g.size();
  const double sentinel = 1.0 - std::log(epsilon);
  std::vector<double> denom(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (norm == distance_normalization::source_out)
        denom[i] += g.weights[i][j];
      else
        denom[j] += g.weights[i][j];
    }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double w = g.weights[i][j];
      if (w > 0.0) {
        const double den =
            norm == distance_normalization::source_out ? denom[i] : denom[j];
        d[i][j] = std::min(1.0 - std::log(w / den), sentinel);
      } else {
        d[i][j] = sentinel;
      }
    }
  }
  return {g.nodes, std::move(d), sentinel};
}

// Views a dissimilarity network as an effective-distance network; the
// largest off-diagonal entry plays the sentinel role (the Dowker complex is
// complete at that level anyway).
inline effective_distance_network as_effective_distance(
    const directed_network& g) {
  if (g.kind != weight_kind::dissimilarity)
    throw domain_error(
        "as_effective_distance expects a dissimilarity network; apply "
        "effective_distance to flow networks instead");
  double mx = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      mx = std::max(mx, g.weights[i][j]);
  if (mx <= 0.0) mx = 1.0;
  return {g.nodes, g.weights, mx};
}

inline directed_network delete_node(const directed_network& g,
                                    std::string_view label) {
  const std::size_t idx = g.index_of(label);
  if (g.size() <= 1)
    throw domain_error("cannot delete the only node of a network");
  return detail::delete_index(g, idx);
}

inline effective_distance_network delete_node(
    const effective_distance_network& g, std::string_view label) {
  const std::size_t idx = g.index_of(label);
  if (g.size() <= 1)
    throw domain_error("cannot delete the only node of a network");
  return detail::delete_index(g, idx);
}

// Minimum distance between `label` and any other node, taken over both
// directions (incoming and outgoing entries).
inline double min_incident_distance(const effective_distance_network& g,
                                    std::string_view label) {
  const std::size_t idx = g.index_of(label);
  if (g.size() < 2)
    throw domain_error("min_incident_distance requires at least two nodes");
  return detail::min_incident(g, idx);
}

inline directed_network transpose(const directed_network& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[j][i] = g.weights[i][j];
  return {g.nodes, std::move(w), g.kind};
}

}  // namespace dowker
