#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "centrality.hpp"
#include "errors.hpp"
#include "filtration.hpp"
#include "format.hpp"
#include "hierarchy.hpp"
#include "network.hpp"
#include "persistence.hpp"

// Output schemas are emitted by hand so field order and number formatting
// are reproducible byte for byte; nlohmann/json is used for parsing only.

namespace dowker {

inline std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

namespace detail {

inline void append_config_field(std::string& out, std::string_view config_json) {
  if (!config_json.empty()) {
    out += "\"config\":";
    out += config_json;
    out += ',';
  }
}

inline void append_config_line(std::string& out, std::string_view config_line) {
  if (!config_line.empty()) {
    out += "# config: ";
    out += config_line;
    out += '\n';
  }
}

inline void append_label_array(std::string& out,
                               const std::vector<std::string>& labels) {
  out += '[';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += '"';
    out += json_escape(labels[i]);
    out += '"';
  }
  out += ']';
}

inline void append_matrix(std::string& out,
                          const std::vector<std::vector<double>>& m) {
  out += '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) out += ',';
      out += fmt_sig17(m[i][j]);
    }
    out += ']';
  }
  out += ']';
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Network JSON:
// {"nodes":[...],"weights":[[...]],"kind":"flow"|"dissimilarity",
//  "sentinel":number|null}
// ---------------------------------------------------------------------------

inline std::string network_json(const directed_network& g,
                                std::string_view config_json = {}) {
  std::string out = "{";
  detail::append_config_field(out, config_json);
  out += "\"nodes\":";
  detail::append_label_array(out, g.nodes);
  out += ",\"weights\":";
  detail::append_matrix(out, g.weights);
  out += ",\"kind\":\"";
  out += g.kind == weight_kind::flow ? "flow" : "dissimilarity";
  out += "\",\"sentinel\":null}\n";
  return out;
}

inline std::string network_json(const effective_distance_network& g,
                                std::string_view config_json = {}) {
  std::string out = "{";
  detail::append_config_field(out, config_json);
  out += "\"nodes\":";
  detail::append_label_array(out, g.nodes);
  out += ",\"weights\":";
  detail::append_matrix(out, g.distances);
  out += ",\"kind\":\"dissimilarity\",\"sentinel\":";
  out += fmt_sig17(g.sentinel);
  out += "}\n";
  return out;
}

// A parsed network file: dissimilarity inputs that carry a sentinel load as
// effective-distance networks, everything else as a plain directed network.
struct loaded_network {
  std::optional<directed_network> plain;
  std::optional<effective_distance_network> effective;
};

inline loaded_network network_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("nodes") || !j.contains("weights") ||
      !j.contains("kind"))
    throw parse_error("network JSON requires nodes, weights and kind fields");
  std::vector<std::string> nodes;
  for (const auto& v : j.at("nodes")) {
    if (!v.is_string()) throw parse_error("node labels must be strings");
    nodes.push_back(v.get<std::string>());
  }
  std::vector<std::vector<double>> weights;
  for (const auto& row : j.at("weights")) {
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw parse_error("weights must be numbers");
      r.push_back(v.get<double>());
    }
    weights.push_back(std::move(r));
  }
  const std::string kind_str = j.at("kind").get<std::string>();
  weight_kind kind;
  if (kind_str == "flow")
    kind = weight_kind::flow;
  else if (kind_str == "dissimilarity")
    kind = weight_kind::dissimilarity;
  else
    throw parse_error("kind must be 'flow' or 'dissimilarity'");
  std::optional<double> sentinel;
  if (j.contains("sentinel") && !j.at("sentinel").is_null())
    sentinel = j.at("sentinel").get<double>();
  loaded_network out;
  if (sentinel) {
    if (kind != weight_kind::dissimilarity)
      throw domain_error("a sentinel is only valid for dissimilarity networks");
    effective_distance_network g{std::move(nodes), std::move(weights),
                                 *sentinel};
    validate(g);
    out.effective = std::move(g);
  } else {
    directed_network g{std::move(nodes), std::move(weights), kind};
    validate(g);
    out.plain = std::move(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list CSV. Weights use shortest round-trip formatting, so parsing the
// output reproduces the weight matrix bit for bit.
// ---------------------------------------------------------------------------

inline std::string edge_list_csv(const directed_network& g) {
  std::string out = "source,target,weight\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i != j && g.weights[i][j] > 0.0) {
        out += g.nodes[i];
        out += ',';
        out += g.nodes[j];
        out += ',';
        out += fmt_shortest(g.weights[i][j]);
        out += '\n';
      }
  return out;
}

// ---------------------------------------------------------------------------
// Filtration CSV: dim,vertices(';'-joined labels),value
// ---------------------------------------------------------------------------

inline std::string filtration_csv(const filtered_complex& f,
                                  const std::vector<std::string>& labels,
                                  std::string_view config_line = {}) {
  std::string out;
  detail::append_config_line(out, config_line);
  out += "dim,vertices,value\n";
  for (const auto& s : f.simplices) {
    out += std::to_string(s.dimension());
    out += ',';
    for (std::size_t k = 0; k < s.vertices.size(); ++k) {
      if (k) out += ';';
      out += labels.at(static_cast<std::size_t>(s.vertices[k]));
    }
    out += ',';
    out += fmt_shortest(s.value);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagrams: JSON {"dimension":k,"cap":c,"points":[[b,d],...]} and barcode CSV
// dim,birth,death,essential.
// ---------------------------------------------------------------------------

inline std::string diagrams_json(std::span<const persistence_diagram> ds,
                                 std::string_view config_json = {}) {
  std::string out = "{";
  detail::append_config_field(out, config_json);
  out += "\"diagrams\":[";
  for (std::size_t k = 0; k < ds.size(); ++k) {
    if (k) out += ',';
    out += "{\"dimension\":";
    out += std::to_string(ds[k].dimension);
    out += ",\"cap\":";
    out += fmt_sig17(ds[k].cap);
    out += ",\"points\":[";
    for (std::size_t i = 0; i < ds[k].points.size(); ++i) {
      if (i) out += ',';
      out += '[';
      out += fmt_sig17(ds[k].points[i].birth);
      out += ',';
      out += fmt_sig17(ds[k].points[i].death);
      out += ']';
    }
    out += "]}";
  }
  out += "]}\n";
  return out;
}

inline std::vector<persistence_diagram> diagrams_from_json(
    std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  nlohmann::json list;
  if (j.is_object() && j.contains("diagrams"))
    list = j.at("diagrams");
  else if (j.is_array())
    list = j;
  else if (j.is_object() && j.contains("dimension"))
    list = nlohmann::json::array({j});
  else
    throw parse_error("expected a diagram object or a diagrams array");
  std::vector<persistence_diagram> out;
  for (const auto& dj : list) {
    persistence_diagram d;
    if (!dj.contains("dimension") || !dj.contains("cap") ||
        !dj.contains("points"))
      throw parse_error("diagram requires dimension, cap and points fields");
    d.dimension = dj.at("dimension").get<int>();
    d.cap = dj.at("cap").get<double>();
    for (const auto& pj : dj.at("points")) {
      if (!pj.is_array() || pj.size() != 2)
        throw parse_error("diagram points must be [birth, death] pairs");
      const double b = pj[0].get<double>();
      const double dv = pj[1].get<double>();
      if (dv < b) throw domain_error("diagram point with death below birth");
      d.points.push_back({b, dv, dv == d.cap});
    }
    out.push_back(std::move(d));
  }
  return out;
}

inline std::string barcode_csv(std::span<const persistence_diagram> ds,
                               std::string_view config_line = {}) {
  std::string out;
  detail::append_config_line(out, config_line);
  out += "dim,birth,death,essential\n";
  for (const auto& d : ds)
    for (const auto& p : d.points) {
      out += std::to_string(d.dimension);
      out += ',';
      out += fmt_sig6(p.birth);
      out += ',';
      out += fmt_sig6(p.death);
      out += ',';
      out += p.essential ? "true" : "false";
      out += '\n';
    }
  return out;
}

// ---------------------------------------------------------------------------
// Centrality reports
// ---------------------------------------------------------------------------

inline std::string report_csv(const centrality_report& r,
                              std::string_view config_line = {}) {
  std::string out;
  detail::append_config_line(out, config_line);
  out += "# measure: " + r.measure + "\n";
  if (!r.params.empty()) {
    out += "# params:";
    for (const auto& [k, v] : r.params) out += " " + k + "=" + v;
    out += '\n';
  }
  out += "node,score\n";
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    out += r.nodes[i];
    out += ',';
    out += fmt_sig6(r.scores[i]);
    out += '\n';
  }
  return out;
}

inline std::string report_json(const centrality_report& r,
                               std::string_view config_json = {}) {
  std::string out = "{";
  detail::append_config_field(out, config_json);
  out += "\"measure\":\"" + json_escape(r.measure) + "\",\"params\":{";
  bool first = true;
  for (const auto& [k, v] : r.params) {
    if (!first) out += ',';
    first = false;
    out += '"' + json_escape(k) + "\":\"" + json_escape(v) + '"';
  }
  out += "},\"scores\":{";
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    if (i) out += ',';
    out += '"' + json_escape(r.nodes[i]) + "\":" + fmt_sig17(r.scores[i]);
  }
  out += "}}\n";
  return out;
}

// One column per measure, one row per node (the comparison table shape).
// All reports must share the same node list.
inline std::string wide_report_csv(std::span<const centrality_report> rs,
                                   std::string_view config_line = {}) {
  std::string out;
  detail::append_config_line(out, config_line);
  for (const auto& r : rs) {
    if (r.params.empty()) continue;
    out += "# params[" + r.measure + "]:";
    for (const auto& [k, v] : r.params) out += " " + k + "=" + v;
    out += '\n';
  }
  out += "node";
  for (const auto& r : rs) out += "," + r.measure;
  out += '\n';
  if (rs.empty()) return out;
  const auto& nodes = rs.front().nodes;
  for (const auto& r : rs)
    if (r.nodes != nodes)
      throw domain_error("wide_report_csv: reports disagree on the node list");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out += nodes[i];
    for (const auto& r : rs) {
      out += ',';
      out += fmt_sig6(r.scores[i]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distance matrices
// ---------------------------------------------------------------------------

inline std::string distance_matrix_long_csv(
    const std::vector<std::vector<double>>& dist,
    const std::vector<std::string>& labels, std::string_view config_line = {}) {
  std::string out;
  detail::append_config_line(out, config_line);
  out += "label_row,label_col,distance\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) {
      out += labels[i];
      out += ',';
      out += labels[j];
      out += ',';
      out += fmt_sig6(dist[i][j]);
      out += '\n';
    }
  return out;
}

inline std::string distance_matrix_wide_csv(
    const std::vector<std::vector<double>>& dist,
    const std::vector<std::string>& labels, std::string_view config_line = {}) {
  std::string out;
  detail::append_config_line(out, config_line);
  out += "label";
  for (const auto& l : labels) out += "," + l;
  out += '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += labels[i];
    for (std::size_t j = 0; j < labels.size(); ++j) {
      out += ',';
      out += fmt_sig6(dist[i][j]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dendrogram: merge-list JSON and Newick with branch lengths equal to the
// height difference between parent and child blocks.
// ---------------------------------------------------------------------------

inline std::string merge_list_json(const dendrogram& d,
                                   std::string_view config_json = {}) {
  std::string out = "{";
  detail::append_config_field(out, config_json);
  out += "\"leaves\":";
  detail::append_label_array(out, d.leaves);
  out += ",\"merges\":[";
  for (std::size_t k = 0; k < d.merges.size(); ++k) {
    if (k) out += ',';
    out += '[';
    out += std::to_string(d.merges[k].left);
    out += ',';
    out += std::to_string(d.merges[k].right);
    out += ',';
    out += fmt_sig17(d.merges[k].height);
    out += ']';
  }
  out += "]}\n";
  return out;
}

namespace detail {

inline std::string newick_quote(const std::string& label) {
  if (label.find_first_of(" \t(),:;[]'") == std::string::npos) return label;
  std::string out = "'";
  for (char c : label) {
    out += c;
    if (c == '\'') out += '\'';
  }
  out += '\'';
  return out;
}

inline void newick_node(const dendrogram& d, int block, double parent_height,
                        std::string& out) {
  const int n = static_cast<int>(d.leaves.size());
  double height = 0.0;
  if (block < n) {
    out += newick_quote(d.leaves[static_cast<std::size_t>(block)]);
  } else {
    const auto& m = d.merges[static_cast<std::size_t>(block - n)];
    height = m.height;
    out += '(';
    newick_node(d, m.left, height, out);
    out += ',';
    newick_node(d, m.right, height, out);
    out += ')';
  }
  out += ':';
  out += fmt_shortest(parent_height - height);
}

}  // namespace detail

inline std::string newick(const dendrogram& d,
                          std::string_view config_comment = {}) {
  std::string out;
  if (!config_comment.empty()) {
    out += "[config: ";
    out += config_comment;
    out += "]\n";
  }
  const int n = static_cast<int>(d.leaves.size());
  if (n == 0) throw domain_error("newick: empty dendrogram");
  if (d.merges.empty()) {
    out += detail::newick_quote(d.leaves[0]) + ";\n";
    return out;
  }
  const auto& top = d.merges.back();
  out += '(';
  detail::newick_node(d, top.left, top.height, out);
  out += ',';
  detail::newick_node(d, top.right, top.height, out);
  out += ");\n";
  return out;
}

}  // namespace dowker
