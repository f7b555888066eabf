#pragma once

#include <algorithm>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "hierarchy.hpp"
#include "persistence.hpp"

// Minimal SVG renderings: axes, points, bars and dendrogram brackets.

namespace dowker {

namespace detail {

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string svg_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string svg_open(double w, double h,
                            std::string_view config_comment) {
  std::string out;
  if (!config_comment.empty())
    out += "<!-- config: " + std::string(config_comment) + " -->\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(w) +
         "\" height=\"" + px(h) + "\" viewBox=\"0 0 " + px(w) + " " + px(h) +
         "\" font-family=\"monospace\" font-size=\"11\">\n";
  return out;
}

inline std::string svg_line(double x1, double y1, double x2, double y2,
                            std::string_view color = "#333333") {
  return "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) +
         "\" y2=\"" + px(y2) + "\" stroke=\"" + std::string(color) +
         "\" stroke-width=\"1\"/>\n";
}

inline std::string svg_text(double x, double y, std::string_view text,
                            std::string_view anchor = "start") {
  return "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" text-anchor=\"" +
         std::string(anchor) + "\">" + svg_escape(text) + "</text>\n";
}

inline const char* dim_color(int dim) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#8c564b", "#e377c2"};
  return palette[dim % 6];
}

// Leaf order from a traversal of the merge tree, children in recorded order.
inline void dendrogram_leaf_order(const dendrogram& d, int block,
                                  std::vector<int>& order) {
  const int n = static_cast<int>(d.leaves.size());
  if (block < n) {
    order.push_back(block);
    return;
  }
  const auto& m = d.merges[static_cast<std::size_t>(block - n)];
  dendrogram_leaf_order(d, m.left, order);
  dendrogram_leaf_order(d, m.right, order);
}

}  // namespace detail

// Horizontal dendrogram: leaf labels down the left edge, merge heights along
// the horizontal axis.
inline std::string svg_dendrogram(const dendrogram& d,
                                  std::string_view config_comment = {}) {
  const int n = static_cast<int>(d.leaves.size());
  if (n == 0) throw domain_error("svg_dendrogram: empty dendrogram");
  const double label_w = 150.0, plot_w = 600.0, row_h = 22.0, margin = 24.0;
  const double width = label_w + plot_w + margin;
  const double height = margin * 2 + row_h * n + 30.0;
  double hmax = d.final_height();
  if (hmax <= 0.0) hmax = 1.0;
  auto x_of = [&](double h) { return label_w + (h / hmax) * plot_w; };

  std::vector<int> order;
  if (d.merges.empty()) {
    for (int i = 0; i < n; ++i) order.push_back(i);
  } else {
    detail::dendrogram_leaf_order(d, n + static_cast<int>(d.merges.size()) - 1,
                                  order);
  }
  std::vector<double> leaf_y(n, 0.0);
  for (int pos = 0; pos < n; ++pos)
    leaf_y[static_cast<std::size_t>(order[pos])] = margin + row_h * (pos + 0.5);

  std::string out = detail::svg_open(width, height, config_comment);
  for (int i = 0; i < n; ++i)
    out += detail::svg_text(label_w - 8.0, leaf_y[i] + 4.0, d.leaves[i], "end");

  // block -> (current x, y center)
  std::vector<double> bx(n + d.merges.size(), x_of(0.0));
  std::vector<double> by(n + d.merges.size(), 0.0);
  for (int i = 0; i < n; ++i) by[i] = leaf_y[i];
  for (std::size_t k = 0; k < d.merges.size(); ++k) {
    const auto& m = d.merges[k];
    const double x = x_of(m.height);
    out += detail::svg_line(bx[m.left], by[m.left], x, by[m.left]);
    out += detail::svg_line(bx[m.right], by[m.right], x, by[m.right]);
    out += detail::svg_line(x, by[m.left], x, by[m.right]);
    bx[n + k] = x;
    by[n + k] = (by[m.left] + by[m.right]) / 2.0;
  }

  const double axis_y = margin + row_h * n + 12.0;
  out += detail::svg_line(x_of(0.0), axis_y, x_of(hmax), axis_y);
  for (int t = 0; t <= 4; ++t) {
    const double h = hmax * t / 4.0;
    out += detail::svg_line(x_of(h), axis_y, x_of(h), axis_y + 4.0);
    out += detail::svg_text(x_of(h), axis_y + 16.0, fmt_sig6(h), "middle");
  }
  out += "</svg>\n";
  return out;
}

// Barcode plot: one horizontal bar per interval, grouped by dimension.
inline std::string svg_barcodes(std::span<const persistence_diagram> ds,
                                std::string_view config_comment = {}) {
  double vmax = 0.0;
  std::size_t bars = 0;
  for (const auto& d : ds) {
    vmax = std::max(vmax, d.cap);
    for (const auto& p : d.points) vmax = std::max(vmax, p.death);
    bars += d.points.size();
  }
  if (vmax <= 0.0) vmax = 1.0;
  const double left = 70.0, plot_w = 620.0, row_h = 10.0, margin = 24.0;
  const double width = left + plot_w + margin;
  const double height = margin * 2 + row_h * (bars + 2 * ds.size()) + 30.0;
  auto x_of = [&](double v) { return left + (v / vmax) * plot_w; };
  std::string out = detail::svg_open(width, height, config_comment);
  double y = margin;
  for (const auto& d : ds) {
    out += detail::svg_text(8.0, y + 10.0, "H" + std::to_string(d.dimension));
    y += row_h;
    for (const auto& p : d.points) {
      out += "<rect x=\"" + detail::px(x_of(p.birth)) + "\" y=\"" +
             detail::px(y) + "\" width=\"" +
             detail::px(std::max(x_of(p.death) - x_of(p.birth), 0.75)) +
             "\" height=\"" + detail::px(row_h * 0.6) + "\" fill=\"" +
             detail::dim_color(d.dimension) + "\"/>\n";
      y += row_h;
    }
    y += row_h;
  }
  const double axis_y = height - margin;
  out += detail::svg_line(x_of(0.0), axis_y, x_of(vmax), axis_y);
  for (int t = 0; t <= 4; ++t) {
    const double v = vmax * t / 4.0;
    out += detail::svg_line(x_of(v), axis_y, x_of(v), axis_y + 4.0);
    out += detail::svg_text(x_of(v), axis_y + 16.0, fmt_sig6(v), "middle");
  }
  out += "</svg>\n";
  return out;
}

// Persistence diagram plot: birth/death points above the diagonal.
inline std::string svg_diagram(std::span<const persistence_diagram> ds,
                               std::string_view config_comment = {}) {
  double vmax = 0.0;
  for (const auto& d : ds) {
    vmax = std::max(vmax, d.cap);
    for (const auto& p : d.points) vmax = std::max(vmax, p.death);
  }
  if (vmax <= 0.0) vmax = 1.0;
  const double left = 60.0, side = 480.0, margin = 40.0;
  const double width = left + side + margin;
  const double height = side + 2 * margin;
  auto x_of = [&](double v) { return left + (v / vmax) * side; };
  auto y_of = [&](double v) { return margin + side - (v / vmax) * side; };
  std::string out = detail::svg_open(width, height, config_comment);
  out += detail::svg_line(x_of(0), y_of(0), x_of(vmax), y_of(vmax), "#999999");
  out += detail::svg_line(x_of(0), y_of(0), x_of(vmax), y_of(0));
  out += detail::svg_line(x_of(0), y_of(0), x_of(0), y_of(vmax));
  for (const auto& d : ds)
    for (const auto& p : d.points)
      out += "<circle cx=\"" + detail::px(x_of(p.birth)) + "\" cy=\"" +
             detail::px(y_of(p.death)) + "\" r=\"3\" fill=\"" +
             detail::dim_color(d.dimension) + "\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = vmax * t / 4.0;
    out += detail::svg_text(x_of(v), y_of(0) + 16.0, fmt_sig6(v), "middle");
    out += detail::svg_text(x_of(0) - 6.0, y_of(v) + 4.0, fmt_sig6(v), "end");
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dowker
