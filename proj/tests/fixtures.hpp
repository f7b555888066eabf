#pragma once

// Shared test fixtures: the six-node star example and random network /
// diagram generators with fixed seeding.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <dowker/dowker.hpp>

namespace fixtures {

inline std::string star6_edge_csv() {
  return "source,target,weight\n"
         "x3,x1,2\n"
         "x3,x2,1\n"
         "x3,x5,1\n"
         "x3,x6,4\n"
         "x3,x4,3\n"
         "x4,x6,6\n";
}

inline dowker::directed_network star6_network() {
  return dowker::parse_edge_list(star6_edge_csv());
}

inline dowker::effective_distance_network star6_gamma(double eps = 1e-10) {
  return dowker::effective_distance(star6_network(), eps);
}

// Exact transformed values, derived from first principles: node x3 has total
// out-weight 11, node x4 has total out-weight 6.
struct star6_values {
  double m31 = 1.0 - std::log(2.0 / 11.0);
  double m32 = 1.0 - std::log(1.0 / 11.0);
  double m35 = 1.0 - std::log(1.0 / 11.0);
  double m36 = 1.0 - std::log(4.0 / 11.0);
  double m34 = 1.0 - std::log(3.0 / 11.0);
  double m46 = 1.0;
  double sentinel = 1.0 - std::log(1e-10);
};

// The same network at two-decimal display precision with sentinel 24.026;
// the reference arithmetic for this example is carried out at this
// precision.
inline dowker::effective_distance_network star6_gamma_rounded() {
  const double s = 24.026;
  std::vector<std::vector<double>> d(6, std::vector<double>(6, s));
  for (int i = 0; i < 6; ++i) d[i][i] = 0.0;
  d[2][0] = 2.70;  // x3 -> x1
  d[2][1] = 3.40;  // x3 -> x2
  d[2][3] = 2.30;  // x3 -> x4
  d[2][4] = 3.40;  // x3 -> x5
  d[2][5] = 2.01;  // x3 -> x6
  d[3][5] = 1.00;  // x4 -> x6
  return {{"x1", "x2", "x3", "x4", "x5", "x6"}, d, s};
}

inline std::vector<std::string> make_labels(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return labels;
}

inline dowker::directed_network random_flow(std::mt19937& rng, int n,
                                            double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> weight(1, 10);
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && coin(rng) < density)
        w[i][j] = static_cast<double>(weight(rng));
  return {make_labels(n), std::move(w), dowker::weight_kind::flow};
}

inline dowker::effective_distance_network random_dissimilarity(
    std::mt19937& rng, int n, double density, double sentinel = 5.0) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> dist(1.0, 4.0);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, sentinel));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0.0;
    for (int j = 0; j < n; ++j)
      if (i != j && coin(rng) < density) d[i][j] = dist(rng);
  }
  return {make_labels(n), std::move(d), sentinel};
}

inline dowker::persistence_diagram random_diagram(std::mt19937& rng, int dim,
                                                  int max_points,
                                                  double cap = 100.0) {
  std::uniform_int_distribution<int> count(0, max_points);
  std::uniform_real_distribution<double> birth(0.0, 5.0);
  std::uniform_real_distribution<double> pers(0.0, 5.0);
  dowker::persistence_diagram d{dim, cap, {}};
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    const double b = birth(rng);
    d.points.push_back({b, b + pers(rng), false});
  }
  return d;
}

inline std::vector<std::vector<double>> random_distance_matrix(
    std::mt19937& rng, int n, double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = dist(rng);
  return d;
}

}  // namespace fixtures
