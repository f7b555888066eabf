#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <dowker/dowker.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dowker;

TEST_CASE("edge list parsing: single edge") {
  const auto g = parse_edge_list("source,target,weight\na,b,2\n");
  REQUIRE(g.nodes == std::vector<std::string>{"a", "b"});
  REQUIRE(g.weights[0][1] == 2.0);
  REQUIRE(g.weights[1][0] == 0.0);
  REQUIRE(g.kind == weight_kind::flow);
}

TEST_CASE("edge list parsing: six-edge star fixture") {
  const auto g = fixtures::star6_network();
  REQUIRE(g.size() == 6);
  REQUIRE(g.weights[g.index_of("x3")][g.index_of("x1")] == 2.0);
  REQUIRE(g.weights[g.index_of("x3")][g.index_of("x6")] == 4.0);
  REQUIRE(g.weights[g.index_of("x4")][g.index_of("x6")] == 6.0);
  REQUIRE(g.weights[g.index_of("x6")][g.index_of("x4")] == 0.0);
  // first-appearance order
  REQUIRE(g.nodes.front() == "x3");
}

TEST_CASE("edge list parsing: errors") {
  REQUIRE_THROWS_AS(parse_edge_list("source,target,weight\na,a,1\n"),
                    domain_error);
  REQUIRE_THROWS_AS(parse_edge_list("source,target,weight\na,b,-1\n"),
                    domain_error);
  REQUIRE_THROWS_AS(
      parse_edge_list("source,target,weight\na,b,1\na,b,2\n"),
      duplicate_error);
  REQUIRE_THROWS_AS(parse_edge_list("src,dst,w\na,b,1\n"), parse_error);
  REQUIRE_THROWS_AS(parse_edge_list("source,target,weight\na,b\n"),
                    parse_error);
  REQUIRE_THROWS_AS(parse_edge_list("source,target,weight\na,b,zzz\n"),
                    parse_error);
  REQUIRE_THROWS_AS(parse_edge_list(""), parse_error);
  // line numbers reported
  try {
    parse_edge_list("source,target,weight\na,b,1\nc,d,oops\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("edge list parsing: tolerates CRLF and blank lines") {
  const auto g =
      parse_edge_list("source,target,weight\r\na,b,2\r\n\r\nb,c,1\r\n");
  REQUIRE(g.size() == 3);
  REQUIRE(g.weights[1][2] == 1.0);
}

TEST_CASE("edge list parsing: zero-weight self-loop row is tolerated") {
  const auto g = parse_edge_list("source,target,weight\na,a,0\n");
  REQUIRE(g.size() == 1);
  REQUIRE(g.weights[0][0] == 0.0);
}

TEST_CASE("adjacency parsing") {
  SECTION("2x2 table") {
    const auto g = parse_adjacency_csv(",a,b\na,0,5\nb,1,0\n");
    REQUIRE(g.nodes == std::vector<std::string>{"a", "b"});
    REQUIRE(g.weights[0][1] == 5.0);
    REQUIRE(g.weights[1][0] == 1.0);
  }
  SECTION("1x1 degenerate table") {
    const auto g = parse_adjacency_csv("corner,a\na,0\n");
    REQUIRE(g.size() == 1);
  }
  SECTION("nonzero diagonal is zeroed with a warning") {
    std::vector<std::string> warnings;
    const auto g = parse_adjacency_csv(",a,b\na,3,5\nb,1,0\n", &warnings);
    REQUIRE(g.weights[0][0] == 0.0);
    REQUIRE(warnings.size() == 1);
    REQUIRE(warnings[0].find("'a'") != std::string::npos);
  }
  SECTION("shape and label errors") {
    REQUIRE_THROWS_AS(parse_adjacency_csv(",a,b\na,0,5\n"), parse_error);
    REQUIRE_THROWS_AS(parse_adjacency_csv(",a,b\na,0,5\nb,1,0\nc,0,0\n"),
                      parse_error);
    REQUIRE_THROWS_AS(parse_adjacency_csv(",a,b\na,0,5\nx,1,0\n"),
                      parse_error);
    REQUIRE_THROWS_AS(parse_adjacency_csv(",a,b\na,0\nb,1,0\n"), parse_error);
    REQUIRE_THROWS_AS(parse_adjacency_csv(",a,b\na,0,-5\nb,1,0\n"),
                      domain_error);
  }
}

TEST_CASE("effective distance reproduces the star example") {
  const auto g = fixtures::star6_network();
  const auto eff = effective_distance(g, 1e-10);
  const fixtures::star6_values v;
  const auto at = [&](const char* a, const char* b) {
    return eff.distances[eff.index_of(a)][eff.index_of(b)];
  };
  REQUIRE(at("x3", "x1") == v.m31);
  REQUIRE(at("x3", "x2") == v.m32);
  REQUIRE(at("x3", "x5") == v.m35);
  REQUIRE(at("x3", "x6") == v.m36);
  REQUIRE(at("x3", "x4") == v.m34);
  REQUIRE(at("x4", "x6") == 1.0);  // single out-edge: ratio 1, log vanishes
  REQUIRE(at("x1", "x3") == v.sentinel);
  // two-decimal display values
  REQUIRE_THAT(at("x3", "x1"), Catch::Matchers::WithinAbs(2.70, 0.005));
  REQUIRE_THAT(at("x3", "x6"), Catch::Matchers::WithinAbs(2.01, 0.005));
  REQUIRE_THAT(at("x3", "x4"), Catch::Matchers::WithinAbs(2.30, 0.005));
  REQUIRE_THAT(eff.sentinel, Catch::Matchers::WithinAbs(24.026, 1e-3));
}

TEST_CASE("effective distance domain checks") {
  const auto g = fixtures::star6_network();
  REQUIRE_THROWS_AS(effective_distance(g, 0.0), domain_error);
  REQUIRE_THROWS_AS(effective_distance(g, 1.0), domain_error);
  directed_network dissim{{"a", "b"}, {{0, 1}, {1, 0}},
                          weight_kind::dissimilarity};
  REQUIRE_THROWS_AS(effective_distance(dissim, 1e-10), domain_error);
}

TEST_CASE("effective distance with the target in-weight variant") {
  const auto g = fixtures::star6_network();
  const auto eff =
      effective_distance(g, 1e-10, distance_normalization::target_in);
  // x1's only incoming weight is the 2 from x3, so the share is 1.
  REQUIRE(eff.distances[eff.index_of("x3")][eff.index_of("x1")] == 1.0);
  // x6 receives 4 (from x3) and 6 (from x4).
  REQUIRE(eff.distances[eff.index_of("x3")][eff.index_of("x6")] ==
          1.0 - std::log(4.0 / 10.0));
}

TEST_CASE("effective distance clamps extreme ratios at the sentinel") {
  directed_network g{{"a", "b", "c"},
                     {{0, 1e16, 1}, {0, 0, 0}, {0, 0, 0}},
                     weight_kind::flow};
  const auto eff = effective_distance(g, 1e-10);
  REQUIRE(eff.distances[0][2] == eff.sentinel);
  REQUIRE(eff.distances[0][1] > 0.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      REQUIRE(eff.distances[i][j] <= eff.sentinel);
      if (g.weights[i][j] > 0.0 && eff.distances[i][j] < eff.sentinel)
        REQUIRE(eff.distances[i][j] >= 1.0);
    }
}

TEST_CASE("effective distance is scale invariant") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = fixtures::random_flow(rng, 6, 0.5);
    const auto base = effective_distance(g, 1e-10);
    SECTION("power-of-two scaling is bit exact") {}
    auto scaled = g;
    for (auto& row : scaled.weights)
      for (auto& w : row) w *= 4.0;
    const auto eff4 = effective_distance(scaled, 1e-10);
    REQUIRE(eff4.distances == base.distances);

    auto scaled3 = g;
    for (auto& row : scaled3.weights)
      for (auto& w : row) w *= 3.0;
    const auto eff3 = effective_distance(scaled3, 1e-10);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        REQUIRE_THAT(eff3.distances[i][j],
                     Catch::Matchers::WithinAbs(base.distances[i][j], 1e-12));
  }
}

TEST_CASE("node with an all-zero out-row gets all-sentinel distances") {
  directed_network g{{"a", "b"}, {{0, 0}, {5, 0}}, weight_kind::flow};
  const auto eff = effective_distance(g, 1e-10);
  REQUIRE(eff.distances[0][1] == eff.sentinel);
  REQUIRE(eff.distances[1][0] == 1.0);
}

TEST_CASE("delete_node") {
  const auto eff = fixtures::star6_gamma();
  const fixtures::star6_values v;
  SECTION("deleting the hub leaves only the x4 -> x6 edge") {
    const auto sub = delete_node(eff, "x3");
    REQUIRE(sub.size() == 5);
    REQUIRE(sub.distances[sub.index_of("x4")][sub.index_of("x6")] == 1.0);
    for (std::size_t i = 0; i < sub.size(); ++i)
      for (std::size_t j = 0; j < sub.size(); ++j) {
        if (i == j) continue;
        if (sub.nodes[i] == "x4" && sub.nodes[j] == "x6") continue;
        REQUIRE(sub.distances[i][j] == sub.sentinel);
      }
  }
  SECTION("deleting the sink keeps the hub's out-edges") {
    const auto sub = delete_node(eff, "x6");
    REQUIRE(sub.size() == 5);
    REQUIRE(sub.distances[sub.index_of("x3")][sub.index_of("x1")] == v.m31);
    REQUIRE(sub.distances[sub.index_of("x3")][sub.index_of("x2")] == v.m32);
    REQUIRE(sub.distances[sub.index_of("x3")][sub.index_of("x5")] == v.m35);
    REQUIRE(sub.distances[sub.index_of("x3")][sub.index_of("x4")] == v.m34);
  }
  SECTION("unknown label and singleton errors") {
    REQUIRE_THROWS_AS(delete_node(eff, "zz"), lookup_error);
    effective_distance_network one{{"a"}, {{0.0}}, 1.0};
    REQUIRE_THROWS_AS(delete_node(one, "a"), domain_error);
  }
  SECTION("deletions commute") {
    const auto ab = delete_node(delete_node(eff, "x1"), "x4");
    const auto ba = delete_node(delete_node(eff, "x4"), "x1");
    REQUIRE(ab.nodes == ba.nodes);
    REQUIRE(ab.distances == ba.distances);
  }
}

TEST_CASE("min_incident_distance") {
  const auto eff = fixtures::star6_gamma();
  const fixtures::star6_values v;
  REQUIRE(min_incident_distance(eff, "x3") == v.m36);
  REQUIRE_THAT(min_incident_distance(eff, "x3"),
               Catch::Matchers::WithinAbs(2.01, 0.005));
  // the closest incident entry of x6 is the incoming edge from x4
  REQUIRE(min_incident_distance(eff, "x6") == 1.0);
  SECTION("agrees with a direct scan everywhere") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = fixtures::random_dissimilarity(rng, 6, 0.4);
      for (std::size_t i = 0; i < g.size(); ++i)
        REQUIRE(min_incident_distance(g, g.nodes[i]) ==
                oracles::min_incident_scan(g, i));
    }
  }
  SECTION("isolated node sits at the sentinel") {
    effective_distance_network g{
        {"a", "b", "c"},
        {{0, 1.5, 5}, {2.0, 0, 5}, {5, 5, 0}},
        5.0};
    REQUIRE(min_incident_distance(g, "c") == 5.0);
  }
  SECTION("single-node network is an error") {
    effective_distance_network one{{"a"}, {{0.0}}, 1.0};
    REQUIRE_THROWS_AS(min_incident_distance(one, "a"), domain_error);
  }
}

TEST_CASE("edge list round-trips the weight matrix bit-exactly") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> w(0.0, 100.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = fixtures::random_flow(rng, 5, 0.6);
    for (auto& row : g.weights)
      for (auto& x : row)
        if (x > 0.0) x = w(rng);  // arbitrary doubles, not just integers
    const auto back = parse_edge_list(edge_list_csv(g));
    // compare edge by edge: the parse orders nodes by first appearance in
    // the text, and nodes without incident edges cannot survive the format
    std::size_t positive = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g.weights[i][j] <= 0.0) continue;
        ++positive;
        REQUIRE(back.weights[back.index_of(g.nodes[i])]
                            [back.index_of(g.nodes[j])] == g.weights[i][j]);
      }
    std::size_t back_positive = 0;
    for (const auto& row : back.weights)
      for (double x : row)
        if (x > 0.0) ++back_positive;
    REQUIRE(back_positive == positive);
  }
}

TEST_CASE("transpose flips every edge") {
  const auto g = fixtures::star6_network();
  const auto t = transpose(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      REQUIRE(t.weights[j][i] == g.weights[i][j]);
}

TEST_CASE("as_effective_distance uses the largest entry as sentinel") {
  directed_network g{{"a", "b"}, {{0, 2.5}, {1.0, 0}},
                     weight_kind::dissimilarity};
  const auto eff = as_effective_distance(g);
  REQUIRE(eff.sentinel == 2.5);
  REQUIRE_THROWS_AS(as_effective_distance(fixtures::star6_network()),
                    domain_error);
}

TEST_CASE("validate rejects broken networks") {
  REQUIRE_THROWS_AS(
      validate(directed_network{{"a", "a"}, {{0, 1}, {1, 0}},
                                weight_kind::flow}),
      domain_error);
  REQUIRE_THROWS_AS(
      validate(directed_network{{"a", "b"}, {{0, -1}, {1, 0}},
                                weight_kind::flow}),
      domain_error);
  REQUIRE_THROWS_AS(
      validate(effective_distance_network{{"a", "b"}, {{0, 3}, {1, 0}}, 2.0}),
      domain_error);
}
