#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <dowker/dowker.hpp>

#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct cli_result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("dowker_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

cli_result run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(DOWKER_CLI_PATH) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int rc = std::system(cmd.c_str());
  cli_result r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string data_path(const std::string& name) {
  return (fs::path(DOWKER_DATA_DIR) / name).string();
}

}  // namespace

TEST_CASE("cli: transform emits the transformed network with metadata") {
  const auto r = run_cli("transform --input " + data_path("star6.csv") +
                         " --epsilon 1e-10");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("config").at("epsilon") == "1e-10");
  REQUIRE(j.at("kind") == "dissimilarity");
  REQUIRE_THAT(j.at("sentinel").get<double>(),
               Catch::Matchers::WithinAbs(24.0259, 1e-3));
  const auto loaded = dowker::network_from_json(r.out);
  REQUIRE(loaded.effective.has_value());
  const auto& eff = *loaded.effective;
  const auto at = [&](const char* a, const char* b) {
    return eff.distances[eff.index_of(a)][eff.index_of(b)];
  };
  REQUIRE_THAT(at("x3", "x1"), Catch::Matchers::WithinAbs(2.70, 0.005));
  REQUIRE_THAT(at("x3", "x2"), Catch::Matchers::WithinAbs(3.40, 0.005));
  REQUIRE_THAT(at("x3", "x5"), Catch::Matchers::WithinAbs(3.40, 0.005));
  REQUIRE_THAT(at("x3", "x6"), Catch::Matchers::WithinAbs(2.01, 0.005));
  REQUIRE_THAT(at("x3", "x4"), Catch::Matchers::WithinAbs(2.30, 0.005));
  REQUIRE_THAT(at("x4", "x6"), Catch::Matchers::WithinAbs(1.00, 0.005));
}

TEST_CASE("cli: exit codes") {
  SECTION("usage errors exit 1") {
    REQUIRE(run_cli("transform").exit_code == 1);
    REQUIRE(run_cli("no-such-command").exit_code == 1);
    REQUIRE(run_cli("centrality --input x --measure bogus").exit_code == 1);
  }
  SECTION("missing file exits 2 with a message") {
    const auto r = run_cli("transform --input /nonexistent/net.csv");
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.err.find("/nonexistent/net.csv") != std::string::npos);
  }
  SECTION("malformed input exits 2") {
    const fs::path bad = scratch_dir() / "bad.csv";
    spit(bad, "src,dst,w\na,b,1\n");
    REQUIRE(run_cli("transform --input " + bad.string()).exit_code == 2);
    const fs::path dup = scratch_dir() / "dup.csv";
    spit(dup, "source,target,weight\na,b,1\na,b,2\n");
    REQUIRE(run_cli("transform --input " + dup.string()).exit_code == 2);
  }
  SECTION("domain errors exit 3") {
    const fs::path neg = scratch_dir() / "neg.csv";
    spit(neg, "source,target,weight\na,b,-1\n");
    REQUIRE(run_cli("transform --input " + neg.string()).exit_code == 3);
    const fs::path loop = scratch_dir() / "loop.csv";
    spit(loop, "source,target,weight\na,a,1\n");
    REQUIRE(run_cli("transform --input " + loop.string()).exit_code == 3);
    // quasi-centrality needs at least two nodes
    const fs::path one = scratch_dir() / "one.csv";
    spit(one, "source,target,weight\na,a,0\n");
    REQUIRE(run_cli("centrality --measure quasi --input " + one.string())
                .exit_code == 3);
    // transform of an already-dissimilarity input
    const auto r = run_cli("transform --format network-json --input " +
                           data_path("star6_gamma_rounded.json"));
    REQUIRE(r.exit_code == 3);
  }
  SECTION("convergence failures exit 4") {
    const fs::path cyc = scratch_dir() / "cyc.csv";
    spit(cyc, "source,target,weight\na,b,1\nb,a,1\n");
    REQUIRE(run_cli("centrality --measure katz --alpha 1.5 --input " +
                    cyc.string())
                .exit_code == 4);
  }
}

TEST_CASE("cli: quasi-centrality on the two-decimal star matrix") {
  const auto r =
      run_cli("centrality --measure quasi --format network-json --input " +
              data_path("star6_gamma_rounded.json"));
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("x6,0.29\n") != std::string::npos);
  REQUIRE(r.out.find("x3,62.578\n") != std::string::npos);
  REQUIRE(r.out.find("x1,0\n") != std::string::npos);
  REQUIRE(r.out.rfind("# config:", 0) == 0);
}

TEST_CASE("cli: the comparison table carries one column per measure") {
  const auto r = run_cli("centrality --measure all --input " +
                         data_path("star6.csv"));
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("node,quasi,in_degree,out_degree,katz,pagerank,"
                     "pagerank_reversed,hits_hub,hits_authority\n") !=
          std::string::npos);
  const auto r2 = run_cli("compare --input " + data_path("star6.csv"));
  REQUIRE(r2.exit_code == 0);
  REQUIRE(r2.out.find(",quasi,") != std::string::npos);
}

TEST_CASE("cli: persistence emits the six dimension-0 deaths") {
  const auto r = run_cli("persistence --input " + data_path("star6.csv") +
                         " --max-dim 2");
  REQUIRE(r.exit_code == 0);
  const auto ds = dowker::diagrams_from_json(r.out);
  REQUIRE(ds.size() == 2);
  REQUIRE(ds[0].dimension == 0);
  REQUIRE(ds[0].points.size() == 6);
  std::vector<double> deaths;
  for (const auto& p : ds[0].points) deaths.push_back(p.death);
  std::sort(deaths.begin(), deaths.end());
  const std::vector<double> rounded{1.00, 2.01, 2.70, 3.40, 3.40, 24.026};
  for (std::size_t i = 0; i < 6; ++i)
    REQUIRE_THAT(deaths[i], Catch::Matchers::WithinAbs(rounded[i], 5e-3));
  SECTION("csv and svg formats") {
    const auto csv = run_cli("persistence --output-format csv --input " +
                             data_path("star6.csv"));
    REQUIRE(csv.exit_code == 0);
    REQUIRE(csv.out.find("dim,birth,death,essential\n") != std::string::npos);
    const auto svg = run_cli("persistence --output-format svg --input " +
                             data_path("star6.csv"));
    REQUIRE(svg.exit_code == 0);
    REQUIRE(svg.out.find("<svg") != std::string::npos);
  }
  SECTION("filtration export") {
    const fs::path filt = scratch_dir() / "filt.csv";
    const auto rr = run_cli("persistence --input " + data_path("star6.csv") +
                            " --emit-filtration " + filt.string());
    REQUIRE(rr.exit_code == 0);
    const auto text = slurp(filt);
    REQUIRE(text.find("dim,vertices,value\n") != std::string::npos);
    REQUIRE(text.find("1,x6;x4,1\n") != std::string::npos);
  }
}

TEST_CASE("cli: bottleneck of a diagram file with itself prints zero") {
  const fs::path diag = scratch_dir() / "diag.json";
  const auto r0 = run_cli("persistence --input " + data_path("star6.csv") +
                          " --output " + diag.string());
  REQUIRE(r0.exit_code == 0);
  const auto r = run_cli("bottleneck " + diag.string() + " " + diag.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "0\n");
  const auto rd = run_cli("bottleneck --dim 1 " + diag.string() + " " +
                          diag.string());
  REQUIRE(rd.exit_code == 0);
  REQUIRE(rd.out == "0\n");
}

TEST_CASE("cli: dendrogram writes the full output set") {
  const fs::path prefix = scratch_dir() / "star";
  const auto r = run_cli("dendrogram --input " + data_path("star6.csv") +
                         " --output " + prefix.string());
  REQUIRE(r.exit_code == 0);
  const auto nwk = slurp(prefix.string() + ".nwk");
  REQUIRE(nwk.find("STANDARD") != std::string::npos);
  REQUIRE(nwk.rfind("[config:", 0) == 0);
  // seven leaves: six nodes plus STANDARD
  int commas = 0;
  for (char c : nwk)
    if (c == ',') ++commas;
  REQUIRE(commas == 6);
  REQUIRE(slurp(prefix.string() + ".svg").find("<svg") != std::string::npos);
  const auto jt = slurp(prefix.string() + "_join_times.csv");
  REQUIRE(jt.find("node,join_time\n") != std::string::npos);
  REQUIRE(jt.find("x3,") != std::string::npos);
  const auto merges = slurp(prefix.string() + "_merges.json");
  REQUIRE(nlohmann::json::parse(merges).at("merges").size() == 6);
  REQUIRE(slurp(prefix.string() + "_distances.csv")
              .find("label,x3") != std::string::npos);
  REQUIRE(slurp(prefix.string() + "_distances_long.csv")
              .find("label_row,label_col,distance\n") != std::string::npos);
}

TEST_CASE("cli: adjacency input format") {
  const auto r = run_cli("centrality --measure out-degree --format adjacency "
                         "--input " +
                         data_path("star6_adjacency.csv"));
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("x3,5\n") != std::string::npos);
}

TEST_CASE("cli: identical runs produce identical bytes") {
  const auto a = run_cli("centrality --measure all --input " +
                         data_path("star6.csv") + " --seed 7");
  const auto b = run_cli("centrality --measure all --input " +
                         data_path("star6.csv") + " --seed 7");
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.out == b.out);
  REQUIRE(a.out.find("seed=7") != std::string::npos);
}
