// Command-line front end: file-to-file pipelines over directed weighted
// networks (effective-distance transform, centralities, persistence
// diagrams, bottleneck distances, impact dendrograms).
//
// Exit codes: 0 ok, 1 usage, 2 parse/IO, 3 domain, 4 convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <dowker/dowker.hpp>

namespace {

using namespace dowker;

struct run_config {
  std::string input;
  std::string format = "edge-list";  // edge-list | adjacency | network-json
  std::string epsilon_raw = "1e-10";
  int max_dim = 2;
  std::string output;         // empty = stdout
  std::string output_format;  // resolved per command
  long seed = 0;
  unsigned threads = 0;  // resolved at run time; never echoed into outputs
  std::string normalize_by = "out";  // out | in

  double epsilon() const {
    try {
      std::size_t pos = 0;
      const double v = std::stod(epsilon_raw, &pos);
      if (pos != epsilon_raw.size()) throw std::invalid_argument(epsilon_raw);
      return v;
    } catch (const std::exception&) {
      throw parse_error("cannot parse epsilon '" + epsilon_raw + "'");
    }
  }

  distance_normalization normalization() const {
    return normalize_by == "in" ? distance_normalization::target_in
                                : distance_normalization::source_out;
  }

  std::string hom_dims() const {
    std::string out;
    for (int d = 0; d + 1 <= max_dim; ++d) {
      if (d) out += ';';
      out += std::to_string(d);
    }
    return out;
  }

  // Single-line echo of the run configuration; every output file starts
  // with it. Thread count is excluded on purpose: results do not depend on
  // it, and neither should output bytes.
  std::string echo_line() const {
    return "input=" + input + " format=" + format + " epsilon=" + epsilon_raw +
           " max_dim=" + std::to_string(max_dim) + " hom_dims=" + hom_dims() +
           " normalize_by=" + normalize_by +
           " output_format=" + output_format + " seed=" + std::to_string(seed);
  }

  std::string echo_json() const {
    std::string out = "{";
    out += "\"input\":\"" + json_escape(input) + "\",";
    out += "\"format\":\"" + json_escape(format) + "\",";
    out += "\"epsilon\":\"" + json_escape(epsilon_raw) + "\",";
    out += "\"max_dim\":" + std::to_string(max_dim) + ",";
    out += "\"hom_dims\":\"" + hom_dims() + "\",";
    out += "\"normalize_by\":\"" + normalize_by + "\",";
    out += "\"output_format\":\"" + json_escape(output_format) + "\",";
    out += "\"seed\":" + std::to_string(seed);
    out += "}";
    return out;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw io_error("failed while reading '" + path + "'");
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw io_error("failed while writing '" + path + "'");
}

loaded_network load_network(const run_config& cfg) {
  const std::string text = read_file(cfg.input);
  loaded_network out;
  if (cfg.format == "edge-list") {
    out.plain = parse_edge_list(text);
  } else if (cfg.format == "adjacency") {
    std::vector<std::string> warnings;
    out.plain = parse_adjacency_csv(text, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  } else if (cfg.format == "network-json") {
    out = network_from_json(text);
  } else {
    throw parse_error("unknown input format '" + cfg.format + "'");
  }
  return out;
}

effective_distance_network to_effective(const loaded_network& net,
                                        const run_config& cfg) {
  if (net.effective) return *net.effective;
  if (net.plain->kind == weight_kind::flow)
    return effective_distance(*net.plain, cfg.epsilon(), cfg.normalization());
  return as_effective_distance(*net.plain);
}

// --- subcommands -----------------------------------------------------------

void cmd_transform(const run_config& cfg) {
  const loaded_network net = load_network(cfg);
  if (!net.plain || net.plain->kind != weight_kind::flow)
    throw domain_error("transform expects a flow network as input");
  const auto eff =
      effective_distance(*net.plain, cfg.epsilon(), cfg.normalization());
  write_output(cfg.output, network_json(eff, cfg.echo_json()));
}

void cmd_persistence(const run_config& cfg, const std::string& filtration_out) {
  if (cfg.max_dim < 1)
    throw domain_error("persistence requires --max-dim of at least 1");
  const auto eff = to_effective(load_network(cfg), cfg);
  const auto fc = build_filtration(eff, cfg.max_dim);
  if (!filtration_out.empty())
    write_output(filtration_out,
                 filtration_csv(fc, eff.nodes, cfg.echo_line()));
  const auto diagrams = compute_persistence(fc, cfg.max_dim - 1, eff.sentinel);
  if (cfg.output_format == "json")
    write_output(cfg.output, diagrams_json(diagrams, cfg.echo_json()));
  else if (cfg.output_format == "csv")
    write_output(cfg.output, barcode_csv(diagrams, cfg.echo_line()));
  else
    write_output(cfg.output, svg_barcodes(diagrams, cfg.echo_line()));
}

const std::vector<std::string> kAllMeasures = {
    "quasi",    "in-degree",         "out-degree", "katz",
    "pagerank", "pagerank-reversed", "hits-hub",   "hits-authority"};

centrality_report run_measure(const std::string& measure,
                              const loaded_network& net, const run_config& cfg,
                              std::optional<double> alpha,
                              std::optional<double> beta, bool reversed) {
  auto plain = [&]() -> directed_network {
    if (net.plain) return *net.plain;
    // distance matrices still admit the adjacency-based measures
    return directed_network{net.effective->nodes, net.effective->distances,
                            weight_kind::dissimilarity};
  };
  if (measure == "quasi") {
    if (net.effective)
      return quasi_centrality(*net.effective, cfg.threads);
    return quasi_centrality(*net.plain, cfg.epsilon(), cfg.threads,
                            cfg.normalization());
  }
  if (measure == "in-degree") return degree_centrality(plain()).first;
  if (measure == "out-degree") return degree_centrality(plain()).second;
  if (measure == "katz")
    return katz(plain(), alpha.value_or(0.1), beta.value_or(1.0));
  if (measure == "pagerank")
    return pagerank(plain(), alpha.value_or(0.85), beta, reversed);
  if (measure == "pagerank-reversed")
    return pagerank(plain(), alpha.value_or(0.85), beta, true);
  if (measure == "hits-hub") return hits(plain()).first;
  if (measure == "hits-authority") return hits(plain()).second;
  throw parse_error("unknown measure '" + measure + "'");
}

void cmd_centrality(const run_config& cfg, const std::string& measure,
                    std::optional<double> alpha, std::optional<double> beta,
                    bool reversed) {
  const loaded_network net = load_network(cfg);
  if (measure == "all") {
    std::vector<centrality_report> reports;
    reports.reserve(kAllMeasures.size());
    for (const auto& m : kAllMeasures)
      reports.push_back(run_measure(m, net, cfg, alpha, beta, reversed));
    if (cfg.output_format == "json") {
      std::string out = "{\"config\":" + cfg.echo_json() + ",\"measures\":[";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out += ',';
        std::string one = report_json(reports[i]);
        if (!one.empty() && one.back() == '\n') one.pop_back();
        out += one;
      }
      out += "]}\n";
      write_output(cfg.output, out);
    } else {
      write_output(cfg.output, wide_report_csv(reports, cfg.echo_line()));
    }
    return;
  }
  const auto report = run_measure(measure, net, cfg, alpha, beta, reversed);
  if (cfg.output_format == "json")
    write_output(cfg.output, report_json(report, cfg.echo_json()));
  else
    write_output(cfg.output, report_csv(report, cfg.echo_line()));
}

void cmd_bottleneck(const run_config& cfg, const std::string& file_a,
                    const std::string& file_b, std::optional<int> only_dim) {
  const auto da = diagrams_from_json(read_file(file_a));
  const auto db = diagrams_from_json(read_file(file_b));
  double value = 0.0;
  if (only_dim) {
    auto pick = [&](const std::vector<persistence_diagram>& ds)
        -> persistence_diagram {
      for (const auto& d : ds)
        if (d.dimension == *only_dim) return d;
      const double cap = ds.empty() ? 0.0 : ds.front().cap;
      return persistence_diagram{*only_dim, cap, {}};
    };
    value = bottleneck_distance(pick(da), pick(db));
  } else {
    value = diagram_distance(da, db, cfg.max_dim - 1);
  }
  std::string line = fmt_sig17(value) + "\n";
  if (!cfg.output.empty())
    write_output(cfg.output, "{\"config\":" + cfg.echo_json() +
                                 ",\"distance\":" + fmt_sig17(value) + "}\n");
  else
    write_output("", line);
}

void cmd_dendrogram(const run_config& cfg) {
  if (cfg.max_dim < 1)
    throw domain_error("dendrogram requires --max-dim of at least 1");
  const auto eff = to_effective(load_network(cfg), cfg);
  const int hom_dim = cfg.max_dim - 1;
  const auto objects = build_object_set(eff, hom_dim, cfg.threads);
  const auto dist = bottleneck_matrix(objects, hom_dim, cfg.threads);
  const auto dend = single_linkage(dist, objects.labels);
  const auto ranking = join_time_ranking(dend);

  write_output(cfg.output + ".nwk", newick(dend, cfg.echo_line()));
  write_output(cfg.output + ".svg", svg_dendrogram(dend, cfg.echo_line()));
  write_output(cfg.output + "_merges.json",
               merge_list_json(dend, cfg.echo_json()));
  std::string jt;
  jt += "# config: " + cfg.echo_line() + "\n";
  jt += "node,join_time\n";
  for (const auto& [label, t] : ranking)
    jt += label + "," + fmt_sig6(t) + "\n";
  write_output(cfg.output + "_join_times.csv", jt);
  write_output(cfg.output + "_distances.csv",
               distance_matrix_wide_csv(dist, objects.labels, cfg.echo_line()));
  write_output(
      cfg.output + "_distances_long.csv",
      distance_matrix_long_csv(dist, objects.labels, cfg.echo_line()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Topological centrality and impact hierarchies for directed weighted "
      "networks (Dowker sink filtrations)"};
  app.require_subcommand(1);

  run_config cfg;
  std::string measure = "quasi";
  std::optional<double> alpha, beta;
  bool reversed = false;
  std::optional<int> only_dim;
  std::string file_a, file_b, filtration_out;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("-i,--input", cfg.input, "input network file");
    if (needs_input) in->required();
    cmd->add_option("-f,--format", cfg.format, "input format")
        ->check(CLI::IsMember({"edge-list", "adjacency", "network-json"}));
    cmd->add_option("--epsilon", cfg.epsilon_raw,
                    "imputed-flow fraction for absent edges, in (0,1)");
    cmd->add_option("--max-dim", cfg.max_dim,
                    "top simplex dimension of the filtration")
        ->check(CLI::Range(0, 16));
    cmd->add_option("--normalize-by", cfg.normalize_by,
                    "flow normalization: source out-weight or target "
                    "in-weight")
        ->check(CLI::IsMember({"out", "in"}));
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
        ->envname("DOWKER_THREADS");
    cmd->add_option("-o,--output", cfg.output, "output file (default stdout)");
    cmd->add_option("--seed", cfg.seed, "seed recorded in output metadata");
  };

  auto* transform =
      app.add_subcommand("transform", "effective-distance transform");
  add_common(transform, true);
  transform->add_option("--output-format", cfg.output_format)
      ->check(CLI::IsMember({"json"}));

  auto* centrality = app.add_subcommand("centrality", "node centralities");
  add_common(centrality, true);
  {
    std::vector<std::string> choices = kAllMeasures;
    choices.push_back("all");
    centrality->add_option("-m,--measure", measure, "centrality measure")
        ->check(CLI::IsMember(choices));
  }
  centrality->add_option("--alpha", alpha, "katz/pagerank alpha");
  centrality->add_option("--beta", beta, "katz/pagerank beta");
  centrality->add_flag("--reversed", reversed,
                       "run pagerank on the edge-reversed network");
  centrality->add_option("--output-format", cfg.output_format)
      ->check(CLI::IsMember({"csv", "json"}));

  auto* compare = app.add_subcommand(
      "compare", "wide comparison table across all measures");
  add_common(compare, true);
  compare->add_option("--alpha", alpha, "katz/pagerank alpha");
  compare->add_option("--beta", beta, "katz/pagerank beta");
  compare->add_option("--output-format", cfg.output_format)
      ->check(CLI::IsMember({"csv", "json"}));

  auto* persistence =
      app.add_subcommand("persistence", "persistence diagrams and barcodes");
  add_common(persistence, true);
  persistence->add_option("--output-format", cfg.output_format)
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  persistence->add_option("--emit-filtration", filtration_out,
                          "also export the filtration as CSV to this path");

  auto* bottleneck = app.add_subcommand(
      "bottleneck", "bottleneck distance between two diagram files");
  bottleneck->add_option("a", file_a, "first diagram JSON file")->required();
  bottleneck->add_option("b", file_b, "second diagram JSON file")->required();
  bottleneck->add_option("--dim", only_dim,
                         "compare a single homology dimension");
  bottleneck->add_option("--max-dim", cfg.max_dim)->check(CLI::Range(1, 16));
  bottleneck->add_option("-o,--output", cfg.output,
                         "write the distance as JSON to this file");

  auto* dendrogram = app.add_subcommand(
      "dendrogram", "topological-impact dendrogram and join-time ranking");
  add_common(dendrogram, true);
  dendrogram->get_option("-o")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (transform->parsed()) {
      if (cfg.output_format.empty()) cfg.output_format = "json";
      cmd_transform(cfg);
    } else if (centrality->parsed()) {
      if (cfg.output_format.empty()) cfg.output_format = "csv";
      cmd_centrality(cfg, measure, alpha, beta, reversed);
    } else if (compare->parsed()) {
      if (cfg.output_format.empty()) cfg.output_format = "csv";
      cmd_centrality(cfg, "all", alpha, beta, false);
    } else if (persistence->parsed()) {
      if (cfg.output_format.empty()) cfg.output_format = "json";
      cmd_persistence(cfg, filtration_out);
    } else if (bottleneck->parsed()) {
      cfg.output_format = "json";
      cmd_bottleneck(cfg, file_a, file_b, only_dim);
    } else if (dendrogram->parsed()) {
      cfg.output_format = "csv";
      cmd_dendrogram(cfg);
    }
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
