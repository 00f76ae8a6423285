// Command-line front end: graph generation, measurements on edge-list files,
// branching-process survival, closed-form oracles and Monte Carlo sweeps.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "confmodel/branching.hpp"
#include "confmodel/components.hpp"
#include "confmodel/distances.hpp"
#include "confmodel/graph_builder.hpp"
#include "confmodel/harness.hpp"
#include "confmodel/random_variates.hpp"
#include "confmodel/serialization.hpp"
#include "confmodel/theory_oracle.hpp"

using namespace confmodel;
using nlohmann::json;

namespace {

// Expanded edge lists beyond this many lines are refused in favour of --compact.
constexpr std::uint64_t kMaxExpandedEdges = 100000000;

struct LawOptions {
  std::string family = "degenerate";
  double tau = 2.5;
  std::uint64_t kmin = 1;
  std::string pmf;
  std::uint64_t m = 3;

  DegreeLaw law() const {
    if (family == "pareto") return DegreeLaw::pareto_tail(tau, kmin);
    if (family == "explicit") return DegreeLaw::parse_explicit(pmf);
    if (family == "degenerate") return DegreeLaw::degenerate(m);
    throw std::invalid_argument("--law must be pareto, explicit or degenerate");
  }
};

void add_law_options(CLI::App* cmd, LawOptions& o) {
  cmd->add_option("--law", o.family, "pareto | explicit | degenerate")->required();
  cmd->add_option("--tau", o.tau, "Pareto exponent tau > 1");
  cmd->add_option("--kmin", o.kmin, "Pareto minimum degree");
  cmd->add_option("--pmf", o.pmf, "explicit pmf, e.g. 1:0.5,3:0.5");
  cmd->add_option("--m", o.m, "degenerate degree");
}

Multigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in).graph;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

std::map<std::string, std::string> parse_assignments(const std::vector<std::string>& args) {
  std::map<std::string, std::string> out;
  for (const std::string& a : args) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + a + "'");
    out[a.substr(0, eq)] = a.substr(eq + 1);
  }
  return out;
}

json run_oracle(const std::string& name, const std::map<std::string, std::string>& args) {
  std::map<std::string, std::string> left = args;
  auto num = [&](const std::string& key) {
    const auto it = left.find(key);
    if (it == left.end()) throw std::invalid_argument("oracle " + name + ": missing " + key);
    const double v = std::stod(it->second);
    left.erase(it);
    return v;
  };
  auto count = [&](const std::string& key) {
    const double v = num(key);
    if (v < 0 || v != std::floor(v)) throw std::invalid_argument("oracle " + name + ": " + key + " must be an integer");
    return static_cast<std::uint64_t>(v);
  };
  auto opt = [&](const std::string& key, double fallback) { return left.count(key) ? num(key) : fallback; };

  json value;
  if (name == "gamma_star") {
    value = oracle::gamma_star(num("tau"), num("delta"), opt("mu", 0.0));
  } else if (name == "gamma_double_star") {
    value = oracle::gamma_double_star(num("tau"), num("delta"), opt("mu", 0.0), num("f1"));
  } else if (name == "gamma_n") {
    value = oracle::gamma_n(num("delta"), num("eps"), count("L_N"), count("n"));
  } else if (name == "prop21_bound") {
    value = oracle::prop21_bound(count("n"), count("s"), static_cast<int>(count("r")), count("L_N"));
  } else if (name == "disconnect_product") {
    value = oracle::disconnect_product(count("A"), count("L_N"));
  } else if (name == "h_product_check") {
    const auto h = oracle::h_product_check(count("n"), count("k"));
    value = {{"value", h.value}, {"at_most_one", h.at_most_one}};
  } else if (name == "u_sequence") {
    value = oracle::u_sequence(num("n"), num("tau"), num("C"), count("k_max"));
  } else if (name == "u_closed_form") {
    value = oracle::u_closed_form(num("n"), num("tau"), num("C"), count("k"));
  } else if (name == "c_m_eps") {
    value = oracle::c_m_eps(count("m"), num("eps"), num("tau"));
  } else if (name == "c_f") {
    value = oracle::c_f(num("tau"), count("m"), num("eps"));
  } else if (name == "centering_term") {
    const auto it = left.find("regime");
    if (it == left.end()) throw std::invalid_argument("oracle centering_term: missing regime");
    const std::string regime = it->second;
    left.erase(it);
    if (regime == "tau23") value = oracle::centering_term(oracle::Regime::Tau23, num("n"), num("tau"), 0.0);
    else if (regime == "tau3plus") value = oracle::centering_term(oracle::Regime::Tau3Plus, num("n"), 0.0, num("nu"));
    else throw std::invalid_argument("oracle centering_term: regime must be tau23 or tau3plus");
  } else if (name == "no_connect_bound") {
    value = oracle::no_connect_bound(num("D_A"), num("D_B"), num("L_N"));
  } else if (name == "two_cycle_mean") {
    value = oracle::two_cycle_mean(num("f2"), num("mu"));
  } else if (name == "binomial_deviation_bound") {
    value = oracle::binomial_deviation_bound(num("mean"), num("t"));
  } else if (name == "complement_tail_constants") {
    const auto c = oracle::complement_tail_constants(num("mu"));
    value = {{"a", c.a}, {"b", c.b}};
  } else {
    throw std::invalid_argument("unknown oracle '" + name + "'");
  }
  if (!left.empty()) throw std::invalid_argument("oracle " + name + ": unused argument " + left.begin()->first);
  return {{"oracle", name}, {"value", value}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Configuration-model random graphs: generation, measurements and theory checks"};
  app.require_subcommand(1);

  LawOptions gen_law;
  std::uint64_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  bool gen_aggregated = false;
  bool gen_compact = false;
  auto* generate = app.add_subcommand("generate", "sample degrees, pair stubs, write an edge list");
  add_law_options(generate, gen_law);
  generate->add_option("--n", gen_n, "number of nodes")->required();
  generate->add_option("--seed", gen_seed, "seed");
  generate->add_option("--out", gen_out, "edge-list path (default stdout)");
  generate->add_flag("--aggregated", gen_aggregated, "pair without materializing stubs");
  generate->add_flag("--compact", gen_compact, "one `u v multiplicity` line per run of parallel edges");

  std::string comp_in;
  std::optional<double> comp_gamma;
  auto* components = app.add_subcommand("components", "component sizes and giant statistics");
  components->add_option("--in", comp_in, "edge-list path")->required();
  components->add_option("--gamma", comp_gamma, "size threshold for q_hat (default 1)");

  std::string diam_in;
  bool diam_exact = false;
  bool diam_sweep = false;
  std::size_t diam_sweeps = 4;
  std::uint64_t diam_seed = 0;
  auto* diameter = app.add_subcommand("diameter", "graph diameter");
  diameter->add_option("--in", diam_in, "edge-list path")->required();
  auto* exact_flag = diameter->add_flag("--exact", diam_exact, "exact diameter (default)");
  diameter->add_flag("--double-sweep", diam_sweep, "double-sweep lower bound")->excludes(exact_flag);
  diameter->add_option("--sweeps", diam_sweeps, "double-sweep starts");
  diameter->add_option("--seed", diam_seed, "double-sweep seed");

  std::string dist_in;
  std::optional<NodeId> dist_source;
  std::size_t dist_pairs = 1000;
  std::uint64_t dist_seed = 0;
  std::string dist_out;
  auto* distances = app.add_subcommand("distances", "distance histogram as CSV distance,count");
  distances->add_option("--in", dist_in, "edge-list path")->required();
  distances->add_option("--source", dist_source, "BFS from this node instead of sampling pairs");
  distances->add_option("--pairs", dist_pairs, "uniform pairs to sample");
  distances->add_option("--seed", dist_seed, "pair-sampling seed");
  distances->add_option("--out", dist_out, "CSV path (default stdout)");

  std::string exp_in;
  NodeId exp_root = 0;
  std::size_t exp_m = 2;
  std::size_t exp_k = 3;
  std::optional<double> exp_sigma;
  auto* explore = app.add_subcommand("explore", "k-exploration tree report as JSON");
  explore->add_option("--in", exp_in, "edge-list path")->required();
  explore->add_option("--root", exp_root, "root node");
  explore->add_option("--m", exp_m, "branching cap");
  explore->add_option("--k", exp_k, "depth");
  explore->add_option("--sigma", exp_sigma, "core exponent; no core when omitted");

  LawOptions surv_law;
  auto* survival = app.add_subcommand("survival", "delayed branching survival probability as JSON");
  add_law_options(survival, surv_law);

  std::string oracle_name;
  std::vector<std::string> oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "closed-form constants: oracle <name> key=value ...");
  oracle_cmd->add_option("name", oracle_name, "oracle name")->required();
  oracle_cmd->add_option("args", oracle_args, "key=value arguments");

  std::string cfg_path;
  std::string cfg_out;
  std::optional<unsigned> cfg_threads;
  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo sweep from a key=value config");
  experiment->add_option("--config", cfg_path, "config file")->required();
  experiment->add_option("--out", cfg_out, "CSV output (overrides output_path)");
  experiment->add_option("--threads", cfg_threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      const DegreeSequence seq = sample_degrees(gen_law.law(), gen_n, gen_seed);
      const Multigraph g = gen_aggregated ? build_aggregated(seq, gen_seed) : build_auto(seq, gen_seed);
      std::ofstream file;
      if (!gen_compact && g.edge_count() > kMaxExpandedEdges)
        throw std::runtime_error("generate: " + std::to_string(g.edge_count()) +
                                 " edges is too many for one line each; pass --compact");
      write_edge_list(open_output(gen_out, file), g, gen_seed, gen_compact);
    } else if (*components) {
      const Multigraph g = load_graph(comp_in);
      const ComponentSummary s = component_summary(g);
      const GiantStats gs = giant_stats(s, comp_gamma.value_or(1.0));
      json out = to_json(gs);
      out["nodes"] = s.n;
      out["num_components"] = s.sizes.size();
      out["connected"] = is_connected(s);
      out["sizes"] = s.sizes;
      out["stars"] = find_star_components(g);
      out["self_loops"] = count_self_loops(g);
      out["two_cycles"] = count_two_cycles(g);
      std::cout << out.dump(2) << '\n';
    } else if (*diameter) {
      const Multigraph g = load_graph(diam_in);
      json out;
      if (diam_sweep) {
        out = {{"diameter", double_sweep_lower_bound(g, diam_sweeps, diam_seed)}, {"method", "double_sweep"}};
      } else {
        out = {{"diameter", exact_diameter(g)}, {"method", "exact"}};
      }
      std::cout << out.dump(2) << '\n';
    } else if (*distances) {
      const Multigraph g = load_graph(dist_in);
      auto key = [](Distance d) { return d == kUnreachable ? std::string("inf") : std::to_string(d); };
      std::map<Distance, std::uint64_t> counts;
      if (dist_source) {
        for (Distance d : bfs_distances(g, *dist_source)) ++counts[d];
      } else {
        if (g.node_count() < 2) throw std::invalid_argument("distances: need at least two nodes");
        Rng rng(dist_seed);
        PairDistance query(g);
        for (std::size_t p = 0; p < dist_pairs; ++p) {
          const auto u = static_cast<NodeId>(uniform_below(rng, g.node_count()));
          auto v = static_cast<NodeId>(uniform_below(rng, g.node_count() - 1));
          if (v >= u) ++v;
          ++counts[query(u, v)];
        }
      }
      std::ofstream file;
      std::ostream& out = open_output(dist_out, file);
      out << "distance,count\n";
      for (const auto& [d, c] : counts) out << key(d) << ',' << c << '\n';
    } else if (*explore) {
      const Multigraph g = load_graph(exp_in);
      const std::vector<NodeId> core = exp_sigma ? core_nodes(g, *exp_sigma) : std::vector<NodeId>{};
      std::cout << to_json(exploration_tree(g, exp_root, exp_m, exp_k, core)).dump(2) << '\n';
    } else if (*survival) {
      std::cout << to_json(delayed_survival(surv_law.law())).dump(2) << '\n';
    } else if (*oracle_cmd) {
      std::cout << run_oracle(oracle_name, parse_assignments(oracle_args)).dump(2) << '\n';
    } else if (*experiment) {
      ExperimentConfig cfg = load_config(cfg_path);
      if (!cfg_out.empty()) cfg.output_path = cfg_out;
      if (cfg_threads) cfg.threads = *cfg_threads;
      const ResultTable table = run_experiment(cfg);
      if (cfg.output_path.empty()) table.write_csv(std::cout);
      else std::cerr << "wrote " << table.rows().size() << " rows to " << cfg.output_path << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
