#include "confmodel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "confmodel/distances.hpp"
#include "confmodel/graph_builder.hpp"
#include "confmodel/random_variates.hpp"
#include "confmodel/theory_oracle.hpp"

namespace confmodel {

namespace {

constexpr std::pair<Measurement, const char*> kMeasurementNames[] = {
    {Measurement::Components, "components"},   {Measurement::Giant, "giant"},
    {Measurement::Diameter, "diameter"},       {Measurement::TypicalDistance, "typical_distance"},
    {Measurement::TwoCycles, "two_cycles"},    {Measurement::Stars, "stars"},
    {Measurement::Degree2Run, "degree2_run"},  {Measurement::Core, "core"},
    {Measurement::Connectivity, "connectivity"},
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty())
    throw std::invalid_argument("config: " + key + " expects a number, got '" + value + "'");
  return x;
}

// Accepts integer literals as well as exact values written like 1e5 or 1.6e4.
std::uint64_t parse_count(const std::string& key, const std::string& value) {
  const double x = parse_double(key, value);
  if (!(x >= 0.0) || x != std::floor(x) || x > 9.007199254740992e15)
    throw std::invalid_argument("config: " + key + " expects a non-negative integer, got '" + value + "'");
  if (value.find_first_of(".eE") == std::string::npos) return std::stoull(value);
  return static_cast<std::uint64_t>(x);
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_distance(Distance d) { return d == kUnreachable ? "inf" : std::to_string(d); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Row {
 public:
  void set(const std::string& key, std::string value) {
    for (auto& kv : values_) {
      if (kv.first == key) {
        kv.second = std::move(value);
        return;
      }
    }
    values_.emplace_back(key, std::move(value));
  }
  std::vector<std::pair<std::string, std::string>> take() { return std::move(values_); }

 private:
  std::vector<std::pair<std::string, std::string>> values_;
};

template <class T>
std::string join(const std::vector<T>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    if constexpr (std::is_same_v<T, std::string>) out += xs[i];
    else out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

std::string to_string(Measurement m) {
  for (const auto& [value, name] : kMeasurementNames)
    if (value == m) return name;
  throw std::logic_error("to_string: unknown measurement");
}

Measurement parse_measurement(const std::string& name) {
  for (const auto& [value, label] : kMeasurementNames)
    if (name == label) return value;
  throw std::invalid_argument("unknown measurement '" + name + "'");
}

ExperimentConfig parse_config(std::istream& in) {
  static const char* const kKeys[] = {"law",        "tau",         "kmin",          "pmf",
                                      "m",          "n_values",    "replicates",    "master_seed",
                                      "measurements", "gamma_rule", "delta",        "eps",
                                      "output_path", "pairs",      "sigma",         "sweeps",
                                      "exact_diameter_limit", "threads"};
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) { return key == k; }) ==
        std::end(kKeys))
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": repeated key '" + key + "'");
  }

  auto take = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  ExperimentConfig cfg;
  const std::string law = take("law").value_or("");
  if (law == "pareto") {
    const auto tau = take("tau");
    if (!tau) throw std::invalid_argument("config: law = pareto needs tau");
    const std::uint64_t kmin = parse_count("kmin", take("kmin").value_or("1"));
    cfg.law = DegreeLaw::pareto_tail(parse_double("tau", *tau), kmin);
  } else if (law == "explicit") {
    const auto pmf = take("pmf");
    if (!pmf) throw std::invalid_argument("config: law = explicit needs pmf");
    cfg.law = DegreeLaw::parse_explicit(*pmf);
  } else if (law == "degenerate") {
    const auto m = take("m");
    if (!m) throw std::invalid_argument("config: law = degenerate needs m");
    cfg.law = DegreeLaw::degenerate(parse_count("m", *m));
  } else {
    throw std::invalid_argument("config: law must be pareto, explicit or degenerate");
  }

  const auto n_values = take("n_values");
  if (!n_values) throw std::invalid_argument("config: n_values is required");
  for (const std::string& item : split(*n_values, ',')) {
    const std::uint64_t n = parse_count("n_values", item);
    if (n < 1) throw std::invalid_argument("config: n_values entries must be >= 1");
    cfg.n_values.push_back(n);
  }
  if (cfg.n_values.empty()) throw std::invalid_argument("config: n_values is empty");

  if (auto v = take("replicates")) cfg.replicates = parse_count("replicates", *v);
  if (cfg.replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
  if (auto v = take("master_seed")) cfg.master_seed = parse_count("master_seed", *v);
  if (auto v = take("measurements"))
    for (const std::string& item : split(*v, ',')) cfg.measurements.push_back(parse_measurement(item));

  OracleGamma oracle;
  if (auto v = take("delta")) oracle.delta = parse_double("delta", *v);
  if (auto v = take("eps")) oracle.eps = parse_double("eps", *v);
  const std::string rule = take("gamma_rule").value_or("oracle");
  if (rule == "oracle") {
    cfg.gamma_rule = oracle;
  } else {
    const double gamma = parse_double("gamma_rule", rule);
    if (!(gamma >= 1.0)) throw std::invalid_argument("config: explicit gamma must be >= 1");
    cfg.gamma_rule = gamma;
  }

  if (auto v = take("output_path")) cfg.output_path = *v;
  if (auto v = take("pairs")) cfg.pairs = parse_count("pairs", *v);
  if (auto v = take("sigma")) cfg.sigma = parse_double("sigma", *v);
  if (auto v = take("sweeps")) cfg.sweeps = parse_count("sweeps", *v);
  if (auto v = take("exact_diameter_limit")) cfg.exact_diameter_limit = parse_count("exact_diameter_limit", *v);
  if (auto v = take("threads")) cfg.threads = static_cast<unsigned>(parse_count("threads", *v));

  if (!kv.empty())
    throw std::invalid_argument("config: key '" + kv.begin()->first + "' does not apply to law = " + law);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  return parse_config(in);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t n, std::uint64_t replicate) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ n);
  h = splitmix64(h ^ (replicate * 0xd1b54a32d192ed03ULL));
  return h;
}

double resolve_gamma(const GammaRule& rule, const DegreeLaw& law, std::size_t n, std::uint64_t stub_count) {
  if (const double* explicit_gamma = std::get_if<double>(&rule)) return *explicit_gamma;
  const OracleGamma& o = std::get<OracleGamma>(rule);
  const LawMoments m = moments(law);
  if (!std::isfinite(m.mu)) {
    const auto& p = std::get<ParetoTailFamily>(law.family());
    return std::max(1.0, oracle::gamma_star(p.tau, o.delta, m.mu));
  }
  const double gamma = oracle::gamma_n(o.delta, o.eps, stub_count, n);
  const double hi = std::max(20.0, static_cast<double>(n) / 10.0);
  return std::clamp(gamma, 20.0, hi);
}

TrialResult run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t replicate) {
  TrialResult out;
  out.n = n;
  out.replicate = replicate;
  out.seed = derive_seed(cfg.master_seed, n, replicate);

  // Independent streams for degrees, pairing and measurement sampling.
  const DegreeSequence seq = sample_degrees(cfg.law, n, splitmix64(out.seed ^ 1));
  const Multigraph g = build_auto(seq, splitmix64(out.seed ^ 2));
  const std::uint64_t measure_seed = splitmix64(out.seed ^ 3);

  Row row;
  row.set("stub_count", std::to_string(g.stub_count()));
  row.set("padded", g.padded() ? "1" : "0");

  std::optional<ComponentSummary> cs;
  auto summary = [&]() -> const ComponentSummary& {
    if (!cs) cs = component_summary(g);
    return *cs;
  };

  for (Measurement m : cfg.measurements) {
    switch (m) {
      case Measurement::Components: {
        const auto& s = summary();
        row.set("num_components", std::to_string(s.sizes.size()));
        row.set("largest", std::to_string(s.sizes[0]));
        row.set("second", std::to_string(s.sizes.size() > 1 ? s.sizes[1] : 0));
        break;
      }
      case Measurement::Giant: {
        const double gamma = resolve_gamma(cfg.gamma_rule, cfg.law, n, g.stub_count());
        const GiantStats gs = giant_stats(summary(), gamma);
        row.set("largest", std::to_string(gs.largest));
        row.set("second", std::to_string(gs.second));
        row.set("complement", std::to_string(gs.complement));
        row.set("gamma", format_double(gs.gamma));
        row.set("q_hat", format_double(gs.q_hat));
        break;
      }
      case Measurement::Diameter: {
        const bool exact = n <= cfg.exact_diameter_limit;
        const Distance d = exact ? exact_diameter(g) : double_sweep_lower_bound(g, cfg.sweeps, measure_seed);
        row.set("diameter", std::to_string(d));
        row.set("diameter_method", exact ? "exact" : "double_sweep");
        break;
      }
      case Measurement::TypicalDistance: {
        Rng rng(splitmix64(measure_seed ^ 0x7d));
        PairDistance query(g);
        std::vector<std::string> samples;
        double total = 0.0;
        std::size_t finite = 0;
        for (std::size_t p = 0; p < cfg.pairs && n >= 2; ++p) {
          const auto u = static_cast<NodeId>(uniform_below(rng, n));
          auto v = static_cast<NodeId>(uniform_below(rng, n - 1));
          if (v >= u) ++v;
          const Distance d = query(u, v);
          samples.push_back(format_distance(d));
          if (d != kUnreachable) {
            total += d;
            ++finite;
          }
        }
        row.set("distance_samples", join(samples, ';'));
        row.set("distance_mean", finite ? format_double(total / static_cast<double>(finite)) : "");
        row.set("distance_unreachable", std::to_string(samples.size() - finite));
        break;
      }
      case Measurement::TwoCycles:
        row.set("two_cycles", std::to_string(count_two_cycles(g)));
        row.set("self_loops", std::to_string(count_self_loops(g)));
        break;
      case Measurement::Stars: {
        const auto stars = find_star_components(g);
        row.set("stars", join(stars, ';'));
        row.set("star_count", std::to_string(stars.size()));
        break;
      }
      case Measurement::Degree2Run:
        row.set("degree2_run", std::to_string(longest_degree2_run(g)));
        break;
      case Measurement::Core: {
        const auto core = n >= 2 ? core_nodes(g, cfg.sigma) : std::vector<NodeId>{};
        row.set("core_size", std::to_string(core.size()));
        if (core.empty()) {
          row.set("max_distance_to_core", "");
        } else {
          Distance worst = 0;
          for (Distance d : distance_to_core(g, core))
            if (d != kUnreachable) worst = std::max(worst, d);
          row.set("max_distance_to_core", std::to_string(worst));
        }
        break;
      }
      case Measurement::Connectivity:
        row.set("connected", is_connected(summary()) ? "1" : "0");
        break;
    }
  }
  out.values = row.take();
  return out;
}

ResultTable::ResultTable(std::vector<std::string> columns, std::vector<std::vector<std::string>> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
  for (const auto& r : rows_)
    if (r.size() != columns_.size()) throw std::invalid_argument("ResultTable: ragged row");
}

std::size_t ResultTable::column_index(const std::string& name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::invalid_argument("no column named '" + name + "'");
  return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<double> ResultTable::numeric_column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) {
    const std::string& cell = r[c];
    if (cell.empty()) continue;
    if (cell == "inf") out.push_back(std::numeric_limits<double>::infinity());
    else out.push_back(parse_double(name, cell));
  }
  return out;
}

ResultTable ResultTable::filter_n(std::size_t n) const {
  const std::size_t c = column_index("n");
  const std::string key = std::to_string(n);
  std::vector<std::vector<std::string>> keep;
  for (const auto& r : rows_)
    if (r[c] == key) keep.push_back(r);
  return ResultTable(columns_, std::move(keep));
}

void ResultTable::write_csv(std::ostream& out) const {
  out << join(columns_, ',') << '\n';
  for (const auto& r : rows_) out << join(r, ',') << '\n';
}

ResultTable ResultTable::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: missing header");
  std::vector<std::string> columns;
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) columns.push_back(cell);
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    row.resize(columns.size());
    rows.push_back(std::move(row));
  }
  return ResultTable(std::move(columns), std::move(rows));
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_values.empty()) throw std::invalid_argument("run_experiment: n_values is empty");
  if (cfg.replicates < 1) throw std::invalid_argument("run_experiment: replicates must be >= 1");

  const std::size_t total = cfg.n_values.size() * cfg.replicates;
  std::vector<TrialResult> results(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      try {
        results[job] = run_trial(cfg, cfg.n_values[job / cfg.replicates], job % cfg.replicates);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::string> columns = {"n", "replicate", "seed"};
  for (const auto& [key, value] : results.front().values) columns.push_back(key);
  std::vector<std::vector<std::string>> rows;
  rows.reserve(total);
  for (const TrialResult& r : results) {
    std::vector<std::string> row = {std::to_string(r.n), std::to_string(r.replicate), std::to_string(r.seed)};
    for (const auto& [key, value] : r.values) row.push_back(value);
    rows.push_back(std::move(row));
  }
  ResultTable table(std::move(columns), std::move(rows));

  if (!cfg.output_path.empty()) {
    std::ofstream out(cfg.output_path);
    if (!out) throw std::runtime_error("cannot write " + cfg.output_path);
    table.write_csv(out);
    if (!out) throw std::runtime_error("failed writing " + cfg.output_path);
    const std::string column = table.columns().size() > 5 ? table.columns()[5] : "stub_count";
    write_plot_script(cfg.output_path, cfg.output_path + ".plot.py", column);
  }
  return table;
}

void write_plot_script(const std::string& csv_path, const std::string& script_path, const std::string& column) {
  std::ofstream out(script_path);
  if (!out) throw std::runtime_error("cannot write " + script_path);
  out << "# Plots the per-n mean of one result column. Edit COLUMN to choose another.\n"
         "import sys\n"
         "import pandas as pd\n"
         "import matplotlib.pyplot as plt\n\n"
      << "CSV = sys.argv[1] if len(sys.argv) > 1 else \"" << csv_path << "\"\n"
      << "COLUMN = sys.argv[2] if len(sys.argv) > 2 else \"" << column << "\"\n\n"
      << "df = pd.read_csv(CSV)\n"
         "stats = df.groupby(\"n\")[COLUMN].agg([\"mean\", \"sem\"])\n"
         "plt.errorbar(stats.index, stats[\"mean\"], yerr=1.96 * stats[\"sem\"].fillna(0), marker=\"o\")\n"
         "plt.xscale(\"log\")\n"
         "plt.xlabel(\"n\")\n"
         "plt.ylabel(COLUMN)\n"
         "plt.savefig(CSV + \".\" + COLUMN + \".png\", dpi=150)\n";
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  constexpr double z = 1.96;
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double denom = 1.0 + z * z / nt;
  const double centre = (p + z * z / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z * z / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  Summary s;
  s.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stderr_mean = std::sqrt(ss / static_cast<double>(s.count - 1) / static_cast<double>(s.count));
  }
  const bool binary = std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0 || v == 1.0; });
  if (binary) {
    const auto successes = static_cast<std::size_t>(std::count(values.begin(), values.end(), 1.0));
    s.wilson = wilson_interval(successes, s.count);
  }
  return s;
}

Summary summarize(const ResultTable& table, const std::string& column) {
  return summarize(table.numeric_column(column));
}

double pairwise_connected_fraction(const ComponentSummary& s, std::size_t pairs, std::uint64_t seed) {
  if (pairs < 1) throw std::invalid_argument("pairwise_connected_fraction: pairs must be >= 1");
  if (s.n < 2) throw std::invalid_argument("pairwise_connected_fraction: need at least two nodes");
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto u = uniform_below(rng, s.n);
    auto v = uniform_below(rng, s.n - 1);
    if (v >= u) ++v;
    if (s.assignment[u] == s.assignment[v]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pairs);
}

double pairwise_connected_fraction(const Multigraph& g, std::size_t pairs, std::uint64_t seed) {
  return pairwise_connected_fraction(component_summary(g), pairs, seed);
}

}  // namespace confmodel
