#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "confmodel/components.hpp"
#include "confmodel/degree_law.hpp"
#include "confmodel/multigraph.hpp"

namespace confmodel {

enum class Measurement {
  Components,
  Giant,
  Diameter,
  TypicalDistance,
  TwoCycles,
  Stars,
  Degree2Run,
  Core,
  Connectivity,
};

std::string to_string(Measurement m);
Measurement parse_measurement(const std::string& name);

/// gamma = (1+delta)/(log mu_N - log 2 - eps/(1-2eps)) log n clipped to
/// [20, n/10] for finite-mean laws, and the constant ((tau-1)/(2-tau))(1+delta)
/// for infinite-mean Pareto laws.
struct OracleGamma {
  double delta = 0.1;
  double eps = 0.0;
};
using GammaRule = std::variant<double, OracleGamma>;

struct ExperimentConfig {
  DegreeLaw law = DegreeLaw::degenerate(3);
  std::vector<std::size_t> n_values;
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;
  std::vector<Measurement> measurements;
  GammaRule gamma_rule = OracleGamma{};
  std::string output_path;
  /// Node pairs sampled per graph for typical_distance.
  std::size_t pairs = 500;
  /// Core threshold exponent: core = {degree >= (log n)^sigma}.
  double sigma = 2.1;
  /// Double-sweep starts used once n exceeds exact_diameter_limit.
  std::size_t sweeps = 4;
  std::size_t exact_diameter_limit = 20000;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Flat `key = value` lines; `#` starts a comment; values may be quoted.
/// Unknown or repeated keys are rejected.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// splitmix64-style mixing of (master, n, replicate).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t n, std::uint64_t replicate);

double resolve_gamma(const GammaRule& rule, const DegreeLaw& law, std::size_t n, std::uint64_t stub_count);

struct TrialResult {
  std::size_t n = 0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  /// Column name -> formatted value, in emission order.
  std::vector<std::pair<std::string, std::string>> values;
};

TrialResult run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t replicate);

class ResultTable {
 public:
  ResultTable() = default;
  ResultTable(std::vector<std::string> columns, std::vector<std::vector<std::string>> rows);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t column_index(const std::string& name) const;
  /// Cells parsed as doubles; "inf" maps to infinity, empty cells are skipped.
  std::vector<double> numeric_column(const std::string& name) const;
  /// Rows restricted to one value of the `n` column.
  ResultTable filter_n(std::size_t n) const;

  void write_csv(std::ostream& out) const;
  static ResultTable read_csv(std::istream& in);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Runs every (n, replicate) pair, possibly in parallel; rows are ordered by
/// n as listed and then by replicate. Writes CSV and a plotting stub when
/// output_path is set.
ResultTable run_experiment(const ExperimentConfig& cfg);

/// Writes a matplotlib script that plots one column's mean against n.
void write_plot_script(const std::string& csv_path, const std::string& script_path, const std::string& column);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  /// Wilson 95% interval, present when every value is 0 or 1.
  std::optional<std::pair<double, double>> wilson;
};

Summary summarize(const std::vector<double>& values);
Summary summarize(const ResultTable& table, const std::string& column);

/// Wilson score interval with z = 1.96.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials);

/// Fraction of uniformly sampled pairs u != v that share a component.
double pairwise_connected_fraction(const Multigraph& g, std::size_t pairs, std::uint64_t seed);
double pairwise_connected_fraction(const ComponentSummary& s, std::size_t pairs, std::uint64_t seed);

}  // namespace confmodel
