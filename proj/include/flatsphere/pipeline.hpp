#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "flatsphere/flat_system.hpp"
#include "flatsphere/points.hpp"

namespace flatsphere {

/// Everything a run depends on. Zero resolutions select the defaults
/// (1/(4 degree) for the candidate mesh, 1/(4 L) for probes).
struct RunConfig {
  int m = 2;
  int L = 20;
  std::optional<double> epsilon;
  std::optional<double> fraction;
  double mesh_resolution = 0.0;
  double probe_resolution = 0.0;
  std::uint64_t seed = 1;
  double tolerance = kDefaultBuildTolerance;
  int threads = 1;

  /// epsilon if given, else derived from fraction, else 0.2.
  double resolved_epsilon() const;
  /// Fraction the resolved epsilon corresponds to, (1 - 2 eps)^m.
  double resolved_fraction() const;
  double resolved_probe_resolution(int L) const;
  std::string to_json() const;
};

struct PointsRun {
  PointSet points;
  double epsilon;
  int L;
  std::uint64_t k_L;
  double ratio;  // n / k_L
};

/// Shrinks the degree, builds the candidate mesh and selects Fekete nodes.
PointsRun generate_points(const RunConfig& config);

enum class CheckStatus { Pass, Fail, Measure, Skipped };
const char* to_string(CheckStatus status);

struct Check {
  std::string name;
  double value = 0.0;
  std::optional<double> threshold;
  std::string comparison;  // "<=", ">=", ">" or "==" for pass-type checks
  CheckStatus status = CheckStatus::Measure;
  std::string detail;
};

struct VerificationReport {
  RunConfig config;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> timings;

  bool passed() const;
  const Check* find(const std::string& name) const;
  std::string to_json() const;
  std::string summary() const;
};

/// Recomputes the Gramian from the system's nodes and runs every check.
VerificationReport verify_system(const FlatSystem& system, const RunConfig& config);

/// Headline measurements of one (L, epsilon) cell.
struct TableRow {
  int L = 0;
  double epsilon = 0.0;
  Eigen::Index n = 0;
  std::uint64_t k_L = 0;
  double ratio = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double linf_inv_sqrt = 0.0;
  double max_sup_norm = 0.0;
  double decay_gram = 0.0;
  double decay_inv_sqrt = 0.0;
  double propbound = 0.0;
  double seconds = 0.0;
};

TableRow table_cell(const RunConfig& config);
std::string table_header();
std::string table_row_csv(const TableRow& row);

/// Writes the header then one row per (L, epsilon) pair, flushing after each
/// row. Failed cells produce a row carrying an error marker. Returns the
/// number of failed cells.
int run_table(const RunConfig& base, const std::vector<int>& degrees, const std::vector<double>& epsilons,
              std::ostream& out);

std::string environment_stamp();

}  // namespace flatsphere
