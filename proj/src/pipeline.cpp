#include "flatsphere/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <Eigen/Core>

#include "json.hpp"

#include "flatsphere/diagnostics.hpp"
#include "flatsphere/error.hpp"
#include "flatsphere/gramian.hpp"
#include "flatsphere/harmonic.hpp"
#include "flatsphere/io.hpp"
#include "random.hpp"

namespace flatsphere {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPropboundExponent = 3.0;
constexpr int kPlancherelTrials = 200;
constexpr int kOraclePairs = 50;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Check pass_check(std::string name, double value, double threshold, std::string comparison, std::string detail = {}) {
  bool ok = false;
  if (comparison == "<=") ok = value <= threshold;
  else if (comparison == ">=") ok = value >= threshold;
  else if (comparison == ">") ok = value > threshold;
  else if (comparison == "==") ok = value == threshold;
  return {std::move(name), value, threshold, std::move(comparison), ok ? CheckStatus::Pass : CheckStatus::Fail,
          std::move(detail)};
}

Check measure(std::string name, double value, std::string detail = {}) {
  return {std::move(name), value, std::nullopt, {}, CheckStatus::Measure, std::move(detail)};
}

Check skipped(std::string name, std::string detail) {
  return {std::move(name), kNaN, std::nullopt, {}, CheckStatus::Skipped, std::move(detail)};
}

double max_sup_norm(const FlatSystem& system, double probe_resolution) {
  const std::vector<double> sups = sup_norms(system, probe_resolution);
  return *std::max_element(sups.begin(), sups.end());
}

double propbound_on_mesh(const PointSet& points, int L, double probe_resolution) {
  const CandidateMesh probes = candidate_mesh(points.m(), probe_resolution);
  return propbound_sum(points, L, kPropboundExponent, probes.points);
}

double quadrature_orthonormality(const FlatSystem& system) {
  const QuadratureRule rule = gauss_sphere_rule(system.points().m(), system.spec().L);
  const Eigen::MatrixXcd values = evaluate_batch(system, rule.nodes);
  const Eigen::MatrixXcd inner = values * rule.weights.cast<std::complex<double>>().asDiagonal() * values.adjoint();
  const Eigen::Index n = system.size();
  return (inner - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double kernel_oracle_error(const KernelSpec& spec, std::uint64_t seed) {
  const int L = std::min(spec.L, kOracleMaxDegree);
  const Eigen::MatrixXd z = random_sphere_points(kOraclePairs, seed);
  const Eigen::MatrixXd w = random_sphere_points(kOraclePairs, seed + 1);
  double worst = 0.0;
  for (int power = 1; power <= 2; ++power) {
    KernelSpec s = spec;
    s.L = L;
    s.power = power;
    for (Eigen::Index p = 0; p < kOraclePairs; ++p) {
      const double t = std::clamp(z.col(p).dot(w.col(p)), -1.0, 1.0);
      const double closed = br_kernel(s, t);
      const double brute = brute_force_kernel(s.m, L, s.epsilon, power, z.col(p), w.col(p));
      worst = std::max(worst, std::abs(closed - brute));
    }
  }
  return worst;
}

json check_to_json(const Check& c) {
  json j;
  j["name"] = c.name;
  j["value"] = std::isfinite(c.value) ? json(c.value) : json(nullptr);
  j["threshold"] = c.threshold ? json(*c.threshold) : json(nullptr);
  if (!c.comparison.empty()) j["comparison"] = c.comparison;
  j["status"] = to_string(c.status);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

}  // namespace

double RunConfig::resolved_epsilon() const {
  if (epsilon) return *epsilon;
  if (fraction) return target_fraction_to_epsilon(m, *fraction);
  return 0.2;
}

double RunConfig::resolved_fraction() const { return std::pow(1.0 - 2.0 * resolved_epsilon(), m); }

double RunConfig::resolved_probe_resolution(int degree) const {
  return probe_resolution > 0.0 ? probe_resolution : max_probe_resolution(degree);
}

std::string RunConfig::to_json() const {
  json j;
  j["m"] = m;
  j["L"] = L;
  j["epsilon"] = resolved_epsilon();
  j["fraction"] = resolved_fraction();
  j["epsilon_given"] = epsilon ? json(*epsilon) : json(nullptr);
  j["fraction_given"] = fraction ? json(*fraction) : json(nullptr);
  j["mesh_resolution"] = mesh_resolution;
  j["probe_resolution"] = probe_resolution;
  j["seed"] = seed;
  j["tolerance"] = tolerance;
  j["threads"] = threads;
  return j.dump();
}

PointsRun generate_points(const RunConfig& config) {
  if (config.m != 2) fail(ErrorCode::UnsupportedDimension, "node generation is only available on S^2");
  const double eps = config.resolved_epsilon();
  const int degree = shrink_degree(config.L, eps);
  const double resolution = config.mesh_resolution > 0.0 ? config.mesh_resolution : default_mesh_resolution(degree);
  const CandidateMesh mesh = candidate_mesh(config.m, resolution);
  PointSet points = approximate_fekete(config.m, degree, mesh);
  const std::uint64_t k_L = space_dimension(config.m, config.L);
  const double ratio = static_cast<double>(points.size()) / static_cast<double>(k_L);
  return {std::move(points), eps, config.L, k_L, ratio};
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Measure: return "measure";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerificationReport::to_json() const {
  json j;
  j["format"] = std::string(kReportFormat);
  j["config"] = json::parse(config.to_json());
  j["checks"] = json::array();
  for (const Check& c : checks) j["checks"].push_back(check_to_json(c));
  j["overall"] = passed() ? "pass" : "fail";
  j["environment"] = json::parse(environment_stamp());
  json t = json::object();
  for (const auto& [name, secs] : timings) t[name] = secs;
  j["timings"] = t;
  return j.dump(2) + "\n";
}

std::string VerificationReport::summary() const {
  std::string out;
  char line[256];
  for (const Check& c : checks) {
    if (c.threshold) {
      std::snprintf(line, sizeof line, "%-8s %-34s %.6g %s %.3g\n", to_string(c.status), c.name.c_str(), c.value,
                    c.comparison.c_str(), *c.threshold);
    } else {
      std::snprintf(line, sizeof line, "%-8s %-34s %.6g\n", to_string(c.status), c.name.c_str(), c.value);
    }
    out += line;
  }
  out += passed() ? "overall: pass\n" : "overall: FAIL\n";
  return out;
}

VerificationReport verify_system(const FlatSystem& system, const RunConfig& config_in) {
  VerificationReport report;
  report.config = config_in;
  report.config.m = system.spec().m;
  report.config.L = system.spec().L;
  report.config.epsilon = system.spec().epsilon;
  RunConfig& config = report.config;

  const PointSet& points = system.points();
  const KernelSpec& spec = system.spec();
  const Eigen::Index n = system.size();
  const int L = spec.L;
  const double probe_res = config.resolved_probe_resolution(L);
  auto& checks = report.checks;
  auto start = Clock::now();

  double unit_error = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) unit_error = std::max(unit_error, std::abs(points.point(j).norm() - 1.0));
  checks.push_back(pass_check("points_unit_norm", unit_error, 1e-12, "<="));

  const double expected_n = static_cast<double>(space_dimension(spec.m, points.degree()));
  checks.push_back(pass_check("cardinality", static_cast<double>(n), expected_n, "==",
                              "n = dim E_degree for degree " + std::to_string(points.degree())));
  checks.push_back(measure("cardinality_ratio",
                           static_cast<double>(n) / static_cast<double>(space_dimension(spec.m, L))));
  if (n >= 2) {
    const SeparationInfo sep = separation(points);
    checks.push_back(measure("separation", sep.separation));
    checks.push_back(measure("separation_scaled", sep.scaled, "separation * (degree + 1)"));
  } else {
    checks.push_back(skipped("separation", "fewer than two nodes"));
    checks.push_back(skipped("separation_scaled", "fewer than two nodes"));
  }

  const Gramian gram = build_gram(points, spec);
  const Spectrum spectrum = extreme_eigenvalues(gram);
  checks.push_back(pass_check("gram_lambda_min", spectrum.min, 1e-3, ">"));
  checks.push_back(measure("gram_lambda_max", spectrum.max));
  report.timings.emplace_back("gramian", seconds_since(start));

  const double dft_error =
      (dft_matrix(n) * dft_matrix(n).adjoint() / static_cast<double>(n) - Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  checks.push_back(pass_check("dft_unitarity", dft_error, 1e-12, "<="));

  start = Clock::now();
  std::optional<Eigen::MatrixXd> b;
  try {
    b = inv_sqrt(gram);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPositiveDefinite) throw;
  }
  if (b) {
    const double res = (*b * gram.entries * *b - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    checks.push_back(pass_check("inv_sqrt_residual", res, 1e-10, "<="));
    checks.push_back(measure("linf_row_norm_inv_sqrt", linf_row_norm(*b)));
  } else {
    checks.push_back({"inv_sqrt_residual", kNaN, 1e-10, "<=", CheckStatus::Fail, "Gramian not positive definite"});
    checks.push_back(skipped("linf_row_norm_inv_sqrt", "Gramian not positive definite"));
  }
  checks.push_back(pass_check("orthonormality_closed_form", orthonormality_residual(system.coefficients(), gram.entries),
                              1e-10, "<="));
  report.timings.emplace_back("inverse_square_root", seconds_since(start));

  start = Clock::now();
  if (spec.m == 2) {
    checks.push_back(pass_check("orthonormality_quadrature", quadrature_orthonormality(system), 1e-8, "<="));
    checks.push_back(pass_check("kernel_oracle", kernel_oracle_error(spec, config.seed), 1e-10, "<=",
                                "closed form vs explicit basis, degree " + std::to_string(std::min(L, kOracleMaxDegree))));
  } else {
    checks.push_back(skipped("orthonormality_quadrature", "quadrature oracle only on S^2"));
    checks.push_back(skipped("kernel_oracle", "explicit basis only on S^2"));
  }
  report.timings.emplace_back("oracles", seconds_since(start));

  start = Clock::now();
  if (n >= 8) {
    const DecayFit fit_gram = offdiag_decay_fit(gram.entries, points, L);
    checks.push_back(measure("decay_exponent_gram", fit_gram.exponent,
                             "constant " + format_real(fit_gram.constant) + ", rms " + format_real(fit_gram.residual)));
    if (b) {
      const DecayFit fit_b = offdiag_decay_fit(*b, points, L);
      checks.push_back(measure("decay_exponent_inv_sqrt", fit_b.exponent,
                               "constant " + format_real(fit_b.constant) + ", rms " + format_real(fit_b.residual)));
    } else {
      checks.push_back(skipped("decay_exponent_inv_sqrt", "Gramian not positive definite"));
    }
  } else {
    checks.push_back(skipped("decay_exponent_gram", "fewer than 8 nodes"));
    checks.push_back(skipped("decay_exponent_inv_sqrt", "fewer than 8 nodes"));
  }
  report.timings.emplace_back("decay_fits", seconds_since(start));

  if (spec.m == 2) {
    start = Clock::now();
    checks.push_back(measure("propbound_sum", propbound_on_mesh(points, L, probe_res), "N = 3"));
    const QuadratureRule rule = gauss_sphere_rule(2, L);
    checks.push_back(measure("plancherel_polya",
                             plancherel_polya(points, HarmonicSpace{2, L}, kPlancherelTrials, rule, config.seed),
                             std::to_string(kPlancherelTrials) + " trials"));
    report.timings.emplace_back("sampling_diagnostics", seconds_since(start));

    start = Clock::now();
    checks.push_back(measure("max_sup_norm", max_sup_norm(system, probe_res),
                             "lower bound from probes at resolution " + format_real(probe_res)));
    const double scale = std::pow(static_cast<double>(std::max(L, 1)), 0.5 * spec.m);
    checks.push_back(measure("linf_to_Linf_scaled", linf_to_Linf_bound(system, probe_res) / scale,
                             "sup_z sum_j |b(z, z_j)| / L^(m/2)"));
    report.timings.emplace_back("sup_norms", seconds_since(start));
  }
  return report;
}

TableRow table_cell(const RunConfig& config) {
  const auto start = Clock::now();
  TableRow row;
  row.L = config.L;
  row.epsilon = config.resolved_epsilon();
  const PointsRun run = generate_points(config);
  row.n = run.points.size();
  row.k_L = run.k_L;
  row.ratio = run.ratio;
  const KernelSpec spec{config.m, config.L, row.epsilon, 1};
  const SystemBuild build = build_system_detailed(run.points, spec, config.tolerance);
  const Spectrum spectrum = extreme_eigenvalues(build.gram);
  row.lambda_min = spectrum.min;
  row.lambda_max = spectrum.max;
  row.linf_inv_sqrt = linf_row_norm(build.inv_sqrt);
  const double probe_res = config.resolved_probe_resolution(config.L);
  row.max_sup_norm = max_sup_norm(build.system, probe_res);
  if (row.n >= 8) {
    row.decay_gram = offdiag_decay_fit(build.gram.entries, run.points, config.L).exponent;
    row.decay_inv_sqrt = offdiag_decay_fit(build.inv_sqrt, run.points, config.L).exponent;
  } else {
    row.decay_gram = row.decay_inv_sqrt = kNaN;
  }
  row.propbound = propbound_on_mesh(run.points, config.L, probe_res);
  row.seconds = seconds_since(start);
  return row;
}

std::string table_header() {
  return "L,epsilon,n,k_L,ratio,lambda_min,lambda_max,linf_inv_sqrt,max_sup_norm,decay_exponent_gram,"
         "decay_exponent_inv_sqrt,propbound,seconds,status\n";
}

std::string table_row_csv(const TableRow& row) {
  std::string out = std::to_string(row.L) + ',' + format_real(row.epsilon) + ',' + std::to_string(row.n) + ',' +
                    std::to_string(row.k_L);
  for (double v : {row.ratio, row.lambda_min, row.lambda_max, row.linf_inv_sqrt, row.max_sup_norm, row.decay_gram,
                   row.decay_inv_sqrt, row.propbound}) {
    out += ',' + format_real(v);
  }
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.3f", row.seconds);
  out += std::string(",") + secs + ",ok\n";
  return out;
}

int run_table(const RunConfig& base, const std::vector<int>& degrees, const std::vector<double>& epsilons,
              std::ostream& out) {
  if (degrees.empty() || epsilons.empty()) fail(ErrorCode::Config, "table needs at least one degree and one epsilon");
  out << table_header() << std::flush;
  int failures = 0;
  for (double eps : epsilons) {
    for (int L : degrees) {
      RunConfig cell = base;
      cell.L = L;
      cell.epsilon = eps;
      cell.fraction.reset();
      try {
        out << table_row_csv(table_cell(cell));
      } catch (const Error& e) {
        ++failures;
        std::string message = e.what();
        std::replace(message.begin(), message.end(), ',', ';');
        std::replace(message.begin(), message.end(), '\n', ' ');
        out << L << ',' << format_real(eps) << ",,,,,,,,,,,,error:" << to_string(e.code()) << ": " << message << '\n';
      }
      out << std::flush;
    }
  }
  return failures;
}

std::string environment_stamp() {
  json j;
  j["library_version"] = "0.1.0";
#if defined(__VERSION__)
  j["compiler"] = __VERSION__;
#endif
  j["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  j["threads"] = 1;
  return j.dump();
}

}  // namespace flatsphere
