#include <set>
#include <sstream>

#include "json.hpp"
#include "test_support.hpp"

#include "flatsphere/io.hpp"
#include "flatsphere/pipeline.hpp"

using namespace flatsphere;

namespace {

RunConfig config_for(int L, double eps) {
  RunConfig config;
  config.L = L;
  config.epsilon = eps;
  return config;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream cells(line);
  std::string cell;
  while (std::getline(cells, cell, ',')) fields.push_back(cell);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

TEST_CASE("run config resolution") {
  RunConfig config;
  CHECK(config.resolved_epsilon() == 0.2);
  CHECK(config.resolved_fraction() == doctest::Approx(0.36).epsilon(1e-15));
  config.fraction = 0.81;
  CHECK(config.resolved_epsilon() == doctest::Approx(0.05).epsilon(1e-14));
  config.epsilon = 0.1;
  CHECK(config.resolved_epsilon() == 0.1);
  CHECK(config.resolved_probe_resolution(20) == doctest::Approx(1.0 / 80));
  config.probe_resolution = 0.01;
  CHECK(config.resolved_probe_resolution(20) == 0.01);

  config.seed = 987654321;
  const auto doc = nlohmann::json::parse(config.to_json());
  CHECK(doc["seed"] == 987654321u);
  CHECK(doc["epsilon"].get<double>() == 0.1);
  CHECK(doc["fraction_given"].get<double>() == 0.81);
  CHECK(doc["threads"] == 1);
}

TEST_CASE("generate points cardinality") {
  const PointsRun a = generate_points(config_for(20, 0.2));
  CHECK(a.points.size() == 169);
  CHECK(a.points.degree() == 12);
  CHECK(a.k_L == 441);
  CHECK(a.ratio == 169.0 / 441.0);
  const PointsRun b = generate_points(config_for(10, 0.05));
  CHECK(b.points.size() == 100);
  CHECK(b.points.degree() == 9);
  CHECK(generate_points(config_for(10, 0.05)).points.coords() == b.points.coords());
  CHECK_FS_ERROR(generate_points(config_for(10, 0.5)), ErrorCode::Config);
}

TEST_CASE("verification of a fresh system") {
  const RunConfig config = config_for(8, 0.2);
  const PointsRun run = generate_points(config);
  const FlatSystem system = build_system(run.points, KernelSpec{2, 8, 0.2, 1});
  const VerificationReport report = verify_system(system, config);
  CHECK(report.passed());

  std::set<std::string> names;
  bool all_pass = true;
  for (const Check& c : report.checks) {
    CHECK(names.insert(c.name).second);
    if (c.status == CheckStatus::Fail) all_pass = false;
    if (c.status == CheckStatus::Pass || c.status == CheckStatus::Fail) CHECK(c.threshold.has_value());
  }
  CHECK(report.passed() == all_pass);
  for (const char* name : {"points_unit_norm", "cardinality", "gram_lambda_min", "dft_unitarity", "inv_sqrt_residual",
                           "orthonormality_closed_form", "orthonormality_quadrature", "kernel_oracle", "separation_scaled",
                           "decay_exponent_gram", "decay_exponent_inv_sqrt", "propbound_sum", "plancherel_polya",
                           "max_sup_norm"}) {
    CAPTURE(name);
    CHECK(report.find(name) != nullptr);
  }
  CHECK(report.find("no_such_check") == nullptr);

  const auto doc = nlohmann::json::parse(report.to_json());
  CHECK(doc["format"] == "flatsphere-report/1");
  CHECK(doc["overall"] == "pass");
  CHECK(doc["config"]["seed"] == 1);
  CHECK(doc["checks"].size() == report.checks.size());
  CHECK(!report.summary().empty());
}

TEST_CASE("verification detects corrupted coefficients") {
  const RunConfig config = config_for(8, 0.2);
  const PointsRun run = generate_points(config);
  const FlatSystem good = build_system(run.points, KernelSpec{2, 8, 0.2, 1});
  Eigen::MatrixXcd a = good.coefficients();
  a(3, 5) *= 1.01;
  const FlatSystem bad(run.points, good.spec(), a);
  const VerificationReport report = verify_system(bad, config);
  CHECK_FALSE(report.passed());
  REQUIRE(report.find("orthonormality_closed_form") != nullptr);
  CHECK(report.find("orthonormality_closed_form")->status == CheckStatus::Fail);
  CHECK(report.find("orthonormality_quadrature")->status == CheckStatus::Fail);
  CHECK(report.find("gram_lambda_min")->status == CheckStatus::Pass);
}

TEST_CASE("verification reproduces exactly") {
  const RunConfig config = config_for(8, 0.2);
  const FlatSystem system = build_system(generate_points(config).points, KernelSpec{2, 8, 0.2, 1});
  const VerificationReport a = verify_system(system, config), b = verify_system(system, config);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t c = 0; c < a.checks.size(); ++c) {
    if (std::isnan(a.checks[c].value)) continue;
    CHECK(a.checks[c].value == b.checks[c].value);
  }
}

TEST_CASE("single table cell matches verification values") {
  const RunConfig config = config_for(8, 0.2);
  const TableRow row = table_cell(config);
  const FlatSystem system = build_system(generate_points(config).points, KernelSpec{2, 8, 0.2, 1});
  const VerificationReport report = verify_system(system, config);
  CHECK(row.n == system.size());
  CHECK(row.ratio == report.find("cardinality_ratio")->value);
  CHECK(row.lambda_min == report.find("gram_lambda_min")->value);
  CHECK(row.lambda_max == report.find("gram_lambda_max")->value);
  CHECK(row.linf_inv_sqrt == report.find("linf_row_norm_inv_sqrt")->value);
  CHECK(row.max_sup_norm == report.find("max_sup_norm")->value);
  CHECK(row.decay_gram == report.find("decay_exponent_gram")->value);
  CHECK(row.decay_inv_sqrt == report.find("decay_exponent_inv_sqrt")->value);
  CHECK(row.propbound == report.find("propbound_sum")->value);
}

TEST_CASE("table ratio column is exact") {
  RunConfig base;
  std::ostringstream out;
  CHECK(run_table(base, {4, 6, 9}, {0.05, 0.2}, out) == 0);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line + "\n" == table_header());
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto fields = split(line);
    REQUIRE(fields.size() == 14);
    const int L = std::stoi(fields[0]);
    const double eps = std::strtod(fields[1].c_str(), nullptr);
    const int d = shrink_degree(L, eps);
    CHECK(std::stol(fields[2]) == (d + 1) * (d + 1));
    CHECK(std::stol(fields[3]) == (L + 1) * (L + 1));
    CHECK(std::strtod(fields[4].c_str(), nullptr) == static_cast<double>((d + 1) * (d + 1)) / ((L + 1) * (L + 1)));
    CHECK(fields[13] == "ok");
    ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("failed table cells leave an error row") {
  RunConfig base;
  std::ostringstream out;
  CHECK(run_table(base, {6}, {0.2, 0.7}, out) == 1);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(split(line).back() == "ok");
  std::getline(lines, line);
  const auto fields = split(line);
  CHECK(fields.size() == 14);
  CHECK(fields[13].rfind("error:", 0) == 0);
  CHECK_FS_ERROR(run_table(base, {}, {0.2}, out), ErrorCode::Config);
}

TEST_CASE("environment stamp is JSON") {
  const auto doc = nlohmann::json::parse(environment_stamp());
  CHECK(doc.contains("library_version"));
  CHECK(doc.contains("threads"));
}
