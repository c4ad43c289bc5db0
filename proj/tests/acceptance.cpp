// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "flatsphere/cutoff.hpp"
#include "flatsphere/diagnostics.hpp"
#include "flatsphere/error.hpp"
#include "flatsphere/flat_system.hpp"
#include "flatsphere/gramian.hpp"
#include "flatsphere/pipeline.hpp"
#include "flatsphere/points.hpp"

using namespace flatsphere;

namespace {

constexpr double kEps = 0.2;
const std::vector<int> kSweep{8, 12, 16, 20, 24, 28};

struct SweepPoint {
  int L = 0;
  int degree = 0;
  Eigen::Index n = 0;
  double ratio = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double residual = 0.0;
  double linf_inv_sqrt = 0.0;
  double cmax = 0.0;
  double single_cmax = 0.0;
  double decay_gram = 0.0;
  double decay_inv_sqrt = 0.0;
  double propbound = 0.0;
  double separation_scaled = 0.0;
};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    notes.push_back(std::string(ok ? "ok   " : "MISS ") + what);
    pass = pass && ok;
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* pattern, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, pattern, value);
  return buffer;
}

std::string fmt(const char* pattern, double a, double b) {
  char buffer[128];
  std::snprintf(buffer, sizeof buffer, pattern, a, b);
  return buffer;
}

RunConfig config_for(int L, double eps) {
  RunConfig config;
  config.L = L;
  config.epsilon = eps;
  return config;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

SweepPoint measure(int L) {
  SweepPoint s;
  s.L = L;
  const RunConfig config = config_for(L, kEps);
  const PointsRun run = generate_points(config);
  s.degree = run.points.degree();
  s.n = run.points.size();
  s.ratio = run.ratio;
  s.separation_scaled = separation(run.points).scaled;

  const KernelSpec spec{2, L, kEps, 1};
  const SystemBuild build = build_system_detailed(run.points, spec);
  const Spectrum spectrum = extreme_eigenvalues(build.gram);
  s.lambda_min = spectrum.min;
  s.lambda_max = spectrum.max;
  s.residual = build.residual;
  s.linf_inv_sqrt = linf_row_norm(build.inv_sqrt);
  s.decay_gram = offdiag_decay_fit(build.gram.entries, run.points, L).exponent;
  s.decay_inv_sqrt = offdiag_decay_fit(build.inv_sqrt, run.points, L).exponent;

  const double probe = max_probe_resolution(L);
  const std::vector<double> sups = sup_norms(build.system, probe);
  s.cmax = max_of(sups);
  s.propbound = propbound_sum(run.points, L, 3.0, candidate_mesh(2, probe).points);

  const PointSet single(2, 0, Eigen::Vector3d(0, 0, 1));
  s.single_cmax = sup_norm(build_system(single, spec), 0, probe);
  return s;
}

template <class F>
bool expect_error(F&& f, ErrorCode code) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

// Criterion 1
Outcome orthonormality_closed_form() {
  Outcome o;
  const PointsRun run = generate_points(config_for(20, kEps));
  const SystemBuild build = build_system_detailed(run.points, KernelSpec{2, 20, kEps, 1});
  o.require(build.system.size() == 169, "n = " + std::to_string(build.system.size()) + " (expected 169)");
  o.require(build.residual <= 1e-10, fmt("||A Delta A* - I||_max = %.3e <= 1e-10", build.residual));
  return o;
}

// Criterion 2
Outcome orthonormality_quadrature() {
  Outcome o;
  const int L = 8;
  const PointsRun run = generate_points(config_for(L, kEps));
  const FlatSystem system = build_system(run.points, KernelSpec{2, L, kEps, 1});
  const QuadratureRule rule = gauss_sphere_rule(2, L);
  const Eigen::MatrixXcd values = evaluate_batch(system, rule.nodes);
  const Eigen::MatrixXcd inner = values.conjugate() * rule.weights.asDiagonal() * values.transpose();
  const Eigen::Index n = system.size();
  const double err = (inner - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  o.require(err <= 1e-8, fmt("max |<s_i, s_k> - delta_ik| = %.3e <= 1e-8", err) + " over " +
                             std::to_string(n * n) + " pairs");
  return o;
}

// Criterion 3
Outcome kernel_oracle() {
  Outcome o;
  const Eigen::MatrixXd z = random_sphere_points(50, 101);
  const Eigen::MatrixXd w = random_sphere_points(50, 202);
  double worst = 0.0;
  for (int L = 0; L <= 6; ++L) {
    for (double eps : {0.1, 0.2, 0.5}) {
      for (int p : {1, 2}) {
        const ZonalKernelTable table = kernel_table(KernelSpec{2, L, eps, p});
        for (Eigen::Index q = 0; q < 50; ++q) {
          const double t = std::clamp(z.col(q).dot(w.col(q)), -1.0, 1.0);
          worst = std::max(worst, std::abs(table(t) - brute_force_kernel(2, L, eps, p, z.col(q), w.col(q))));
        }
      }
    }
  }
  o.require(worst <= 1e-10, fmt("max |closed form - explicit basis| = %.3e <= 1e-10", worst) +
                                " (L = 0..6, p = 1,2, eps = 0.1,0.2,0.5, 50 pairs)");
  return o;
}

// Criterion 4
Outcome sup_norm_uniformity(const std::vector<SweepPoint>& sweep) {
  Outcome o;
  std::vector<double> ls, c, single;
  for (const SweepPoint& s : sweep) {
    ls.push_back(s.L);
    c.push_back(s.cmax);
    single.push_back(s.single_cmax);
    o.note("L = " + std::to_string(s.L) + fmt(": Cmax = %.6f, single node %.4f", s.cmax, s.single_cmax));
  }
  const double spread = max_of(c) / min_of(c);
  o.require(spread <= 2.5, fmt("max/min Cmax = %.4f <= 2.5", spread));
  const double slope = slope_of(ls, c), median = median_of(c);
  o.require(std::abs(slope) * 28.0 <= 0.5 * median,
            fmt("|slope| * 28 = %.4f <= 0.5 * median = ", std::abs(slope) * 28.0) + fmt("%.4f", 0.5 * median));
  const double growth = single.back() / single.front();
  o.require(growth >= 2.0, fmt("single node Cmax(28)/Cmax(8) = %.4f >= 2", growth));
  return o;
}

// Criterion 5
Outcome cardinality(const std::vector<SweepPoint>& sweep) {
  Outcome o;
  for (const SweepPoint& s : sweep) {
    const int d = shrink_degree(s.L, kEps);
    const double expected = static_cast<double>((d + 1) * (d + 1)) / static_cast<double>((s.L + 1) * (s.L + 1));
    o.require(s.ratio == expected, "L = " + std::to_string(s.L) + fmt(": n/k_L = %.17g equals %.17g", s.ratio, expected));
  }
  const PointsRun run = generate_points(config_for(28, 0.05));
  const int d = shrink_degree(28, 0.05);
  const double expected = static_cast<double>((d + 1) * (d + 1)) / (29.0 * 29.0);
  o.require(run.ratio == expected, fmt("eps = 0.05, L = 28: n/k_L = %.17g equals %.17g", run.ratio, expected));
  o.require(run.ratio >= 0.86, fmt("eps = 0.05, L = 28: n/k_L = %.4f >= 0.86", run.ratio) + " (n = " +
                                   std::to_string(run.points.size()) + ", degree " + std::to_string(d) + ")");
  return o;
}

// Criterion 6
Outcome riesz_lower_bound(const std::vector<SweepPoint>& sweep) {
  Outcome o;
  std::vector<double> lmin;
  for (const SweepPoint& s : sweep) {
    lmin.push_back(s.lambda_min);
    o.require(s.lambda_min > 1e-3, "L = " + std::to_string(s.L) + fmt(": lambda_min = %.6f > 1e-3", s.lambda_min) +
                                       fmt(" (lambda_max %.4f)", s.lambda_max));
  }
  o.require(min_of(lmin) >= 0.5 * lmin.front(),
            fmt("min lambda_min = %.6f >= 0.5 * L=8 value = ", min_of(lmin)) + fmt("%.6f", 0.5 * lmin.front()));
  return o;
}

// Criterion 7
Outcome localization(const std::vector<SweepPoint>& sweep) {
  Outcome o;
  std::vector<double> linf;
  for (const SweepPoint& s : sweep) {
    linf.push_back(s.linf_inv_sqrt);
    o.note("L = " + std::to_string(s.L) + fmt(": decay exponent Delta %.4f, Delta^-1/2 ", s.decay_gram) +
           fmt("%.4f", s.decay_inv_sqrt) + fmt(", linf row norm %.4f", s.linf_inv_sqrt));
  }
  const auto at20 = std::find_if(sweep.begin(), sweep.end(), [](const SweepPoint& s) { return s.L == 20; });
  o.require(at20->decay_gram >= 3.0, fmt("L = 20: Delta decay exponent = %.4f >= 3", at20->decay_gram));
  o.require(at20->decay_inv_sqrt >= at20->decay_gram - 0.5,
            fmt("L = 20: Delta^-1/2 exponent = %.4f >= Delta exponent - 0.5 = ", at20->decay_inv_sqrt) +
                fmt("%.4f", at20->decay_gram - 0.5));
  const double spread = max_of(linf) / min_of(linf);
  o.require(spread <= 2.0, fmt("max/min linf row norm of Delta^-1/2 = %.4f <= 2", spread));
  return o;
}

// Criterion 8
Outcome propbound(const std::vector<SweepPoint>& sweep) {
  Outcome o;
  const double base = sweep.front().propbound;
  for (const SweepPoint& s : sweep) {
    o.require(s.propbound <= 2.0 * base, "L = " + std::to_string(s.L) + fmt(": sum = %.6f <= 2 * L=8 value = ", s.propbound) +
                                             fmt("%.6f", 2.0 * base));
  }
  return o;
}

// Criterion 9
Outcome uniform_separation(const std::vector<SweepPoint>& sweep) {
  Outcome o;
  const double base = sweep.front().separation_scaled;
  for (const SweepPoint& s : sweep) {
    o.require(s.separation_scaled >= 0.5 * base,
              "L = " + std::to_string(s.L) + fmt(": separation * (degree+1) = %.6f >= ", s.separation_scaled) +
                  fmt("%.6f", 0.5 * base));
  }
  return o;
}

// Criterion 10
Outcome degenerate_inputs() {
  Outcome o;
  Eigen::MatrixXd twice(3, 3);
  twice << 0, 0, 1, 0, 0, 0, 1, 1, 0;
  o.require(expect_error([&] { build_system(PointSet(2, 1, twice), KernelSpec{2, 4, kEps, 1}); },
                         ErrorCode::NotPositiveDefinite),
            "duplicate node -> singular Gramian error");
  o.require(expect_error([] { shrink_degree(10, 0.0); }, ErrorCode::Config) &&
                expect_error([] { shrink_degree(10, 0.5); }, ErrorCode::Config) &&
                expect_error([] { shrink_degree(10, -0.1); }, ErrorCode::Config),
            "epsilon outside (0, 1/2) -> config error");
  Eigen::MatrixXd off(3, 1);
  off << 0, 0, 1.001;
  o.require(expect_error([&] { PointSet(2, 0, off); }, ErrorCode::Domain) &&
                expect_error([] { normalized_kernel(KernelSpec{2, 4, kEps, 1}, Eigen::Vector3d(0.6, 0.6, 0.6),
                                                    Eigen::Vector3d(0, 0, 1)); },
                             ErrorCode::Domain),
            "non-unit vector -> domain error");
  return o;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  int failed = 0;
  auto run = [&](int id, const char* title, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = body();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.notes.push_back(std::string("MISS unexpected error: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    for (const std::string& line : outcome.notes) std::printf("    %s\n", line.c_str());
    std::printf("%s criterion %d: %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", id, title, seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failed;
  };

  run(1, "closed-form orthonormality at L = 20", orthonormality_closed_form);
  run(2, "quadrature orthonormality at L = 8", orthonormality_quadrature);
  run(3, "closed-form kernel matches the explicit basis", kernel_oracle);

  const auto start = Clock::now();
  std::vector<SweepPoint> sweep;
  bool sweep_ok = true;
  try {
    for (int L : kSweep) sweep.push_back(measure(L));
  } catch (const std::exception& e) {
    std::printf("    sweep failed: %s\n", e.what());
    sweep_ok = false;
  }
  std::printf("    sweep eps = 0.2, L = 8..28 measured in %.1f s\n",
              std::chrono::duration<double>(Clock::now() - start).count());
  auto on_sweep = [&](Outcome (*f)(const std::vector<SweepPoint>&)) {
    return [&, f] {
      if (!sweep_ok) fail(ErrorCode::InsufficientData, "sweep did not complete");
      return f(sweep);
    };
  };

  run(4, "sup-norm uniformity across the sweep", on_sweep(sup_norm_uniformity));
  run(5, "cardinality ratio", on_sweep(cardinality));
  run(6, "Riesz lower bound across the sweep", on_sweep(riesz_lower_bound));
  run(7, "off-diagonal localization", on_sweep(localization));
  run(8, "separated-sum bound across the sweep", on_sweep(propbound));
  run(9, "uniform separation across the sweep", on_sweep(uniform_separation));
  run(10, "degenerate input handling", degenerate_inputs);

  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
