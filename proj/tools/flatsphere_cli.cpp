// Command line front end; talks to the library only through the C API.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flatsphere/flatsphere.h"

namespace {

enum ExitCode : int {
  kExitPass = 0,
  kExitVerificationFailed = 1,
  kExitRieszFailure = 2,
  kExitIoOrConfig = 3,
  kExitNumerical = 4,
};

struct Options {
  int m = 2;
  std::optional<int> L;
  std::optional<double> epsilon;
  std::optional<double> fraction;
  double mesh_res = 0.0;
  double probe_res = 0.0;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  std::string out;
  bool quiet = false;
  bool json = false;
};

class CommandError {
 public:
  CommandError(fs_status status, std::string context) : status_(status), context_(std::move(context)) {}
  fs_status status() const { return status_; }
  const std::string& context() const { return context_; }

 private:
  fs_status status_;
  std::string context_;
};

void check(fs_status status, const std::string& context) {
  if (status != FS_OK) throw CommandError(status, context);
}

int exit_code_for(fs_status status) {
  switch (status) {
    case FS_OK: return kExitPass;
    case FS_ERR_NOT_POSITIVE_DEFINITE: return kExitRieszFailure;
    case FS_ERR_VERIFICATION: return kExitVerificationFailed;
    case FS_ERR_IO:
    case FS_ERR_CONFIG:
    case FS_ERR_FORMAT:
    case FS_ERR_NULL_ARGUMENT:
      return kExitIoOrConfig;
    default: return kExitNumerical;
  }
}

fs_config make_config(const Options& o) {
  fs_config c;
  fs_config_init(&c);
  c.m = o.m;
  if (o.L) c.L = *o.L;
  if (o.epsilon) c.epsilon = *o.epsilon;
  if (o.fraction) c.fraction = *o.fraction;
  c.mesh_resolution = o.mesh_res;
  c.probe_resolution = o.probe_res;
  c.seed = o.seed;
  c.tolerance = o.tolerance;
  return c;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
};
using PointsHandle = Handle<fs_points, fs_points_free>;
using SystemHandle = Handle<fs_system, fs_system_free>;

void emit(const Options& o, const nlohmann::json& fields, const std::string& text) {
  if (o.quiet) return;
  if (o.json) {
    std::cout << fields.dump() << '\n';
  } else {
    std::cout << text;
  }
}

std::string fmt(const char* pattern, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, pattern, value);
  return buffer;
}

int cmd_points(const Options& o) {
  const fs_config config = make_config(o);
  PointsHandle points;
  check(fs_points_generate(&config, &points.ptr), "generating nodes");
  const std::string path = o.out.empty() ? "points.json" : o.out;
  check(fs_points_save(points.ptr, path.c_str()), "writing " + path);
  fs_points_info info{};
  check(fs_points_get_info(points.ptr, &info), "reading node info");

  nlohmann::json j{{"file", path},          {"n", info.n},         {"degree", info.degree},
                   {"L", info.L},           {"epsilon", info.epsilon}, {"k_L", info.k_L},
                   {"ratio", info.ratio}};
  j["separation"] = std::isfinite(info.separation) ? nlohmann::json(info.separation) : nlohmann::json(nullptr);
  std::string text = "wrote " + path + "\n";
  text += "n          " + std::to_string(info.n) + " (degree " + std::to_string(info.degree) + ")\n";
  text += "k_L        " + std::to_string(info.k_L) + "\n";
  text += "n/k_L      " + fmt("%.6f", info.ratio) + "\n";
  text += "separation " + fmt("%.6g", info.separation) + " (x(degree+1) = " + fmt("%.6g", info.separation_scaled) +
          ")\n";
  emit(o, j, text);
  return kExitPass;
}

int cmd_build(Options o, const std::string& points_path, const std::string& gram_out, const std::string& inv_out) {
  PointsHandle points;
  check(fs_points_load(points_path.c_str(), &points.ptr), "reading " + points_path);
  fs_points_info pinfo{};
  check(fs_points_get_info(points.ptr, &pinfo), "reading node info");
  if (!o.L) {
    if (pinfo.L < 0) throw CommandError(FS_ERR_CONFIG, "points file has no target degree; pass --degree");
    o.L = pinfo.L;
  }
  const fs_config config = make_config(o);
  SystemHandle system;
  fs_build_info info{};
  check(fs_system_build(points.ptr, &config, &system.ptr, &info), "building the flat system");
  const std::string path = o.out.empty() ? "system.json" : o.out;
  check(fs_system_save(system.ptr, path.c_str()), "writing " + path);
  if (!gram_out.empty() || !inv_out.empty()) {
    check(fs_system_export_matrices(system.ptr, gram_out.empty() ? nullptr : gram_out.c_str(),
                                    inv_out.empty() ? nullptr : inv_out.c_str()),
          "exporting matrices");
  }
  nlohmann::json j{{"file", path},
                   {"n", info.n},
                   {"lambda_min", info.lambda_min},
                   {"lambda_max", info.lambda_max},
                   {"linf_inv_sqrt", info.linf_inv_sqrt},
                   {"orthonormality_residual", info.residual}};
  std::string text = "wrote " + path + "\n";
  text += "n                        " + std::to_string(info.n) + "\n";
  text += "lambda_min               " + fmt("%.6g", info.lambda_min) + "\n";
  text += "lambda_max               " + fmt("%.6g", info.lambda_max) + "\n";
  text += "linf norm Delta^(-1/2)   " + fmt("%.6g", info.linf_inv_sqrt) + "\n";
  text += "orthonormality residual  " + fmt("%.3e", info.residual) + "\n";
  emit(o, j, text);
  return kExitPass;
}

int cmd_verify(const Options& o, const std::string& system_path) {
  SystemHandle system;
  check(fs_system_load(system_path.c_str(), &system.ptr), "reading " + system_path);
  const fs_config config = make_config(o);
  const std::string path = o.out.empty() ? "report.json" : o.out;
  int passed = 0;
  char* summary = nullptr;
  check(fs_verify(system.ptr, &config, path.c_str(), &passed, &summary), "verifying " + system_path);
  const std::string text = summary ? summary : "";
  fs_string_free(summary);
  emit(o, nlohmann::json{{"report", path}, {"overall", passed ? "pass" : "fail"}}, text + "report: " + path + "\n");
  return passed ? kExitPass : kExitVerificationFailed;
}

int cmd_table(const Options& o, const std::vector<int>& degrees, const std::vector<double>& epsilons) {
  const fs_config config = make_config(o);
  int failed = 0;
  check(fs_table(&config, degrees.data(), degrees.size(), epsilons.data(), epsilons.size(),
                 o.out.empty() ? nullptr : o.out.c_str(), &failed),
        "building the table");
  if (!o.out.empty() && !o.quiet && !o.json) std::cerr << "wrote " << o.out << "\n";
  return failed ? kExitNumerical : kExitPass;
}

int cmd_eval(const Options& o, const std::string& system_path, const std::string& at_path) {
  SystemHandle system;
  check(fs_system_load(system_path.c_str(), &system.ptr), "reading " + system_path);
  std::vector<double> coords;
  if (!at_path.empty()) {
    PointsHandle targets;
    check(fs_points_load(at_path.c_str(), &targets.ptr), "reading " + at_path);
    fs_points_info info{};
    check(fs_points_get_info(targets.ptr, &info), "reading target info");
    coords.resize(3 * info.n);
    check(fs_points_coords(targets.ptr, coords.data(), coords.size()), "reading target coordinates");
  } else {
    if (!(o.mesh_res > 0.0)) throw CommandError(FS_ERR_CONFIG, "eval needs --at <points.json> or --mesh-res");
    PointsHandle mesh;
    check(fs_mesh_generate(o.m, o.mesh_res, &mesh.ptr), "generating the evaluation mesh");
    fs_points_info info{};
    check(fs_points_get_info(mesh.ptr, &info), "reading mesh info");
    coords.resize(3 * info.n);
    check(fs_points_coords(mesh.ptr, coords.data(), coords.size()), "reading mesh coordinates");
  }
  check(fs_system_eval_csv(system.ptr, coords.data(), coords.size() / 3, o.out.empty() ? nullptr : o.out.c_str()),
        "evaluating");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniformly bounded orthonormal systems of spherical polynomials"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--m", o.m, "sphere dimension")->check(CLI::Range(2, 64));
    cmd->add_option("--seed", o.seed, "seed for randomized diagnostics");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_flag("--quiet", o.quiet, "suppress normal output");
    cmd->add_flag("--json", o.json, "machine-readable summary on stdout");
  };
  auto add_epsilon = [&](CLI::App* cmd) {
    auto* eps = cmd->add_option("--epsilon", o.epsilon, "cutoff/shrink parameter epsilon");
    auto* frac = cmd->add_option("--fraction", o.fraction, "target fraction n/dim E_L; sets epsilon");
    eps->excludes(frac);
  };

  CLI::App* points = app.add_subcommand("points", "select Fekete-type nodes for E_L");
  add_common(points);
  add_epsilon(points);
  points->add_option("--degree,-L", o.L, "target degree L")->required();
  points->add_option("--mesh-res", o.mesh_res, "candidate mesh resolution (default 1/(4 degree))");

  std::string points_path, gram_out, inv_out;
  CLI::App* build = app.add_subcommand("build", "build the flat orthonormal system from a points file");
  add_common(build);
  add_epsilon(build);
  build->add_option("points", points_path, "flatsphere-points/1 file")->required();
  build->add_option("--degree,-L", o.L, "kernel degree L (default: from the points file)");
  build->add_option("--tolerance", o.tolerance, "orthonormality tolerance");
  build->add_option("--gram-out", gram_out, "export the Gramian (.json or .csv)");
  build->add_option("--inv-sqrt-out", inv_out, "export Delta^(-1/2) (.json or .csv)");

  std::string system_path;
  CLI::App* verify = app.add_subcommand("verify", "run all checks on a system file and write a report");
  add_common(verify);
  verify->add_option("system", system_path, "flatsphere-system/1 file")->required();
  verify->add_option("--probe-res", o.probe_res, "probe mesh resolution (default 1/(4L))");

  std::vector<int> degrees;
  std::vector<double> epsilons;
  CLI::App* table = app.add_subcommand("table", "sweep table over degrees and epsilons (CSV)");
  add_common(table);
  table->add_option("--degree,-L", degrees, "degrees, comma separated")->delimiter(',')->required();
  table->add_option("--epsilon", epsilons, "epsilons, comma separated")->delimiter(',');
  table->add_option("--mesh-res", o.mesh_res, "candidate mesh resolution");
  table->add_option("--probe-res", o.probe_res, "probe resolution (default 1/(4L))");
  table->add_option("--tolerance", o.tolerance, "orthonormality tolerance");

  std::string at_path;
  CLI::App* eval = app.add_subcommand("eval", "evaluate all functions at points (CSV)");
  add_common(eval);
  eval->add_option("system", system_path, "flatsphere-system/1 file")->required();
  eval->add_option("--at", at_path, "flatsphere-points/1 file with evaluation points");
  eval->add_option("--mesh-res", o.mesh_res, "evaluate on a generated mesh of this resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitIoOrConfig;
  }

  try {
    if (*points) return cmd_points(o);
    if (*build) return cmd_build(o, points_path, gram_out, inv_out);
    if (*verify) return cmd_verify(o, system_path);
    if (*table) return cmd_table(o, degrees, epsilons.empty() ? std::vector<double>{0.2} : epsilons);
    if (*eval) return cmd_eval(o, system_path, at_path);
  } catch (const CommandError& e) {
    std::cerr << "flatsphere: " << e.context() << ": " << fs_status_name(e.status()) << ": " << fs_last_error()
              << "\n";
    return exit_code_for(e.status());
  }
  return kExitIoOrConfig;
}
