#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "flatsphere/flat_system.hpp"
#include "flatsphere/points.hpp"

namespace flatsphere {

inline constexpr std::string_view kPointsFormat = "flatsphere-points/1";
inline constexpr std::string_view kSystemFormat = "flatsphere-system/1";
inline constexpr std::string_view kMatrixFormat = "flatsphere-matrix/1";
inline constexpr std::string_view kReportFormat = "flatsphere-report/1";

/// 17 significant digits, scientific notation.
std::string format_real(double value);

struct PointsDocument {
  PointSet points;
  double epsilon = 0.0;
  std::optional<int> L;  // target degree, when the nodes were shrunk for one
};

std::string points_to_json(const PointSet& points, double epsilon, std::optional<int> L = std::nullopt);
/// Throws ErrorCode::Format for malformed documents or unknown versions.
PointsDocument points_from_json(const std::string& text);

std::string system_to_json(const FlatSystem& system);
FlatSystem system_from_json(const std::string& text);

/// Dense row-major export of a real matrix.
std::string matrix_to_json(const Eigen::Ref<const Eigen::MatrixXd>& matrix, std::string_view name);
std::string matrix_to_csv(const Eigen::Ref<const Eigen::MatrixXd>& matrix);

/// CSV rows x,y,z,i,re,im,abs for every probe point and function index.
void write_eval_csv(std::ostream& out, const FlatSystem& system, const Eigen::Ref<const Eigen::MatrixXd>& points);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace flatsphere
