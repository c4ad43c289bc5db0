#include "flatsphere/io.hpp"

#include <algorithm>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "flatsphere/error.hpp"

namespace flatsphere {

namespace {

using nlohmann::json;

void append_point(std::string& out, const Eigen::Ref<const Eigen::VectorXd>& p) {
  out += '[';
  for (Eigen::Index c = 0; c < p.size(); ++c) {
    if (c) out += ',';
    out += format_real(p[c]);
  }
  out += ']';
}

void append_points(std::string& out, const PointSet& points) {
  out += "  \"points\": [";
  for (Eigen::Index j = 0; j < points.size(); ++j) {
    out += j ? ",\n    " : "\n    ";
    append_point(out, points.point(j));
  }
  out += points.size() ? "\n  ]" : "]";
}

json parse(const std::string& text, std::string_view expected_format) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::Format, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string()) {
    fail(ErrorCode::Format, "document has no \"format\" field");
  }
  const std::string format = doc["format"];
  if (format != expected_format) {
    fail(ErrorCode::Format, "unsupported format \"" + format + "\", expected \"" + std::string(expected_format) + "\"");
  }
  return doc;
}

template <class T>
T field(const json& doc, const char* name) {
  if (!doc.contains(name)) fail(ErrorCode::Format, std::string("missing field \"") + name + "\"");
  try {
    return doc[name].get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::Format, std::string("bad field \"") + name + "\": " + e.what());
  }
}

PointSet read_points(const json& doc, int m, int degree) {
  if (!doc.contains("points") || !doc["points"].is_array()) fail(ErrorCode::Format, "missing \"points\" array");
  const json& list = doc["points"];
  Eigen::MatrixXd coords(m + 1, static_cast<Eigen::Index>(list.size()));
  for (std::size_t j = 0; j < list.size(); ++j) {
    const json& p = list[j];
    if (!p.is_array() || p.size() != static_cast<std::size_t>(m + 1)) {
      fail(ErrorCode::Format, "point " + std::to_string(j) + " does not have " + std::to_string(m + 1) + " coordinates");
    }
    for (int c = 0; c <= m; ++c) {
      if (!p[c].is_number()) fail(ErrorCode::Format, "non-numeric coordinate in point " + std::to_string(j));
      coords(c, static_cast<Eigen::Index>(j)) = p[c].get<double>();
    }
  }
  return PointSet(m, degree, std::move(coords));
}

}  // namespace

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.16e", value);
  return buffer;
}

std::string points_to_json(const PointSet& points, double epsilon, std::optional<int> L) {
  std::string out = "{\n";
  out += "  \"format\": \"" + std::string(kPointsFormat) + "\",\n";
  out += "  \"m\": " + std::to_string(points.m()) + ",\n";
  out += "  \"degree\": " + std::to_string(points.degree()) + ",\n";
  if (L) out += "  \"L\": " + std::to_string(*L) + ",\n";
  out += "  \"epsilon\": " + format_real(epsilon) + ",\n";
  append_points(out, points);
  out += "\n}\n";
  return out;
}

PointsDocument points_from_json(const std::string& text) {
  const json doc = parse(text, kPointsFormat);
  const int m = field<int>(doc, "m");
  const int degree = field<int>(doc, "degree");
  PointsDocument result{read_points(doc, m, degree), field<double>(doc, "epsilon"), std::nullopt};
  if (doc.contains("L")) result.L = field<int>(doc, "L");
  return result;
}

std::string system_to_json(const FlatSystem& system) {
  const KernelSpec& spec = system.spec();
  std::string out = "{\n";
  out += "  \"format\": \"" + std::string(kSystemFormat) + "\",\n";
  out += "  \"m\": " + std::to_string(spec.m) + ",\n";
  out += "  \"L\": " + std::to_string(spec.L) + ",\n";
  out += "  \"epsilon\": " + format_real(spec.epsilon) + ",\n";
  out += "  \"degree\": " + std::to_string(system.points().degree()) + ",\n";
  append_points(out, system.points());
  out += ",\n  \"coefficients\": [";
  const Eigen::MatrixXcd& a = system.coefficients();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    out += i ? ",\n    [" : "\n    [";
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out += ',';
      out += '[' + format_real(a(i, j).real()) + ',' + format_real(a(i, j).imag()) + ']';
    }
    out += ']';
  }
  out += "\n  ]\n}\n";
  return out;
}

FlatSystem system_from_json(const std::string& text) {
  const json doc = parse(text, kSystemFormat);
  KernelSpec spec;
  spec.m = field<int>(doc, "m");
  spec.L = field<int>(doc, "L");
  spec.epsilon = field<double>(doc, "epsilon");
  spec.power = 1;
  const int degree = doc.contains("degree") ? field<int>(doc, "degree") : 0;
  PointSet points = read_points(doc, spec.m, degree);
  const Eigen::Index n = points.size();

  if (!doc.contains("coefficients") || !doc["coefficients"].is_array()) {
    fail(ErrorCode::Format, "missing \"coefficients\" array");
  }
  const json& rows = doc["coefficients"];
  if (rows.size() != static_cast<std::size_t>(n)) fail(ErrorCode::Format, "coefficient row count differs from node count");
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      fail(ErrorCode::Format, "coefficient row " + std::to_string(i) + " has wrong length");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& c = row[static_cast<std::size_t>(j)];
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
        fail(ErrorCode::Format, "coefficients must be [re, im] pairs");
      }
      a(i, j) = {c[0].get<double>(), c[1].get<double>()};
    }
  }
  return FlatSystem(std::move(points), spec, std::move(a));
}

std::string matrix_to_json(const Eigen::Ref<const Eigen::MatrixXd>& matrix, std::string_view name) {
  std::string out = "{\n  \"format\": \"" + std::string(kMatrixFormat) + "\",\n";
  out += "  \"name\": \"" + std::string(name) + "\",\n";
  out += "  \"rows\": " + std::to_string(matrix.rows()) + ",\n";
  out += "  \"cols\": " + std::to_string(matrix.cols()) + ",\n";
  out += "  \"data\": [";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (i || j) out += ',';
      if (j == 0) out += "\n    ";
      out += format_real(matrix(i, j));
    }
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string matrix_to_csv(const Eigen::Ref<const Eigen::MatrixXd>& matrix) {
  std::string out;
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j) out += ',';
      out += format_real(matrix(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_eval_csv(std::ostream& out, const FlatSystem& system, const Eigen::Ref<const Eigen::MatrixXd>& points) {
  out << "x,y,z,i,re,im,abs\n";
  if (points.cols() == 0) return;
  if (points.rows() != 3) fail(ErrorCode::UnsupportedDimension, "CSV evaluation export is defined for S^2");
  // Chunk the batch so large meshes stay under the evaluation cap.
  const Eigen::Index chunk = std::max<Eigen::Index>(1, kMaxBatchEntries / std::max<Eigen::Index>(1, system.size()));
  for (Eigen::Index start = 0; start < points.cols(); start += chunk) {
    const Eigen::Index count = std::min(chunk, points.cols() - start);
    const Eigen::MatrixXcd values = evaluate_batch(system, points.middleCols(start, count));
    for (Eigen::Index q = 0; q < count; ++q) {
      const auto p = points.col(start + q);
      const std::string prefix = format_real(p[0]) + ',' + format_real(p[1]) + ',' + format_real(p[2]) + ',';
      for (Eigen::Index i = 0; i < system.size(); ++i) {
        const std::complex<double> v = values(i, q);
        out << prefix << i << ',' << format_real(v.real()) << ',' << format_real(v.imag()) << ','
            << format_real(std::abs(v)) << '\n';
      }
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorCode::Io, "error while reading " + path);
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCode::Io, "error while writing " + path);
}

}  // namespace flatsphere
