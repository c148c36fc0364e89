#include "projdist/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace projdist {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex v = m(i, j);
      row.push_back(nlohmann::json::array({v.real(), v.imag()}));
    }
    entries.push_back(std::move(row));
  }
  return nlohmann::json{{"n", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("matrix file: top level is not an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ValidationError("matrix file: field 'n' missing or not an integer");
  }
  const auto n = j["n"].get<Eigen::Index>();
  if (n < 0) throw ValidationError("matrix file: field 'n' is negative");
  if (!j.contains("entries") || !j["entries"].is_array() ||
      j["entries"].size() != static_cast<std::size_t>(n)) {
    throw ValidationError("matrix file: field 'entries' missing or not an array of n rows");
  }
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const nlohmann::json& row = j["entries"][static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      throw ValidationError("matrix file: field 'entries' row " + std::to_string(i) +
                            " is not an array of n entries");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const nlohmann::json& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
        throw ValidationError("matrix file: entry (" + std::to_string(i) + ", " +
                              std::to_string(k) + ") is not a [re, im] number pair");
      }
      const double re = cell[0].get<double>();
      const double im = cell[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ValidationError("matrix file: entry (" + std::to_string(i) + ", " +
                              std::to_string(k) + ") is not finite");
      }
      m(i, k) = Complex(re, im);
    }
  }
  return ComplexMatrix(std::move(m));
}

ComplexMatrix read_matrix_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("matrix file '" + path + "': " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  write_text_file(path, matrix_to_json(m).dump(2) + "\n");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.15g", value);
  return buf;
}

}  // namespace projdist
