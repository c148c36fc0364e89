#pragma once

#include <string>

#include "json.hpp"
#include "projdist/matrix.hpp"

namespace projdist {

// Matrix file payload: {"entries": [[[re, im], ...], ...], "n": <dim>}.
// Entries are plain JSON numbers, so write -> read -> write is byte
// identical (the serializer emits the shortest round-tripping decimal).
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Report scalars are decimal strings with 15 significant digits (trailing
// zeros kept), e.g. sqrt(2 - sqrt2) -> "0.765366864730180".
std::string format_real(double value);

}  // namespace projdist
