#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "radiuslab/matrix.hpp"

namespace radiuslab {

/// {"rows": n, "cols": m, "data": [[re, im], ...]}, row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Throws ParseError on a malformed object, a length mismatch or a
/// non-finite entry.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix parse_matrix(std::string_view text);
/// Throws IOFailure if the file cannot be read.
ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

}  // namespace radiuslab
