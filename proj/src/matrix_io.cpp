#include "radiuslab/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace radiuslab {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json data = nlohmann::json::array();
    for (const Complex& z : m.entries()) data.push_back({z.real(), z.imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw Error(ErrorCode::ParseError, "matrix object needs rows, cols and data");
    }
    const auto& rows = j.at("rows");
    const auto& cols = j.at("cols");
    const auto& data = j.at("data");
    if (!rows.is_number_unsigned() || !cols.is_number_unsigned() || !data.is_array()) {
        throw Error(ErrorCode::ParseError, "rows and cols must be positive integers, data an array");
    }
    const std::size_t r = rows.get<std::size_t>(), c = cols.get<std::size_t>();
    if (r == 0 || c == 0) throw Error(ErrorCode::ParseError, "matrix dimensions must be positive");
    if (data.size() != r * c) {
        throw Error(ErrorCode::ParseError, "data has " + std::to_string(data.size()) + " entries, expected " +
                                               std::to_string(r * c));
    }
    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const auto& e : data) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw Error(ErrorCode::ParseError, "each entry must be [re, im]");
        }
        const double re = e[0].get<double>(), im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) throw Error(ErrorCode::ParseError, "non-finite entry");
        entries.emplace_back(re, im);
    }
    return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix parse_matrix(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return matrix_from_json(j);
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IOFailure, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IOFailure, "cannot write " + path);
    out << matrix_to_json(m).dump() << '\n';
    if (!out) throw Error(ErrorCode::IOFailure, "write failed for " + path);
}

}  // namespace radiuslab
