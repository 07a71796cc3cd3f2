#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "logpolar/linalg.hpp"

namespace logpolar::io {

using Json = nlohmann::ordered_json;

/// %.17g; non-finite values become "null" in JSON and "nan"/"inf" in CSV.
std::string format_double(double v);

/// Parses a MatrixFile object {"dim": n, "real": [...], "imag": [...]}
/// (row-major, imag optional) or plain CSV with one row per line.
/// Throws ParseError on malformed input.
CMat parse_matrix(std::string_view text);

/// Reads a matrix argument: a file path, "-" for stdin, or one of the
/// literals "I" (identity of size default_dim), "eye:N" and "diag:a,b,...".
CMat read_matrix(const std::string& arg, Eigen::Index default_dim);

/// MatrixFile object; imag is omitted for real matrices.
Json matrix_json(const CMat& m);
inline Json matrix_json(const RMat& m) { return matrix_json(CMat(m.cast<Complex>())); }

/// Writes a MatrixFile with 17 significant digits, newline-terminated.
std::string write_matrix(const CMat& m);

/// JSON text with every number printed through format_double.
std::string dump_json(const Json& j, int indent = 2);

/// Flattens a report into "key,value" lines (nested keys joined by '.',
/// array elements by index).
std::string dump_csv(const Json& j);

}  // namespace logpolar::io
