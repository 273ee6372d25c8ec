#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "charmat/errors.hpp"
#include "charmat/fiber_family.hpp"
#include "charmat/hilbert.hpp"
#include "cli/json_text.hpp"

namespace charmat::cli {

// Malformed input text: bad JSON, missing or mistyped fields, wrong data
// length. The message carries "origin:line:" where a line is known.
class ParseError : public Error {
 public:
  using Error::Error;
};

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

// {"rows": r, "cols": c, "data": [[re, im], ...]} with data in row-major order.
Json matrix_to_json(const Matrix& m);
std::string format_matrix_file(const Matrix& m);

// Throws ParseError for schema problems and InvariantViolation for
// non-finite entries.
Matrix parse_matrix_file(std::string_view text, std::string_view origin);

// {"grid": [...], "weights": [...]?, "fibers": [MatrixFile | {"kind", "n"}]}.
OperatorFamily parse_family_file(std::string_view text, std::string_view origin);

// Fiber generator named in a FamilyFile, e.g. "dirichlet-laplacian".
Matrix generate_fiber(std::string_view kind, Index n);

std::uint64_t fnv1a(std::string_view bytes);
// "fnv1a64:" followed by 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace charmat::cli
