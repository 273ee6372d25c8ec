#include "cli/files.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "charmat/boundary.hpp"

namespace charmat::cli {

namespace {

int line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the nth occurrence (0-based) of "key", or of the first one if there
// are fewer. 0 when the key does not occur.
int line_of_key(std::string_view text, std::string_view key, std::size_t nth = 0) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  std::size_t pos = text.find(quoted);
  if (pos == std::string_view::npos) return 0;
  const std::size_t first = pos;
  for (std::size_t k = 0; k < nth; ++k) {
    pos = text.find(quoted, pos + 1);
    if (pos == std::string_view::npos) return line_at(text, first);
  }
  return line_at(text, pos);
}

struct Source {
  std::string_view text;
  std::string_view origin;

  [[noreturn]] void fail(int line, const std::string& message) const {
    std::string where(origin);
    if (line > 0) where += ":" + std::to_string(line);
    throw ParseError(where + ": " + message);
  }
};

Json parse_json(const Source& src) {
  try {
    return Json::parse(src.text.begin(), src.text.end());
  } catch (const Json::parse_error& e) {
    // byte is one past the offending character
    src.fail(line_at(src.text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  } catch (const Json::out_of_range& e) {
    // Only number overflow reaches here; the message quotes the literal.
    const std::string_view what = e.what();
    const auto open = what.find('\'');
    const auto close = what.rfind('\'');
    std::string where(src.origin);
    if (open != std::string_view::npos && close > open) {
      const auto pos = src.text.find(what.substr(open + 1, close - open - 1));
      if (pos != std::string_view::npos) where += ":" + std::to_string(line_at(src.text, pos));
    }
    throw InvariantViolation(where + ": number does not fit in a finite double");
  }
}

Index positive_integer(const Source& src, const Json& obj, std::string_view key,
                       std::size_t nth, const std::string& context) {
  const auto it = obj.find(key);
  const int line = line_of_key(src.text, key, nth);
  if (it == obj.end()) src.fail(line, context + "missing field \"" + std::string(key) + "\"");
  if (!it->is_number_unsigned() || it->get<std::uint64_t>() == 0) {
    src.fail(line, context + "\"" + std::string(key) + "\" must be a positive integer");
  }
  return static_cast<Index>(it->get<std::uint64_t>());
}

// nth counts which "rows"/"data" occurrence in the text belongs to this
// matrix, for line numbers in diagnostics.
Matrix matrix_from_json(const Source& src, const Json& j, std::size_t nth,
                        const std::string& context) {
  if (!j.is_object()) src.fail(0, context + "matrix must be a JSON object");
  const Index rows = positive_integer(src, j, "rows", nth, context);
  const Index cols = positive_integer(src, j, "cols", nth, context);
  const auto data = j.find("data");
  const int data_line = line_of_key(src.text, "data", nth);
  if (data == j.end() || !data->is_array()) {
    src.fail(data_line, context + "\"data\" must be an array of [re, im] pairs");
  }
  const auto expected = static_cast<std::size_t>(rows * cols);
  if (data->size() != expected) {
    src.fail(data_line, context + "\"data\" has " + std::to_string(data->size()) +
                            " entries, expected rows*cols = " + std::to_string(expected));
  }
  Matrix m(rows, cols);
  for (std::size_t k = 0; k < expected; ++k) {
    const Json& e = (*data)[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      src.fail(data_line, context + "data entry " + std::to_string(k) +
                              " is not a [re, im] pair of numbers");
    }
    m(static_cast<Index>(k) / cols, static_cast<Index>(k) % cols) =
        Complex(e[0].get<double>(), e[1].get<double>());
  }
  require_finite(m, std::string(src.origin) + (context.empty() ? "" : ": " + context.substr(0, context.size() - 2)));
  return m;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(path.string() + ": write failed");
}

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::move(data);
  return j;
}

std::string format_matrix_file(const Matrix& m) { return to_text(matrix_to_json(m)); }

Matrix parse_matrix_file(std::string_view text, std::string_view origin) {
  const Source src{text, origin};
  return matrix_from_json(src, parse_json(src), 0, "");
}

Matrix generate_fiber(std::string_view kind, Index n) {
  if (kind == "dirichlet-derivative") {
    return derivative_operator(GridDiscretization::interior(n), BoundaryCondition::dirichlet);
  }
  if (kind == "periodic-derivative") {
    return derivative_operator(GridDiscretization::periodic(n), BoundaryCondition::periodic);
  }
  if (kind == "dirichlet-laplacian") {
    return laplacian(GridDiscretization::interior(n), BoundaryCondition::dirichlet);
  }
  if (kind == "periodic-laplacian") {
    return laplacian(GridDiscretization::periodic(n), BoundaryCondition::periodic);
  }
  throw InvariantViolation("unknown fiber generator \"" + std::string(kind) + "\"");
}

OperatorFamily parse_family_file(std::string_view text, std::string_view origin) {
  const Source src{text, origin};
  const Json root = parse_json(src);
  if (!root.is_object()) src.fail(1, "family file must be a JSON object");

  const auto numbers = [&](std::string_view key) {
    const Json& arr = root.at(key);
    if (!arr.is_array() || arr.empty()) {
      src.fail(line_of_key(text, key), "\"" + std::string(key) + "\" must be a nonempty array");
    }
    std::vector<double> out;
    for (const Json& x : arr) {
      if (!x.is_number()) src.fail(line_of_key(text, key), "\"" + std::string(key) + "\" holds a non-number");
      out.push_back(x.get<double>());
    }
    return out;
  };

  if (!root.contains("grid")) src.fail(0, "missing field \"grid\"");
  if (!root.contains("fibers") || !root["fibers"].is_array()) {
    src.fail(line_of_key(text, "fibers"), "\"fibers\" must be an array");
  }
  std::vector<double> nodes = numbers("grid");

  std::vector<Matrix> fibers;
  std::size_t matrices = 0;
  std::size_t generators = 0;
  const Json& list = root["fibers"];
  for (std::size_t k = 0; k < list.size(); ++k) {
    const Json& f = list[k];
    const std::string context = "fibers[" + std::to_string(k) + "]: ";
    if (f.is_object() && f.contains("kind")) {
      const int line = line_of_key(text, "kind", generators);
      if (!f["kind"].is_string()) src.fail(line, context + "\"kind\" must be a string");
      const std::string kind = f["kind"].get<std::string>();
      if (kind != "dirichlet-derivative" && kind != "periodic-derivative" &&
          kind != "dirichlet-laplacian" && kind != "periodic-laplacian") {
        src.fail(line, context + "unknown generator \"" + kind + "\"");
      }
      const Index n = positive_integer(src, f, "n", generators, context);
      fibers.push_back(generate_fiber(kind, n));
      ++generators;
    } else {
      fibers.push_back(matrix_from_json(src, f, matrices, context));
      ++matrices;
    }
  }

  if (fibers.size() != nodes.size()) {
    throw InvariantViolation(std::string(origin) + ": " + std::to_string(fibers.size()) +
                             " fibers for " + std::to_string(nodes.size()) + " grid nodes");
  }
  if (root.contains("weights")) {
    std::vector<double> weights = numbers("weights");
    if (weights.size() != nodes.size()) {
      throw InvariantViolation(std::string(origin) + ": weights and grid differ in length");
    }
    return OperatorFamily(ParameterGrid(std::move(nodes), std::move(weights)), std::move(fibers));
  }
  return OperatorFamily(ParameterGrid::trapezoidal(std::move(nodes)), std::move(fibers));
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return std::string("fnv1a64:") + buf;
}

}  // namespace charmat::cli
