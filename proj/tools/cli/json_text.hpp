#pragma once

#include <string>

#include <json.hpp>

namespace charmat::cli {

using Json = nlohmann::ordered_json;

// %.17g, always with a decimal point or exponent so that -0.0 and integral
// values come back as binary64 floats. Non-finite values have no JSON
// spelling and are written as null.
std::string format_double(double x);

// Pretty printer using format_double for every float. Arrays holding only
// scalars stay on one line, so a MatrixFile lists one [re, im] per line.
std::string to_text(const Json& j);

}  // namespace charmat::cli
