#pragma once

#include <string_view>

namespace charmat::cli {

enum class LogLevel { error = 0, info = 1, debug = 2 };

// Read from CHARMAT_LOG once; unknown or missing values mean error.
LogLevel log_level();
void log(LogLevel level, std::string_view message);

}  // namespace charmat::cli
