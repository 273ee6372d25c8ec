#include "cli/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace charmat::cli {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("CHARMAT_LOG");
    const std::string value = env ? env : "";
    if (value == "debug") return LogLevel::debug;
    if (value == "info") return LogLevel::info;
    return LogLevel::error;
  }();
  return level;
}

void log(LogLevel level, std::string_view message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  static constexpr const char* kNames[] = {"error", "info", "debug"};
  std::cerr << "charmat[" << kNames[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace charmat::cli
