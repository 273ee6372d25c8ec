#pragma once

#include <string>
#include <vector>

#include "cli/json_text.hpp"

namespace charmat::cli {

// A residual passes when it is finite and <= tolerance; a margin passes when
// value >= threshold (lower bounds such as a smallest singular value); a check
// is a plain boolean outcome.
struct Residual {
  std::string label;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass() const;
};

struct Margin {
  std::string label;
  double value = 0.0;
  double threshold = 0.0;
  bool pass() const;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  std::vector<Residual> residuals;
  std::vector<Margin> margins;
  std::vector<std::pair<std::string, bool>> checks;
  Json details = Json::object();
  double wall_time_ms = 0.0;

  void residual(std::string label, double value, double tolerance);
  void margin(std::string label, double value, double threshold);
  void check(std::string label, bool ok);

  bool pass() const;
  Json to_json() const;
  // kind,label,value,bound,pass rows after command/pass/wall_time_ms rows.
  std::string to_csv() const;
};

}  // namespace charmat::cli
