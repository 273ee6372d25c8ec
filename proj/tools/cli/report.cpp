#include "cli/report.hpp"

#include <algorithm>
#include <cmath>

namespace charmat::cli {

bool Residual::pass() const { return std::isfinite(value) && value <= tolerance; }
bool Margin::pass() const { return std::isfinite(value) && value >= threshold; }

void Report::residual(std::string label, double value, double tolerance) {
  residuals.push_back({std::move(label), value, tolerance});
}

void Report::margin(std::string label, double value, double threshold) {
  margins.push_back({std::move(label), value, threshold});
}

void Report::check(std::string label, bool ok) { checks.emplace_back(std::move(label), ok); }

bool Report::pass() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.pass(); }) &&
         std::all_of(margins.begin(), margins.end(), [](const Margin& m) { return m.pass(); }) &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  Json res = Json::object();
  Json tol = Json::object();
  for (const Residual& r : residuals) {
    res[r.label] = r.value;
    tol[r.label] = r.tolerance;
  }
  j["residuals"] = std::move(res);
  j["tolerances"] = std::move(tol);
  Json mar = Json::object();
  for (const Margin& m : margins) mar[m.label] = {{"value", m.value}, {"threshold", m.threshold}};
  j["margins"] = std::move(mar);
  Json chk = Json::object();
  for (const auto& [label, ok] : checks) chk[label] = ok;
  j["checks"] = std::move(chk);
  j["pass"] = pass();
  j["wall_time_ms"] = wall_time_ms;
  j["details"] = details;
  return j;
}

std::string Report::to_csv() const {
  std::string out = "kind,label,value,bound,pass\n";
  out += "command," + command + ",,,\n";
  for (const Residual& r : residuals) {
    out += "residual," + r.label + "," + format_double(r.value) + "," + format_double(r.tolerance) +
           "," + (r.pass() ? "true" : "false") + "\n";
  }
  for (const Margin& m : margins) {
    out += "margin," + m.label + "," + format_double(m.value) + "," + format_double(m.threshold) +
           "," + (m.pass() ? "true" : "false") + "\n";
  }
  for (const auto& [label, ok] : checks) {
    out += "check," + label + ",,," + (ok ? "true" : "false") + "\n";
  }
  out += std::string("pass,,,,") + (pass() ? "true" : "false") + "\n";
  out += "wall_time_ms,," + format_double(wall_time_ms) + ",,\n";
  return out;
}

}  // namespace charmat::cli
