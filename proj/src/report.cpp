#include "neckcut/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace neckcut {

void SweepoutReport::finalize(double budget) {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepoutRow& a, const SweepoutRow& b) { return a.t < b.t; });
  summary = SweepoutSummary{};
  summary.budget = budget;
  if (!rows.empty()) {
    auto it = std::max_element(rows.begin(), rows.end(),
                               [](const SweepoutRow& a, const SweepoutRow& b) { return a.area < b.area; });
    summary.sup_area = it->area;
    summary.argsup_t = it->t;
  }
  if (std::isfinite(budget)) {
    summary.margin = budget - summary.sup_area;
    summary.pass = summary.margin > 0.0;
  }
}

double SweepoutReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw std::out_of_range("SweepoutReport: no metric " + name);
}

std::string config_hash(const nlohmann::ordered_json& config) {
  const std::string text = config.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json to_json(const SweepoutReport& report) {
  nlohmann::ordered_json j;
  j["meta"] = {{"command", report.command}, {"config_hash", config_hash(report.config)}, {"config", report.config}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["t"] = number_or_null(r.t);
    row["area"] = number_or_null(r.area);
    if (!r.phase.empty()) row["phase"] = r.phase;
    auto comps = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.components) comps[k] = number_or_null(v);
    row["components"] = comps;
    rows.push_back(row);
  }
  j["rows"] = rows;
  nlohmann::ordered_json s;
  s["sup_area"] = number_or_null(report.summary.sup_area);
  s["argsup_t"] = number_or_null(report.summary.argsup_t);
  s["budget"] = number_or_null(report.summary.budget);
  s["margin"] = number_or_null(report.summary.margin);
  s["pass"] = report.summary.pass;
  for (const auto& [k, v] : report.metrics) s[k] = number_or_null(v);
  j["summary"] = s;
  if (!report.notes.empty()) j["notes"] = report.notes;
  return j;
}

std::string to_csv(const SweepoutReport& report) {
  std::vector<std::string> keys;
  for (const auto& r : report.rows)
    for (const auto& [k, v] : r.components)
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  std::ostringstream out;
  out << "t,area,phase";
  for (const auto& k : keys) out << ',' << k;
  out << '\n';
  for (const auto& r : report.rows) {
    out << format_double(r.t) << ',' << format_double(r.area) << ',' << r.phase;
    for (const auto& k : keys) {
      out << ',';
      for (const auto& [name, v] : r.components)
        if (name == k) out << format_double(v);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace neckcut
