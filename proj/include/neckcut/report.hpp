#pragma once

// Sweepout reports: one row per slice parameter, a summary against an area budget,
// and deterministic JSON/CSV serialization.

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace neckcut {

struct SweepoutRow {
  double t = 0.0;
  double area = 0.0;
  std::string phase;
  std::vector<std::pair<std::string, double>> components;
};

struct SweepoutSummary {
  double sup_area = 0.0;
  double argsup_t = 0.0;
  double budget = std::numeric_limits<double>::quiet_NaN();  ///< NaN when no budget applies
  double margin = std::numeric_limits<double>::quiet_NaN();
  bool pass = true;
};

struct SweepoutReport {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<SweepoutRow> rows;
  SweepoutSummary summary;
  std::vector<std::string> notes;
  /// Extra named scalars (fitted constants, thresholds).
  std::vector<std::pair<std::string, double>> metrics;

  /// Sorts rows by t and recomputes sup and margin. A slice equal to the budget fails.
  void finalize(double budget = std::numeric_limits<double>::quiet_NaN());
  double metric(const std::string& name) const;
};

/// FNV-1a over the compact dump of the config; stable across runs.
std::string config_hash(const nlohmann::ordered_json& config);

nlohmann::ordered_json to_json(const SweepoutReport& report);
std::string to_csv(const SweepoutReport& report);

/// Doubles in reports: finite values as numbers, non-finite as null.
nlohmann::ordered_json number_or_null(double v);

/// "%.17g" formatting used for CSV output.
std::string format_double(double v);

}  // namespace neckcut
