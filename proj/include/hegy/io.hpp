#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "hegy/series.hpp"
#include "hegy/simulation.hpp"
#include "hegy/test_report.hpp"

namespace hegy {

/// Reads a quarterly series from CSV. Accepted layouts: one value per
/// row with an optional `value` header, or `period,value` rows where the
/// period looks like 2001Q3; in the latter case the start season comes
/// from the first period. Parse failures name the offending line.
QuarterlySeries ingest_csv(const std::string& path, int default_start_season = 1);

nlohmann::json report_to_json(const TestReport& report);

struct SimulationRow {
  int table = 0;
  std::string root;
  bool nuisance = false;
  std::string noise;
  std::string statistic;  ///< decision statistic, e.g. "t1", "F34"
  int block_size = 0;
  std::string hypothesis;
  std::string method;
  int cycles = 0;
  int replications = 0;
  int bootstrap_replicates = 0;
  double level = 0.05;
  std::uint64_t seed = 0;
  double rate = 0.0;
  double standard_error = 0.0;
};

std::string simulation_csv_header();
std::string simulation_csv_row(const SimulationRow& row);
nlohmann::json simulation_row_to_json(const SimulationRow& row);

std::string power_curve_csv(const std::vector<PowerPoint>& points);

}  // namespace hegy
