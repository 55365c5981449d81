#include "hegy/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "hegy/errors.hpp"

namespace hegy {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_value(const std::string& field, long line) {
  const std::string text = trim(field);
  if (text.empty()) throw MissingValue("line " + std::to_string(line) + ": empty value");
  try {
    std::size_t consumed = 0;
    const double v = std::stod(text, &consumed);
    if (consumed != text.size())
      throw ParseError("line " + std::to_string(line) + ": not a number: '" + text + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("line " + std::to_string(line) + ": value out of range: '" + text + "'");
  }
}

/// 2001Q3-style periods; returns the quarter.
int parse_period_quarter(const std::string& field, long line) {
  const std::string text = trim(field);
  const std::size_t q = text.find_first_of("Qq");
  if (q == std::string::npos || q == 0 || q + 2 != text.size())
    throw ParseError("line " + std::to_string(line) + ": period must look like 2001Q3, got '" +
                     text + "'");
  for (std::size_t i = 0; i < q; ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("line " + std::to_string(line) + ": bad year in period '" + text + "'");
  const char digit = text[q + 1];
  if (digit < '1' || digit > '4')
    throw ParseError("line " + std::to_string(line) + ": quarter must be 1..4 in '" + text + "'");
  return digit - '0';
}

}  // namespace

QuarterlySeries ingest_csv(const std::string& path, int default_start_season) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<double> values;
  int start_season = default_start_season;
  bool saw_period = false;
  bool first_content = true;
  std::string raw;
  long line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const std::size_t comma = text.find(',');
    if (first_content) {
      first_content = false;
      const std::string head = lower(text);
      if (head == "value" || head == "period,value") continue;  // header row
    }
    if (comma == std::string::npos) {
      values.push_back(parse_value(text, line));
    } else {
      const std::string period = text.substr(0, comma);
      const std::string value = text.substr(comma + 1);
      if (value.find(',') != std::string::npos)
        throw ParseError("line " + std::to_string(line) + ": expected at most two columns");
      const int quarter = parse_period_quarter(period, line);
      if (!saw_period) {
        start_season = quarter;
        saw_period = true;
      }
      values.push_back(parse_value(value, line));
    }
  }
  if (values.empty()) throw ParseError(path + ": no data rows");
  return QuarterlySeries(std::move(values), start_season);
}

nlohmann::json report_to_json(const TestReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["method"] = report.method;
  j["hypothesis"] = report.hypothesis.name();
  j["statistic"] = report.statistic;
  j["tail"] = report.tail == Tail::Left ? "left" : "right";
  j["observed_statistic"] = report.observed_statistic;
  j["p_value"] = report.p_value;
  j["reject"] = report.reject;
  j["level"] = report.level;
  j["pvalue_rule"] = report.pvalue_rule == PValueRule::Smoothed ? "smoothed" : "paper_count";
  j["B"] = static_cast<int>(report.bootstrap_statistics.size());
  j["seed"] = report.seed;
  j["config"] = report.config;
  nlohmann::json diag;
  diag["residual_counts"] = report.diagnostics.residual_counts;
  for (int s = 0; s < 4; ++s) {
    const std::string key = "season" + std::to_string(s + 1);
    diag["vif_removed"][key] = report.diagnostics.vif_removed[static_cast<std::size_t>(s)];
    diag["lag_removed"][key] = report.diagnostics.lag_removed[static_cast<std::size_t>(s)];
  }
  diag["observed_lag_removed"] = report.diagnostics.observed_lag_removed;
  diag["truncation_events"] = report.diagnostics.truncation_events;
  diag["warnings"] = report.diagnostics.warnings;
  j["diagnostics"] = diag;
  j["bootstrap_statistics"] = report.bootstrap_statistics;
  return j;
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string simulation_csv_header() {
  return "table,root,nuisance,noise,statistic,block_size,hypothesis,method,T,N,B,level,seed,rate,"
         "se";
}

std::string simulation_csv_row(const SimulationRow& r) {
  std::string out;
  out += std::to_string(r.table) + "," + r.root + ",";
  out += (r.nuisance ? "True" : "False");
  out += "," + r.noise + "," + r.statistic + "," + std::to_string(r.block_size) + ",";
  out += r.hypothesis + "," + r.method + "," + std::to_string(r.cycles) + ",";
  out += std::to_string(r.replications) + "," + std::to_string(r.bootstrap_replicates) + ",";
  out += format_number(r.level) + "," + std::to_string(r.seed) + ",";
  out += format_number(r.rate) + "," + format_number(r.standard_error);
  return out;
}

nlohmann::json simulation_row_to_json(const SimulationRow& r) {
  nlohmann::json j;
  j["table"] = r.table;
  j["root"] = r.root;
  j["nuisance"] = r.nuisance;
  j["noise"] = r.noise;
  j["statistic"] = r.statistic;
  j["block_size"] = r.block_size;
  j["hypothesis"] = r.hypothesis;
  j["method"] = r.method;
  j["T"] = r.cycles;
  j["N"] = r.replications;
  j["B"] = r.bootstrap_replicates;
  j["level"] = r.level;
  j["seed"] = r.seed;
  j["rate"] = r.rate;
  j["se"] = r.standard_error;
  return j;
}

std::string power_curve_csv(const std::vector<PowerPoint>& points) {
  std::string out = "rho,rate,se\n";
  for (const auto& p : points) {
    out += format_number(p.rho) + "," + format_number(p.result.rejection_rate) + "," +
           format_number(p.result.standard_error) + "\n";
  }
  return out;
}

}  // namespace hegy
