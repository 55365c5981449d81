#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "hegy/errors.hpp"
#include "hegy/io.hpp"
#include "hegy/simulation.hpp"

namespace {

using hegy::Hypothesis;
using hegy::Method;
using hegy::NoiseKind;
using hegy::TargetRoot;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

int resolve_thread_flag(int flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("HEGY_THREADS")) {
    try {
      return std::stoi(env);
    } catch (...) {
      throw hegy::ConfigurationError(std::string("HEGY_THREADS is not an integer: ") + env);
    }
  }
  return 0;  // auto
}

NoiseKind parse_noise(const std::string& name) {
  if (name == "iid") return NoiseKind::Iid;
  if (name == "heter") return NoiseKind::Heter;
  if (name == "ma_pos") return NoiseKind::MaPos;
  if (name == "ma_neg") return NoiseKind::MaNeg;
  if (name == "ar") return NoiseKind::Ar;
  if (name == "period") return NoiseKind::Period;
  throw hegy::ConfigurationError("unknown noise type: " + name +
                                 " (expected iid, heter, ma_pos, ma_neg, ar, period)");
}

TargetRoot parse_root(const std::string& name) {
  if (name == "plus1") return TargetRoot::Plus1;
  if (name == "minus1") return TargetRoot::Minus1;
  if (name == "complex") return TargetRoot::Complex;
  throw hegy::ConfigurationError("unknown root: " + name + " (expected plus1, minus1, complex)");
}

hegy::PValueRule parse_pvalue_rule(const std::string& name) {
  if (name == "smoothed") return hegy::PValueRule::Smoothed;
  if (name == "paper-count" || name == "paper_count") return hegy::PValueRule::PaperCount;
  throw hegy::ConfigurationError("unknown p-value rule: " + name);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hegy::ConfigurationError("cannot write " + path);
  out << content;
}

struct TestOptions {
  std::string input;
  std::string hypothesis = "1";
  std::string method = "iid-aug";
  int B = 500;
  double level = 0.05;
  std::uint64_t seed = 1;
  int k_max = 4;
  bool no_reduced = false;
  int block_size = 4;
  std::string statistic = "t";
  std::string taper = "trapezoid";
  double ramp_fraction = 0.1;
  std::string pvalue_rule = "smoothed";
  int start_season = 1;
  int threads = 0;
  std::string output;
};

int run_test_command(const TestOptions& opt, bool threads_given) {
  const Hypothesis h = Hypothesis::from_string(opt.hypothesis);
  hegy::QuarterlySeries y = hegy::ingest_csv(opt.input, opt.start_season);
  if (y.length() % 4 != 0)
    throw hegy::LengthNotMultipleOfFour("test input must have length divisible by 4, got " +
                                        std::to_string(y.length()));
  const int threads = resolve_thread_flag(opt.threads, threads_given);
  hegy::TestReport report;
  if (opt.method == "iid-aug") {
    hegy::IidBootConfig cfg;
    cfg.B = opt.B;
    cfg.k_max = opt.k_max;
    cfg.level = opt.level;
    cfg.seed = opt.seed;
    cfg.use_reduced_recursion_for_single_roots = !opt.no_reduced;
    cfg.pvalue_rule = parse_pvalue_rule(opt.pvalue_rule);
    cfg.threads = threads;
    report = hegy::iid_bootstrap_test(y, h, cfg);
  } else if (opt.method == "block-unaug") {
    hegy::BlockBootConfig cfg;
    cfg.B = opt.B;
    cfg.b = opt.block_size;
    cfg.level = opt.level;
    cfg.seed = opt.seed;
    if (opt.statistic == "t") {
      cfg.statistic_choice = hegy::StatisticKind::T;
    } else if (opt.statistic == "pi") {
      cfg.statistic_choice = hegy::StatisticKind::Pi;
    } else {
      throw hegy::ConfigurationError("unknown statistic: " + opt.statistic);
    }
    if (opt.taper == "none") {
      cfg.taper.kind = hegy::TaperSpec::Kind::None;
    } else if (opt.taper == "trapezoid") {
      cfg.taper.kind = hegy::TaperSpec::Kind::Trapezoid;
      cfg.taper.ramp_fraction = opt.ramp_fraction;
    } else {
      throw hegy::ConfigurationError("unknown taper: " + opt.taper);
    }
    cfg.pvalue_rule = parse_pvalue_rule(opt.pvalue_rule);
    cfg.threads = threads;
    report = hegy::block_bootstrap_test(y, h, cfg);
  } else {
    throw hegy::ConfigurationError("unknown method: " + opt.method);
  }
  for (const auto& w : report.diagnostics.warnings) std::cerr << "hegy: warning: " << w << "\n";
  write_output(opt.output, hegy::report_to_json(report).dump(2) + "\n");
  return kExitOk;
}

struct TableCell {
  bool nuisance;
  NoiseKind noise;
  std::string noise_name;
  std::string stat_token;  ///< e.g. t4, pi8, F12
};

struct SimulateOptions {
  int table = 0;
  std::string cell;
  std::optional<bool> nuisance_filter;
  std::string noise_filter;
  std::string stat_filter;
  bool full = false;
  int cycles = 120;
  int N = 300;
  int B = 250;
  double level = 0.05;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string output;
  std::string format = "csv";
};

struct StatToken {
  hegy::StatisticKind kind;
  int block_size;
};

StatToken parse_stat_token(const std::string& token, int table) {
  std::string prefix;
  std::size_t i = 0;
  while (i < token.size() && !std::isdigit(static_cast<unsigned char>(token[i]))) ++i;
  prefix = token.substr(0, i);
  const std::string digits = token.substr(i);
  if (digits.empty()) throw hegy::ConfigurationError("statistic token needs a block size: " + token);
  StatToken out{};
  out.block_size = std::stoi(digits);
  if (prefix == "t") out.kind = hegy::StatisticKind::T;
  else if (prefix == "pi") out.kind = hegy::StatisticKind::Pi;
  else if (prefix == "F" || prefix == "f") out.kind = hegy::StatisticKind::F;
  else throw hegy::ConfigurationError("unknown statistic token: " + token);
  if (table == 5 && out.kind != hegy::StatisticKind::F)
    throw hegy::ConfigurationError("table 5 uses F statistics");
  if (table != 5 && out.kind == hegy::StatisticKind::F)
    throw hegy::ConfigurationError("tables 3 and 4 use t or pi statistics");
  return out;
}

const std::vector<std::string> kNoiseNames = {"iid", "heter", "ma_pos", "ma_neg", "ar", "period"};

TargetRoot table_root(int table) {
  if (table == 3) return TargetRoot::Plus1;
  if (table == 4) return TargetRoot::Minus1;
  if (table == 5) return TargetRoot::Complex;
  throw hegy::ConfigurationError("table must be 3, 4, or 5");
}

std::string root_name(TargetRoot root) {
  switch (root) {
    case TargetRoot::Plus1: return "plus1";
    case TargetRoot::Minus1: return "minus1";
    default: return "complex";
  }
}

Hypothesis table_hypothesis(int table) {
  if (table == 3) return Hypothesis::from_string("1");
  if (table == 4) return Hypothesis::from_string("2");
  return Hypothesis::from_string("34");
}

hegy::SimulationRow run_table_cell(int table, bool nuisance, const std::string& noise_name,
                                   const StatToken& stat, const SimulateOptions& opt,
                                   int threads) {
  hegy::DgpSpec dgp;
  dgp.target_root = table_root(table);
  dgp.nuisance = nuisance;
  dgp.rho = 0.0;  // table cells are empirical sizes
  dgp.noise.kind = parse_noise(noise_name);
  dgp.cycles = opt.cycles;

  hegy::TestSpec test;
  test.method = Method::BlockUnaug;
  test.hypothesis = table_hypothesis(table);
  test.block.B = opt.B;
  test.block.b = stat.block_size;
  test.block.level = opt.level;
  test.block.statistic_choice =
      stat.kind == hegy::StatisticKind::F ? hegy::StatisticKind::T : stat.kind;

  // FNV-1a over the cell label keeps seeds platform-independent
  const std::string cell_label = std::to_string(table) + (nuisance ? "T" : "F") + noise_name +
                                 std::to_string(stat.block_size) +
                                 std::to_string(static_cast<int>(stat.kind));
  std::uint64_t label_hash = 1469598103934665603ULL;
  for (unsigned char c : cell_label) {
    label_hash ^= c;
    label_hash *= 1099511628211ULL;
  }
  const std::uint64_t cell_seed = hegy::splitmix64(hegy::splitmix64(opt.seed) ^ label_hash);
  const hegy::ExperimentResult result =
      hegy::empirical_rejection(dgp, test, opt.N, opt.level, cell_seed, threads);

  hegy::SimulationRow row;
  row.table = table;
  row.root = root_name(dgp.target_root);
  row.nuisance = nuisance;
  row.noise = noise_name;
  row.statistic = hegy::statistic_name(test.hypothesis, stat.kind == hegy::StatisticKind::F
                                                            ? hegy::StatisticKind::F
                                                            : stat.kind);
  row.block_size = stat.block_size;
  row.hypothesis = test.hypothesis.name();
  row.method = "block-unaug";
  row.cycles = opt.cycles;
  row.replications = opt.N;
  row.bootstrap_replicates = opt.B;
  row.level = opt.level;
  row.seed = cell_seed;
  row.rate = result.rejection_rate;
  row.standard_error = result.standard_error;
  std::cerr << "hegy: table " << table << " " << (nuisance ? "True" : "False") << "," << noise_name
            << "," << row.statistic << "(" << stat.block_size << ") rate=" << result.rejection_rate
            << " se=" << result.standard_error << " wall=" << result.wall_seconds << "s\n";
  return row;
}

int run_simulate_command(SimulateOptions& opt, bool threads_given) {
  const int threads = resolve_thread_flag(opt.threads, threads_given);
  std::vector<int> tables;
  if (opt.full) {
    if (!opt.cell.empty() || !opt.stat_filter.empty())
      throw hegy::ConfigurationError(
          "--full runs every cell; --cell/--stat filters only apply with --table");
    tables = {3, 4, 5};
  } else {
    if (opt.table == 0)
      throw hegy::ConfigurationError("simulate needs --table (or --full)");
    tables = {opt.table};
  }

  if (!opt.cell.empty()) {
    // "False,iid,t4" -> nuisance, noise, statistic token
    std::vector<std::string> parts;
    std::string token;
    for (char c : opt.cell) {
      if (c == ',') {
        parts.push_back(token);
        token.clear();
      } else {
        token += c;
      }
    }
    parts.push_back(token);
    if (parts.size() != 3)
      throw hegy::ConfigurationError("--cell must look like \"False,iid,t4\"");
    std::string flag = parts[0];
    for (auto& c : flag) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (flag != "true" && flag != "false")
      throw hegy::ConfigurationError("--cell nuisance field must be True or False");
    opt.nuisance_filter = flag == "true";
    opt.noise_filter = parts[1];
    opt.stat_filter = parts[2];
  }

  std::vector<hegy::SimulationRow> rows;
  for (int table : tables) {
    std::vector<std::string> stat_tokens;
    if (!opt.stat_filter.empty()) {
      stat_tokens = {opt.stat_filter};
    } else if (table == 5) {
      stat_tokens = {"F4", "F8", "F12"};
    } else {
      stat_tokens = {"pi4", "pi8", "pi12", "t4", "t8", "t12"};
    }
    for (bool nuisance : {false, true}) {
      if (opt.nuisance_filter && *opt.nuisance_filter != nuisance) continue;
      for (const auto& noise : kNoiseNames) {
        if (!opt.noise_filter.empty() && opt.noise_filter != noise) continue;
        parse_noise(noise);
        for (const auto& token : stat_tokens)
          rows.push_back(
              run_table_cell(table, nuisance, noise, parse_stat_token(token, table), opt, threads));
      }
    }
  }
  if (rows.empty()) throw hegy::ConfigurationError("no table cells match the given filters");

  if (opt.format == "csv") {
    std::string out = hegy::simulation_csv_header() + "\n";
    for (const auto& row : rows) out += hegy::simulation_csv_row(row) + "\n";
    write_output(opt.output, out);
  } else if (opt.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) j.push_back(hegy::simulation_row_to_json(row));
    write_output(opt.output, j.dump(2) + "\n");
  } else {
    throw hegy::ConfigurationError("unknown format: " + opt.format);
  }
  return kExitOk;
}

struct PowerOptions {
  std::string method = "iid-aug";
  std::string root;
  bool nuisance = false;
  std::string noise;
  int cycles = 120;
  int N = 600;
  int B = 500;
  double level = 0.05;
  std::uint64_t seed = 0;
  std::vector<double> rho;
  int k_max = 4;
  int block_size = 4;
  std::string statistic = "t";
  int threads = 0;
  std::string output;
};

int run_power_command(const PowerOptions& opt, bool threads_given) {
  const int threads = resolve_thread_flag(opt.threads, threads_given);
  hegy::DgpSpec dgp;
  dgp.target_root = parse_root(opt.root);
  dgp.nuisance = opt.nuisance;
  dgp.noise.kind = parse_noise(opt.noise);
  dgp.cycles = opt.cycles;

  hegy::TestSpec test;
  if (opt.method == "iid-aug") {
    test.method = Method::IidAug;
  } else if (opt.method == "block-unaug") {
    test.method = Method::BlockUnaug;
  } else {
    throw hegy::ConfigurationError("unknown method: " + opt.method);
  }
  switch (dgp.target_root) {
    case TargetRoot::Plus1: test.hypothesis = Hypothesis::from_string("1"); break;
    case TargetRoot::Minus1: test.hypothesis = Hypothesis::from_string("2"); break;
    case TargetRoot::Complex: test.hypothesis = Hypothesis::from_string("34"); break;
  }
  test.iid.B = opt.B;
  test.iid.k_max = opt.k_max;
  test.block.B = opt.B;
  test.block.b = opt.block_size;
  test.block.statistic_choice =
      opt.statistic == "pi" ? hegy::StatisticKind::Pi : hegy::StatisticKind::T;

  const std::vector<double> grid = opt.rho.empty() ? hegy::default_rho_grid() : opt.rho;
  const auto points = hegy::power_curve(dgp, grid, test, opt.N, opt.level, opt.seed, threads);
  for (const auto& p : points)
    std::cerr << "hegy: rho=" << p.rho << " rate=" << p.result.rejection_rate
              << " se=" << p.result.standard_error << " wall=" << p.result.wall_seconds << "s\n";
  write_output(opt.output, hegy::power_curve_csv(points));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bootstrap HEGY seasonal unit-root tests for quarterly series"};
  app.require_subcommand(1);

  TestOptions test_opt;
  auto* test_cmd = app.add_subcommand("test", "Run a bootstrap HEGY test on a CSV series");
  test_cmd->add_option("--input", test_opt.input, "CSV input file")->required();
  test_cmd->add_option("--hypothesis", test_opt.hypothesis,
                       "Null hypothesis: 1, 2, 12, 34, 134, 234, or 1234")
      ->required();
  test_cmd->add_option("--method", test_opt.method, "iid-aug or block-unaug");
  test_cmd->add_option("--B", test_opt.B, "Bootstrap replicates");
  test_cmd->add_option("--level", test_opt.level, "Nominal size");
  test_cmd->add_option("--seed", test_opt.seed, "RNG seed");
  test_cmd->add_option("--k-max", test_opt.k_max, "Lag cap for the augmented regression");
  test_cmd->add_flag("--no-reduced-recursion", test_opt.no_reduced,
                     "Use the full recursion for single-root hypotheses");
  test_cmd->add_option("--b", test_opt.block_size, "Block size (block-unaug)");
  test_cmd->add_option("--statistic", test_opt.statistic,
                       "t or pi for single-root block-unaug tests");
  test_cmd->add_option("--taper", test_opt.taper, "trapezoid or none (block-unaug)");
  test_cmd->add_option("--ramp-fraction", test_opt.ramp_fraction, "Trapezoid ramp fraction");
  test_cmd->add_option("--pvalue-rule", test_opt.pvalue_rule, "smoothed or paper-count");
  test_cmd->add_option("--start-season", test_opt.start_season,
                       "Season of the first observation when the CSV has no period column");
  auto* test_threads = test_cmd->add_option("--threads", test_opt.threads, "Worker threads");
  test_cmd->add_option("--output", test_opt.output, "Write the JSON report here (default stdout)");

  SimulateOptions sim_opt;
  auto* sim_cmd = app.add_subcommand("simulate", "Reproduce empirical-size table cells");
  sim_cmd->add_option("--table", sim_opt.table, "Table number: 3, 4, or 5");
  sim_cmd->add_option("--cell", sim_opt.cell, "Cell spec, e.g. \"False,iid,t4\"");
  sim_cmd->add_option("--nuisance", sim_opt.nuisance_filter, "Filter rows by nuisance root");
  auto* row_opt = sim_cmd->add_option("--noise,--row", sim_opt.noise_filter, "Filter rows by noise type");
  (void)row_opt;
  sim_cmd->add_option("--stat", sim_opt.stat_filter, "Statistic token, e.g. t4 or F8");
  sim_cmd->add_flag("--full", sim_opt.full, "Run every cell of tables 3-5");
  sim_cmd->add_option("--T", sim_opt.cycles, "Cycles per series");
  sim_cmd->add_option("--N", sim_opt.N, "Monte Carlo replications");
  sim_cmd->add_option("--B", sim_opt.B, "Bootstrap replicates");
  sim_cmd->add_option("--level", sim_opt.level, "Nominal size");
  sim_cmd->add_option("--seed", sim_opt.seed, "RNG seed")->required();
  auto* sim_threads = sim_cmd->add_option("--threads", sim_opt.threads, "Worker threads");
  sim_cmd->add_option("--output", sim_opt.output, "Output file (default stdout)");
  sim_cmd->add_option("--format", sim_opt.format, "csv or json");

  PowerOptions power_opt;
  auto* power_cmd = app.add_subcommand("power-curve", "Rejection rate over the rho grid");
  power_cmd->add_option("--method", power_opt.method, "iid-aug or block-unaug");
  power_cmd->add_option("--root", power_opt.root, "plus1, minus1, or complex")->required();
  power_cmd->add_option("--nuisance", power_opt.nuisance, "Include all nuisance roots");
  power_cmd->add_option("--noise", power_opt.noise, "Noise type")->required();
  power_cmd->add_option("--T", power_opt.cycles, "Cycles per series");
  power_cmd->add_option("--N", power_opt.N, "Monte Carlo replications");
  power_cmd->add_option("--B", power_opt.B, "Bootstrap replicates");
  power_cmd->add_option("--level", power_opt.level, "Nominal size");
  power_cmd->add_option("--seed", power_opt.seed, "RNG seed")->required();
  power_cmd->add_option("--rho", power_opt.rho, "Grid points (repeatable; default paper grid)");
  power_cmd->add_option("--k-max", power_opt.k_max, "Lag cap (iid-aug)");
  power_cmd->add_option("--b", power_opt.block_size, "Block size (block-unaug)");
  power_cmd->add_option("--statistic", power_opt.statistic, "t or pi (block-unaug single roots)");
  auto* power_threads = power_cmd->add_option("--threads", power_opt.threads, "Worker threads");
  power_cmd->add_option("--output", power_opt.output, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
    if (test_cmd->parsed()) return run_test_command(test_opt, test_threads->count() > 0);
    if (sim_cmd->parsed()) return run_simulate_command(sim_opt, sim_threads->count() > 0);
    if (power_cmd->parsed()) return run_power_command(power_opt, power_threads->count() > 0);
    throw hegy::ConfigurationError("no subcommand given");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "hegy: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const hegy::ConfigurationError& e) {
    std::cerr << "hegy: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const hegy::DataError& e) {
    std::cerr << "hegy: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "hegy: error: " << e.what() << "\n";
    return kExitData;
  }
}
