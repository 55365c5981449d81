#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "hegy/bootstrap_iid.hpp"
#include "hegy/errors.hpp"
#include "hegy/io.hpp"

using namespace hegy;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(std::string("/tmp/hegy_io_") + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

QuarterlySeries walk_series(int cycles, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0);
  std::vector<double> y(static_cast<std::size_t>(4 * cycles));
  for (std::size_t t = 0; t < y.size(); ++t)
    y[t] = (t >= 4 ? y[t - 4] : 0.0) + standard_normal(rng);
  return QuarterlySeries(std::move(y), 1);
}

}  // namespace

TEST_CASE("csv ingestion") {
  SUBCASE("header plus one value per row") {
    TempFile f("plain.csv", "value\n1.0\n2.0\n3.0\n4.0\n");
    const auto y = ingest_csv(f.path);
    CHECK(y.length() == 4);
    CHECK(y.start_season() == 1);
    CHECK(y.at(3) == 3.0);
  }
  SUBCASE("no header works too") {
    TempFile f("bare.csv", "1.5\n2.5\n");
    const auto y = ingest_csv(f.path, 2);
    CHECK(y.length() == 2);
    CHECK(y.start_season() == 2);
  }
  SUBCASE("period column sets the start season") {
    TempFile f("period.csv", "period,value\n2001Q3,5.0\n2001Q4,6.0\n2002Q1,7.0\n");
    const auto y = ingest_csv(f.path);
    CHECK(y.length() == 3);
    CHECK(y.start_season() == 3);
    CHECK(y.at(1) == 5.0);
  }
  SUBCASE("NA is a parse error naming its line") {
    TempFile f("na.csv", "value\n1\n2\n3\n4\n5\nNA\n7\n");
    try {
      ingest_csv(f.path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 7") != std::string::npos);
    }
  }
  SUBCASE("empty value is MissingValue") {
    TempFile f("missing.csv", "period,value\n2001Q1,1.0\n2001Q2,\n");
    CHECK_THROWS_AS(ingest_csv(f.path), MissingValue);
  }
  SUBCASE("bad period is a parse error") {
    TempFile f("badperiod.csv", "period,value\n2001M3,5.0\n");
    CHECK_THROWS_AS(ingest_csv(f.path), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(ingest_csv("/tmp/definitely_not_here_9352.csv"), ParseError);
  }
}

TEST_CASE("test report JSON round trip is bit exact") {
  const auto y = walk_series(30, 5);
  IidBootConfig cfg;
  cfg.B = 7;
  cfg.k_max = 2;
  cfg.seed = 3;
  const auto report = iid_bootstrap_test(y, Hypothesis::from_string("34"), cfg);

  const auto j = report_to_json(report);
  const std::string dumped = j.dump(2);
  const auto parsed = nlohmann::json::parse(dumped);

  CHECK(parsed["schema_version"] == 1);
  CHECK(parsed["observed_statistic"].get<double>() == report.observed_statistic);
  CHECK(parsed["p_value"].get<double>() == report.p_value);
  CHECK(parsed["reject"].get<bool>() == report.reject);
  CHECK(parsed["seed"].get<std::uint64_t>() == report.seed);
  const auto stats = parsed["bootstrap_statistics"].get<std::vector<double>>();
  REQUIRE(stats.size() == report.bootstrap_statistics.size());
  for (std::size_t i = 0; i < stats.size(); ++i)
    CHECK(stats[i] == report.bootstrap_statistics[i]);

  // serialising the parsed document again reproduces the bytes
  CHECK(parsed.dump(2) == dumped);
}

TEST_CASE("simulation row formatting") {
  SimulationRow row;
  row.table = 3;
  row.root = "plus1";
  row.nuisance = false;
  row.noise = "iid";
  row.statistic = "t1";
  row.block_size = 4;
  row.hypothesis = "1";
  row.method = "block-unaug";
  row.cycles = 120;
  row.replications = 300;
  row.bootstrap_replicates = 250;
  row.level = 0.05;
  row.seed = 42;
  row.rate = 0.0666667;
  row.standard_error = 0.0144;
  const std::string line = simulation_csv_row(row);
  CHECK(line == "3,plus1,False,iid,t1,4,1,block-unaug,120,300,250,0.05,42,0.0666667,0.0144");
  const auto j = simulation_row_to_json(row);
  CHECK(j["rate"].get<double>() == row.rate);
}

TEST_CASE("power curve CSV shape") {
  std::vector<PowerPoint> points(2);
  points[0].rho = 0.0;
  points[0].result.rejection_rate = 0.05;
  points[0].result.standard_error = 0.01;
  points[1].rho = 0.02;
  points[1].result.rejection_rate = 0.69;
  points[1].result.standard_error = 0.02;
  CHECK(power_curve_csv(points) == "rho,rate,se\n0,0.05,0.01\n0.02,0.69,0.02\n");
}
