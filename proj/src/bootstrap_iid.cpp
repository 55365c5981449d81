#include "hegy/bootstrap_iid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hegy/errors.hpp"
#include "hegy/parallel.hpp"

namespace hegy {

PValueDecision bootstrap_pvalue(double observed, std::span<const double> replicates, Tail tail,
                                PValueRule rule, double level) {
  const long B = static_cast<long>(replicates.size());
  if (B < 1) throw ConfigurationError("need at least one bootstrap replicate");
  long replicates_as_extreme = 0;  // replicate at least as extreme as observed
  long observed_as_extreme = 0;    // observed at least as extreme as replicate
  for (double rep : replicates) {
    if (tail == Tail::Left) {
      if (rep <= observed) ++replicates_as_extreme;
      if (observed <= rep) ++observed_as_extreme;
    } else {
      if (rep >= observed) ++replicates_as_extreme;
      if (observed >= rep) ++observed_as_extreme;
    }
  }
  PValueDecision out;
  if (rule == PValueRule::Smoothed) {
    out.p_value = static_cast<double>(1 + replicates_as_extreme) / static_cast<double>(B + 1);
    out.reject = out.p_value <= level;
  } else {
    out.p_value = static_cast<double>(B - observed_as_extreme) / static_cast<double>(B);
    out.reject = static_cast<double>(observed_as_extreme) > static_cast<double>(B) * (1.0 - level);
  }
  return out;
}

SeasonalFit demean_residuals_by_season(SeasonalFit fit) {
  for (auto& pool : fit.residuals) {
    if (pool.empty()) continue;
    const double mean =
        std::accumulate(pool.begin(), pool.end(), 0.0) / static_cast<double>(pool.size());
    for (double& v : pool) v -= mean;
  }
  return fit;
}

std::vector<double> resample_seasonal_iid(const SeasonalFit& fit, long horizon, int first_season,
                                          Rng& rng) {
  for (int s = 0; s < 4; ++s)
    if (fit.residuals[static_cast<std::size_t>(s)].empty())
      throw EmptyPool("season " + std::to_string(s + 1) + " has no residuals to resample");
  std::vector<double> out(static_cast<std::size_t>(horizon));
  for (long t = 1; t <= horizon; ++t) {
    const std::size_t s = static_cast<std::size_t>((first_season - 1 + t - 1) % 4);
    const auto& pool = fit.residuals[s];
    out[static_cast<std::size_t>(t - 1)] = pool[uniform_index(rng, pool.size())];
  }
  return out;
}

namespace {

void validate_common(int B, double level) {
  if (B < 1) throw ConfigurationError("B must be at least 1");
  if (!(level > 0.0 && level < 1.0)) throw ConfigurationError("level must lie in (0, 1)");
}

std::string rule_name(PValueRule rule) {
  return rule == PValueRule::Smoothed ? "smoothed" : "paper_count";
}

}  // namespace

TestReport iid_bootstrap_test(const QuarterlySeries& y, const Hypothesis& h,
                              const IidBootConfig& cfg) {
  validate_common(cfg.B, cfg.level);
  if (cfg.k_max < 0) throw ConfigurationError("k_max must be non-negative");
  const int k = cfg.k_max;
  const long n = y.length();

  // Step 1: observed statistics from the pooled pruned regression.
  const HegyStatistics observed = augmented_hegy(y, k, true);
  const DecisionRule rule = null_directions(h, StatisticKind::T);
  const double observed_stat = decision_statistic(observed, h, rule.kind);

  // Step 2: season-by-season sieve with the selection refinements.
  SeasonalFit sfit =
      seasonal_regression(y, k, true, kVifThreshold, kLagTThreshold, h.roots());

  // Step 3 preparation and step 4 coefficient surgery.
  sfit = demean_residuals_by_season(std::move(sfit));
  const SeasonalFit generator = null_pi(truncate_pi(sfit), h);
  const bool reduced = cfg.use_reduced_recursion_for_single_roots && h.single_root();

  std::vector<double> stats(static_cast<std::size_t>(cfg.B));
  parallel_for(cfg.B, cfg.threads, [&](int r) {
    try {
      Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(r) + 1);
      const std::vector<double> eps = resample_seasonal_iid(generator, n, y.start_season(), rng);
      const QuarterlySeries ystar =
          generate_bootstrap_series(generator, eps, reduced, y.start_season());
      stats[static_cast<std::size_t>(r)] =
          augmented_hegy_decision(ystar, k, true, h, rule.kind);
    } catch (const ExplosiveRecursion& e) {
      throw ExplosiveRecursion("replicate " + std::to_string(r) + ": " + e.what());
    }
  });

  const PValueDecision decision =
      bootstrap_pvalue(observed_stat, stats, rule.tail, cfg.pvalue_rule, cfg.level);

  TestReport report;
  report.hypothesis = h;
  report.method = "iid-aug";
  report.statistic = statistic_name(h, rule.kind);
  report.tail = rule.tail;
  report.observed_statistic = observed_stat;
  report.bootstrap_statistics = std::move(stats);
  report.p_value = decision.p_value;
  report.reject = decision.reject;
  report.level = cfg.level;
  report.pvalue_rule = cfg.pvalue_rule;
  report.seed = cfg.seed;
  report.config = {{"method", "iid-aug"},
                   {"hypothesis", h.name()},
                   {"B", std::to_string(cfg.B)},
                   {"k_max", std::to_string(cfg.k_max)},
                   {"level", std::to_string(cfg.level)},
                   {"seed", std::to_string(cfg.seed)},
                   {"reduced_recursion", reduced ? "true" : "false"},
                   {"pvalue_rule", rule_name(cfg.pvalue_rule)}};
  for (int s = 0; s < 4; ++s) {
    report.diagnostics.residual_counts[static_cast<std::size_t>(s)] =
        static_cast<int>(generator.residuals[static_cast<std::size_t>(s)].size());
    report.diagnostics.vif_removed[static_cast<std::size_t>(s)] =
        generator.vif_removed[static_cast<std::size_t>(s)];
    report.diagnostics.lag_removed[static_cast<std::size_t>(s)] =
        generator.lag_removed[static_cast<std::size_t>(s)];
  }
  report.diagnostics.truncation_events = generator.truncation_events;
  for (int s = 0; s < 4; ++s)
    for (const auto& name : generator.zero_variance_kept[static_cast<std::size_t>(s)])
      report.diagnostics.warnings.push_back("season " + std::to_string(s + 1) +
                                            ": kept unevaluable column " + name);
  for (int i = 1; i <= k; ++i) {
    const bool kept = std::find(observed.retained_lags.begin(), observed.retained_lags.end(), i) !=
                      observed.retained_lags.end();
    if (!kept) report.diagnostics.observed_lag_removed.push_back("lag" + std::to_string(i));
  }
  return report;
}

}  // namespace hegy
