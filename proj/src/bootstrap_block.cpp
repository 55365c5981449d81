#include "hegy/bootstrap_block.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hegy/bootstrap_iid.hpp"
#include "hegy/errors.hpp"
#include "hegy/parallel.hpp"

namespace hegy {

std::vector<long> admissible_block_starts(long n, long block_len, long t) {
  const long r1 = (t - 1) / 4;
  const long r2 = (n - block_len - t + 1) / 4;
  std::vector<long> starts;
  starts.reserve(static_cast<std::size_t>(r1 + r2 + 1));
  for (long i = t - 4 * r1; i <= t + 4 * r2; i += 4) starts.push_back(i);
  return starts;
}

std::vector<double> trapezoid_weights(long b, double ramp_fraction) {
  if (!(ramp_fraction >= 0.0 && ramp_fraction < 0.5))
    throw ConfigurationError("ramp_fraction must lie in [0, 0.5)");
  std::vector<double> w(static_cast<std::size_t>(b), 1.0);
  const long ramp = static_cast<long>(std::ceil(ramp_fraction * static_cast<double>(b)));
  for (long i = 1; i <= ramp && i <= b; ++i) {
    const double value = static_cast<double>(i) / static_cast<double>(ramp + 1);
    w[static_cast<std::size_t>(i - 1)] = value;
    w[static_cast<std::size_t>(b - i)] = value;
  }
  return w;
}

std::vector<double> apply_taper(std::span<const double> block_values,
                                std::span<const double> weights) {
  if (block_values.size() != weights.size())
    throw DimensionMismatch("taper weights must match the block length");
  double norm2 = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw ConfigurationError("taper weights must lie in [0, 1]");
    norm2 += w * w;
  }
  const double scale = std::sqrt(static_cast<double>(block_values.size()) / norm2);
  std::vector<double> out(block_values.size());
  for (std::size_t i = 0; i < block_values.size(); ++i)
    out[i] = block_values[i] * weights[i] * scale;
  return out;
}

std::vector<double> seasonal_block_resample(std::span<const double> v_check, long b, Rng& rng,
                                            const TaperSpec* taper) {
  const long n = static_cast<long>(v_check.size());
  if (b < 1) throw ConfigurationError("block size must be at least 1");
  if (b > n)
    throw BlockTooLong("block size " + std::to_string(b) + " exceeds the residual length " +
                       std::to_string(n));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long t = 1; t <= n; t += b) {
    const long len = std::min(b, n - t + 1);  // final block may be shorter
    const auto starts = admissible_block_starts(n, len, t);
    const long source = starts[uniform_index(rng, starts.size())];
    if ((source - t) % 4 != 0)
      throw DataError("block start violates season congruence");  // unreachable by construction
    std::vector<double> block(v_check.begin() + (source - 1), v_check.begin() + (source - 1 + len));
    if (taper != nullptr && taper->kind == TaperSpec::Kind::Trapezoid) {
      const auto w = trapezoid_weights(len, taper->ramp_fraction);
      block = apply_taper(block, w);
    }
    std::copy(block.begin(), block.end(), out.begin() + (t - 1));
  }
  return out;
}

namespace {

std::string rule_name(PValueRule rule) {
  return rule == PValueRule::Smoothed ? "smoothed" : "paper_count";
}

std::string taper_name(const TaperSpec& taper) {
  if (taper.kind == TaperSpec::Kind::None) return "none";
  return "trapezoid(" + std::to_string(taper.ramp_fraction) + ")";
}

/// Interleaves the per-season residuals back into time order.
std::vector<double> flatten_residuals(const SeasonalFit& fit) {
  long lo = 0, hi = 0;
  bool first = true;
  for (int s = 0; s < 4; ++s) {
    for (long t : fit.residual_times[static_cast<std::size_t>(s)]) {
      if (first || t < lo) lo = t;
      if (first || t > hi) hi = t;
      first = false;
    }
  }
  if (first) throw EmptyPool("seasonal fit carries no residuals");
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
  for (int s = 0; s < 4; ++s) {
    const auto& times = fit.residual_times[static_cast<std::size_t>(s)];
    const auto& values = fit.residuals[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < times.size(); ++i)
      out[static_cast<std::size_t>(times[i] - lo)] = values[i];
  }
  return out;
}

}  // namespace

TestReport block_bootstrap_test(const QuarterlySeries& y, const Hypothesis& h,
                                const BlockBootConfig& cfg) {
  if (cfg.B < 1) throw ConfigurationError("B must be at least 1");
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw ConfigurationError("level must lie in (0, 1)");
  if (cfg.b < 1 || cfg.b > y.length())
    throw ConfigurationError("block size must lie in 1..4T");
  if (cfg.statistic_choice == StatisticKind::F && h.single_root())
    throw ConfigurationError("choose t or pi for single-root hypotheses");
  const long n = y.length();

  // Step 1: observed statistics from the unaugmented regression.
  const HegyStatistics observed = unaugmented_hegy(y);
  const StatisticKind kind = h.single_root() ? cfg.statistic_choice : StatisticKind::F;
  const DecisionRule rule = null_directions(h, kind);
  const double observed_stat = decision_statistic(observed, h, kind);

  // Step 2: per-season regression, no selection refinements here.
  SeasonalFit sfit = seasonal_regression(y, 0, false, std::numeric_limits<double>::infinity(),
                                         0.0, h.roots());
  sfit = demean_residuals_by_season(std::move(sfit));
  const SeasonalFit generator = null_pi(truncate_pi(sfit), h);
  const std::vector<double> v_check = flatten_residuals(generator);
  if (cfg.b > static_cast<long>(v_check.size()))
    throw BlockTooLong("block size " + std::to_string(cfg.b) +
                       " exceeds the residual length " + std::to_string(v_check.size()));

  std::vector<double> stats(static_cast<std::size_t>(cfg.B));
  const TaperSpec* taper = cfg.taper.kind == TaperSpec::Kind::None ? nullptr : &cfg.taper;
  parallel_for(cfg.B, cfg.threads, [&](int r) {
    try {
      Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(r) + 1);
      const std::vector<double> v_star = seasonal_block_resample(v_check, cfg.b, rng, taper);
      const QuarterlySeries ystar =
          generate_block_bootstrap_series(generator, v_star, y.start_season());
      stats[static_cast<std::size_t>(r)] =
          augmented_hegy_decision(ystar, 0, false, h, kind);
    } catch (const ExplosiveRecursion& e) {
      throw ExplosiveRecursion("replicate " + std::to_string(r) + ": " + e.what());
    }
  });

  const PValueDecision decision =
      bootstrap_pvalue(observed_stat, stats, rule.tail, cfg.pvalue_rule, cfg.level);

  TestReport report;
  report.hypothesis = h;
  report.method = "block-unaug";
  report.statistic = statistic_name(h, kind);
  report.tail = rule.tail;
  report.observed_statistic = observed_stat;
  report.bootstrap_statistics = std::move(stats);
  report.p_value = decision.p_value;
  report.reject = decision.reject;
  report.level = cfg.level;
  report.pvalue_rule = cfg.pvalue_rule;
  report.seed = cfg.seed;
  report.config = {{"method", "block-unaug"},
                   {"hypothesis", h.name()},
                   {"B", std::to_string(cfg.B)},
                   {"b", std::to_string(cfg.b)},
                   {"level", std::to_string(cfg.level)},
                   {"seed", std::to_string(cfg.seed)},
                   {"statistic", statistic_name(h, kind)},
                   {"taper", taper_name(cfg.taper)},
                   {"pvalue_rule", rule_name(cfg.pvalue_rule)}};
  for (int s = 0; s < 4; ++s)
    report.diagnostics.residual_counts[static_cast<std::size_t>(s)] =
        static_cast<int>(generator.residuals[static_cast<std::size_t>(s)].size());
  report.diagnostics.truncation_events = generator.truncation_events;
  if (static_cast<double>(cfg.b) > std::sqrt(static_cast<double>(n)))
    report.diagnostics.warnings.push_back(
        "block size " + std::to_string(cfg.b) + " exceeds sqrt(4T); the b/sqrt(T) -> 0 regime "
        "behind the bootstrap consistency no longer applies");
  return report;
}

}  // namespace hegy
