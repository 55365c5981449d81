#pragma once

#include <cstdint>

#include "hegy/generation.hpp"
#include "hegy/rng.hpp"
#include "hegy/test_report.hpp"

namespace hegy {

struct IidBootConfig {
  int B = 500;
  int k_max = 4;
  double level = 0.05;
  std::uint64_t seed = 0;
  /// Generate single-root ({1}, {2}) replicates from the lag-only
  /// recursion instead of the full one.
  bool use_reduced_recursion_for_single_roots = true;
  PValueRule pvalue_rule = PValueRule::Smoothed;
  int threads = 1;  ///< replicate workers; <= 0 means hardware count
};

/// Centers each season's residual pool to exact zero mean.
SeasonalFit demean_residuals_by_season(SeasonalFit fit);

/// Draws `horizon` innovations, each sampled with replacement from the
/// pool of its own season; the interleaving preserves seasonal order.
std::vector<double> resample_seasonal_iid(const SeasonalFit& fit, long horizon, int first_season,
                                          Rng& rng);

/// Seasonal iid bootstrap augmented HEGY test: pooled statistics with
/// lag pruning, season-by-season sieve with VIF and lag pruning,
/// truncation, null imposition, B reduced/full-recursion replicates.
TestReport iid_bootstrap_test(const QuarterlySeries& y, const Hypothesis& h,
                              const IidBootConfig& cfg);

}  // namespace hegy
