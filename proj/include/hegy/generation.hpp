#pragma once

#include <span>

#include "hegy/hegy_test.hpp"
#include "hegy/series.hpp"

namespace hegy {

/// Runs the season-by-season generation recursion
///   (1-L^4) Y*_t = sum_j pi_{j,s} Y*_{j,t-1} + sum_i phi_{i,s} (1-L^4) Y*_{t-i} + e_t
/// over t = 1..innovations.size(). The filtered regressors Y*_{j,t-1}
/// are rebuilt from the generated history at every step. presample
/// supplies Y* values for t <= 0 (most recent last); anything older, and
/// all presample seasonal differences beyond it, are zero. include_pi =
/// false drops the pi terms (the reduced recursion used for single-root
/// hypotheses). Aborts with ExplosiveRecursion when |Y*| passes 1e12.
std::vector<double> seasonal_recursion(const SeasonalFit& fit, std::span<const double> innovations,
                                       int first_season, std::span<const double> presample,
                                       bool include_pi, int k);

/// Augmented-recursion bootstrap series (seasonal iid bootstrap). The
/// fit is expected to be truncated and nulled for the hypothesis under
/// test; this is the caller's contract and deliberately unchecked so the
/// same recursion can replay raw fitted coefficients.
QuarterlySeries generate_bootstrap_series(const SeasonalFit& fit,
                                          std::span<const double> eps_star, bool reduced,
                                          int first_season,
                                          std::span<const double> presample = {});

/// Unaugmented recursion driven by block-resampled residuals.
QuarterlySeries generate_block_bootstrap_series(const SeasonalFit& fit,
                                                std::span<const double> v_star, int first_season,
                                                std::span<const double> presample = {});

}  // namespace hegy
