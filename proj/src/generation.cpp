#include "hegy/generation.hpp"

#include <cmath>
#include <string>

#include "hegy/errors.hpp"

namespace hegy {

std::vector<double> seasonal_recursion(const SeasonalFit& fit, std::span<const double> innovations,
                                       int first_season, std::span<const double> presample,
                                       bool include_pi, int k) {
  if (k < 0 || k > fit.k)
    throw DimensionMismatch("generation lag order " + std::to_string(k) +
                            " exceeds the fitted order " + std::to_string(fit.k));
  if (first_season < 1 || first_season > 4)
    throw ConfigurationError("first_season must be in 1..4");
  const long horizon = static_cast<long>(innovations.size());
  const long m = static_cast<long>(presample.size());
  std::vector<double> y(static_cast<std::size_t>(horizon), 0.0);
  std::vector<double> diff(static_cast<std::size_t>(horizon), 0.0);

  // Y* value at global index u (u <= 0 hits the presample, then zeros).
  auto value_at = [&](long u) -> double {
    if (u >= 1) return y[static_cast<std::size_t>(u - 1)];
    const long idx = m + u - 1;  // presample holds u = 1-m .. 0
    return idx >= 0 ? presample[static_cast<std::size_t>(idx)] : 0.0;
  };
  auto diff_at = [&](long u) -> double {
    if (u >= 1) return diff[static_cast<std::size_t>(u - 1)];
    return value_at(u) - value_at(u - 4);
  };

  for (long t = 1; t <= horizon; ++t) {
    const std::size_t s = static_cast<std::size_t>((first_season - 1 + t - 1) % 4);
    double d = innovations[static_cast<std::size_t>(t - 1)];
    if (include_pi) {
      const double a = value_at(t - 1), b = value_at(t - 2), c = value_at(t - 3),
                   e = value_at(t - 4);
      d += fit.pi[0][s] * (a + b + c + e);
      d += fit.pi[1][s] * (-(a - b + c - e));
      d += fit.pi[2][s] * (-(b - e));
      d += fit.pi[3][s] * (-(a - c));
    }
    for (int i = 1; i <= k; ++i) d += fit.phi[static_cast<std::size_t>(i - 1)][s] * diff_at(t - i);
    diff[static_cast<std::size_t>(t - 1)] = d;
    const double value = value_at(t - 4) + d;
    if (!(std::abs(value) <= 1e12))
      throw ExplosiveRecursion("bootstrap recursion exceeded 1e12 at index " + std::to_string(t));
    y[static_cast<std::size_t>(t - 1)] = value;
  }
  return y;
}

QuarterlySeries generate_bootstrap_series(const SeasonalFit& fit,
                                          std::span<const double> eps_star, bool reduced,
                                          int first_season, std::span<const double> presample) {
  return QuarterlySeries(
      seasonal_recursion(fit, eps_star, first_season, presample, !reduced, fit.k), first_season);
}

QuarterlySeries generate_block_bootstrap_series(const SeasonalFit& fit,
                                                std::span<const double> v_star, int first_season,
                                                std::span<const double> presample) {
  return QuarterlySeries(seasonal_recursion(fit, v_star, first_season, presample, true, 0),
                         first_season);
}

}  // namespace hegy
