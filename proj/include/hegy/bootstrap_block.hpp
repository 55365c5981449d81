#pragma once

#include <cstdint>

#include "hegy/generation.hpp"
#include "hegy/rng.hpp"
#include "hegy/test_report.hpp"

namespace hegy {

struct TaperSpec {
  enum class Kind { None, Trapezoid };
  Kind kind = Kind::Trapezoid;
  double ramp_fraction = 0.1;  ///< each side ramps over ceil(fraction * b)
};

struct BlockBootConfig {
  int B = 500;
  int b = 4;  ///< block size in observations
  double level = 0.05;
  std::uint64_t seed = 0;
  StatisticKind statistic_choice = StatisticKind::T;  ///< t or pi for single roots
  TaperSpec taper{};
  PValueRule pvalue_rule = PValueRule::Smoothed;
  int threads = 1;
};

/// Season-congruent start positions for a block of length block_len that
/// is written at position t of a length-n sequence: t shifted by
/// multiples of 4, clipped so the whole block stays inside 1..n.
std::vector<long> admissible_block_starts(long n, long block_len, long t);

/// Linear ramp over ceil(ramp_fraction*b) entries on each side, flat 1
/// in the middle; symmetric with max 1.
std::vector<double> trapezoid_weights(long b, double ramp_fraction);

/// Elementwise weighting rescaled by sqrt(b)/||w||_2 so the block keeps
/// its aggregate variance.
std::vector<double> apply_taper(std::span<const double> block_values,
                                std::span<const double> weights);

/// Seasonal moving-block resample of Dudek et al.: blocks are copied to
/// positions 1, b+1, ... with uniformly drawn season-congruent source
/// starts; a final shorter block fills any remainder. Pass a taper to
/// weight each copied block.
std::vector<double> seasonal_block_resample(std::span<const double> v_check, long b, Rng& rng,
                                            const TaperSpec* taper = nullptr);

/// Seasonal block bootstrap unaugmented HEGY test.
TestReport block_bootstrap_test(const QuarterlySeries& y, const Hypothesis& h,
                                const BlockBootConfig& cfg);

}  // namespace hegy
