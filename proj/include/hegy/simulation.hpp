#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hegy/bootstrap_block.hpp"
#include "hegy/bootstrap_iid.hpp"
#include "hegy/rng.hpp"
#include "hegy/series.hpp"

namespace hegy {

enum class TargetRoot { Plus1, Minus1, Complex };
enum class NoiseKind { Iid, Heter, MaPos, MaNeg, Ar, Period };

/// Innovation processes of the simulation study. The parameters are the
/// study's fixed values but stay addressable for diagnostics.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::Iid;
  std::array<double, 4> heter_sigma{10.0, 1.0, 1.0, 1.0};
  double ma_coefficient = 0.5;
  double ar_coefficient = 0.5;
  std::array<double, 4> period_phi{0.2, 0.45, 0.65, 0.8};
};

struct DgpSpec {
  TargetRoot target_root = TargetRoot::Plus1;
  bool nuisance = false;
  double rho = 0.0;  ///< in [0, 1); 0 keeps the target root on the unit circle
  NoiseSpec noise{};
  int cycles = 120;  ///< T; the series has 4T observations
  std::uint64_t seed = 0;
};

/// Burn-in lengths for the stationary pieces (discarded, multiples of 4
/// so the seasonal alignment survives).
inline constexpr long kNoiseBurnIn = 100;
inline constexpr long kSeriesBurnIn = 200;

/// Draws n innovations; position 1 carries season 1.
std::vector<double> generate_noise(const NoiseSpec& spec, long n, Rng& rng);

/// Composite AR filter for a (target root, nuisance) cell.
LagPolynomial dgp_filter(TargetRoot root, bool nuisance, double rho);

QuarterlySeries generate_series(const DgpSpec& spec, Rng& rng);
inline QuarterlySeries generate_series(const DgpSpec& spec) {
  Rng rng = make_stream(spec.seed, 0);
  return generate_series(spec, rng);
}

enum class Method { IidAug, BlockUnaug };

struct TestSpec {
  Method method = Method::IidAug;
  Hypothesis hypothesis = Hypothesis::from_string("1");
  IidBootConfig iid{};
  BlockBootConfig block{};
};

TestReport run_test(const QuarterlySeries& y, const TestSpec& spec);

struct ExperimentResult {
  double rejection_rate = 0.0;
  int replications = 0;
  std::vector<std::uint8_t> decisions;
  double standard_error = 0.0;  ///< sqrt(rate (1 - rate) / N)
  double wall_seconds = 0.0;
};

/// N independent (generate, test) replications with derived seeds;
/// results do not depend on the thread count.
ExperimentResult empirical_rejection(const DgpSpec& dgp, const TestSpec& test, int N,
                                     double level, std::uint64_t seed, int threads = 0);

/// Same replication engine with an arbitrary decision procedure; the
/// second argument is the replicate's derived bootstrap seed.
ExperimentResult empirical_rejection(
    const DgpSpec& dgp, const std::function<bool(const QuarterlySeries&, std::uint64_t)>& decide,
    int N, std::uint64_t seed, int threads = 0);

struct PowerPoint {
  double rho = 0.0;
  ExperimentResult result;
};

std::vector<PowerPoint> power_curve(const DgpSpec& dgp_template, std::span<const double> rho_grid,
                                    const TestSpec& test, int N, double level, std::uint64_t seed,
                                    int threads = 0);

/// The rho grid of the power experiments.
std::vector<double> default_rho_grid();

/// Season-averaged sample autocovariance at lag h (diagnostic for the
/// misspecified constant-parameter representation).
double tilde_gamma(const QuarterlySeries& v, int h);

}  // namespace hegy
