#include "hegy/simulation.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "hegy/errors.hpp"
#include "hegy/parallel.hpp"

namespace hegy {

std::vector<double> generate_noise(const NoiseSpec& spec, long n, Rng& rng) {
  if (n < 1) throw ConfigurationError("noise length must be positive");
  auto season_at = [](long i) { return static_cast<std::size_t>((i - 1) % 4); };
  std::vector<double> out(static_cast<std::size_t>(n));
  switch (spec.kind) {
    case NoiseKind::Iid:
      for (auto& v : out) v = standard_normal(rng);
      break;
    case NoiseKind::Heter:
      for (long i = 1; i <= n; ++i)
        out[static_cast<std::size_t>(i - 1)] = spec.heter_sigma[season_at(i)] * standard_normal(rng);
      break;
    case NoiseKind::MaPos:
    case NoiseKind::MaNeg: {
      const double theta =
          spec.kind == NoiseKind::MaPos ? spec.ma_coefficient : -spec.ma_coefficient;
      double prev = standard_normal(rng);  // epsilon_0
      for (long i = 1; i <= n; ++i) {
        const double eps = standard_normal(rng);
        out[static_cast<std::size_t>(i - 1)] = eps + theta * prev;
        prev = eps;
      }
      break;
    }
    case NoiseKind::Ar: {
      double v = 0.0;
      for (long i = 1 - kNoiseBurnIn; i <= n; ++i) {
        v = standard_normal(rng) + spec.ar_coefficient * v;
        if (i >= 1) out[static_cast<std::size_t>(i - 1)] = v;
      }
      break;
    }
    case NoiseKind::Period: {
      double v = 0.0;
      for (long i = 1 - kNoiseBurnIn; i <= n; ++i) {
        // the burn-in is a multiple of 4, so season_at stays aligned
        const std::size_t s = static_cast<std::size_t>(((i - 1) % 4 + 4) % 4);
        v = standard_normal(rng) + spec.period_phi[s] * v;
        if (i >= 1) out[static_cast<std::size_t>(i - 1)] = v;
      }
      break;
    }
  }
  return out;
}

LagPolynomial dgp_filter(TargetRoot root, bool nuisance, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw ConfigurationError("rho must lie in [0, 1)");
  LagPolynomial target;
  LagPolynomial nuisance_factor;
  switch (root) {
    case TargetRoot::Plus1:
      target = LagPolynomial{{1.0, -(1.0 - rho)}};
      nuisance_factor = LagPolynomial{{1.0, 1.0, 1.0, 1.0}};  // (1+L)(1+L^2)
      break;
    case TargetRoot::Minus1:
      target = LagPolynomial{{1.0, 1.0 - rho}};
      nuisance_factor = LagPolynomial{{1.0, -1.0, 1.0, -1.0}};  // (1-L)(1+L^2)
      break;
    case TargetRoot::Complex:
      target = LagPolynomial{{1.0, 0.0, 1.0 - rho}};
      nuisance_factor = LagPolynomial{{1.0, 0.0, -1.0}};  // (1+L)(1-L)
      break;
  }
  return nuisance ? multiply_polynomials(nuisance_factor, target) : target;
}

QuarterlySeries generate_series(const DgpSpec& spec, Rng& rng) {
  if (spec.cycles < 1) throw ConfigurationError("cycles must be positive");
  const LagPolynomial filter = dgp_filter(spec.target_root, spec.nuisance, spec.rho);
  const bool burn = spec.rho > 0.0 && !spec.nuisance;  // fully stationary case
  const long n = 4L * spec.cycles + (burn ? kSeriesBurnIn : 0);
  const std::vector<double> noise = generate_noise(spec.noise, n, rng);
  const std::vector<double> zeros(static_cast<std::size_t>(filter.degree()), 0.0);
  std::vector<double> y = ar_recursion(filter, noise, zeros);
  if (burn) y.erase(y.begin(), y.begin() + kSeriesBurnIn);
  return QuarterlySeries(std::move(y), 1);
}

TestReport run_test(const QuarterlySeries& y, const TestSpec& spec) {
  if (spec.method == Method::IidAug) return iid_bootstrap_test(y, spec.hypothesis, spec.iid);
  return block_bootstrap_test(y, spec.hypothesis, spec.block);
}

ExperimentResult empirical_rejection(
    const DgpSpec& dgp, const std::function<bool(const QuarterlySeries&, std::uint64_t)>& decide,
    int N, std::uint64_t seed, int threads) {
  if (N < 1) throw ConfigurationError("N must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult out;
  out.replications = N;
  out.decisions.assign(static_cast<std::size_t>(N), 0);
  parallel_for(N, threads, [&](int i) {
    const std::uint64_t replicate_root =
        splitmix64(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(i) * 2 + 1));
    try {
      DgpSpec local = dgp;
      local.seed = replicate_root;
      Rng rng = make_stream(replicate_root, 0);
      const QuarterlySeries y = generate_series(local, rng);
      out.decisions[static_cast<std::size_t>(i)] =
          decide(y, splitmix64(replicate_root)) ? 1 : 0;
    } catch (const DataError& e) {
      throw DataError("replication " + std::to_string(i) + " (seed " +
                      std::to_string(replicate_root) + "): " + e.what());
    }
  });
  long rejections = 0;
  for (auto d : out.decisions) rejections += d;
  out.rejection_rate = static_cast<double>(rejections) / static_cast<double>(N);
  out.standard_error =
      std::sqrt(out.rejection_rate * (1.0 - out.rejection_rate) / static_cast<double>(N));
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ExperimentResult empirical_rejection(const DgpSpec& dgp, const TestSpec& test, int N,
                                     double level, std::uint64_t seed, int threads) {
  auto decide = [&test, level](const QuarterlySeries& y, std::uint64_t boot_seed) {
    TestSpec t = test;
    t.iid.seed = boot_seed;
    t.iid.level = level;
    t.iid.threads = 1;
    t.block.seed = boot_seed;
    t.block.level = level;
    t.block.threads = 1;
    return run_test(y, t).reject;
  };
  return empirical_rejection(dgp, decide, N, seed, threads);
}

std::vector<PowerPoint> power_curve(const DgpSpec& dgp_template, std::span<const double> rho_grid,
                                    const TestSpec& test, int N, double level, std::uint64_t seed,
                                    int threads) {
  if (rho_grid.empty()) throw ConfigurationError("rho grid must not be empty");
  std::vector<PowerPoint> out;
  out.reserve(rho_grid.size());
  for (std::size_t g = 0; g < rho_grid.size(); ++g) {
    DgpSpec dgp = dgp_template;
    dgp.rho = rho_grid[g];
    const std::uint64_t point_seed = splitmix64(splitmix64(seed) ^ splitmix64(g + 1));
    out.push_back(PowerPoint{rho_grid[g], empirical_rejection(dgp, test, N, level, point_seed, threads)});
  }
  return out;
}

std::vector<double> default_rho_grid() { return {0.0, 0.004, 0.008, 0.012, 0.016, 0.020}; }

double tilde_gamma(const QuarterlySeries& v, int h) {
  const long lag = std::abs(h);
  const long n = v.length();
  if (n < 4 + lag)
    throw SeriesTooShort("tilde_gamma needs length >= 4 + |h|, got " + std::to_string(n));
  double total = 0.0;
  for (int s = 1; s <= 4; ++s) {
    double sum = 0.0;
    long count = 0;
    for (long t = lag + 1; t <= n; ++t) {
      if (v.season_of(t) != s) continue;
      sum += v.at(t) * v.at(t - lag);
      ++count;
    }
    if (count == 0)
      throw SeriesTooShort("season " + std::to_string(s) + " has no usable products");
    total += sum / static_cast<double>(count);
  }
  return total / 4.0;
}

}  // namespace hegy
