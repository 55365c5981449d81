#pragma once

#include <span>
#include <vector>

namespace hegy {

/// Quarterly series. Indexing is 1-based in the documentation of every
/// operation (matching the usual time-series convention); storage is the
/// plain 0-based vector. Seasons run 1..4 and cycle with the index:
/// season_of(1) == start_season.
class QuarterlySeries {
 public:
  QuarterlySeries() = default;
  QuarterlySeries(std::vector<double> values, int start_season);

  const std::vector<double>& values() const { return values_; }
  int start_season() const { return start_season_; }
  long length() const { return static_cast<long>(values_.size()); }

  /// y[t] with 1-based t.
  double at(long t) const { return values_[static_cast<std::size_t>(t - 1)]; }

  /// Season of 1-based index t.
  int season_of(long t) const {
    return static_cast<int>((start_season_ - 1 + t - 1) % 4) + 1;
  }

  /// Number of complete 4-observation cycles; valid when length % 4 == 0.
  long cycles() const { return length() / 4; }

 private:
  std::vector<double> values_;
  int start_season_ = 1;
};

/// Polynomial in the lag operator, c0 + c1 L + ... + cp L^p.
struct LagPolynomial {
  std::vector<double> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  static LagPolynomial one_minus_l4() { return {{1.0, 0.0, 0.0, 0.0, -1.0}}; }
};

/// (1 - L^4) y: output[t] = y[t + 4] - y[t] in 0-based storage; the first
/// valid original index is 5 and the output keeps that alignment through
/// its start_season.
QuarterlySeries seasonal_difference(const QuarterlySeries& y);

/// The four filtered regressor series sharing one window that starts at
/// original index first_index == 4.
struct HegyRegressors {
  QuarterlySeries y1;  ///< (1+L)(1+L^2) y  -- unit-root-at-1 channel
  QuarterlySeries y2;  ///< -(1-L)(1+L^2) y -- root at -1
  QuarterlySeries y3;  ///< -L(1-L^2) y     -- roots at +-i
  QuarterlySeries y4;  ///< -(1-L^2) y      -- roots at +-i
  int first_index = 4;
};

HegyRegressors hegy_transform(const QuarterlySeries& y);

LagPolynomial multiply_polynomials(const LagPolynomial& a, const LagPolynomial& b);

/// Solves filter(L) Y = driver for Y. Requires c0 == 1 and
/// initial.size() == degree; initial holds Y_{1-p}..Y_0.
std::vector<double> ar_recursion(const LagPolynomial& filter,
                                 std::span<const double> driver,
                                 std::span<const double> initial);

/// Applies filter(L) to x with zero presample: out[t] = sum_i c_i x[t-i].
std::vector<double> apply_filter(const LagPolynomial& filter, std::span<const double> x);

}  // namespace hegy
