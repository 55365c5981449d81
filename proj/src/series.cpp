#include "hegy/series.hpp"

#include <cmath>
#include <string>

#include "hegy/errors.hpp"

namespace hegy {

QuarterlySeries::QuarterlySeries(std::vector<double> values, int start_season)
    : values_(std::move(values)), start_season_(start_season) {
  if (values_.empty()) throw DimensionMismatch("QuarterlySeries needs at least one value");
  if (start_season_ < 1 || start_season_ > 4)
    throw ConfigurationError("start_season must be in 1..4, got " + std::to_string(start_season_));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw DataError("non-finite value at position " + std::to_string(i + 1));
  }
}

QuarterlySeries seasonal_difference(const QuarterlySeries& y) {
  const long n = y.length();
  if (n < 5) throw SeriesTooShort("seasonal_difference needs length >= 5, got " + std::to_string(n));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n - 4));
  for (long t = 5; t <= n; ++t) out.push_back(y.at(t) - y.at(t - 4));
  return QuarterlySeries(std::move(out), y.season_of(5));
}

HegyRegressors hegy_transform(const QuarterlySeries& y) {
  const long n = y.length();
  if (n < 4) throw SeriesTooShort("hegy_transform needs length >= 4, got " + std::to_string(n));
  std::vector<double> y1, y2, y3, y4;
  const std::size_t m = static_cast<std::size_t>(n - 3);
  y1.reserve(m);
  y2.reserve(m);
  y3.reserve(m);
  y4.reserve(m);
  for (long t = 4; t <= n; ++t) {
    const double a = y.at(t), b = y.at(t - 1), c = y.at(t - 2), d = y.at(t - 3);
    y1.push_back(a + b + c + d);
    y2.push_back(-(a - b + c - d));
    y3.push_back(-(b - d));
    y4.push_back(-(a - c));
  }
  const int season = y.season_of(4);
  return HegyRegressors{QuarterlySeries(std::move(y1), season),
                        QuarterlySeries(std::move(y2), season),
                        QuarterlySeries(std::move(y3), season),
                        QuarterlySeries(std::move(y4), season), 4};
}

LagPolynomial multiply_polynomials(const LagPolynomial& a, const LagPolynomial& b) {
  const std::size_t na = a.coefficients.size(), nb = b.coefficients.size();
  std::vector<double> out(na + nb - 1, 0.0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) out[i + j] += a.coefficients[i] * b.coefficients[j];
  return LagPolynomial{std::move(out)};
}

std::vector<double> ar_recursion(const LagPolynomial& filter, std::span<const double> driver,
                                 std::span<const double> initial) {
  const int p = filter.degree();
  if (p < 0 || filter.coefficients[0] != 1.0)
    throw DimensionMismatch("ar_recursion requires a filter with leading coefficient 1");
  if (static_cast<int>(initial.size()) != p)
    throw DimensionMismatch("initial history must have length equal to the filter degree");
  std::vector<double> y(driver.size());
  for (std::size_t t = 0; t < driver.size(); ++t) {
    double acc = driver[t];
    for (int i = 1; i <= p; ++i) {
      const long idx = static_cast<long>(t) - i;
      const double past = idx >= 0 ? y[static_cast<std::size_t>(idx)]
                                   : initial[static_cast<std::size_t>(p + idx)];
      acc -= filter.coefficients[static_cast<std::size_t>(i)] * past;
    }
    y[t] = acc;
  }
  return y;
}

std::vector<double> apply_filter(const LagPolynomial& filter, std::span<const double> x) {
  const int p = filter.degree();
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t t = 0; t < x.size(); ++t) {
    double acc = 0.0;
    for (int i = 0; i <= p; ++i) {
      const long idx = static_cast<long>(t) - i;
      if (idx >= 0) acc += filter.coefficients[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(idx)];
    }
    out[t] = acc;
  }
  return out;
}

}  // namespace hegy
