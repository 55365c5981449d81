#include "hegy/linreg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hegy/errors.hpp"

namespace hegy {

void DesignMatrix::add_column(std::string name, std::vector<double> values) {
  if (has(name)) throw ConfigurationError("duplicate column name: " + name);
  if (!cols_.empty() && static_cast<long>(values.size()) != nrows_)
    throw DimensionMismatch("column " + name + " has length " + std::to_string(values.size()) +
                            ", expected " + std::to_string(nrows_));
  nrows_ = static_cast<long>(values.size());
  names_.push_back(std::move(name));
  cols_.push_back(std::move(values));
}

const std::vector<double>& DesignMatrix::column(const std::string& name) const {
  const int j = index_of(name);
  if (j < 0) throw ConfigurationError("no such column: " + name);
  return cols_[static_cast<std::size_t>(j)];
}

int DesignMatrix::index_of(const std::string& name) const {
  for (std::size_t j = 0; j < names_.size(); ++j)
    if (names_[j] == name) return static_cast<int>(j);
  return -1;
}

void DesignMatrix::remove_column(const std::string& name) {
  const int j = index_of(name);
  if (j < 0) throw ConfigurationError("no such column: " + name);
  names_.erase(names_.begin() + j);
  cols_.erase(cols_.begin() + j);
}

DesignMatrix DesignMatrix::without(const std::vector<std::string>& drop) const {
  DesignMatrix out;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (std::find(drop.begin(), drop.end(), names_[j]) == drop.end())
      out.add_column(names_[j], cols_[j]);
  }
  return out;
}

Eigen::MatrixXd DesignMatrix::to_eigen() const {
  Eigen::MatrixXd X(nrows_, ncols());
  for (int j = 0; j < ncols(); ++j)
    X.col(j) = Eigen::Map<const Eigen::VectorXd>(cols_[static_cast<std::size_t>(j)].data(), nrows_);
  return X;
}

int RegressionFit::index_of(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j)
    if (names[j] == name) return static_cast<int>(j);
  return -1;
}

double RegressionFit::coefficient(const std::string& name) const {
  const int j = index_of(name);
  if (j < 0) throw ConfigurationError("column not retained: " + name);
  return coefficients[static_cast<std::size_t>(j)];
}

RegressionFit ols_fit(const DesignMatrix& X, std::span<const double> y) {
  const long n = X.nrows();
  const int p = X.ncols();
  if (p == 0) throw ConfigurationError("ols_fit: empty design");
  if (static_cast<long>(y.size()) != n)
    throw DimensionMismatch("ols_fit: y has length " + std::to_string(y.size()) + ", design has " +
                            std::to_string(n) + " rows");
  if (n <= p)
    throw DimensionMismatch("ols_fit: need more observations (" + std::to_string(n) +
                            ") than columns (" + std::to_string(p) + ")");
  for (int j = 0; j < p; ++j) {
    const auto& col = X.column(j);
    if (std::all_of(col.begin(), col.end(), [](double v) { return v == 0.0; }))
      throw SingularDesign("column " + X.name(j) + " is identically zero");
  }

  const Eigen::MatrixXd Xe = X.to_eigen();
  const Eigen::Map<const Eigen::VectorXd> ye(y.data(), n);
  const Eigen::MatrixXd xtx = Xe.transpose() * Xe;
  const Eigen::VectorXd xty = Xe.transpose() * ye;

  Eigen::VectorXd beta(p);
  Eigen::MatrixXd xtx_inv(p, p);
  Eigen::LLT<Eigen::MatrixXd> llt(xtx);
  if (llt.info() == Eigen::Success && llt.rcond() > 1e-12) {
    beta = llt.solve(xty);
    xtx_inv = llt.solve(Eigen::MatrixXd::Identity(p, p));
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xe);
    if (qr.rank() < p) throw SingularDesign("rank-deficient design (rank " +
                                            std::to_string(qr.rank()) + " of " + std::to_string(p) + ")");
    beta = qr.solve(ye);
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd rtr_inv =
        (r.transpose() * r).ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    const auto perm = qr.colsPermutation();
    xtx_inv = perm * rtr_inv * perm.transpose();
  }

  RegressionFit fit;
  fit.names = X.names();
  fit.coefficients.assign(beta.data(), beta.data() + p);
  const Eigen::VectorXd resid = ye - Xe * beta;
  fit.residuals.assign(resid.data(), resid.data() + n);
  fit.rss = resid.squaredNorm();
  // An exact fit leaves only rounding residue; snap it to zero so that
  // the ZeroVariance contract fires instead of producing huge t values.
  if (fit.rss <= 1e-24 * ye.squaredNorm()) fit.rss = 0.0;
  fit.n = n;
  fit.sigma2 = fit.rss / static_cast<double>(n - p);
  Eigen::MatrixXd cov = fit.sigma2 * xtx_inv;
  fit.coef_cov = 0.5 * (cov + cov.transpose());  // enforce symmetry
  return fit;
}

double t_statistic(const RegressionFit& fit, const std::string& name) {
  const int j = fit.index_of(name);
  if (j < 0) throw ConfigurationError("t_statistic: column not retained: " + name);
  const double var = fit.coef_cov(j, j);
  if (!(var > 0.0))
    throw ZeroVariance("t_statistic: zero coefficient variance for " + name);
  return fit.coefficients[static_cast<std::size_t>(j)] / std::sqrt(var);
}

double f_statistic(const RegressionFit& unrestricted, const DesignMatrix& X,
                   std::span<const double> y, const std::vector<std::string>& restricted_names) {
  const int q = static_cast<int>(restricted_names.size());
  if (q < 1) throw ConfigurationError("f_statistic: empty restriction set");
  for (const auto& name : restricted_names)
    if (unrestricted.index_of(name) < 0)
      throw ConfigurationError("f_statistic: column not retained: " + name);
  if (!(unrestricted.rss > 0.0))
    throw ZeroResidualVariance("f_statistic: unrestricted residual sum of squares is zero");

  const DesignMatrix restricted = X.without(restricted_names);
  double rss_restricted = 0.0;
  if (restricted.ncols() == 0) {
    for (double v : y) rss_restricted += v * v;
  } else {
    rss_restricted = ols_fit(restricted, y).rss;
  }
  const long n = unrestricted.n;
  const int p = static_cast<int>(unrestricted.names.size());
  const double f = ((rss_restricted - unrestricted.rss) / q) /
                   (unrestricted.rss / static_cast<double>(n - p));
  return std::max(0.0, f);
}

double vif(const DesignMatrix& X, const std::string& name) {
  if (X.ncols() < 2) throw ConfigurationError("vif needs at least two columns");
  const int j = X.index_of(name);
  if (j < 0) throw ConfigurationError("vif: no such column: " + name);
  const long n = X.nrows();
  const int p = X.ncols();
  const Eigen::Map<const Eigen::VectorXd> xj(X.column(j).data(), n);
  const double denom = xj.squaredNorm();
  if (denom == 0.0) return std::numeric_limits<double>::infinity();

  Eigen::MatrixXd others(n, p - 1);
  int c = 0;
  for (int k = 0; k < p; ++k) {
    if (k == j) continue;
    others.col(c++) = Eigen::Map<const Eigen::VectorXd>(X.column(k).data(), n);
  }
  // Least-squares residual; rank deficiency among the other columns is
  // fine here, only the residual norm matters.
  const Eigen::VectorXd coef = others.colPivHouseholderQr().solve(xj);
  const double rss = (xj - others * coef).squaredNorm();
  const double r2 = 1.0 - rss / denom;
  if (r2 >= 1.0 - 1e-12) return std::numeric_limits<double>::infinity();
  return 1.0 / (1.0 - r2);
}

namespace {

bool vif_tied(double a, double vmax) {
  if (std::isinf(vmax)) return std::isinf(a);
  return vmax - a <= 1e-12 * std::max(1.0, std::abs(vmax));
}

}  // namespace

VifPruneResult stepwise_vif_prune(const DesignMatrix& X, double threshold,
                                  const std::vector<std::string>& protected_names) {
  if (!(threshold > 1.0)) throw ConfigurationError("vif threshold must exceed 1");
  VifPruneResult out;
  out.design = X;
  auto is_protected = [&](const std::string& name) {
    return std::find(protected_names.begin(), protected_names.end(), name) != protected_names.end();
  };
  while (out.design.ncols() >= 2) {
    std::vector<double> values(static_cast<std::size_t>(out.design.ncols()));
    double vmax = -std::numeric_limits<double>::infinity();
    bool any_candidate = false;
    for (int j = 0; j < out.design.ncols(); ++j) {
      values[static_cast<std::size_t>(j)] = vif(out.design, out.design.name(j));
      if (!is_protected(out.design.name(j))) {
        any_candidate = true;
        vmax = std::max(vmax, values[static_cast<std::size_t>(j)]);
      }
    }
    if (!any_candidate || !(vmax > threshold)) break;
    int victim = -1;
    for (int j = 0; j < out.design.ncols(); ++j) {
      if (is_protected(out.design.name(j))) continue;
      if (vif_tied(values[static_cast<std::size_t>(j)], vmax)) victim = j;  // larger index wins
    }
    if (out.design.ncols() == 1)
      throw AllColumnsRemoved("vif pruning would empty the design");
    out.removed.push_back(out.design.name(victim));
    out.design.remove_column(out.design.name(victim));
  }
  if (out.design.ncols() == 0) throw AllColumnsRemoved("vif pruning emptied the design");
  return out;
}

TPruneResult stepwise_t_prune(const DesignMatrix& X, std::span<const double> y,
                              const std::vector<std::string>& candidate_names, double t_threshold) {
  TPruneResult out;
  out.design = X;
  std::vector<std::string> candidates;
  for (const auto& name : candidate_names) {
    if (X.index_of(name) < 0)
      throw ConfigurationError("stepwise_t_prune: candidate not in design: " + name);
    candidates.push_back(name);
  }
  auto note_zero_variance = [&](const std::string& name) {
    if (std::find(out.zero_variance_kept.begin(), out.zero_variance_kept.end(), name) ==
        out.zero_variance_kept.end())
      out.zero_variance_kept.push_back(name);
  };
  while (true) {
    out.fit = ols_fit(out.design, y);
    int victim = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < out.design.ncols(); ++j) {
      const std::string& name = out.design.name(j);
      if (std::find(candidates.begin(), candidates.end(), name) == candidates.end()) continue;
      double abs_t;
      try {
        abs_t = std::abs(t_statistic(out.fit, name));
      } catch (const ZeroVariance&) {
        note_zero_variance(name);
        continue;
      }
      if (abs_t < best - 1e-12 || (std::abs(abs_t - best) <= 1e-12 && j > victim)) {
        best = abs_t;
        victim = j;
      }
    }
    if (victim < 0 || best >= t_threshold) break;
    const std::string name = out.design.name(victim);
    if (out.design.ncols() == 1) throw AllColumnsRemoved("t pruning would empty the design");
    out.removed.push_back(name);
    out.design.remove_column(name);
    candidates.erase(std::remove(candidates.begin(), candidates.end(), name), candidates.end());
  }
  return out;
}

}  // namespace hegy
