#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace hegy {

/// Named columns of common length. Column order is part of the identity
/// of the design (pruning tie-breaks refer to it), so columns are kept
/// in insertion order.
class DesignMatrix {
 public:
  void add_column(std::string name, std::vector<double> values);

  long nrows() const { return nrows_; }
  int ncols() const { return static_cast<int>(cols_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int j) const { return names_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& column(int j) const { return cols_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& column(const std::string& name) const;
  int index_of(const std::string& name) const;  // -1 when absent
  bool has(const std::string& name) const { return index_of(name) >= 0; }

  void remove_column(const std::string& name);
  DesignMatrix without(const std::vector<std::string>& drop) const;
  Eigen::MatrixXd to_eigen() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> cols_;
  long nrows_ = 0;
};

struct RegressionFit {
  std::vector<std::string> names;     ///< retained columns, design order
  std::vector<double> coefficients;   ///< one per retained column
  std::vector<double> residuals;
  Eigen::MatrixXd coef_cov;           ///< sigma2 * (X'X)^-1
  double rss = 0.0;
  double sigma2 = 0.0;                ///< rss / (n - p)
  long n = 0;

  int index_of(const std::string& name) const;
  double coefficient(const std::string& name) const;
};

/// Least squares with no intercept. Normal equations via Cholesky with a
/// rank-revealing QR fallback when the condition check fails.
RegressionFit ols_fit(const DesignMatrix& X, std::span<const double> y);

double t_statistic(const RegressionFit& fit, const std::string& name);

/// Standard restricted-vs-unrestricted F; the restricted model refits
/// with the named columns removed (possibly all of them).
double f_statistic(const RegressionFit& unrestricted, const DesignMatrix& X,
                   std::span<const double> y, const std::vector<std::string>& restricted_names);

/// Variance inflation factor from the uncentered R^2 of column `name` on
/// the remaining columns. Returns +inf when R^2 >= 1 - 1e-12.
double vif(const DesignMatrix& X, const std::string& name);

struct VifPruneResult {
  DesignMatrix design;
  std::vector<std::string> removed;  ///< in removal order
};

/// Greedy removal of the largest-VIF column while it exceeds the
/// threshold. Ties within 1e-12 remove the larger column index.
/// Columns listed in protected_names are never removed.
VifPruneResult stepwise_vif_prune(const DesignMatrix& X, double threshold,
                                  const std::vector<std::string>& protected_names = {});

struct TPruneResult {
  RegressionFit fit;
  DesignMatrix design;
  std::vector<std::string> removed;
  std::vector<std::string> zero_variance_kept;  ///< unevaluable, kept by rule
};

/// Iteratively drops the candidate with the smallest |t| while it is
/// below t_threshold, refitting after each removal. Non-candidate
/// columns are never touched.
TPruneResult stepwise_t_prune(const DesignMatrix& X, std::span<const double> y,
                              const std::vector<std::string>& candidate_names, double t_threshold);

}  // namespace hegy
