#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tvcm/basis.hpp"

namespace tvcm {

/// Condition-number ceiling for Z^T W Z (computed on the column-equilibrated
/// design) beyond which a fit is rejected as singular.
inline constexpr double kSingularConditionLimit = 1e12;

struct WlsFit {
  Eigen::VectorXd alpha_hat;
  double sigma2_hat = 0.0;
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd gram_inverse;  // (Z^T W Z)^{-1}
  double hat_trace = 0.0;        // tr(Z (Z^T W Z)^{-1} Z^T W)
  double weighted_rss = 0.0;     // (y - Z a)^T W (y - Z a)
  double condition = 0.0;        // condition estimate of equilibrated Z^T W Z

  Eigen::Index num_observations() const { return fitted.size(); }
  Eigen::Index num_params() const { return alpha_hat.size(); }
};

/// Weighted least squares through a Householder QR of sqrt(W) Z with
/// equilibrated columns. sigma2_hat = weighted RSS / (N - p).
WlsFit fit_wls(const DesignBundle& bundle);

/// x(t)^T beta_hat(t); `covariates` includes the leading intercept 1.
double predict(const WlsFit& fit, const std::vector<BasisSpec>& specs,
               std::span<const double> covariates, double t);
double predict(const Eigen::Ref<const Eigen::VectorXd>& alpha, const std::vector<BasisSpec>& specs,
               std::span<const double> covariates, double t);

}  // namespace tvcm
