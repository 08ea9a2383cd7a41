#include "tvcm/frequentist.hpp"

#include <cmath>
#include <sstream>

#include "tvcm/error.hpp"

namespace tvcm {

WlsFit fit_wls(const DesignBundle& bundle) {
  const Eigen::Index N = bundle.Z.rows();
  const Eigen::Index p = bundle.Z.cols();
  if (N <= p)
    throw Error(ErrorKind::InsufficientData, "need N > p for a WLS fit (N=" + std::to_string(N) +
                                                 ", p=" + std::to_string(p) + ")");
  if ((bundle.weights.array() <= 0.0).any())
    throw Error(ErrorKind::InvalidArgument, "weights must be positive");

  const Eigen::VectorXd sqrt_w = bundle.weights.array().sqrt();
  Eigen::MatrixXd zt = sqrt_w.asDiagonal() * bundle.Z;
  const Eigen::VectorXd yt = sqrt_w.cwiseProduct(bundle.y);

  Eigen::VectorXd scale = zt.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (!(scale(j) > 0.0) || !std::isfinite(scale(j))) {
      throw Error(ErrorKind::SingularDesign,
                  "design column " + std::to_string(j) + " is identically zero or not finite");
    }
  }
  zt = zt * scale.cwiseInverse().asDiagonal();

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(zt);
  const Eigen::MatrixXd R = qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(R).singularValues();
  const double ratio = sv(p - 1) > 0.0 ? sv(0) / sv(p - 1) : INFINITY;
  const double condition = ratio * ratio;
  if (!(condition <= kSingularConditionLimit)) {
    std::ostringstream msg;
    msg << "Z^T W Z is numerically singular: condition estimate " << condition
        << " exceeds " << kSingularConditionLimit << "; reduce the number of knots";
    throw Error(ErrorKind::SingularDesign, msg.str());
  }

  const Eigen::MatrixXd q_thin = qr.householderQ() * Eigen::MatrixXd::Identity(N, p);
  const Eigen::VectorXd qty = q_thin.transpose() * yt;
  const auto Ru = R.triangularView<Eigen::Upper>();
  const Eigen::VectorXd scaled_alpha = Ru.solve(qty);
  const Eigen::MatrixXd r_inv = Ru.solve(Eigen::MatrixXd::Identity(p, p));

  WlsFit fit;
  fit.alpha_hat = scaled_alpha.cwiseQuotient(scale);
  const Eigen::MatrixXd scaled_r_inv = scale.cwiseInverse().asDiagonal() * r_inv;
  fit.gram_inverse = scaled_r_inv * scaled_r_inv.transpose();
  fit.fitted = bundle.Z * fit.alpha_hat;
  fit.residuals = bundle.y - fit.fitted;
  fit.weighted_rss = bundle.weights.dot(fit.residuals.cwiseAbs2());
  fit.sigma2_hat = fit.weighted_rss / static_cast<double>(N - p);
  fit.hat_trace = q_thin.squaredNorm();
  fit.condition = condition;
  return fit;
}

double predict(const Eigen::Ref<const Eigen::VectorXd>& alpha, const std::vector<BasisSpec>& specs,
               std::span<const double> covariates, double t) {
  if (covariates.size() != specs.size())
    throw Error(ErrorKind::DimensionMismatch,
                "covariate vector must have d+1 entries (intercept included)");
  double value = 0.0;
  Eigen::Index offset = 0;
  for (std::size_t r = 0; r < specs.size(); ++r) {
    const auto width = static_cast<Eigen::Index>(specs[r].dimension());
    if (offset + width > alpha.size())
      throw Error(ErrorKind::DimensionMismatch, "coefficient vector shorter than the basis");
    value += covariates[r] * eval_basis(specs[r], t).dot(alpha.segment(offset, width));
    offset += width;
  }
  if (offset != alpha.size())
    throw Error(ErrorKind::DimensionMismatch, "coefficient vector longer than the basis");
  return value;
}

double predict(const WlsFit& fit, const std::vector<BasisSpec>& specs,
               std::span<const double> covariates, double t) {
  return predict(fit.alpha_hat, specs, covariates, t);
}

}  // namespace tvcm
