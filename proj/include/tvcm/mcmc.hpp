#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "tvcm/basis.hpp"
#include "tvcm/draws.hpp"
#include "tvcm/frequentist.hpp"
#include "tvcm/rng.hpp"

namespace tvcm {

/// alpha | sigma^2 ~ N(0, sigma^2 I_p / ridge), sigma^2 ~ InvGamma(a_sigma, b_sigma).
/// The default ridge is 1/N.
struct PriorSpec {
  double a_sigma = 2.0;
  double b_sigma = 1.0;
  double ridge = 1.0;

  void validate() const;
};

/// Row-scaled design and response: Z~ = sqrt(W) Z, y~ = sqrt(W) y.
struct WhitenedData {
  Eigen::MatrixXd Z;
  Eigen::VectorXd y;

  Eigen::Index rows() const { return Z.rows(); }
  Eigen::Index cols() const { return Z.cols(); }
};

WhitenedData whiten(const DesignBundle& bundle);

/// a_sigma = 2, b_sigma = sigma2_hat, ridge = 1/N. A zero sigma2_hat (noiseless
/// data) is floored at 1e-8 and a warning is written to std::clog.
PriorSpec default_prior(const WlsFit& fit);

struct GibbsOptions {
  int iterations = 2500;  // total, burn-in included
  int burnin = 500;
  /// Hold sigma^2 at this value and only sample alpha.
  std::optional<double> fixed_sigma2;
};

/// Two-block Gibbs sampler: sigma^2 | alpha then alpha | sigma^2, started at
/// the ridge solution. Returns the `iterations - burnin` retained draws.
PosteriorDraws gibbs(const WhitenedData& data, const PriorSpec& prior, const GibbsOptions& options,
                     Rng& rng);

struct DicResult {
  double dic = 0.0;
  double p_dic = 0.0;
};

/// Gaussian log-likelihood of the whitened model at (alpha, sigma^2).
double log_likelihood(const WhitenedData& data, const Eigen::Ref<const Eigen::VectorXd>& alpha,
                      double sigma2);

/// DIC = -2 log p(y | posterior mean) + 2 p_DIC,
/// p_DIC = 2 log p(y | posterior mean) - 2 E[log p(y | draw)].
DicResult dic(const PosteriorDraws& draws, const WhitenedData& data);

}  // namespace tvcm
