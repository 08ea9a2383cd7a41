#include "tvcm/mcmc.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include "tvcm/error.hpp"

namespace tvcm {

void PriorSpec::validate() const {
  if (!(a_sigma > 0.0) || !(b_sigma > 0.0) || !(ridge > 0.0))
    throw Error(ErrorKind::InvalidArgument, "prior parameters a_sigma, b_sigma, ridge must be > 0");
}

WhitenedData whiten(const DesignBundle& bundle) {
  if ((bundle.weights.array() <= 0.0).any())
    throw Error(ErrorKind::InvalidArgument, "whitening needs strictly positive weights");
  const Eigen::VectorXd s = bundle.weights.array().sqrt();
  return WhitenedData{s.asDiagonal() * bundle.Z, s.cwiseProduct(bundle.y)};
}

PriorSpec default_prior(const WlsFit& fit) {
  PriorSpec prior;
  prior.a_sigma = 2.0;
  prior.b_sigma = fit.sigma2_hat;
  if (!(prior.b_sigma > 0.0)) {
    std::clog << "warning: sigma2_hat is zero (noiseless fit); using b_sigma = 1e-8\n";
    prior.b_sigma = 1e-8;
  }
  prior.ridge = 1.0 / static_cast<double>(fit.num_observations());
  return prior;
}

PosteriorDraws gibbs(const WhitenedData& data, const PriorSpec& prior, const GibbsOptions& options,
                     Rng& rng) {
  prior.validate();
  if (!(options.iterations > options.burnin && options.burnin >= 0))
    throw Error(ErrorKind::InvalidArgument, "Gibbs needs iterations > burnin >= 0");
  const Eigen::Index N = data.rows();
  const Eigen::Index p = data.cols();

  Eigen::MatrixXd precision = data.Z.transpose() * data.Z;
  precision.diagonal().array() += prior.ridge;
  const Eigen::LLT<Eigen::MatrixXd> chol(precision);
  if (chol.info() != Eigen::Success)
    throw Error(ErrorKind::Numerical, "Cholesky of Z~^T Z~ + ridge I failed (NaN input?)");
  const Eigen::VectorXd mean = chol.solve(data.Z.transpose() * data.y);
  const auto upper = chol.matrixU();

  const double shape = prior.a_sigma + 0.5 * static_cast<double>(N) + 0.5 * static_cast<double>(p);
  std::gamma_distribution<double> gamma(shape, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  const int kept = options.iterations - options.burnin;
  PosteriorDraws draws;
  draws.source = DrawSource::Gibbs;
  draws.seed = rng.seed();
  draws.alpha.resize(kept, p);
  draws.sigma2.resize(kept);

  Eigen::VectorXd alpha = mean;
  Eigen::VectorXd z(p);
  for (int it = 0; it < options.iterations; ++it) {
    double sigma2;
    if (options.fixed_sigma2) {
      sigma2 = *options.fixed_sigma2;
    } else {
      const double rate = prior.b_sigma + 0.5 * (data.y - data.Z * alpha).squaredNorm() +
                          0.5 * prior.ridge * alpha.squaredNorm();
      sigma2 = rate / gamma(rng);
    }
    for (Eigen::Index j = 0; j < p; ++j) z(j) = normal(rng);
    // U^T U = precision, so U^{-1} z ~ N(0, precision^{-1}).
    alpha = mean + std::sqrt(sigma2) * upper.solve(z);
    if (!std::isfinite(sigma2) || !alpha.allFinite())
      throw Error(ErrorKind::Numerical, "Gibbs draw is not finite");
    if (it >= options.burnin) {
      draws.alpha.row(it - options.burnin) = alpha.transpose();
      draws.sigma2(it - options.burnin) = sigma2;
    }
  }
  return draws;
}

double log_likelihood(const WhitenedData& data, const Eigen::Ref<const Eigen::VectorXd>& alpha,
                      double sigma2) {
  const auto N = static_cast<double>(data.rows());
  const double rss = (data.y - data.Z * alpha).squaredNorm();
  return -0.5 * N * std::log(2.0 * std::numbers::pi * sigma2) - 0.5 * rss / sigma2;
}

DicResult dic(const PosteriorDraws& draws, const WhitenedData& data) {
  if (draws.size() < 2) throw Error(ErrorKind::InvalidArgument, "DIC needs at least 2 draws");
  // Means are taken as first draw + mean offset so a zero-spread chain
  // reproduces its draw bit-for-bit.
  const Eigen::RowVectorXd first = draws.alpha.row(0);
  const Eigen::VectorXd alpha_bar =
      (first + (draws.alpha.rowwise() - first).colwise().mean()).transpose();
  const double sigma2_bar = draws.sigma2(0) + (draws.sigma2.array() - draws.sigma2(0)).mean();
  const double at_mean = log_likelihood(data, alpha_bar, sigma2_bar);
  double gap = 0.0;
  for (Eigen::Index b = 0; b < draws.size(); ++b)
    gap += at_mean - log_likelihood(data, draws.alpha.row(b).transpose(), draws.sigma2(b));
  DicResult out;
  out.p_dic = 2.0 * gap / static_cast<double>(draws.size());
  out.dic = -2.0 * at_mean + 2.0 * out.p_dic;
  return out;
}

}  // namespace tvcm
