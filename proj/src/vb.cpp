#include "tvcm/vb.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/digamma.hpp>

#include "tvcm/error.hpp"

namespace tvcm {

namespace {

struct Sufficient {
  Eigen::MatrixXd M;  // Z~^T Z~ + ridge I
  Eigen::VectorXd zty;
  double yty = 0.0;
  double N = 0.0;
  double p = 0.0;
};

Sufficient sufficient_stats(const WhitenedData& data, const PriorSpec& prior) {
  Sufficient s;
  s.M = data.Z.transpose() * data.Z;
  s.M.diagonal().array() += prior.ridge;
  s.zty = data.Z.transpose() * data.y;
  s.yty = data.y.squaredNorm();
  s.N = static_cast<double>(data.rows());
  s.p = static_cast<double>(data.cols());
  return s;
}

// b_sigma + (||y||^2 - 2 y^T Z m + m^T M m + tr(M V)) / 2
double expected_rate(const Sufficient& s, const PriorSpec& prior, const Eigen::VectorXd& m,
                     double trace_mv) {
  return prior.b_sigma + 0.5 * (s.yty - 2.0 * s.zty.dot(m) + m.dot(s.M * m) + trace_mv);
}

double elbo_value(const Sufficient& s, const PriorSpec& prior, double a_star, double b_star,
                  double logdet_v, double rate) {
  using boost::math::digamma;
  if (!(b_star > 0.0)) throw Error(ErrorKind::Numerical, "ELBO needs b* > 0");
  const double log_b = std::log(b_star);
  const double psi = digamma(a_star);
  return -0.5 * (s.N * std::log(2.0 * std::numbers::pi) + s.p * std::log(1.0 / prior.ridge) - s.p) +
         prior.a_sigma * std::log(prior.b_sigma) - std::lgamma(prior.a_sigma) +
         a_star * (1.0 + log_b - 2.0 * psi) + std::lgamma(a_star) + 2.0 * (log_b - psi) +
         0.5 * logdet_v - (a_star / b_star) * rate;
}

}  // namespace

VariationalPosterior vb_fit(const WhitenedData& data, const PriorSpec& prior,
                            const VbOptions& options) {
  prior.validate();
  if (!(options.tol > 0.0) || options.max_iters < 1)
    throw Error(ErrorKind::InvalidArgument, "VB needs tol > 0 and max_iters >= 1");
  const Sufficient s = sufficient_stats(data, prior);
  const Eigen::LLT<Eigen::MatrixXd> chol(s.M);
  if (chol.info() != Eigen::Success)
    throw Error(ErrorKind::Numerical, "Cholesky of Z~^T Z~ + ridge I failed");
  const Eigen::Index p = data.cols();
  const Eigen::MatrixXd m_inv = chol.solve(Eigen::MatrixXd::Identity(p, p));
  const double logdet_m = 2.0 * chol.matrixLLT().diagonal().array().log().sum();

  VariationalPosterior post;
  post.a_star = prior.a_sigma + 0.5 * s.N + 0.5 * s.p;
  post.b_star = prior.b_sigma;
  for (int it = 1; it <= options.max_iters; ++it) {
    const double b_prev = post.b_star;
    post.V_star = (b_prev / post.a_star) * m_inv;
    post.m_star = (post.a_star / b_prev) * (post.V_star * s.zty);
    // tr(M V*) = p b_prev / a*, written out to keep the update literal.
    const double trace_mv = (s.M.cwiseProduct(post.V_star)).sum();
    post.b_star = expected_rate(s, prior, post.m_star, trace_mv);
    const double logdet_v = s.p * std::log(b_prev / post.a_star) - logdet_m;
    const double value = elbo_value(s, prior, post.a_star, post.b_star, logdet_v, post.b_star);
    if (!std::isfinite(value) || !post.m_star.allFinite() || !std::isfinite(post.b_star))
      throw Error(ErrorKind::Numerical, "VB update produced a non-finite value");
    post.elbo_trace.push_back(value);
    post.iterations = it;
    if (it > 1 && value - post.elbo_trace[post.elbo_trace.size() - 2] < options.tol) {
      post.converged = true;
      break;
    }
  }
  return post;
}

double elbo(const VariationalPosterior& state, const WhitenedData& data, const PriorSpec& prior) {
  const Sufficient s = sufficient_stats(data, prior);
  const Eigen::LLT<Eigen::MatrixXd> chol_v(state.V_star);
  if (chol_v.info() != Eigen::Success)
    throw Error(ErrorKind::Numerical, "V* is not positive definite");
  const double logdet_v = 2.0 * chol_v.matrixLLT().diagonal().array().log().sum();
  const double trace_mv = (s.M.cwiseProduct(state.V_star)).sum();
  const double rate = expected_rate(s, prior, state.m_star, trace_mv);
  return elbo_value(s, prior, state.a_star, state.b_star, logdet_v, rate);
}

PosteriorDraws vb_sample(const VariationalPosterior& post, int B, Rng& rng) {
  if (B < 1) throw Error(ErrorKind::InvalidArgument, "vb_sample needs B >= 1");
  const Eigen::Index p = post.m_star.size();
  const Eigen::LLT<Eigen::MatrixXd> chol(post.V_star);
  if (chol.info() != Eigen::Success)
    throw Error(ErrorKind::Numerical, "V* is not positive definite");
  const Eigen::MatrixXd L = chol.matrixL();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::gamma_distribution<double> gamma(post.a_star, 1.0);

  PosteriorDraws draws;
  draws.source = DrawSource::Variational;
  draws.seed = rng.seed();
  draws.alpha.resize(B, p);
  draws.sigma2.resize(B);
  Eigen::VectorXd z(p);
  for (int b = 0; b < B; ++b) {
    draws.sigma2(b) = post.b_star / gamma(rng);
    for (Eigen::Index j = 0; j < p; ++j) z(j) = normal(rng);
    draws.alpha.row(b) = (post.m_star + L.triangularView<Eigen::Lower>() * z).transpose();
  }
  return draws;
}

}  // namespace tvcm
