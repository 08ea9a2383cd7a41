#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tvcm/draws.hpp"
#include "tvcm/mcmc.hpp"
#include "tvcm/rng.hpp"

namespace tvcm {

/// Mean-field posterior q(alpha) = N(m*, V*), q(sigma^2) = InvGamma(a*, b*).
struct VariationalPosterior {
  Eigen::VectorXd m_star;
  Eigen::MatrixXd V_star;
  double a_star = 0.0;
  double b_star = 0.0;
  std::vector<double> elbo_trace;
  bool converged = false;
  int iterations = 0;
};

struct VbOptions {
  double tol = 1e-6;
  int max_iters = 500;
};

/// Coordinate ascent: V* <- (b*/a*) M^{-1}, m* <- (a*/b*) V* Z~^T y~, then the
/// b* update, with M = Z~^T Z~ + ridge I factorized once. Starts from
/// b* = b_sigma and stops when the ELBO rises by less than `tol`.
VariationalPosterior vb_fit(const WhitenedData& data, const PriorSpec& prior,
                            const VbOptions& options = {});

/// Closed-form evidence lower bound of `state`.
double elbo(const VariationalPosterior& state, const WhitenedData& data, const PriorSpec& prior);

/// B independent draws: alpha ~ N(m*, V*), sigma^2 ~ InvGamma(a*, b*).
PosteriorDraws vb_sample(const VariationalPosterior& post, int B, Rng& rng);

}  // namespace tvcm
