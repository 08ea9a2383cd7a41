#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tvcm/basis.hpp"

namespace tvcm {

enum class DrawSource { Bootstrap, Gibbs, Variational };

std::string to_string(DrawSource source);

/// B joint draws of (alpha, sigma^2) from any of the three engines. Row b of
/// `alpha` is draw b.
struct PosteriorDraws {
  Eigen::MatrixXd alpha;
  Eigen::VectorXd sigma2;
  DrawSource source = DrawSource::Bootstrap;
  std::uint64_t seed = 0;
  int chain_id = 0;

  Eigen::Index size() const { return alpha.rows(); }
  Eigen::Index num_params() const { return alpha.cols(); }
  Eigen::VectorXd alpha_mean() const { return alpha.colwise().mean().transpose(); }
  double sigma2_mean() const { return sigma2.mean(); }
};

/// Percentile interval (q_{a/2}, q_{1-a/2}), a = 1 - level.
std::pair<double, double> percentile_interval(std::span<const double> samples, double level);

/// Draws of beta_r on `grid`: result(b, j) = beta_r^{(b)}(grid[j]).
Eigen::MatrixXd curve_draws(const PosteriorDraws& draws, const std::vector<BasisSpec>& specs,
                            std::size_t r, std::span<const double> grid);

struct CurveBand {
  std::vector<double> grid;
  Eigen::VectorXd mean;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

/// Pointwise mean and percentile band of beta_r over `grid`.
CurveBand pointwise_band(const PosteriorDraws& draws, const std::vector<BasisSpec>& specs,
                         std::size_t r, std::span<const double> grid, double level);

/// Flat `draw,param_index,value` CSV; param_index p holds sigma^2.
void write_draws_csv(const PosteriorDraws& draws, std::ostream& out);

}  // namespace tvcm
