#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tvcm/data.hpp"

namespace tvcm {

enum class BasisFamily { RadialGaussian, TruncatedPower };

std::string to_string(BasisFamily family);
BasisFamily parse_basis_family(const std::string& name);

/// Expansion of one coefficient curve: polynomials 1, t, ..., t^g followed by
/// one function per knot, either exp(-(|t-k|/h)^2) or (t-k)_+^g.
struct BasisSpec {
  BasisFamily family = BasisFamily::RadialGaussian;
  int degree = 2;
  std::vector<double> knots;
  double bandwidth = 1.0;  // radial only

  std::size_t num_knots() const { return knots.size(); }
  /// p_r = k + g + 1
  std::size_t dimension() const { return knots.size() + static_cast<std::size_t>(degree) + 1; }

  /// Throws on negative degree, non-increasing knots or a non-positive radial
  /// bandwidth. With a domain, also requires every knot to lie inside it.
  void validate() const;
  void validate(const TimeDomain& domain) const;
};

/// k interior knots a + l(b-a)/(k+1), l = 1..k.
std::vector<double> place_knots_equal(const TimeDomain& domain, int k);

/// Knots at the l/(k+1) empirical quantiles of `times` (linear interpolation
/// between order statistics). Tied quantiles are an error.
std::vector<double> place_knots_quantile(std::span<const double> times, int k);

/// Equal-spaced knots over `domain` with the default radial bandwidth
/// (b-a)/(k+1), or the given one when `bandwidth > 0`.
BasisSpec make_spec(BasisFamily family, int degree, int k, const TimeDomain& domain,
                    double bandwidth = 0.0);

/// One spec per coefficient r = 0..d sharing family, degree and domain.
std::vector<BasisSpec> make_specs(BasisFamily family, int degree, std::span<const int> knots,
                                  const TimeDomain& domain, double bandwidth = 0.0);

Eigen::VectorXd eval_basis(const BasisSpec& spec, double t);

/// Assembled linear model y = Z alpha + eps. Rows follow dataset order; the
/// columns of coefficient r occupy [offset(r), offset(r) + block_dims[r]).
struct DesignBundle {
  Eigen::MatrixXd Z;
  Eigen::VectorXd weights;
  Eigen::VectorXd y;
  std::vector<std::size_t> block_dims;
  std::vector<BasisSpec> specs;

  Eigen::Index rows() const { return Z.rows(); }
  Eigen::Index cols() const { return Z.cols(); }
  std::size_t offset(std::size_t r) const;
};

DesignBundle build_design(const LongitudinalDataset& data, const std::vector<BasisSpec>& specs,
                          const Eigen::VectorXd& weights);

/// beta_r on `grid` for coefficient block alpha_r.
Eigen::VectorXd coefficient_curve(const BasisSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& alpha_r,
                                  std::span<const double> grid);

/// Block r of a full coefficient vector laid out as in `specs`.
Eigen::VectorXd alpha_block(const std::vector<BasisSpec>& specs,
                            const Eigen::Ref<const Eigen::VectorXd>& alpha, std::size_t r);

/// beta_r(t_ij) for every observation, in dataset order.
Eigen::VectorXd coefficient_at_design(const LongitudinalDataset& data,
                                      const std::vector<BasisSpec>& specs,
                                      const Eigen::Ref<const Eigen::VectorXd>& alpha, std::size_t r);

/// `count` equally spaced points spanning the closed domain.
std::vector<double> uniform_grid(const TimeDomain& domain, std::size_t count);

}  // namespace tvcm
