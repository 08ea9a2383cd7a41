#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tvcm/data.hpp"

namespace tvcm {

enum class CorrelationLevel { Weak, Medium, High };
enum class TrendShape { Exp, Trig };

std::string to_string(CorrelationLevel level);
std::string to_string(TrendShape shape);
CorrelationLevel parse_correlation_level(const std::string& name);
TrendShape parse_trend_shape(const std::string& name);

/// Random-effect variance sigma_0^2 for a level; sigma_1^2 = sigma_2^2 =
/// sigma_eps^2 = 0.01 throughout.
double random_intercept_variance(CorrelationLevel level);
inline constexpr double kScenario1NoiseVariance = 0.01;

/// Bounds of the within-subject correlation,
/// ((s0 - s) / (s0 + 2 s), (s0 + s) / (s0 + 2 s)).
std::pair<double, double> correlation_bounds(CorrelationLevel level);

struct Scenario1Config {
  int n = 50;
  int m = 30;
  double missing_rate = 0.5;
  CorrelationLevel level = CorrelationLevel::Weak;
  TrendShape shape = TrendShape::Exp;
};

struct Scenario2Config {
  int n = 50;
  int m = 31;  // schedule is the integer times 0..m
  double missing_rate = 0.5;
};

/// beta_0(t) of scenario 1.
double scenario1_beta(TrendShape shape, double t);
/// beta_r(t), r = 0, 1, 2, of scenario 2.
double scenario2_beta(std::size_t r, double t);

struct SimTruth {
  int scenario = 1;
  /// beta_true[r](row) = beta_r(t_row) in dataset order.
  std::vector<Eigen::VectorXd> beta_true;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  double missing_rate = 0.0;
  // scenario 1 only
  CorrelationLevel level = CorrelationLevel::Weak;
  TrendShape shape = TrendShape::Exp;

  /// beta_r evaluated at arbitrary t.
  double beta(std::size_t r, double t) const;
  /// max - min of beta_r over the design times.
  double range(std::size_t r) const;
};

struct SimDataset {
  LongitudinalDataset data;
  SimTruth truth;
};

/// y_i(t) = beta_0(t) + a_i0 + a_i1 cos(2 pi t) + a_i2 sin(2 pi t) + eps_i(t) at
/// t_j = j/(m+1), eps_i(t) ~ N(0, s^2 (1 - exp(-0.5 t - i/n))^2) independent.
/// Subject i draws from substream i of `seed`; subjects whose every point is
/// dropped redraw their mask. Time domain is [0, 1].
SimDataset gen_scenario1(const Scenario1Config& config, std::uint64_t seed);

/// y = beta_0 + beta_1 x_1 + beta_2 x_2 + eps with x_1 ~ Bernoulli(0.5),
/// x_2 ~ N(0, 16) per subject, eps a Gaussian process with covariance
/// 0.0625 exp(-|s - t|). Time domain is [0, m].
SimDataset gen_scenario2(const Scenario2Config& config, std::uint64_t seed);

/// 0.0625 exp(-|s - t|)
double scenario2_error_covariance(double s, double t);

}  // namespace tvcm
