#include "tvcm/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "tvcm/error.hpp"
#include "tvcm/rng.hpp"

namespace tvcm {

std::string to_string(CorrelationLevel level) {
  switch (level) {
    case CorrelationLevel::Weak: return "weak";
    case CorrelationLevel::Medium: return "medium";
    case CorrelationLevel::High: return "high";
  }
  return "unknown";
}

std::string to_string(TrendShape shape) { return shape == TrendShape::Exp ? "exp" : "trig"; }

CorrelationLevel parse_correlation_level(const std::string& name) {
  if (name == "weak") return CorrelationLevel::Weak;
  if (name == "medium") return CorrelationLevel::Medium;
  if (name == "high" || name == "strong") return CorrelationLevel::High;
  throw Error(ErrorKind::InvalidArgument, "unknown correlation level '" + name + "'");
}

TrendShape parse_trend_shape(const std::string& name) {
  if (name == "exp") return TrendShape::Exp;
  if (name == "trig") return TrendShape::Trig;
  throw Error(ErrorKind::InvalidArgument, "unknown trend shape '" + name + "'");
}

double random_intercept_variance(CorrelationLevel level) {
  switch (level) {
    case CorrelationLevel::Weak: return 0.01;
    case CorrelationLevel::Medium: return 0.04;
    case CorrelationLevel::High: return 0.09;
  }
  return 0.01;
}

std::pair<double, double> correlation_bounds(CorrelationLevel level) {
  const double s0 = random_intercept_variance(level);
  const double s = kScenario1NoiseVariance;
  return {(s0 - s) / (s0 + 2.0 * s), (s0 + s) / (s0 + 2.0 * s)};
}

double scenario1_beta(TrendShape shape, double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return shape == TrendShape::Exp ? 2.0 * std::exp(t)
                                  : 1.0 + std::cos(two_pi * t) + std::sin(two_pi * t);
}

double scenario2_beta(std::size_t r, double t) {
  constexpr double pi = std::numbers::pi;
  switch (r) {
    case 0: return 3.5 + 6.5 * std::sin(t * pi / 60.0);
    case 1: return -0.2 - 1.6 * std::cos((t - 30.0) * pi / 60.0);
    case 2: {
      const double u = (30.0 - t) / 10.0;
      return 0.25 - 0.0074 * u * u * u;
    }
    default: throw Error(ErrorKind::InvalidArgument, "scenario 2 has coefficients 0..2");
  }
}

double scenario2_error_covariance(double s, double t) { return 0.0625 * std::exp(-std::abs(s - t)); }

double SimTruth::beta(std::size_t r, double t) const {
  if (scenario == 1) {
    if (r != 0) throw Error(ErrorKind::InvalidArgument, "scenario 1 has only beta_0");
    return scenario1_beta(shape, t);
  }
  return scenario2_beta(r, t);
}

double SimTruth::range(std::size_t r) const {
  const Eigen::VectorXd& b = beta_true.at(r);
  return b.maxCoeff() - b.minCoeff();
}

namespace {

void check_common(int n, int m, double missing_rate) {
  if (n < 1 || m < 1) throw Error(ErrorKind::InvalidArgument, "simulation needs n, m >= 1");
  if (!(missing_rate >= 0.0 && missing_rate < 1.0))
    throw Error(ErrorKind::InvalidArgument, "missing rate must lie in [0, 1)");
}

// Indices of retained schedule slots; redrawn until at least one survives.
std::vector<int> draw_mask(int slots, double missing_rate, Rng& rng) {
  std::bernoulli_distribution keep(1.0 - missing_rate);
  std::vector<int> kept;
  while (kept.empty()) {
    for (int j = 0; j < slots; ++j)
      if (keep(rng)) kept.push_back(j);
  }
  return kept;
}

std::vector<Eigen::VectorXd> tabulate(const LongitudinalDataset& data, const SimTruth& truth,
                                      std::size_t coefficients) {
  const std::vector<double> times = data.times();
  std::vector<Eigen::VectorXd> out(coefficients, Eigen::VectorXd(static_cast<Eigen::Index>(times.size())));
  for (std::size_t r = 0; r < coefficients; ++r)
    for (std::size_t k = 0; k < times.size(); ++k)
      out[r](static_cast<Eigen::Index>(k)) = truth.beta(r, times[k]);
  return out;
}

}  // namespace

SimDataset gen_scenario1(const Scenario1Config& config, std::uint64_t seed) {
  check_common(config.n, config.m, config.missing_rate);
  const double s0 = std::sqrt(random_intercept_variance(config.level));
  const double s = std::sqrt(kScenario1NoiseVariance);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const Rng master(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<SubjectRecord> subjects;
  subjects.reserve(static_cast<std::size_t>(config.n));
  for (int i = 1; i <= config.n; ++i) {
    Rng rng = master.split(static_cast<std::uint64_t>(i));
    const double a0 = s0 * normal(rng);
    const double a1 = s * normal(rng);
    const double a2 = s * normal(rng);
    const std::vector<int> kept = draw_mask(config.m, config.missing_rate, rng);
    SubjectRecord subject{std::to_string(i), {}};
    for (int slot : kept) {
      const double t = static_cast<double>(slot + 1) / (config.m + 1);
      const double scale =
          s * (1.0 - std::exp(-0.5 * t - static_cast<double>(i) / config.n));
      const double effect = a0 + a1 * std::cos(two_pi * t) + a2 * std::sin(two_pi * t);
      subject.observations.push_back(
          Observation{t, scenario1_beta(config.shape, t) + effect + scale * normal(rng), {}});
    }
    subjects.push_back(std::move(subject));
  }

  LongitudinalDataset data(std::move(subjects), 0, TimeDomain{0.0, 1.0});
  SimTruth truth;
  truth.scenario = 1;
  truth.seed = seed;
  truth.n = config.n;
  truth.m = config.m;
  truth.missing_rate = config.missing_rate;
  truth.level = config.level;
  truth.shape = config.shape;
  truth.beta_true = tabulate(data, truth, 1);
  return SimDataset{std::move(data), std::move(truth)};
}

SimDataset gen_scenario2(const Scenario2Config& config, std::uint64_t seed) {
  check_common(config.n, config.m, config.missing_rate);
  const Rng master(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);

  std::vector<SubjectRecord> subjects;
  subjects.reserve(static_cast<std::size_t>(config.n));
  for (int i = 1; i <= config.n; ++i) {
    Rng rng = master.split(static_cast<std::uint64_t>(i));
    const double x1 = coin(rng) ? 1.0 : 0.0;
    const double x2 = 4.0 * normal(rng);
    const std::vector<int> kept = draw_mask(config.m + 1, config.missing_rate, rng);
    const auto k = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixXd cov(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b)
        cov(a, b) = scenario2_error_covariance(kept[static_cast<std::size_t>(a)],
                                               kept[static_cast<std::size_t>(b)]);
    const Eigen::LLT<Eigen::MatrixXd> chol(cov);
    if (chol.info() != Eigen::Success)
      throw Error(ErrorKind::Numerical, "error covariance factorization failed");
    Eigen::VectorXd z(k);
    for (Eigen::Index a = 0; a < k; ++a) z(a) = normal(rng);
    const Eigen::VectorXd eps = chol.matrixL() * z;

    SubjectRecord subject{std::to_string(i), {}};
    for (Eigen::Index a = 0; a < k; ++a) {
      const double t = kept[static_cast<std::size_t>(a)];
      const double y =
          scenario2_beta(0, t) + scenario2_beta(1, t) * x1 + scenario2_beta(2, t) * x2 + eps(a);
      subject.observations.push_back(Observation{t, y, {x1, x2}});
    }
    subjects.push_back(std::move(subject));
  }

  LongitudinalDataset data(std::move(subjects), 2,
                           TimeDomain{0.0, static_cast<double>(config.m)});
  SimTruth truth;
  truth.scenario = 2;
  truth.seed = seed;
  truth.n = config.n;
  truth.m = config.m;
  truth.missing_rate = config.missing_rate;
  truth.beta_true = tabulate(data, truth, 3);
  return SimDataset{std::move(data), std::move(truth)};
}

}  // namespace tvcm
