#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "tvcm/error.hpp"
#include "tvcm/frequentist.hpp"
#include "tvcm/selection.hpp"
#include "tvcm/simgen.hpp"

using namespace tvcm;

namespace {

// n subjects, m scheduled points on (0, 1), half kept, y = quadratic + noise.
LongitudinalDataset quadratic_data(int n, int m, double noise_sd, std::uint64_t seed, bool balanced = false) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, noise_sd);
  std::bernoulli_distribution keep(0.5);
  std::vector<SubjectRecord> subjects;
  for (int i = 0; i < n; ++i) {
    SubjectRecord s{std::to_string(i), {}};
    for (int j = 1; j <= m; ++j) {
      if (!balanced && !keep(rng)) continue;
      const double t = double(j) / (m + 1) + (balanced ? 0.003 * i : 0.0);
      s.observations.push_back({t, 1.0 + 2.0 * t - 3.0 * t * t + normal(rng), {}});
    }
    if (s.observations.empty()) s.observations.push_back({0.5, 1.25 + normal(rng), {}});
    subjects.push_back(s);
  }
  return LongitudinalDataset(subjects, 0, TimeDomain{0.0, 1.0});
}

}  // namespace

TEST_CASE("PCV by hand") {
  const LongitudinalDataset data({{"a", {{0.0, 1.0, {}}, {0.5, 2.0, {}}, {1.0, 3.0, {}}}}}, 0);
  const auto bundle = build_design(data, {BasisSpec{BasisFamily::TruncatedPower, 0, {}, 1.0}},
                                   subject_uniform_weights(data));
  const auto fit = fit_wls(bundle);
  CHECK(fit.weighted_rss == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(pcv(bundle, fit) == doctest::Approx(1.5).epsilon(1e-14));

  WlsFit saturated = fit;
  saturated.hat_trace = 3.0;
  CHECK(std::isinf(pcv(bundle, saturated)));
}

TEST_CASE("hat trace equals p via the explicit smoothing matrix") {
  Rng rng(12);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    DesignBundle b;
    b.Z.resize(12, 5);
    b.y.resize(12);
    b.weights.resize(12);
    for (int r = 0; r < 12; ++r) {
      for (int c = 0; c < 5; ++c) b.Z(r, c) = normal(rng);
      b.y(r) = normal(rng);
      b.weights(r) = unif(rng);
    }
    b.block_dims = {5};
    const auto fit = fit_wls(b);
    const Eigen::MatrixXd W = b.weights.asDiagonal();
    const Eigen::MatrixXd A = b.Z * (b.Z.transpose() * W * b.Z).inverse() * b.Z.transpose() * W;
    CHECK(A.trace() == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(fit.hat_trace == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(pcv(b, fit) == doctest::Approx(fit.weighted_rss / std::pow(1.0 - 5.0 / 12.0, 2)).epsilon(1e-12));
  }
}

TEST_CASE("polynomial data selects no knots") {
  int zero = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto data = quadratic_data(50, 12, 0.1, 500 + seed);
    const auto sel = select_knots(data, SelectionOptions{BasisFamily::TruncatedPower, 2, 4,
                                                         SearchStrategy::FullGrid, 0.0});
    if (sel.knots[0] == 0) ++zero;
  }
  INFO("k = 0 in " << zero << "/100");
  CHECK(zero >= 90);
}

TEST_CASE("search strategies") {
  const auto data = quadratic_data(20, 10, 0.2, 3);
  SelectionOptions opt{BasisFamily::RadialGaussian, 2, 2, SearchStrategy::FullGrid, 0.0};
  const auto grid = select_knots(data, opt);
  CHECK(grid.candidates.size() == 3);
  CHECK(grid.strategy == SearchStrategy::FullGrid);
  for (int k = 0; k <= 2; ++k) CHECK(grid.candidates[std::size_t(k)].knots == std::vector<int>{k});

  for (int kmax : {0, 3, 6}) {
    opt.k_max = kmax;
    opt.strategy = SearchStrategy::FullGrid;
    const auto a = select_knots(data, opt);
    opt.strategy = SearchStrategy::Coordinate;
    const auto b = select_knots(data, opt);
    CHECK(a.knots == b.knots);
    CHECK(a.pcv == b.pcv);
  }

  CHECK(resolve_strategy(SearchStrategy::Auto, 2, 10) == SearchStrategy::FullGrid);
  CHECK(resolve_strategy(SearchStrategy::Auto, 3, 10) == SearchStrategy::Coordinate);
  CHECK(resolve_strategy(SearchStrategy::Auto, 1, 11) == SearchStrategy::Coordinate);
  CHECK(resolve_strategy(SearchStrategy::Coordinate, 0, 1) == SearchStrategy::Coordinate);
}

TEST_CASE("full grid on two coefficients is deterministic and minimal") {
  const auto sim = gen_scenario2(Scenario2Config{20, 31, 0.5}, 5);
  SelectionOptions opt{BasisFamily::RadialGaussian, 2, 3, SearchStrategy::FullGrid, 0.0};
  const auto a = select_knots(sim.data, opt);
  const auto b = select_knots(sim.data, opt);
  CHECK(a.knots == b.knots);
  CHECK(a.candidates.size() == 64);
  for (const auto& c : a.candidates)
    if (c.feasible) CHECK(c.pcv >= a.pcv);
  // Coordinate descent can only do as well as the grid.
  opt.strategy = SearchStrategy::Coordinate;
  CHECK(select_knots(sim.data, opt).pcv >= a.pcv);
}

TEST_CASE("no feasible configuration") {
  const LongitudinalDataset data({{"a", {{0.0, 1.0, {}}, {1.0, 2.0, {}}}}}, 0);
  try {
    select_knots(data, SelectionOptions{BasisFamily::TruncatedPower, 2, 2, SearchStrategy::FullGrid, 0.0});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoFeasibleConfiguration);
  }
}

TEST_CASE("PCV argmin is invariant to weight rescaling") {
  const auto sim = gen_scenario1(Scenario1Config{30, 30, 0.5, CorrelationLevel::Weak, TrendShape::Trig}, 4);
  auto argmin = [&](double scale) {
    int best = -1;
    double best_v = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 6; ++k) {
      const auto specs = make_specs(BasisFamily::RadialGaussian, 2, std::vector<int>{k}, sim.data.time_domain());
      auto bundle = build_design(sim.data, specs, subject_uniform_weights(sim.data));
      bundle.weights *= scale;
      const double v = pcv(bundle, fit_wls(bundle));
      if (v < best_v) best_v = v, best = k;
    }
    return best;
  };
  CHECK(argmin(1.0) == argmin(123.0));
  CHECK(argmin(1.0) == argmin(1e-3));
}

TEST_CASE("AMSE and MADE") {
  const auto sim = gen_scenario2(Scenario2Config{15, 31, 0.5}, 9);
  const auto& data = sim.data;
  const auto N = Eigen::Index(data.num_observations());
  const Eigen::VectorXd truth = sim.truth.beta_true[0];
  CHECK(amse(truth, truth, data) == 0.0);
  CHECK(amse(truth, truth.array() + 0.3, data) == doctest::Approx(0.09).epsilon(1e-12));
  CHECK_THROWS_AS(amse(truth, Eigen::VectorXd::Zero(N - 1), data), Error);

  Rng rng(3);
  std::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> est(3);
  for (auto& e : est) {
    e.resize(N);
    for (Eigen::Index k = 0; k < N; ++k) e(k) = normal(rng);
  }
  const std::vector<double> ranges{sim.truth.range(0), sim.truth.range(1), sim.truth.range(2)};

  double loop_amse = 0.0, loop_made = 0.0;
  Eigen::Index row = 0;
  const double n = double(data.num_subjects());
  for (const auto& s : data.subjects()) {
    const double ni = double(s.observations.size());
    for (std::size_t j = 0; j < s.observations.size(); ++j, ++row) {
      const double t = s.observations[j].time;
      loop_amse += (scenario2_beta(0, t) - est[0](row)) * (scenario2_beta(0, t) - est[0](row)) / (n * ni);
      for (std::size_t r = 0; r < 3; ++r)
        loop_made += std::abs(scenario2_beta(r, t) - est[r](row)) / (n * ni) / ranges[r];
    }
  }
  CHECK(amse(truth, est[0], data) == doctest::Approx(loop_amse).epsilon(1e-12));
  CHECK(made(sim.truth.beta_true, est, ranges, data) == doctest::Approx(loop_made).epsilon(1e-12));
  CHECK(made(sim.truth.beta_true, sim.truth.beta_true, ranges, data) == 0.0);

  const std::vector<Eigen::VectorXd> one_truth{truth};
  const std::vector<Eigen::VectorXd> one_est{truth.array() - 0.5};
  CHECK(made(one_truth, one_est, {2.0}, data) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(made(one_truth, one_est, {0.0}, data), Error);
}

TEST_CASE("fold partition") {
  Rng rng(8);
  for (std::size_t N : {5u, 17u, 100u}) {
    for (int L : {2, 3, 5}) {
      const auto fold = partition_folds(N, L, rng);
      REQUIRE(fold.size() == N);
      std::vector<int> sizes(std::size_t(L), 0);
      for (int f : fold) {
        REQUIRE(f >= 0);
        REQUIRE(f < L);
        ++sizes[std::size_t(f)];
      }
      const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
      CHECK(*mx - *mn <= 1);
    }
  }
  CHECK_THROWS_AS(partition_folds(5, 1, rng), Error);
  CHECK_THROWS_AS(partition_folds(3, 4, rng), Error);
}

TEST_CASE("leave-one-out cross-validation matches brute force") {
  const auto data = quadratic_data(4, 4, 0.3, 17, true);
  const std::vector<BasisSpec> specs{make_spec(BasisFamily::TruncatedPower, 1, 1, data.time_domain())};
  const std::size_t N = data.num_observations();
  // Brute force: drop one observation, refit, predict it.
  double sum = 0.0;
  for (std::size_t drop = 0; drop < N; ++drop) {
    std::vector<SubjectRecord> subjects;
    std::size_t row = 0;
    Observation held{};
    for (const auto& s : data.subjects()) {
      SubjectRecord out{s.id, {}};
      for (const auto& o : s.observations) {
        if (row++ == drop) held = o;
        else out.observations.push_back(o);
      }
      subjects.push_back(out);
    }
    const LongitudinalDataset train(subjects, 0, data.time_domain());
    const auto fit = fit_wls(build_design(train, specs, subject_uniform_weights(train)));
    const double r = held.response - predict(fit, specs, std::vector<double>{1.0}, held.time);
    sum += r * r;
  }
  const double cv = crossval_amse(data, specs, Engine::Wls, EngineOptions{}, int(N), 1);
  CHECK(cv == doctest::Approx(sum / double(N)).epsilon(1e-10));
  // Balanced subjects: every weight is 1/N, so the weighted LOO sum agrees.
  CHECK(pcv_leave_one_out(data, specs) == doctest::Approx(sum / double(N)).epsilon(1e-10));
}

TEST_CASE("noiseless polynomial data has zero CV error") {
  const auto data = quadratic_data(10, 8, 0.0, 2);
  const std::vector<BasisSpec> specs{BasisSpec{BasisFamily::TruncatedPower, 2, {}, 1.0}};
  CHECK(crossval_amse(data, specs, Engine::Wls, EngineOptions{}, 5, 3) <= 1e-16);
}

TEST_CASE("cross-validation is deterministic for every engine") {
  const auto sim = gen_scenario1(Scenario1Config{15, 30, 0.5, CorrelationLevel::Weak, TrendShape::Exp}, 6);
  const auto specs = make_specs(BasisFamily::RadialGaussian, 2, std::vector<int>{2}, sim.data.time_domain());
  EngineOptions opt;
  opt.draws = 200;
  opt.burnin = 50;
  for (Engine e : {Engine::Wls, Engine::Gibbs, Engine::Vb}) {
    const double a = crossval_amse(sim.data, specs, e, opt, 4, 11);
    const double b = crossval_amse(sim.data, specs, e, opt, 4, 11);
    CHECK(a == b);
    CHECK(a > 0.0);
  }
}

TEST_CASE("an infeasible fold names itself") {
  const LongitudinalDataset data({{"a", {{0.0, 1.0, {}}, {0.5, 2.0, {}}, {0.7, 1.0, {}}, {1.0, 3.5, {}}}}}, 0);
  const std::vector<BasisSpec> specs{BasisSpec{BasisFamily::TruncatedPower, 2, {}, 1.0}};
  try {
    crossval_amse(data, specs, Engine::Wls, EngineOptions{}, 2, 1);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfeasibleFold);
    CHECK(std::string(e.what()).find("fold ") != std::string::npos);
  }
}
