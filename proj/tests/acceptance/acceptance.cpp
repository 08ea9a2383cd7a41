// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Pass a criterion name (or several) on the command line to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "tvcm/bootstrap.hpp"
#include "tvcm/cli.hpp"
#include "tvcm/frequentist.hpp"
#include "tvcm/json.hpp"
#include "tvcm/mcmc.hpp"
#include "tvcm/replication.hpp"
#include "tvcm/selection.hpp"
#include "tvcm/simgen.hpp"
#include "tvcm/vb.hpp"

using namespace tvcm;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& note) {
    pass = pass && ok;
    notes.push_back((ok ? "ok   " : "MISS ") + note);
  }
};

std::string num(double v, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

int workers() { return std::max(1u, std::thread::hardware_concurrency()); }

DesignBundle design_for(const LongitudinalDataset& data, BasisFamily family, const std::vector<int>& knots) {
  return build_design(data, make_specs(family, 2, knots, data.time_domain()), subject_uniform_weights(data));
}

std::vector<int> pcv_knots(const LongitudinalDataset& data, BasisFamily family, int k_max = 10) {
  return select_knots(data, SelectionOptions{family, 2, k_max, SearchStrategy::Auto, 0.0}).knots;
}

Outcome exact_recovery() {
  Outcome o;
  const auto sim = gen_scenario2(Scenario2Config{25, 31, 0.5}, 101);
  for (BasisFamily family : {BasisFamily::RadialGaussian, BasisFamily::TruncatedPower}) {
    auto bundle = design_for(sim.data, family, {3, 3, 3});
    Rng rng(102);
    std::normal_distribution<double> normal;
    Eigen::VectorXd alpha(bundle.cols());
    for (auto& a : alpha) a = normal(rng);
    bundle.y = bundle.Z * alpha;
    const auto fit = fit_wls(bundle);
    const double rel = (fit.alpha_hat - alpha).norm() / alpha.norm();
    o.require(rel <= 1e-10, to_string(family) + " relative alpha error " + num(rel) + " <= 1e-10");
    o.require(fit.sigma2_hat <= 1e-16, to_string(family) + " sigma2_hat " + num(fit.sigma2_hat) + " <= 1e-16");
  }
  return o;
}

Outcome unbiasedness() {
  Outcome o;
  const auto sim = gen_scenario2(Scenario2Config{25, 31, 0.5}, 201);
  auto bundle = design_for(sim.data, BasisFamily::RadialGaussian, {2, 2, 2});
  const Eigen::Index p = bundle.cols();
  Rng rng(202);
  std::normal_distribution<double> normal;
  Eigen::VectorXd alpha(p);
  for (auto& a : alpha) a = normal(rng);
  const Eigen::VectorXd mean_y = bundle.Z * alpha;
  const Eigen::VectorXd sd = bundle.weights.cwiseInverse().cwiseSqrt();  // sigma^2 = 1
  const int reps = 500;
  Eigen::MatrixXd est(reps, p);
  Eigen::VectorXd s2(reps);
  for (int b = 0; b < reps; ++b) {
    for (Eigen::Index k = 0; k < bundle.rows(); ++k) bundle.y(k) = mean_y(k) + sd(k) * normal(rng);
    const auto fit = fit_wls(bundle);
    est.row(b) = fit.alpha_hat.transpose();
    s2(b) = fit.sigma2_hat;
  }
  const Eigen::VectorXd m = est.colwise().mean().transpose();
  int outside = 0;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double se = std::sqrt((est.col(j).array() - m(j)).square().sum() / (reps - 1) / reps);
    const double z = std::abs(m(j) - alpha(j)) / se;
    worst = std::max(worst, z);
    if (z > 3.0) ++outside;
  }
  o.require(outside == 0, std::to_string(outside) + "/" + std::to_string(p) +
                              " components outside 3 SE (largest |z| " + num(worst) + ")");
  o.require(std::abs(s2.mean() - 1.0) <= 0.05, "mean sigma2_hat " + num(s2.mean()) + " within 5% of 1");
  return o;
}

Outcome gibbs_conjugacy() {
  Outcome o;
  const auto sim = gen_scenario1(Scenario1Config{50, 30, 0.5, CorrelationLevel::Weak, TrendShape::Trig}, 301);
  const auto bundle = design_for(sim.data, BasisFamily::RadialGaussian, {1});
  const auto wd = whiten(bundle);
  const auto fit = fit_wls(bundle);
  const auto prior = default_prior(fit);
  const double s2 = fit.sigma2_hat;
  Eigen::MatrixXd M = wd.Z.transpose() * wd.Z;
  M.diagonal().array() += prior.ridge;
  const Eigen::MatrixXd Minv = M.inverse();
  const Eigen::VectorXd mu = Minv * (wd.Z.transpose() * wd.y);
  const Eigen::MatrixXd cov = s2 * Minv;
  const int B = 10000;
  Rng rng(302);
  const auto draws = gibbs(wd, prior, GibbsOptions{B, 0, s2}, rng);
  const Eigen::VectorXd mean = draws.alpha_mean();
  const Eigen::MatrixXd c = draws.alpha.rowwise() - mean.transpose();
  const Eigen::MatrixXd emp = c.transpose() * c / double(B - 1);
  int mean_out = 0, cov_out = 0, entries = 0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (std::abs(mean(i) - mu(i)) > 3.0 * std::sqrt(cov(i, i) / B)) ++mean_out;
    for (Eigen::Index j = 0; j <= i; ++j, ++entries) {
      const double se = std::sqrt((cov(i, i) * cov(j, j) + cov(i, j) * cov(i, j)) / B);
      if (std::abs(emp(i, j) - cov(i, j)) > 3.0 * se) ++cov_out;
    }
  }
  o.require(mean_out == 0, std::to_string(mean_out) + "/" + std::to_string(mu.size()) + " mean components outside 3 SE");
  o.require(cov_out == 0, std::to_string(cov_out) + "/" + std::to_string(entries) + " covariance entries outside 3 SE");
  return o;
}

Outcome vb_correctness() {
  Outcome o;
  int monotone = 0, ridge_ok = 0;
  double worst_drop = 0.0, worst_ridge = 0.0;
  for (int k = 0; k < 20; ++k) {
    const TrendShape shape = k % 2 ? TrendShape::Exp : TrendShape::Trig;
    const auto sim = gen_scenario1(Scenario1Config{50, 30, 0.5, CorrelationLevel::Weak, shape}, 400 + k);
    const auto bundle = design_for(sim.data, BasisFamily::RadialGaussian, pcv_knots(sim.data, BasisFamily::RadialGaussian));
    const auto wd = whiten(bundle);
    const auto prior = default_prior(fit_wls(bundle));
    const auto post = vb_fit(wd, prior);
    double drop = 0.0;
    for (std::size_t i = 1; i < post.elbo_trace.size(); ++i)
      drop = std::max(drop, post.elbo_trace[i - 1] - post.elbo_trace[i]);
    worst_drop = std::max(worst_drop, drop);
    monotone += drop <= 1e-8;
    Eigen::MatrixXd M = wd.Z.transpose() * wd.Z;
    M.diagonal().array() += prior.ridge;
    const Eigen::VectorXd ridge = M.ldlt().solve(wd.Z.transpose() * wd.y);
    const double rel = (post.m_star - ridge).norm() / ridge.norm();
    worst_ridge = std::max(worst_ridge, rel);
    ridge_ok += post.converged && rel <= 1e-8;
  }
  o.require(monotone == 20, "(a) ELBO non-decreasing on " + std::to_string(monotone) +
                                "/20 datasets (largest drop " + num(worst_drop) + ")");
  o.require(ridge_ok == 20, "(b) m* equals the ridge solution on " + std::to_string(ridge_ok) +
                                "/20 (largest relative gap " + num(worst_ridge) + ")");

  const auto sim = gen_scenario2(Scenario2Config{50, 31, 0.5}, 450);
  const auto bundle = design_for(sim.data, BasisFamily::RadialGaussian, pcv_knots(sim.data, BasisFamily::RadialGaussian));
  const auto wd = whiten(bundle);
  const auto prior = default_prior(fit_wls(bundle));
  const auto post = vb_fit(wd, prior);
  Rng rng(451);
  const auto chain = gibbs(wd, prior, GibbsOptions{2500, 500, std::nullopt}, rng);
  const double rel = (chain.alpha_mean() - post.m_star).norm() / post.m_star.norm();
  o.require(rel <= 0.02, "(c) VB vs Gibbs (2000 draws) posterior mean relative L2 gap " + num(rel) + " <= 0.02");
  return o;
}

Outcome speed_ordering() {
  Outcome o;
  BenchConfig cfg;
  cfg.setting = "2";
  cfg.reps = 5;
  cfg.draws = 2000;
  cfg.burnin = 500;
  cfg.seed = 500;
  cfg.n = 25;
  const BenchRow small = run_benchmark(cfg);
  cfg.n = 100;
  const BenchRow large = run_benchmark(cfg);
  o.notes.push_back("     n=25:  MC " + num(small.mc_millis) + " ms, VB " + num(small.vb_millis) + " ms");
  o.notes.push_back("     n=100: MC " + num(large.mc_millis) + " ms, VB " + num(large.vb_millis) + " ms");
  o.require(large.vb_millis <= large.mc_millis / 5.0, "VB <= MC/5 at n=100");
  o.require(large.vb_millis <= 2.0 * small.vb_millis, "VB(n=100) <= 2 VB(n=25)");
  o.require(large.mc_millis > small.mc_millis, "MC grows from n=25 to n=100");
  return o;
}

ReplicationReport replicate(int scenario, int n, CorrelationLevel level, TrendShape shape, std::uint64_t seed) {
  ReplicationConfig cfg;
  cfg.scenario = scenario;
  cfg.scenario1 = Scenario1Config{n, 30, 0.5, level, shape};
  cfg.scenario2 = Scenario2Config{n, 31, 0.5};
  cfg.replications = 50;
  cfg.seed = seed;
  cfg.threads = workers();
  cfg.timing = false;
  return run_replications(cfg);
}

double median_of(const ReplicationReport& r, Engine engine, BasisFamily basis) {
  return r.cell(r.summarize(), engine, basis).median;
}

double iqr_of(const ReplicationReport& r, Engine engine, BasisFamily basis) {
  return r.cell(r.summarize(), engine, basis).iqr();
}

Outcome simulation_trends() {
  Outcome o;
  const std::vector<int> sizes{25, 50, 100};
  const ReplicationConfig defaults;
  std::map<std::pair<TrendShape, CorrelationLevel>, ReplicationReport> at50;
  for (TrendShape shape : {TrendShape::Exp, TrendShape::Trig}) {
    std::vector<ReplicationReport> reports;
    for (int n : sizes) {
      reports.push_back(replicate(1, n, CorrelationLevel::Weak, shape, 600 + std::uint64_t(n)));
      if (n == 50) at50.emplace(std::pair{shape, CorrelationLevel::Weak}, reports.back());
    }
    for (BasisFamily basis : defaults.bases) {
      for (Engine engine : defaults.engines) {
        std::vector<double> med;
        for (const auto& r : reports) med.push_back(median_of(r, engine, basis));
        const bool ok = med[0] > med[1] && med[1] > med[2];
        o.require(ok, "(a) " + to_string(shape) + " " + to_string(engine) + "/" + to_string(basis) +
                          " median AMSE n=25,50,100: " + num(med[0]) + " > " + num(med[1]) + " > " + num(med[2]));
      }
    }
  }
  for (TrendShape shape : {TrendShape::Exp, TrendShape::Trig}) {
    for (CorrelationLevel level : {CorrelationLevel::Medium, CorrelationLevel::High})
      at50.emplace(std::pair{shape, level}, replicate(1, 50, level, shape, 700 + std::uint64_t(level)));
    for (BasisFamily basis : defaults.bases) {
      for (Engine engine : defaults.engines) {
        const double w = iqr_of(at50.at({shape, CorrelationLevel::Weak}), engine, basis);
        const double m = iqr_of(at50.at({shape, CorrelationLevel::Medium}), engine, basis);
        const double h = iqr_of(at50.at({shape, CorrelationLevel::High}), engine, basis);
        o.require(w < m && m < h, "(b) " + to_string(shape) + " " + to_string(engine) + "/" + to_string(basis) +
                                      " AMSE IQR weak<medium<high: " + num(w) + " < " + num(m) + " < " + num(h));
      }
    }
  }
  const auto s25 = replicate(2, 25, CorrelationLevel::Weak, TrendShape::Exp, 825);
  const auto s100 = replicate(2, 100, CorrelationLevel::Weak, TrendShape::Exp, 900);
  for (BasisFamily basis : defaults.bases) {
    for (Engine engine : defaults.engines) {
      const double a = median_of(s25, engine, basis), b = median_of(s100, engine, basis);
      o.require(b < a, "(c) " + to_string(engine) + "/" + to_string(basis) + " median MADE n=100 " + num(b) +
                           " < n=25 " + num(a));
    }
  }
  std::size_t failures = s25.failures.size() + s100.failures.size();
  for (const auto& [key, r] : at50) failures += r.failures.size();
  o.notes.push_back("     replication failures recorded: " + std::to_string(failures));
  return o;
}

Outcome bootstrap_coverage() {
  Outcome o;
  const std::vector<double> points{0.3, 0.5, 0.7};
  std::vector<int> covered(points.size(), 0);
  const int outer = 100;
  for (int rep = 0; rep < outer; ++rep) {
    const auto sim = gen_scenario1(Scenario1Config{50, 30, 0.5, CorrelationLevel::Weak, TrendShape::Trig},
                                   derive_seed(800, std::uint64_t(rep)));
    const auto specs = make_specs(BasisFamily::RadialGaussian, 2, pcv_knots(sim.data, BasisFamily::RadialGaussian),
                                  sim.data.time_domain());
    const auto draws = bootstrap_fit(sim.data, specs, BootstrapOptions{200, workers()},
                                     derive_seed(801, std::uint64_t(rep)));
    const auto band = pointwise_band(draws, specs, 0, points, 0.95);
    for (std::size_t j = 0; j < points.size(); ++j) {
      const double truth = scenario1_beta(TrendShape::Trig, points[j]);
      const auto jj = static_cast<Eigen::Index>(j);
      covered[j] += band.lower(jj) <= truth && truth <= band.upper(jj);
    }
  }
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double pct = 100.0 * covered[j] / outer;
    o.require(pct >= 88.0 && pct <= 99.0, "coverage at t=" + num(points[j]) + ": " + num(pct) + "% in [88, 99]");
  }
  return o;
}

Outcome pcv_machinery() {
  Outcome o;
  Rng rng(900);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.1, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    DesignBundle b;
    b.Z.resize(12, 5);
    b.y.resize(12);
    b.weights.resize(12);
    for (Eigen::Index r = 0; r < 12; ++r) {
      for (Eigen::Index c = 0; c < 5; ++c) b.Z(r, c) = normal(rng);
      b.y(r) = normal(rng);
      b.weights(r) = unif(rng);
    }
    b.block_dims = {5};
    const auto fit = fit_wls(b);
    const Eigen::MatrixXd W = b.weights.asDiagonal();
    const Eigen::MatrixXd A = b.Z * (b.Z.transpose() * W * b.Z).inverse() * b.Z.transpose() * W;
    worst = std::max({worst, std::abs(fit.hat_trace - 5.0), std::abs(A.trace() - 5.0)});
  }
  o.require(worst <= 1e-8, "hat_trace = p on 50 random 12x5 designs (largest gap " + num(worst) + ")");

  const LongitudinalDataset tiny({{"a", {{0.0, 1.0, {}}, {0.5, 2.0, {}}, {1.0, 3.0, {}}}}}, 0);
  const auto bundle = build_design(tiny, {BasisSpec{BasisFamily::TruncatedPower, 0, {}, 1.0}},
                                   subject_uniform_weights(tiny));
  const double v = pcv(bundle, fit_wls(bundle));
  o.require(std::abs(v - 1.5) <= 1.5e-14, "intercept-only PCV " + num(v, 17) + " = 1.5 to 1e-14 relative");

  int agree = 0;
  std::string pairs;
  for (int k = 0; k < 10; ++k) {
    const auto sim = gen_scenario1(Scenario1Config{20, 30, 0.5, CorrelationLevel::Weak, TrendShape::Trig}, 950 + k);
    const SelectionOptions opt{BasisFamily::RadialGaussian, 2, 6, SearchStrategy::FullGrid, 0.0};
    const int by_pcv = select_knots(sim.data, opt).knots[0];
    int by_loo = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int knots = 0; knots <= opt.k_max; ++knots) {
      const double loo = pcv_leave_one_out(sim.data, make_specs(opt.family, 2, std::vector<int>{knots}, sim.data.time_domain()));
      if (loo < best) best = loo, by_loo = knots;
    }
    agree += by_pcv == by_loo;
    pairs += " " + std::to_string(by_pcv) + "/" + std::to_string(by_loo);
  }
  o.require(agree >= 8, "trace-form and leave-one-out argmins agree on " + std::to_string(agree) +
                            "/10 datasets (pcv/loo:" + pairs + ")");
  return o;
}

Outcome dic_criterion() {
  Outcome o;
  const auto sim0 = gen_scenario2(Scenario2Config{50, 31, 0.5}, 1000);
  const auto wd0 = whiten(design_for(sim0.data, BasisFamily::RadialGaussian, {2, 2, 2}));
  PosteriorDraws flat;
  flat.alpha = Eigen::MatrixXd::Ones(10, wd0.cols()).array().rowwise() * Eigen::RowVectorXd::LinSpaced(wd0.cols(), 0.1, 1.0).array();
  flat.sigma2 = Eigen::VectorXd::Constant(10, 0.07);
  const auto zero = dic(flat, wd0);
  const double expected = -2.0 * log_likelihood(wd0, flat.alpha.row(0).transpose(), 0.07);
  o.require(zero.p_dic == 0.0 && zero.dic == expected, "zero-spread chain: p_DIC = " + num(zero.p_dic) + ", DIC = -2 log p");

  int wins = 0;
  std::string gaps;
  for (int k = 0; k < 10; ++k) {
    const auto sim = gen_scenario2(Scenario2Config{50, 31, 0.5}, 1001 + k);
    const auto good_bundle = design_for(sim.data, BasisFamily::RadialGaussian, pcv_knots(sim.data, BasisFamily::RadialGaussian));
    const std::vector<BasisSpec> constant(3, BasisSpec{BasisFamily::TruncatedPower, 0, {}, 1.0});
    const auto bad_bundle = build_design(sim.data, constant, subject_uniform_weights(sim.data));
    Rng r1(derive_seed(1100, std::uint64_t(k))), r2(derive_seed(1200, std::uint64_t(k)));
    const auto good_wd = whiten(good_bundle), bad_wd = whiten(bad_bundle);
    const auto good = gibbs(good_wd, default_prior(fit_wls(good_bundle)), GibbsOptions{}, r1);
    const auto bad = gibbs(bad_wd, default_prior(fit_wls(bad_bundle)), GibbsOptions{}, r2);
    const double g = dic(good, good_wd).dic, b = dic(bad, bad_wd).dic;
    wins += g < b;
    gaps += " " + num(b - g, 3);
  }
  o.require(wins == 10, "correct basis has lower DIC on " + std::to_string(wins) + "/10 datasets (gaps:" + gaps + ")");
  return o;
}

Outcome cli_smoke() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "tvcm_acceptance_fit";
  std::filesystem::remove_all(dir);
  std::ostringstream out, err;
  const int code = cli::run({"fit", "--data", std::string(TVCM_DATA_DIR) + "/actg388_like.csv", "--family", "radial",
                             "--knots", "auto", "--engine", "gibbs", "--grid", "200", "--out", dir.string()},
                            out, err);
  o.require(code == 0, "fit exit code " + std::to_string(code) + (err.str().empty() ? "" : " " + err.str()));
  for (const char* f : {"fit.json", "curves.csv", "manifest.json"})
    o.require(std::filesystem::exists(dir / f), std::string(f) + " written");
  if (code == 0) {
    std::ifstream in(dir / "fit.json");
    const Json fit = Json::parse(in);
    o.require(fit["subjects"] == 166, "166 subjects read, " + fit["observations"].dump() + " observations");
  }
  return o;
}

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"exact_recovery", 1, exact_recovery},
      {"estimator_unbiasedness", 30, unbiasedness},
      {"gibbs_conjugacy", 30, gibbs_conjugacy},
      {"vb_correctness", 120, vb_correctness},
      {"speed_ordering", 120, speed_ordering},
      {"simulation_trends", 900, simulation_trends},
      {"bootstrap_coverage", 600, bootstrap_coverage},
      {"pcv_machinery", 120, pcv_machinery},
      {"dic", 120, dic_criterion},
      {"cli_fit_smoke", 60, cli_smoke},
  };
  const std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result.pass = false;
      result.notes.push_back(std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.require(secs < c.limit_seconds, "runtime " + num(secs, 3) + " s < " + num(c.limit_seconds) + " s");
    std::cout << (result.pass ? "PASS " : "FAIL ") << c.name << "\n";
    for (const auto& n : result.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
    failed += !result.pass;
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
