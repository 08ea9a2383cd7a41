#include "tvcm/replication.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <thread>

#include "tvcm/error.hpp"
#include "tvcm/quantile.hpp"
#include "tvcm/selection.hpp"

namespace tvcm {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SimDataset generate(const ReplicationConfig& config, std::uint64_t seed) {
  return config.scenario == 1 ? gen_scenario1(config.scenario1, seed)
                              : gen_scenario2(config.scenario2, seed);
}

struct ReplicationOutput {
  std::vector<ReplicationRow> rows;
  std::vector<ReplicationFailure> failures;
};

ReplicationOutput run_one(const ReplicationConfig& config, int rep) {
  ReplicationOutput out;
  const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(rep));
  const SimDataset sim = generate(config, seed);
  const std::size_t coefficients = sim.data.covariate_dim() + 1;

  for (BasisFamily basis : config.bases) {
    KnotSelection selection;
    try {
      selection = select_knots(sim.data, SelectionOptions{basis, config.degree, config.k_max,
                                                          SearchStrategy::Auto, 0.0});
    } catch (const Error& e) {
      out.failures.push_back({rep, "select/" + to_string(basis), e.what()});
      continue;
    }
    const auto specs = make_specs(basis, config.degree, selection.knots, sim.data.time_domain());
    const DesignBundle bundle = build_design(sim.data, specs, subject_uniform_weights(sim.data));
    for (std::size_t e = 0; e < config.engines.size(); ++e) {
      const Engine engine = config.engines[e];
      try {
        const auto start = Clock::now();
        const Eigen::VectorXd alpha =
            point_estimate(engine, sim.data, bundle, config.engine, derive_seed(seed, 100 + e));
        const double elapsed = millis_since(start);

        double metric = 0.0;
        if (config.scenario == 1) {
          metric = amse(sim.truth.beta_true[0],
                        coefficient_at_design(sim.data, specs, alpha, 0), sim.data);
        } else {
          std::vector<Eigen::VectorXd> estimates;
          std::vector<double> ranges;
          for (std::size_t r = 0; r < coefficients; ++r) {
            estimates.push_back(coefficient_at_design(sim.data, specs, alpha, r));
            ranges.push_back(sim.truth.range(r));
          }
          metric = made(sim.truth.beta_true, estimates, ranges, sim.data);
        }
        out.rows.push_back(ReplicationRow{rep, seed, engine, basis, selection.knots, metric,
                                          config.timing ? elapsed : 0.0});
      } catch (const Error& err) {
        out.failures.push_back({rep, to_string(engine) + "/" + to_string(basis), err.what()});
      }
    }
  }
  return out;
}

}  // namespace

ReplicationReport run_replications(const ReplicationConfig& config) {
  if (config.replications < 1) throw Error(ErrorKind::InvalidArgument, "need at least 1 replication");
  if (config.scenario != 1 && config.scenario != 2)
    throw Error(ErrorKind::InvalidArgument, "scenario must be 1 or 2");
  const int R = config.replications;
  std::vector<ReplicationOutput> outputs(static_cast<std::size_t>(R));
  const int threads = std::max(1, std::min(config.threads, R));
  if (threads == 1) {
    for (int rep = 0; rep < R; ++rep) outputs[static_cast<std::size_t>(rep)] = run_one(config, rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int rep = next.fetch_add(1); rep < R; rep = next.fetch_add(1))
            outputs[static_cast<std::size_t>(rep)] = run_one(config, rep);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ReplicationReport report;
  report.config = config;
  for (auto& o : outputs) {
    report.rows.insert(report.rows.end(), o.rows.begin(), o.rows.end());
    report.failures.insert(report.failures.end(), o.failures.begin(), o.failures.end());
  }
  return report;
}

std::vector<CellSummary> ReplicationReport::summarize() const {
  std::vector<CellSummary> cells;
  for (BasisFamily basis : config.bases) {
    for (Engine engine : config.engines) {
      CellSummary cell;
      cell.engine = engine;
      cell.basis = basis;
      std::vector<double> metrics;
      double millis = 0.0;
      for (const auto& row : rows) {
        if (row.engine != engine || row.basis != basis) continue;
        metrics.push_back(row.metric);
        millis += row.millis;
      }
      cell.count = static_cast<int>(metrics.size());
      if (!metrics.empty()) {
        std::sort(metrics.begin(), metrics.end());
        cell.q25 = quantile_sorted(metrics, 0.25);
        cell.median = quantile_sorted(metrics, 0.5);
        cell.q75 = quantile_sorted(metrics, 0.75);
        cell.mean_millis = millis / static_cast<double>(metrics.size());
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

const CellSummary& ReplicationReport::cell(const std::vector<CellSummary>& cells, Engine engine,
                                           BasisFamily basis) const {
  for (const auto& c : cells)
    if (c.engine == engine && c.basis == basis) return c;
  throw Error(ErrorKind::InvalidArgument, "no summary cell for " + to_string(engine) + "/" +
                                              to_string(basis));
}

void write_report_csv(const ReplicationReport& report, std::ostream& out) {
  out << "replication,seed,engine,basis,knots," << report.metric_name() << ",millis\n";
  out << std::setprecision(17);
  for (const auto& row : report.rows) {
    out << row.replication << ',' << row.seed << ',' << to_string(row.engine) << ','
        << to_string(row.basis) << ',';
    for (std::size_t r = 0; r < row.knots.size(); ++r) out << (r ? ";" : "") << row.knots[r];
    out << ',' << row.metric << ',' << row.millis << '\n';
  }
}

BenchRow run_benchmark(const BenchConfig& config) {
  if (config.reps < 1 || config.draws < 1 || config.burnin < 0)
    throw Error(ErrorKind::InvalidArgument, "bench needs reps >= 1, draws >= 1, burnin >= 0");
  BenchRow row;
  row.setting = config.setting;
  row.n = config.n;
  row.reps = config.reps;
  for (int rep = 0; rep < config.reps; ++rep) {
    const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(rep));
    SimDataset sim = [&] {
      if (config.setting == "1a" || config.setting == "1b") {
        Scenario1Config c;
        c.n = config.n;
        c.shape = config.setting == "1a" ? TrendShape::Exp : TrendShape::Trig;
        return gen_scenario1(c, seed);
      }
      if (config.setting == "2") {
        Scenario2Config c;
        c.n = config.n;
        return gen_scenario2(c, seed);
      }
      throw Error(ErrorKind::InvalidArgument, "bench setting must be 1a, 1b or 2");
    }();
    const KnotSelection sel = select_knots(
        sim.data, SelectionOptions{BasisFamily::RadialGaussian, 2, config.k_max, SearchStrategy::Auto, 0.0});
    const auto specs = make_specs(BasisFamily::RadialGaussian, 2, sel.knots, sim.data.time_domain());
    const DesignBundle bundle = build_design(sim.data, specs, subject_uniform_weights(sim.data));
    const PriorSpec prior = default_prior(fit_wls(bundle));
    const WhitenedData wd = whiten(bundle);

    if (config.run_gibbs) {
      Rng mc_rng(derive_seed(seed, 1));
      const auto start = Clock::now();
      const PosteriorDraws chain =
          gibbs(wd, prior, GibbsOptions{config.draws + config.burnin, config.burnin, {}}, mc_rng);
      row.mc_millis += millis_since(start);
      if (chain.size() != config.draws)
        throw Error(ErrorKind::Numerical, "benchmark produced the wrong number of draws");
    }
    if (config.run_vb) {
      Rng vb_rng(derive_seed(seed, 2));
      const auto start = Clock::now();
      const VariationalPosterior post = vb_fit(wd, prior);
      const PosteriorDraws samples = vb_sample(post, config.draws, vb_rng);
      row.vb_millis += millis_since(start);
      if (samples.size() != config.draws)
        throw Error(ErrorKind::Numerical, "benchmark produced the wrong number of draws");
    }
  }
  row.mc_millis /= config.reps;
  row.vb_millis /= config.reps;
  return row;
}

}  // namespace tvcm
