#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tvcm/basis.hpp"
#include "tvcm/engine.hpp"
#include "tvcm/simgen.hpp"

namespace tvcm {

struct ReplicationConfig {
  int scenario = 1;
  Scenario1Config scenario1{};
  Scenario2Config scenario2{};
  int replications = 50;
  std::vector<Engine> engines{Engine::Wls, Engine::Gibbs, Engine::Vb};
  std::vector<BasisFamily> bases{BasisFamily::RadialGaussian, BasisFamily::TruncatedPower};
  int degree = 2;
  int k_max = 10;
  EngineOptions engine{};
  std::uint64_t seed = 1;
  int threads = 1;
  bool timing = true;  // false writes 0 ms so reports are byte-reproducible
};

struct ReplicationRow {
  int replication = 0;
  std::uint64_t seed = 0;
  Engine engine = Engine::Wls;
  BasisFamily basis = BasisFamily::RadialGaussian;
  std::vector<int> knots;
  double metric = 0.0;  // AMSE(beta_0) for scenario 1, MADE for scenario 2
  double millis = 0.0;
};

struct ReplicationFailure {
  int replication = 0;
  std::string stage;
  std::string message;
};

struct CellSummary {
  Engine engine = Engine::Wls;
  BasisFamily basis = BasisFamily::RadialGaussian;
  int count = 0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double mean_millis = 0.0;

  double iqr() const { return q75 - q25; }
};

struct ReplicationReport {
  ReplicationConfig config;
  std::vector<ReplicationRow> rows;  // ordered by replication, basis, engine
  std::vector<ReplicationFailure> failures;

  std::string metric_name() const { return config.scenario == 1 ? "amse" : "made"; }
  std::vector<CellSummary> summarize() const;
  const CellSummary& cell(const std::vector<CellSummary>& cells, Engine engine,
                          BasisFamily basis) const;
};

/// Generate -> PCV knot selection -> fit with every engine x basis, for
/// `replications` datasets seeded from derive_seed(seed, rep). Per-replication
/// failures are collected, not thrown.
ReplicationReport run_replications(const ReplicationConfig& config);

void write_report_csv(const ReplicationReport& report, std::ostream& out);

struct BenchConfig {
  std::string setting = "2";  // "1a" (exp), "1b" (trig) or "2"
  int n = 100;
  int reps = 10;
  int draws = 2000;
  int burnin = 500;
  int k_max = 10;
  std::uint64_t seed = 1;
  bool run_gibbs = true;
  bool run_vb = true;
};

struct BenchRow {
  std::string setting;
  int n = 0;
  double mc_millis = 0.0;  // mean Gibbs time for burnin + draws iterations
  double vb_millis = 0.0;  // mean VB time: coordinate ascent + draws samples
  int reps = 0;
};

/// Times posterior-draw generation on the radial basis (knots by PCV) for
/// Gibbs and VB, averaged over `reps` simulated datasets. Data generation,
/// knot selection, whitening and the prior's WLS fit are not timed.
BenchRow run_benchmark(const BenchConfig& config);

}  // namespace tvcm
