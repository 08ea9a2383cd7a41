#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "tvcm/basis.hpp"
#include "tvcm/bootstrap.hpp"
#include "tvcm/draws.hpp"
#include "tvcm/frequentist.hpp"
#include "tvcm/mcmc.hpp"
#include "tvcm/vb.hpp"

namespace tvcm {

enum class Engine { Wls, Gibbs, Vb };

std::string to_string(Engine engine);
Engine parse_engine(const std::string& name);

struct EngineOptions {
  int draws = 2000;          // retained Gibbs draws / VB samples
  int burnin = 500;          // Gibbs only
  int bootstrap = 0;         // WLS only; 0 disables the bootstrap
  VbOptions vb{};
  int threads = 1;
};

/// Everything one engine run produces. `point` is alpha_hat for WLS and the
/// mean of the draws for the Bayesian engines.
struct EngineResult {
  Engine engine = Engine::Wls;
  WlsFit wls;
  std::optional<PriorSpec> prior;
  std::optional<PosteriorDraws> draws;
  std::optional<VariationalPosterior> variational;
  Eigen::VectorXd point;
};

/// Fits `engine` on the design. The bootstrap (WLS with options.bootstrap > 0)
/// needs the dataset, so it is passed along; seeds come from `seed`.
EngineResult run_engine(Engine engine, const LongitudinalDataset& data,
                        const DesignBundle& bundle, const EngineOptions& options,
                        std::uint64_t seed);

/// Point estimate of alpha only (cheapest path per engine).
Eigen::VectorXd point_estimate(Engine engine, const LongitudinalDataset& data,
                               const DesignBundle& bundle, const EngineOptions& options,
                               std::uint64_t seed);

}  // namespace tvcm
