#include "tvcm/engine.hpp"

#include "tvcm/error.hpp"

namespace tvcm {

std::string to_string(Engine engine) {
  switch (engine) {
    case Engine::Wls: return "wls";
    case Engine::Gibbs: return "gibbs";
    case Engine::Vb: return "vb";
  }
  return "unknown";
}

Engine parse_engine(const std::string& name) {
  if (name == "wls") return Engine::Wls;
  if (name == "gibbs" || name == "mcmc") return Engine::Gibbs;
  if (name == "vb") return Engine::Vb;
  throw Error(ErrorKind::InvalidArgument, "unknown engine '" + name + "'");
}

EngineResult run_engine(Engine engine, const LongitudinalDataset& data,
                        const DesignBundle& bundle, const EngineOptions& options,
                        std::uint64_t seed) {
  EngineResult result;
  result.engine = engine;
  result.wls = fit_wls(bundle);
  switch (engine) {
    case Engine::Wls: {
      result.point = result.wls.alpha_hat;
      if (options.bootstrap > 0) {
        result.draws = bootstrap_fit(data, bundle.specs,
                                     BootstrapOptions{options.bootstrap, options.threads}, seed);
      }
      break;
    }
    case Engine::Gibbs: {
      result.prior = default_prior(result.wls);
      const WhitenedData wd = whiten(bundle);
      Rng rng(seed);
      result.draws = gibbs(wd, *result.prior,
                           GibbsOptions{options.draws + options.burnin, options.burnin, {}}, rng);
      result.point = result.draws->alpha_mean();
      break;
    }
    case Engine::Vb: {
      result.prior = default_prior(result.wls);
      const WhitenedData wd = whiten(bundle);
      result.variational = vb_fit(wd, *result.prior, options.vb);
      Rng rng(seed);
      result.draws = vb_sample(*result.variational, options.draws, rng);
      result.point = result.draws->alpha_mean();
      break;
    }
  }
  return result;
}

Eigen::VectorXd point_estimate(Engine engine, const LongitudinalDataset& data,
                               const DesignBundle& bundle, const EngineOptions& options,
                               std::uint64_t seed) {
  EngineOptions light = options;
  light.bootstrap = 0;
  return run_engine(engine, data, bundle, light, seed).point;
}

}  // namespace tvcm
