#include "tvcm/json.hpp"

#include "tvcm/error.hpp"

namespace tvcm {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

Json to_json(const BasisSpec& spec) {
  Json j;
  j["family"] = to_string(spec.family);
  j["degree"] = spec.degree;
  j["knots"] = spec.knots;
  j["bandwidth"] = spec.bandwidth;
  return j;
}

BasisSpec basis_spec_from_json(const Json& j) {
  try {
    BasisSpec spec;
    spec.family = parse_basis_family(j.at("family").get<std::string>());
    spec.degree = j.at("degree").get<int>();
    spec.knots = j.at("knots").get<std::vector<double>>();
    spec.bandwidth = j.value("bandwidth", 1.0);
    spec.validate();
    return spec;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Schema, std::string("bad basis spec JSON: ") + e.what());
  }
}

Json alpha_blocks_json(const std::vector<BasisSpec>& specs, const Eigen::VectorXd& alpha) {
  Json j = Json::object();
  for (std::size_t r = 0; r < specs.size(); ++r)
    j[std::to_string(r)] = to_std(alpha_block(specs, alpha, r));
  return j;
}

Json to_json(const WlsFit& fit, const std::vector<BasisSpec>& specs) {
  Json j;
  j["alpha"] = alpha_blocks_json(specs, fit.alpha_hat);
  j["sigma2"] = fit.sigma2_hat;
  j["hat_trace"] = fit.hat_trace;
  j["weighted_rss"] = fit.weighted_rss;
  j["condition"] = fit.condition;
  return j;
}

Json to_json(const VariationalPosterior& post) {
  Json j;
  j["m_star"] = to_std(post.m_star);
  j["V_star_diag"] = to_std(post.V_star.diagonal());
  j["a_star"] = post.a_star;
  j["b_star"] = post.b_star;
  j["elbo_trace"] = post.elbo_trace;
  j["converged"] = post.converged;
  j["iterations"] = post.iterations;
  return j;
}

Json to_json(const KnotSelection& selection) {
  Json j;
  j["chosen"] = selection.knots;
  j["pcv"] = selection.pcv;
  j["strategy"] = selection.strategy == SearchStrategy::Coordinate ? "coordinate" : "full_grid";
  Json table = Json::array();
  for (const auto& c : selection.candidates) {
    Json row;
    row["knots"] = c.knots;
    row["feasible"] = c.feasible;
    row["pcv"] = c.feasible ? Json(c.pcv) : Json(nullptr);
    table.push_back(row);
  }
  j["candidates"] = table;
  return j;
}

Json draws_summary_json(const PosteriorDraws& draws, const std::vector<BasisSpec>& specs,
                        std::span<const double> grid, double level) {
  Json j;
  j["source"] = to_string(draws.source);
  j["seed"] = draws.seed;
  j["draws"] = draws.size();
  j["alpha_mean"] = alpha_blocks_json(specs, draws.alpha_mean());
  j["sigma2_mean"] = draws.sigma2_mean();
  j["level"] = level;
  Json curves = Json::object();
  for (std::size_t r = 0; r < specs.size(); ++r) {
    const CurveBand band = pointwise_band(draws, specs, r, grid, level);
    curves[std::to_string(r)] = {{"grid", band.grid},
                                 {"mean", to_std(band.mean)},
                                 {"lower", to_std(band.lower)},
                                 {"upper", to_std(band.upper)}};
  }
  j["curves"] = curves;
  return j;
}

Json summary_json(const ReplicationReport& report) {
  Json j;
  j["scenario"] = report.config.scenario;
  j["replications"] = report.config.replications;
  j["seed"] = report.config.seed;
  j["metric"] = report.metric_name();
  j["failures"] = report.failures.size();
  Json failures = Json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"replication", f.replication}, {"stage", f.stage}, {"message", f.message}});
  j["failure_log"] = failures;
  Json cells = Json::array();
  for (const auto& c : report.summarize()) {
    cells.push_back({{"engine", to_string(c.engine)},
                     {"basis", to_string(c.basis)},
                     {"count", c.count},
                     {"q25", c.q25},
                     {"median", c.median},
                     {"q75", c.q75},
                     {"mean_millis", c.mean_millis}});
  }
  j["cells"] = cells;
  return j;
}

}  // namespace tvcm
