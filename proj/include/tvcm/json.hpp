#pragma once

#include <json.hpp>

#include "tvcm/basis.hpp"
#include "tvcm/draws.hpp"
#include "tvcm/frequentist.hpp"
#include "tvcm/replication.hpp"
#include "tvcm/selection.hpp"
#include "tvcm/vb.hpp"

namespace tvcm {

using Json = nlohmann::ordered_json;

Json to_json(const BasisSpec& spec);
BasisSpec basis_spec_from_json(const Json& j);

/// alpha blocks keyed by coefficient index ("0", "1", ...).
Json alpha_blocks_json(const std::vector<BasisSpec>& specs, const Eigen::VectorXd& alpha);

Json to_json(const WlsFit& fit, const std::vector<BasisSpec>& specs);
Json to_json(const VariationalPosterior& post);
Json to_json(const KnotSelection& selection);

/// Means and percentile bands of every coefficient curve on `grid`.
Json draws_summary_json(const PosteriorDraws& draws, const std::vector<BasisSpec>& specs,
                        std::span<const double> grid, double level);

Json summary_json(const ReplicationReport& report);

}  // namespace tvcm
