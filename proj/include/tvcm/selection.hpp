#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "tvcm/basis.hpp"
#include "tvcm/data.hpp"
#include "tvcm/engine.hpp"
#include "tvcm/frequentist.hpp"

namespace tvcm {

/// Weighted RSS / (1 - tr(A)/N)^2. Saturated fits (tr(A) >= N) give +inf.
double pcv(const DesignBundle& bundle, const WlsFit& fit);

/// Literal leave-one-point-out criterion: sum_ij w_i (y_ij - yhat^{(-ij)})^2,
/// refitting once per observation with weights recomputed on the reduced
/// data. Returns +inf when any refit is singular.
double pcv_leave_one_out(const LongitudinalDataset& data, const std::vector<BasisSpec>& specs);

enum class SearchStrategy { Auto, FullGrid, Coordinate };

struct SelectionOptions {
  BasisFamily family = BasisFamily::RadialGaussian;
  int degree = 2;
  int k_max = 10;
  SearchStrategy strategy = SearchStrategy::Auto;
  double bandwidth = 0.0;  // <= 0: knot spacing
};

struct KnotCandidate {
  std::vector<int> knots;
  double pcv = std::numeric_limits<double>::infinity();
  bool feasible = false;
};

struct KnotSelection {
  std::vector<int> knots;
  double pcv = 0.0;
  SearchStrategy strategy = SearchStrategy::FullGrid;
  std::vector<KnotCandidate> candidates;  // evaluation order
};

/// Resolves Auto: FullGrid when d <= 2 and k_max <= 10, Coordinate otherwise.
SearchStrategy resolve_strategy(SearchStrategy requested, std::size_t covariate_dim, int k_max);

/// PCV-minimizing knot counts (k_0..k_d) with equally spaced knots. Ties go
/// to fewer total knots, then to the lexicographically smaller vector.
KnotSelection select_knots(const LongitudinalDataset& data, const SelectionOptions& options);

/// PCV of one knot configuration, +inf when the fit is singular or saturated.
KnotCandidate evaluate_knots(const LongitudinalDataset& data, const SelectionOptions& options,
                             const std::vector<int>& knots);

/// sum_ij (1/(n n_i)) (truth - estimate)^2 over the design points.
double amse(const Eigen::Ref<const Eigen::VectorXd>& truth,
            const Eigen::Ref<const Eigen::VectorXd>& estimate, const LongitudinalDataset& data);

/// sum_r sum_ij (1/(n n_i)) |truth_r - estimate_r| / range_r.
double made(const std::vector<Eigen::VectorXd>& truth, const std::vector<Eigen::VectorXd>& estimates,
            const std::vector<double>& ranges, const LongitudinalDataset& data);

/// Observation index -> fold id in [0, L), from a uniform random permutation.
std::vector<int> partition_folds(std::size_t num_observations, int folds, Rng& rng);

/// Mean squared prediction error of held-out observations under L-fold CV
/// (folds over observations, not subjects).
double crossval_amse(const LongitudinalDataset& data, const std::vector<BasisSpec>& specs,
                     Engine engine, const EngineOptions& options, int folds, std::uint64_t seed);

}  // namespace tvcm
