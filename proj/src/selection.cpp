#include "tvcm/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "tvcm/error.hpp"

namespace tvcm {

double pcv(const DesignBundle& bundle, const WlsFit& fit) {
  const auto N = static_cast<double>(bundle.rows());
  if (!(fit.hat_trace < N)) return std::numeric_limits<double>::infinity();
  const double shrink = 1.0 - fit.hat_trace / N;
  return fit.weighted_rss / (shrink * shrink);
}

namespace {

struct Row {
  std::size_t subject;
  std::size_t index;
};

std::vector<Row> row_index(const LongitudinalDataset& data) {
  std::vector<Row> rows;
  rows.reserve(data.num_observations());
  for (std::size_t i = 0; i < data.num_subjects(); ++i)
    for (std::size_t j = 0; j < data.subject(i).observations.size(); ++j) rows.push_back({i, j});
  return rows;
}

// Dataset restricted to the rows with keep[row] == true; subjects left empty
// are dropped. The declared domain is preserved.
LongitudinalDataset subset(const LongitudinalDataset& data, const std::vector<char>& keep) {
  std::vector<SubjectRecord> subjects;
  std::size_t row = 0;
  for (const auto& s : data.subjects()) {
    SubjectRecord out{s.id, {}};
    for (const auto& o : s.observations)
      if (keep[row++]) out.observations.push_back(o);
    if (!out.observations.empty()) subjects.push_back(std::move(out));
  }
  return LongitudinalDataset(std::move(subjects), data.covariate_dim(), data.time_domain());
}

std::vector<double> covariate_vector(const Observation& o) {
  std::vector<double> x{1.0};
  x.insert(x.end(), o.covariates.begin(), o.covariates.end());
  return x;
}

bool is_fit_failure(const Error& e) {
  return e.kind() == ErrorKind::SingularDesign || e.kind() == ErrorKind::InsufficientData ||
         e.kind() == ErrorKind::EmptyData;
}

}  // namespace

double pcv_leave_one_out(const LongitudinalDataset& data, const std::vector<BasisSpec>& specs) {
  const std::vector<Row> rows = row_index(data);
  const Eigen::VectorXd w = subject_uniform_weights(data);
  std::vector<char> keep(rows.size(), 1);
  double total = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    keep[k] = 0;
    try {
      const LongitudinalDataset train = subset(data, keep);
      const WlsFit fit = fit_wls(build_design(train, specs, subject_uniform_weights(train)));
      const Observation& o = data.subject(rows[k].subject).observations[rows[k].index];
      const double resid = o.response - predict(fit, specs, covariate_vector(o), o.time);
      total += w(static_cast<Eigen::Index>(k)) * resid * resid;
    } catch (const Error& e) {
      if (!is_fit_failure(e)) throw;
      return std::numeric_limits<double>::infinity();
    }
    keep[k] = 1;
  }
  return total;
}

SearchStrategy resolve_strategy(SearchStrategy requested, std::size_t covariate_dim, int k_max) {
  if (requested != SearchStrategy::Auto) return requested;
  return (covariate_dim <= 2 && k_max <= 10) ? SearchStrategy::FullGrid : SearchStrategy::Coordinate;
}

KnotCandidate evaluate_knots(const LongitudinalDataset& data, const SelectionOptions& options,
                             const std::vector<int>& knots) {
  KnotCandidate cand;
  cand.knots = knots;
  try {
    const auto specs = make_specs(options.family, options.degree, knots, data.time_domain(),
                                  options.bandwidth);
    const DesignBundle bundle = build_design(data, specs, subject_uniform_weights(data));
    const WlsFit fit = fit_wls(bundle);
    cand.pcv = pcv(bundle, fit);
    cand.feasible = std::isfinite(cand.pcv);
  } catch (const Error& e) {
    if (!is_fit_failure(e) && e.kind() != ErrorKind::DegenerateDomain) throw;
  }
  return cand;
}

namespace {

// Strict "a is preferred over b": lower PCV, then fewer knots, then lexicographic.
bool preferred(const KnotCandidate& a, const KnotCandidate& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.pcv != b.pcv) return a.pcv < b.pcv;
  const int sa = std::accumulate(a.knots.begin(), a.knots.end(), 0);
  const int sb = std::accumulate(b.knots.begin(), b.knots.end(), 0);
  if (sa != sb) return sa < sb;
  return a.knots < b.knots;
}

}  // namespace

KnotSelection select_knots(const LongitudinalDataset& data, const SelectionOptions& options) {
  if (options.k_max < 0) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 0");
  const std::size_t dims = data.covariate_dim() + 1;
  KnotSelection sel;
  sel.strategy = resolve_strategy(options.strategy, data.covariate_dim(), options.k_max);

  std::map<std::vector<int>, std::size_t> seen;
  auto evaluate = [&](const std::vector<int>& knots) -> const KnotCandidate& {
    auto it = seen.find(knots);
    if (it != seen.end()) return sel.candidates[it->second];
    sel.candidates.push_back(evaluate_knots(data, options, knots));
    seen.emplace(knots, sel.candidates.size() - 1);
    return sel.candidates.back();
  };

  KnotCandidate best;
  if (sel.strategy == SearchStrategy::FullGrid) {
    std::vector<int> knots(dims, 0);
    auto advance = [&] {
      for (std::size_t r = dims; r-- > 0;) {
        if (knots[r] < options.k_max) {
          ++knots[r];
          return true;
        }
        knots[r] = 0;
      }
      return false;
    };
    do {
      const KnotCandidate& c = evaluate(knots);
      if (best.knots.empty() || preferred(c, best)) best = c;
    } while (advance());
  } else {
    best = evaluate(std::vector<int>(dims, 0));
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t r = 0; r < dims; ++r) {
        std::vector<int> trial = best.knots;
        for (int k = 0; k <= options.k_max; ++k) {
          trial[r] = k;
          const KnotCandidate& c = evaluate(trial);
          if (preferred(c, best)) {
            best = c;
            improved = true;
          }
        }
      }
    }
  }
  if (!best.feasible)
    throw Error(ErrorKind::NoFeasibleConfiguration,
                "no knot configuration gives a non-singular, unsaturated fit");
  sel.knots = best.knots;
  sel.pcv = best.pcv;
  return sel;
}

double amse(const Eigen::Ref<const Eigen::VectorXd>& truth,
            const Eigen::Ref<const Eigen::VectorXd>& estimate, const LongitudinalDataset& data) {
  const auto N = static_cast<Eigen::Index>(data.num_observations());
  if (truth.size() != N || estimate.size() != N)
    throw Error(ErrorKind::DimensionMismatch, "AMSE inputs must have one value per observation");
  return subject_uniform_weights(data).dot((truth - estimate).cwiseAbs2());
}

double made(const std::vector<Eigen::VectorXd>& truth, const std::vector<Eigen::VectorXd>& estimates,
            const std::vector<double>& ranges, const LongitudinalDataset& data) {
  if (truth.size() != estimates.size() || truth.size() != ranges.size())
    throw Error(ErrorKind::DimensionMismatch, "MADE needs one truth, estimate and range per coefficient");
  const Eigen::VectorXd w = subject_uniform_weights(data);
  double total = 0.0;
  for (std::size_t r = 0; r < truth.size(); ++r) {
    if (!(ranges[r] > 0.0))
      throw Error(ErrorKind::InvalidArgument, "MADE range of coefficient " + std::to_string(r) +
                                                  " is not positive");
    if (truth[r].size() != w.size() || estimates[r].size() != w.size())
      throw Error(ErrorKind::DimensionMismatch, "MADE inputs must have one value per observation");
    total += w.dot((truth[r] - estimates[r]).cwiseAbs()) / ranges[r];
  }
  return total;
}

std::vector<int> partition_folds(std::size_t num_observations, int folds, Rng& rng) {
  if (folds < 2) throw Error(ErrorKind::InvalidArgument, "cross-validation needs L >= 2");
  if (static_cast<std::size_t>(folds) > num_observations)
    throw Error(ErrorKind::InvalidArgument, "more folds than observations");
  std::vector<std::size_t> order(num_observations);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> fold(num_observations);
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    fold[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(folds));
  return fold;
}

double crossval_amse(const LongitudinalDataset& data, const std::vector<BasisSpec>& specs,
                     Engine engine, const EngineOptions& options, int folds, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<int> fold = partition_folds(data.num_observations(), folds, rng);
  const std::vector<Row> rows = row_index(data);
  double total = 0.0;
  for (int f = 0; f < folds; ++f) {
    std::vector<char> keep(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) keep[k] = fold[k] != f;
    Eigen::VectorXd alpha;
    try {
      const LongitudinalDataset train = subset(data, keep);
      const DesignBundle bundle = build_design(train, specs, subject_uniform_weights(train));
      alpha = point_estimate(engine, train, bundle, options,
                             derive_seed(seed, static_cast<std::uint64_t>(f) + 1));
    } catch (const Error& e) {
      if (!is_fit_failure(e)) throw;
      throw Error(ErrorKind::InfeasibleFold,
                  "fold " + std::to_string(f) + " has no feasible fit: " + e.what());
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (keep[k]) continue;
      const Observation& o = data.subject(rows[k].subject).observations[rows[k].index];
      const double resid = o.response - predict(alpha, specs, covariate_vector(o), o.time);
      total += resid * resid;
    }
  }
  return total / static_cast<double>(rows.size());
}

}  // namespace tvcm
