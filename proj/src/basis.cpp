#include "tvcm/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tvcm/error.hpp"
#include "tvcm/quantile.hpp"

namespace tvcm {

std::string to_string(BasisFamily family) {
  return family == BasisFamily::RadialGaussian ? "radial" : "tpower";
}

BasisFamily parse_basis_family(const std::string& name) {
  if (name == "radial" || name == "kernel") return BasisFamily::RadialGaussian;
  if (name == "tpower" || name == "spline") return BasisFamily::TruncatedPower;
  throw Error(ErrorKind::InvalidArgument, "unknown basis family '" + name + "'");
}

void BasisSpec::validate() const {
  if (degree < 0) throw Error(ErrorKind::InvalidArgument, "basis degree must be >= 0");
  for (std::size_t l = 1; l < knots.size(); ++l)
    if (!(knots[l] > knots[l - 1]))
      throw Error(ErrorKind::NonIncreasingKnots, "knots must be strictly increasing");
  for (double k : knots)
    if (!std::isfinite(k)) throw Error(ErrorKind::InvalidArgument, "knot is not finite");
  if (family == BasisFamily::RadialGaussian && !(bandwidth > 0.0 && std::isfinite(bandwidth)))
    throw Error(ErrorKind::InvalidArgument, "radial bandwidth must be positive");
}

void BasisSpec::validate(const TimeDomain& domain) const {
  validate();
  for (double k : knots)
    if (!domain.contains(k))
      throw Error(ErrorKind::InvalidArgument, "knot " + std::to_string(k) +
                                                  " lies outside the time domain");
}

std::vector<double> place_knots_equal(const TimeDomain& domain, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "knot count must be >= 0");
  if (k == 0) return {};
  if (!(domain.hi > domain.lo))
    throw Error(ErrorKind::DegenerateDomain, "cannot place knots on a degenerate domain");
  std::vector<double> knots(static_cast<std::size_t>(k));
  const double step = domain.width() / (k + 1);
  for (int l = 1; l <= k; ++l) knots[static_cast<std::size_t>(l - 1)] = domain.lo + l * step;
  return knots;
}

std::vector<double> place_knots_quantile(std::span<const double> times, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "knot count must be >= 0");
  if (k == 0) return {};
  if (times.empty()) throw Error(ErrorKind::EmptyData, "no design times for quantile knots");
  std::vector<double> sorted(times.begin(), times.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> knots;
  for (int l = 1; l <= k; ++l) {
    const double q = quantile_sorted(sorted, static_cast<double>(l) / (k + 1));
    if (!knots.empty() && !(q > knots.back()))
      throw Error(ErrorKind::NonIncreasingKnots,
                  "tied design times give duplicate quantile knots at " + std::to_string(q));
    knots.push_back(q);
  }
  return knots;
}

BasisSpec make_spec(BasisFamily family, int degree, int k, const TimeDomain& domain,
                    double bandwidth) {
  BasisSpec spec;
  spec.family = family;
  spec.degree = degree;
  spec.knots = place_knots_equal(domain, k);
  if (bandwidth > 0.0) {
    spec.bandwidth = bandwidth;
  } else {
    const double spacing = domain.width() / (k + 1);
    spec.bandwidth = spacing > 0.0 ? spacing : 1.0;
  }
  spec.validate(domain);
  return spec;
}

std::vector<BasisSpec> make_specs(BasisFamily family, int degree, std::span<const int> knots,
                                  const TimeDomain& domain, double bandwidth) {
  std::vector<BasisSpec> specs;
  specs.reserve(knots.size());
  for (int k : knots) specs.push_back(make_spec(family, degree, k, domain, bandwidth));
  return specs;
}

namespace {

// Writes the basis row into `out` (length spec.dimension()), scaled by `scale`.
template <typename Out>
void fill_basis(const BasisSpec& spec, double t, double scale, Out&& out) {
  double power = 1.0;
  for (int l = 0; l <= spec.degree; ++l) {
    out(l) = scale * power;
    power *= t;
  }
  const Eigen::Index base = spec.degree + 1;
  if (spec.family == BasisFamily::RadialGaussian) {
    for (std::size_t l = 0; l < spec.knots.size(); ++l) {
      const double r = std::abs(t - spec.knots[l]) / spec.bandwidth;
      out(base + static_cast<Eigen::Index>(l)) = scale * std::exp(-r * r);
    }
  } else {
    for (std::size_t l = 0; l < spec.knots.size(); ++l) {
      const double u = t - spec.knots[l];
      // (u)_+^0 is the step function 1{u > 0}.
      const double v = u > 0.0 ? std::pow(u, spec.degree) : 0.0;
      out(base + static_cast<Eigen::Index>(l)) = scale * v;
    }
  }
}

}  // namespace

Eigen::VectorXd eval_basis(const BasisSpec& spec, double t) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(spec.dimension()));
  fill_basis(spec, t, 1.0, v);
  return v;
}

std::size_t DesignBundle::offset(std::size_t r) const {
  return std::accumulate(block_dims.begin(), block_dims.begin() + static_cast<std::ptrdiff_t>(r),
                         std::size_t{0});
}

DesignBundle build_design(const LongitudinalDataset& data, const std::vector<BasisSpec>& specs,
                          const Eigen::VectorXd& weights) {
  if (specs.size() != data.covariate_dim() + 1)
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(data.covariate_dim() + 1) + " basis specs, got " +
                    std::to_string(specs.size()));
  const auto N = static_cast<Eigen::Index>(data.num_observations());
  if (weights.size() != N)
    throw Error(ErrorKind::DimensionMismatch, "weight vector length differs from N");

  DesignBundle bundle;
  bundle.specs = specs;
  std::size_t p = 0;
  for (const auto& s : specs) {
    s.validate(data.time_domain());
    bundle.block_dims.push_back(s.dimension());
    p += s.dimension();
  }
  bundle.Z.resize(N, static_cast<Eigen::Index>(p));
  bundle.y = data.responses();
  bundle.weights = weights;

  Eigen::Index row = 0;
  for (const auto& subject : data.subjects()) {
    for (const auto& obs : subject.observations) {
      Eigen::Index col = 0;
      for (std::size_t r = 0; r < specs.size(); ++r) {
        const double x = r == 0 ? 1.0 : obs.covariates[r - 1];
        const auto width = static_cast<Eigen::Index>(specs[r].dimension());
        fill_basis(specs[r], obs.time, x, bundle.Z.row(row).segment(col, width));
        col += width;
      }
      ++row;
    }
  }
  return bundle;
}

Eigen::VectorXd coefficient_curve(const BasisSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& alpha_r,
                                  std::span<const double> grid) {
  if (static_cast<std::size_t>(alpha_r.size()) != spec.dimension())
    throw Error(ErrorKind::DimensionMismatch,
                "coefficient block has length " + std::to_string(alpha_r.size()) +
                    ", basis dimension is " + std::to_string(spec.dimension()));
  Eigen::VectorXd out(static_cast<Eigen::Index>(grid.size()));
  Eigen::VectorXd row(static_cast<Eigen::Index>(spec.dimension()));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    fill_basis(spec, grid[j], 1.0, row);
    out(static_cast<Eigen::Index>(j)) = row.dot(alpha_r);
  }
  return out;
}

Eigen::VectorXd alpha_block(const std::vector<BasisSpec>& specs,
                            const Eigen::Ref<const Eigen::VectorXd>& alpha, std::size_t r) {
  if (r >= specs.size()) throw Error(ErrorKind::DimensionMismatch, "coefficient index out of range");
  std::size_t offset = 0, total = 0;
  for (std::size_t q = 0; q < specs.size(); ++q) {
    if (q < r) offset += specs[q].dimension();
    total += specs[q].dimension();
  }
  if (static_cast<std::size_t>(alpha.size()) != total)
    throw Error(ErrorKind::DimensionMismatch, "coefficient vector length differs from p");
  return alpha.segment(static_cast<Eigen::Index>(offset),
                       static_cast<Eigen::Index>(specs[r].dimension()));
}

Eigen::VectorXd coefficient_at_design(const LongitudinalDataset& data,
                                      const std::vector<BasisSpec>& specs,
                                      const Eigen::Ref<const Eigen::VectorXd>& alpha, std::size_t r) {
  const std::vector<double> t = data.times();
  return coefficient_curve(specs[r], alpha_block(specs, alpha, r), t);
}

std::vector<double> uniform_grid(const TimeDomain& domain, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {0.5 * (domain.lo + domain.hi)};
  std::vector<double> grid(count);
  for (std::size_t j = 0; j < count; ++j)
    grid[j] = domain.lo + domain.width() * static_cast<double>(j) / static_cast<double>(count - 1);
  grid.back() = domain.hi;
  return grid;
}

}  // namespace tvcm
