#include "tvcm/draws.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "tvcm/error.hpp"
#include "tvcm/quantile.hpp"

namespace tvcm {

std::string to_string(DrawSource source) {
  switch (source) {
    case DrawSource::Bootstrap: return "bootstrap";
    case DrawSource::Gibbs: return "gibbs";
    case DrawSource::Variational: return "variational";
  }
  return "unknown";
}

std::pair<double, double> percentile_interval(std::span<const double> samples, double level) {
  if (samples.empty()) throw Error(ErrorKind::EmptyData, "percentile interval of no samples");
  if (!(level > 0.0 && level < 1.0))
    throw Error(ErrorKind::InvalidArgument, "interval level must lie in (0, 1)");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double tail = 0.5 * (1.0 - level);
  return {quantile_sorted(sorted, tail), quantile_sorted(sorted, 1.0 - tail)};
}

Eigen::MatrixXd curve_draws(const PosteriorDraws& draws, const std::vector<BasisSpec>& specs,
                            std::size_t r, std::span<const double> grid) {
  if (r >= specs.size()) throw Error(ErrorKind::DimensionMismatch, "coefficient index out of range");
  std::size_t offset = 0, total = 0;
  for (std::size_t q = 0; q < specs.size(); ++q) {
    if (q < r) offset += specs[q].dimension();
    total += specs[q].dimension();
  }
  if (static_cast<std::size_t>(draws.num_params()) != total)
    throw Error(ErrorKind::DimensionMismatch, "draw length differs from basis dimension");
  const auto width = static_cast<Eigen::Index>(specs[r].dimension());
  Eigen::MatrixXd basis(width, static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.size(); ++j)
    basis.col(static_cast<Eigen::Index>(j)) = eval_basis(specs[r], grid[j]);
  return draws.alpha.middleCols(static_cast<Eigen::Index>(offset), width) * basis;
}

CurveBand pointwise_band(const PosteriorDraws& draws, const std::vector<BasisSpec>& specs,
                         std::size_t r, std::span<const double> grid, double level) {
  const Eigen::MatrixXd curves = curve_draws(draws, specs, r, grid);
  CurveBand band;
  band.grid.assign(grid.begin(), grid.end());
  const auto G = static_cast<Eigen::Index>(grid.size());
  band.mean = curves.colwise().mean().transpose();
  band.lower.resize(G);
  band.upper.resize(G);
  std::vector<double> column(static_cast<std::size_t>(curves.rows()));
  for (Eigen::Index j = 0; j < G; ++j) {
    for (Eigen::Index b = 0; b < curves.rows(); ++b) column[static_cast<std::size_t>(b)] = curves(b, j);
    const auto [lo, hi] = percentile_interval(column, level);
    band.lower(j) = lo;
    band.upper(j) = hi;
  }
  return band;
}

void write_draws_csv(const PosteriorDraws& draws, std::ostream& out) {
  out << "draw,param_index,value\n" << std::setprecision(17);
  for (Eigen::Index b = 0; b < draws.size(); ++b) {
    for (Eigen::Index j = 0; j < draws.num_params(); ++j)
      out << b << ',' << j << ',' << draws.alpha(b, j) << '\n';
    out << b << ',' << draws.num_params() << ',' << draws.sigma2(b) << '\n';
  }
}

}  // namespace tvcm
