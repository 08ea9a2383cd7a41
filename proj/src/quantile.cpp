#include "tvcm/quantile.hpp"

#include <algorithm>
#include <cmath>

#include "tvcm/error.hpp"

namespace tvcm {

double quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw Error(ErrorKind::EmptyData, "quantile of an empty sample");
  if (!(prob >= 0.0 && prob <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "quantile probability outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace tvcm
