#pragma once

#include <span>

namespace tvcm {

/// Quantile of already-sorted data by linear interpolation between order
/// statistics: h = (n-1)p, x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
/// This is the "type 7" definition of Hyndman & Fan.
double quantile_sorted(std::span<const double> sorted, double prob);

}  // namespace tvcm
