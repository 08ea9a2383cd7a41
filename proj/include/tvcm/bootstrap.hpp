#pragma once

#include <cstdint>
#include <vector>

#include "tvcm/basis.hpp"
#include "tvcm/data.hpp"
#include "tvcm/draws.hpp"
#include "tvcm/rng.hpp"

namespace tvcm {

/// n subjects drawn uniformly with replacement; each pick copies the whole
/// measurement block and gets id "<id>#<slot>" so repeats stay distinct. The
/// declared time domain is kept.
LongitudinalDataset resample_subjects(const LongitudinalDataset& data, Rng& rng);

struct BootstrapOptions {
  int replicates = 200;
  int threads = 1;
};

/// Subject-level bootstrap of the WLS estimator. Replicate b uses the
/// substream derived from (seed, b); singular replicates are redrawn from the
/// same substream. Fails once total attempts exceed 10 B.
PosteriorDraws bootstrap_fit(const LongitudinalDataset& data, const std::vector<BasisSpec>& specs,
                             const BootstrapOptions& options, std::uint64_t seed);

}  // namespace tvcm
