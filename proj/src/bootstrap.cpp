#include "tvcm/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "tvcm/error.hpp"
#include "tvcm/frequentist.hpp"

namespace tvcm {

LongitudinalDataset resample_subjects(const LongitudinalDataset& data, Rng& rng) {
  const std::size_t n = data.num_subjects();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<SubjectRecord> out;
  out.reserve(n);
  for (std::size_t slot = 0; slot < n; ++slot) {
    const SubjectRecord& source = data.subject(pick(rng));
    out.push_back(SubjectRecord{source.id + "#" + std::to_string(slot), source.observations});
  }
  return LongitudinalDataset(std::move(out), data.covariate_dim(), data.time_domain());
}

namespace {

struct ReplicateResult {
  Eigen::VectorXd alpha;
  double sigma2 = 0.0;
  int attempts = 0;
  bool ok = false;
};

}  // namespace

PosteriorDraws bootstrap_fit(const LongitudinalDataset& data, const std::vector<BasisSpec>& specs,
                             const BootstrapOptions& options, std::uint64_t seed) {
  const int B = options.replicates;
  if (B < 1) throw Error(ErrorKind::InvalidArgument, "bootstrap needs B >= 1");
  const long cap = 10L * B;

  std::vector<ReplicateResult> results(static_cast<std::size_t>(B));
  std::atomic<long> total_attempts{0};
  std::atomic<bool> exhausted{false};
  const Rng master(seed);

  auto run_replicate = [&](int b) {
    Rng rng = master.split(static_cast<std::uint64_t>(b));
    ReplicateResult& res = results[static_cast<std::size_t>(b)];
    while (!exhausted.load()) {
      if (total_attempts.fetch_add(1) >= cap) {
        exhausted.store(true);
        return;
      }
      ++res.attempts;
      const LongitudinalDataset sample = resample_subjects(data, rng);
      try {
        const DesignBundle bundle = build_design(sample, specs, subject_uniform_weights(sample));
        const WlsFit fit = fit_wls(bundle);
        res.alpha = fit.alpha_hat;
        res.sigma2 = fit.sigma2_hat;
        res.ok = true;
        return;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SingularDesign && e.kind() != ErrorKind::InsufficientData) throw;
      }
    }
  };

  const int threads = std::max(1, std::min(options.threads, B));
  if (threads == 1) {
    for (int b = 0; b < B; ++b) run_replicate(b);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int b = next.fetch_add(1); b < B; b = next.fetch_add(1)) run_replicate(b);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  const long successes = std::count_if(results.begin(), results.end(),
                                       [](const ReplicateResult& r) { return r.ok; });
  if (successes < B) {
    long attempts = 0;
    for (const auto& r : results) attempts += r.attempts;
    std::ostringstream msg;
    msg << "bootstrap gave up after " << attempts << " attempts: " << (attempts - successes)
        << " singular replicates (failure rate "
        << static_cast<double>(attempts - successes) / static_cast<double>(std::max(1L, attempts))
        << ")";
    throw Error(ErrorKind::BootstrapDegeneracy, msg.str());
  }

  PosteriorDraws draws;
  draws.source = DrawSource::Bootstrap;
  draws.seed = seed;
  const Eigen::Index p = results.front().alpha.size();
  draws.alpha.resize(B, p);
  draws.sigma2.resize(B);
  for (int b = 0; b < B; ++b) {
    draws.alpha.row(b) = results[static_cast<std::size_t>(b)].alpha.transpose();
    draws.sigma2(b) = results[static_cast<std::size_t>(b)].sigma2;
  }
  return draws;
}

}  // namespace tvcm
