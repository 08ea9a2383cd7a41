#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tvcm {

struct TimeDomain {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double t) const { return t >= lo && t <= hi; }
};

struct Observation {
  double time = 0.0;
  double response = 0.0;
  std::vector<double> covariates;  // x_1..x_d; the intercept is implicit
};

struct SubjectRecord {
  std::string id;
  std::vector<Observation> observations;
};

/// Immutable longitudinal dataset. The constructor validates every invariant
/// (non-empty subjects, unique ids, sorted times inside the domain, finite
/// values, consistent covariate width) and throws tvcm::Error otherwise.
class LongitudinalDataset {
 public:
  LongitudinalDataset(std::vector<SubjectRecord> subjects, std::size_t covariate_dim,
                      std::optional<TimeDomain> domain = std::nullopt);

  const std::vector<SubjectRecord>& subjects() const { return subjects_; }
  const SubjectRecord& subject(std::size_t i) const { return subjects_[i]; }
  std::size_t covariate_dim() const { return covariate_dim_; }
  const TimeDomain& time_domain() const { return domain_; }

  std::size_t num_subjects() const { return subjects_.size(); }
  std::size_t num_observations() const { return total_; }

  /// Observation times in dataset (row) order.
  std::vector<double> times() const;
  /// Responses in dataset (row) order.
  Eigen::VectorXd responses() const;

  /// Same subjects, different declared domain (must contain all times).
  LongitudinalDataset with_domain(TimeDomain domain) const;

 private:
  std::vector<SubjectRecord> subjects_;
  std::size_t covariate_dim_;
  TimeDomain domain_;
  std::size_t total_ = 0;
};

/// Column names used to read a long-format CSV. Empty `covariates` means
/// "every header column that is not subject/time/response", in file order.
struct CsvSchema {
  std::string subject = "subject";
  std::string time = "time";
  std::string response = "y";
  std::vector<std::string> covariates;
  std::optional<TimeDomain> domain;
};

LongitudinalDataset ingest_csv(const std::string& path, const CsvSchema& schema = {});
LongitudinalDataset read_csv(std::istream& in, const CsvSchema& schema = {});

/// Writes `subject,time,y,x1,...,xd` with round-trip precision.
void write_csv(const LongitudinalDataset& data, std::ostream& out);
void write_csv(const LongitudinalDataset& data, const std::string& path);

/// Subject-uniform weights w_i = 1/(n n_i), repeated n_i times per subject.
Eigen::VectorXd subject_uniform_weights(const LongitudinalDataset& data);

}  // namespace tvcm
