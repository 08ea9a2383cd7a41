#include "tvcm/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "tvcm/error.hpp"

namespace tvcm {

namespace {

TimeDomain observed_domain(const std::vector<SubjectRecord>& subjects) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : subjects) {
    for (const auto& o : s.observations) {
      lo = std::min(lo, o.time);
      hi = std::max(hi, o.time);
    }
  }
  return {lo, hi};
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

double parse_number(const std::string& cell, std::size_t row, const std::string& column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || cell.empty() || !std::isfinite(value)) {
    throw Error(ErrorKind::Parse, "row " + std::to_string(row) + ": column '" + column +
                                      "' is not a finite number: '" + cell + "'");
  }
  return value;
}

}  // namespace

LongitudinalDataset::LongitudinalDataset(std::vector<SubjectRecord> subjects,
                                         std::size_t covariate_dim,
                                         std::optional<TimeDomain> domain)
    : subjects_(std::move(subjects)), covariate_dim_(covariate_dim) {
  if (subjects_.empty()) throw Error(ErrorKind::EmptyData, "dataset has no subjects");
  std::unordered_set<std::string> ids;
  for (const auto& s : subjects_) {
    if (s.observations.empty())
      throw Error(ErrorKind::EmptyData, "subject '" + s.id + "' has no observations");
    if (!ids.insert(s.id).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate subject id '" + s.id + "'");
    for (std::size_t j = 0; j < s.observations.size(); ++j) {
      const auto& o = s.observations[j];
      if (o.covariates.size() != covariate_dim_)
        throw Error(ErrorKind::DimensionMismatch,
                    "subject '" + s.id + "' observation " + std::to_string(j) + " has " +
                        std::to_string(o.covariates.size()) + " covariates, expected " +
                        std::to_string(covariate_dim_));
      bool finite = std::isfinite(o.time) && std::isfinite(o.response);
      for (double x : o.covariates) finite = finite && std::isfinite(x);
      if (!finite)
        throw Error(ErrorKind::InvalidArgument,
                    "subject '" + s.id + "' has a non-finite value");
      if (j > 0 && o.time < s.observations[j - 1].time)
        throw Error(ErrorKind::InvalidArgument,
                    "subject '" + s.id + "' times are not non-decreasing");
    }
    total_ += s.observations.size();
  }
  const TimeDomain observed = observed_domain(subjects_);
  domain_ = domain.value_or(observed);
  if (!(domain_.lo <= domain_.hi))
    throw Error(ErrorKind::InvalidArgument, "time domain has lo > hi");
  if (observed.lo < domain_.lo || observed.hi > domain_.hi)
    throw Error(ErrorKind::InvalidArgument, "observation times fall outside the time domain");
}

std::vector<double> LongitudinalDataset::times() const {
  std::vector<double> out;
  out.reserve(total_);
  for (const auto& s : subjects_)
    for (const auto& o : s.observations) out.push_back(o.time);
  return out;
}

Eigen::VectorXd LongitudinalDataset::responses() const {
  Eigen::VectorXd y(static_cast<Eigen::Index>(total_));
  Eigen::Index row = 0;
  for (const auto& s : subjects_)
    for (const auto& o : s.observations) y(row++) = o.response;
  return y;
}

LongitudinalDataset LongitudinalDataset::with_domain(TimeDomain domain) const {
  return LongitudinalDataset(subjects_, covariate_dim_, domain);
}

LongitudinalDataset read_csv(std::istream& in, const CsvSchema& schema) {
  std::string line;
  if (!std::getline(in, line) || trim(line).empty())
    throw Error(ErrorKind::EmptyData, "CSV input is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header = split_row(line);
  for (auto& h : header) h = trim(h);
  const auto find_column = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorKind::Schema, "missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t subject_col = find_column(schema.subject);
  const std::size_t time_col = find_column(schema.time);
  const std::size_t response_col = find_column(schema.response);

  std::vector<std::size_t> covariate_cols;
  if (schema.covariates.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (c != subject_col && c != time_col && c != response_col) covariate_cols.push_back(c);
  } else {
    for (const auto& name : schema.covariates) covariate_cols.push_back(find_column(name));
  }

  // Subjects keep first-appearance order; rows keep file order within subject.
  std::vector<SubjectRecord> subjects;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size())
      throw Error(ErrorKind::Parse, "row " + std::to_string(row) + ": expected " +
                                        std::to_string(header.size()) + " cells, found " +
                                        std::to_string(cells.size()));
    for (auto& c : cells) c = trim(c);
    Observation obs;
    obs.time = parse_number(cells[time_col], row, header[time_col]);
    obs.response = parse_number(cells[response_col], row, header[response_col]);
    for (std::size_t c : covariate_cols)
      obs.covariates.push_back(parse_number(cells[c], row, header[c]));
    const std::string& id = cells[subject_col];
    auto [it, inserted] = index.try_emplace(id, subjects.size());
    if (inserted) subjects.push_back(SubjectRecord{id, {}});
    subjects[it->second].observations.push_back(std::move(obs));
  }
  if (subjects.empty()) throw Error(ErrorKind::EmptyData, "CSV has a header but no data rows");
  for (auto& s : subjects)
    std::stable_sort(s.observations.begin(), s.observations.end(),
                     [](const Observation& a, const Observation& b) { return a.time < b.time; });
  return LongitudinalDataset(std::move(subjects), covariate_cols.size(), schema.domain);
}

LongitudinalDataset ingest_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return read_csv(in, schema);
}

void write_csv(const LongitudinalDataset& data, std::ostream& out) {
  out << "subject,time,y";
  for (std::size_t r = 1; r <= data.covariate_dim(); ++r) out << ",x" << r;
  out << '\n';
  out << std::setprecision(17);
  for (const auto& s : data.subjects()) {
    for (const auto& o : s.observations) {
      out << s.id << ',' << o.time << ',' << o.response;
      for (double x : o.covariates) out << ',' << x;
      out << '\n';
    }
  }
}

void write_csv(const LongitudinalDataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  write_csv(data, out);
}

Eigen::VectorXd subject_uniform_weights(const LongitudinalDataset& data) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(data.num_observations()));
  const double n = static_cast<double>(data.num_subjects());
  Eigen::Index row = 0;
  for (const auto& s : data.subjects()) {
    const double ni = static_cast<double>(s.observations.size());
    w.segment(row, static_cast<Eigen::Index>(s.observations.size())).setConstant(1.0 / (n * ni));
    row += static_cast<Eigen::Index>(s.observations.size());
  }
  return w;
}

}  // namespace tvcm
