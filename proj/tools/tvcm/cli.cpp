#include "tvcm/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>

#include "tvcm/draws.hpp"
#include "tvcm/engine.hpp"
#include "tvcm/error.hpp"
#include "tvcm/json.hpp"
#include "tvcm/mcmc.hpp"
#include "tvcm/replication.hpp"
#include "tvcm/selection.hpp"
#include "tvcm/simgen.hpp"

namespace tvcm::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad integer '" + s + "' in " + what);
}

std::vector<int> int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& s : split_list(text)) out.push_back(to_int(s, what));
  if (out.empty()) throw UsageError(what + " is empty");
  return out;
}

// Config keys become leading "--key value" tokens so explicit flags, parsed
// later with take-last semantics, override them.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, "config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw Error(ErrorKind::Schema, "config must be a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ",";
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      tokens.insert(tokens.end(), {flag, joined});
    } else if (value.is_string()) {
      tokens.insert(tokens.end(), {flag, value.get<std::string>()});
    } else if (value.is_number()) {
      tokens.insert(tokens.end(), {flag, value.dump()});
    } else {
      throw Error(ErrorKind::Schema, "config key '" + key + "' must be a scalar or array");
    }
  }
  return tokens;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.empty() || args[0].starts_with("-")) return args;
  std::optional<std::string> path;
  for (std::size_t k = 1; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    if (args[k].starts_with("--config=")) path = args[k].substr(9);
  }
  if (!path) return args;
  std::vector<std::string> out{args[0]};
  for (auto& t : config_tokens(*path)) out.push_back(std::move(t));
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
  if (opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("TVCM_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("TVCM_SEED is not an unsigned integer: '") + env + "'");
  }
  return 1;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create directory '" + dir.string() + "': " + ec.message());
}

Json versions() {
  return {{"tvcm", TVCM_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) +
                        "." + std::to_string(BOOST_VERSION % 100)},
          {"compiler", __VERSION__}};
}

// Options shared by the commands that read a data file.
struct DataArgs {
  std::string path;
  std::string subject = "subject";
  std::string time = "time";
  std::string response = "y";
  std::string covariates;
  std::string domain;

  void attach(CLI::App* app) {
    app->add_option("--data", path, "long-format CSV")->required();
    app->add_option("--subject-col", subject, "subject id column");
    app->add_option("--time-col", time, "time column");
    app->add_option("--response-col", response, "response column");
    app->add_option("--covariates", covariates, "comma-separated covariate columns (default: all others)");
    app->add_option("--domain", domain, "time domain as lo,hi (default: observed range)");
  }

  LongitudinalDataset load() const {
    CsvSchema schema;
    schema.subject = subject;
    schema.time = time;
    schema.response = response;
    schema.covariates = split_list(covariates);
    if (!domain.empty()) {
      const auto parts = split_list(domain);
      if (parts.size() != 2) throw UsageError("--domain needs lo,hi");
      try {
        schema.domain = TimeDomain{std::stod(parts[0]), std::stod(parts[1])};
      } catch (const std::exception&) {
        throw UsageError("--domain needs two numbers");
      }
    }
    return ingest_csv(path, schema);
  }
};

struct BasisArgs {
  std::string family = "radial";
  int degree = 2;
  std::string knots = "auto";
  int k_max = 10;
  std::string strategy = "auto";
  double bandwidth = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "radial | tpower");
    app->add_option("--degree", degree, "polynomial degree g");
    app->add_option("--knots", knots, "auto, or knot counts k0,k1,... (one value is broadcast)");
    app->add_option("--k-max", k_max, "largest knot count searched by --knots auto");
    app->add_option("--strategy", strategy, "auto | grid | coordinate");
    app->add_option("--bandwidth", bandwidth, "radial bandwidth (<= 0: knot spacing)");
  }

  SelectionOptions selection() const {
    SelectionOptions opt;
    opt.family = parse_basis_family(family);
    opt.degree = degree;
    opt.k_max = k_max;
    opt.bandwidth = bandwidth;
    if (strategy == "auto") opt.strategy = SearchStrategy::Auto;
    else if (strategy == "grid" || strategy == "full_grid") opt.strategy = SearchStrategy::FullGrid;
    else if (strategy == "coordinate") opt.strategy = SearchStrategy::Coordinate;
    else throw UsageError("unknown --strategy '" + strategy + "'");
    return opt;
  }

  // Resolves the knot counts, running the PCV search for "auto".
  std::vector<BasisSpec> specs(const LongitudinalDataset& data, std::optional<KnotSelection>& selected) const {
    const SelectionOptions opt = selection();
    std::vector<int> counts;
    if (knots == "auto") {
      selected = select_knots(data, opt);
      counts = selected->knots;
    } else {
      counts = int_list(knots, "--knots");
      if (counts.size() == 1) counts.assign(data.covariate_dim() + 1, counts[0]);
      if (counts.size() != data.covariate_dim() + 1)
        throw UsageError("--knots needs " + std::to_string(data.covariate_dim() + 1) + " counts");
    }
    return make_specs(opt.family, opt.degree, counts, data.time_domain(), opt.bandwidth);
  }
};

struct EngineArgs {
  std::string engine = "wls";
  int draws = 2000;
  int burnin = 500;
  int boot = 0;
  double tol = 1e-6;
  int max_iters = 500;

  void attach(CLI::App* app) {
    app->add_option("--engine", engine, "wls | gibbs | vb");
    app->add_option("--draws", draws, "retained Gibbs draws / VB samples");
    app->add_option("--burnin", burnin, "Gibbs burn-in");
    app->add_option("--boot", boot, "bootstrap replicates for --engine wls (0: none)");
    app->add_option("--tol", tol, "VB ELBO tolerance");
    app->add_option("--max-iters", max_iters, "VB iteration cap");
  }

  EngineOptions options(int threads) const {
    EngineOptions o;
    o.draws = draws;
    o.burnin = burnin;
    o.bootstrap = boot;
    o.vb = VbOptions{tol, max_iters};
    o.threads = threads;
    return o;
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

int cmd_fit(const DataArgs& data_args, const BasisArgs& basis_args, const EngineArgs& engine_args,
            double level, int grid_size, const std::string& out_dir, bool save_draws, std::uint64_t seed,
            int threads, const std::vector<std::string>& argv, std::ostream& out) {
  if (!(level > 0.0 && level < 1.0)) throw UsageError("--level must lie in (0, 1)");
  if (grid_size < 2) throw UsageError("--grid needs at least 2 points");
  const LongitudinalDataset data = data_args.load();
  std::optional<KnotSelection> selected;
  const auto specs = basis_args.specs(data, selected);
  const DesignBundle bundle = build_design(data, specs, subject_uniform_weights(data));
  const Engine engine = parse_engine(engine_args.engine);
  const EngineResult result = run_engine(engine, data, bundle, engine_args.options(threads), seed);
  const std::vector<double> grid = uniform_grid(data.time_domain(), static_cast<std::size_t>(grid_size));

  Json fit;
  fit["engine"] = to_string(engine);
  fit["seed"] = seed;
  fit["subjects"] = data.num_subjects();
  fit["observations"] = data.num_observations();
  fit["covariate_dim"] = data.covariate_dim();
  fit["time_domain"] = {data.time_domain().lo, data.time_domain().hi};
  Json spec_json = Json::array();
  for (const auto& s : specs) spec_json.push_back(to_json(s));
  fit["basis"] = spec_json;
  if (selected) fit["selection"] = to_json(*selected);
  fit["alpha"] = alpha_blocks_json(specs, result.point);
  fit["wls"] = to_json(result.wls, specs);
  fit["pcv"] = pcv(bundle, result.wls);
  if (result.prior)
    fit["prior"] = {{"a_sigma", result.prior->a_sigma}, {"b_sigma", result.prior->b_sigma}, {"ridge", result.prior->ridge}};
  if (result.variational) fit["variational"] = to_json(*result.variational);
  if (result.draws) {
    fit["sigma2"] = result.draws->sigma2_mean();
    const std::vector<double> s2(result.draws->sigma2.data(), result.draws->sigma2.data() + result.draws->size());
    const auto [lo, hi] = percentile_interval(s2, level);
    fit["sigma2_interval"] = {lo, hi};
    fit["posterior"] = draws_summary_json(*result.draws, specs, grid, level);
    if (engine != Engine::Wls) {
      const DicResult d = dic(*result.draws, whiten(bundle));
      fit["dic"] = {{"dic", d.dic}, {"p_dic", d.p_dic}};
    }
  } else {
    fit["sigma2"] = result.wls.sigma2_hat;
  }

  std::ostringstream curves;
  curves << "t";
  for (std::size_t r = 0; r < specs.size(); ++r)
    curves << ",beta" << r << ",beta" << r << "_lower,beta" << r << "_upper";
  curves << "\n";
  std::vector<Eigen::VectorXd> point(specs.size());
  std::vector<std::optional<CurveBand>> bands(specs.size());
  for (std::size_t r = 0; r < specs.size(); ++r) {
    point[r] = coefficient_curve(specs[r], alpha_block(specs, result.point, r), grid);
    if (result.draws) bands[r] = pointwise_band(*result.draws, specs, r, grid, level);
  }
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    curves << fmt(grid[j]);
    for (std::size_t r = 0; r < specs.size(); ++r) {
      curves << "," << fmt(point[r](jj));
      if (bands[r]) curves << "," << fmt(bands[r]->lower(jj)) << "," << fmt(bands[r]->upper(jj));
      else curves << ",NA,NA";
    }
    curves << "\n";
  }

  const fs::path dir(out_dir);
  ensure_dir(dir);
  std::vector<std::string> artifacts{"fit.json", "curves.csv"};
  write_file(dir / "fit.json", fit.dump(2) + "\n");
  write_file(dir / "curves.csv", curves.str());
  if (save_draws && result.draws) {
    std::ostringstream d;
    write_draws_csv(*result.draws, d);
    write_file(dir / "draws.csv", d.str());
    artifacts.push_back("draws.csv");
  }
  Json manifest;
  manifest["command"] = "fit";
  manifest["arguments"] = argv;
  manifest["seed"] = seed;
  manifest["threads"] = threads;
  manifest["data"] = data_args.path;
  manifest["basis"] = spec_json;
  manifest["engine"] = to_string(engine);
  manifest["level"] = level;
  manifest["grid"] = grid_size;
  manifest["artifacts"] = artifacts;
  manifest["versions"] = versions();
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << (dir / "fit.json").string() << ", " << (dir / "curves.csv").string() << ", "
      << (dir / "manifest.json").string() << "\n";
  return 0;
}

void emit_json(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) out << j.dump(2) << "\n";
  else write_file(path, j.dump(2) + "\n");
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  auto fail = [&](const std::string& kind, const std::string& message, int code) {
    Json e;
    e["error"] = {{"kind", kind}, {"message", message}};
    err << e.dump() << "\n";
    return code;
  };

  try {
    const std::vector<std::string> args = expand_config(raw_args);

    CLI::App app{"Time-varying coefficient models for longitudinal data", "tvcm"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(TVCM_VERSION));

    std::uint64_t seed_flag = 1;
    int threads = 1;
    std::string config;
    auto add_common = [&](CLI::App* sub) {
      sub->add_option("--config", config, "JSON file of option values (flags override)");
      sub->add_option("--threads", threads, "worker threads (1 keeps runs bitwise reproducible)")
          ->check(CLI::PositiveNumber);
      return sub->add_option("--seed", seed_flag, "master seed (fallback: $TVCM_SEED, then 1)");
    };

    DataArgs data_args;
    BasisArgs basis_args;
    EngineArgs engine_args;

    auto* fit = app.add_subcommand("fit", "select knots, fit one engine, tabulate curves");
    auto* fit_seed = add_common(fit);
    data_args.attach(fit);
    basis_args.attach(fit);
    engine_args.attach(fit);
    double level = 0.95;
    int grid_size = 200;
    std::string out_dir = ".";
    bool save_draws = false;
    fit->add_option("--level", level, "pointwise interval level");
    fit->add_option("--grid", grid_size, "number of grid points for curves.csv");
    fit->add_option("--out", out_dir, "output directory");
    fit->add_flag("--save-draws", save_draws, "also write draws.csv");

    auto* sel = app.add_subcommand("select", "PCV table over knot counts");
    auto* sel_seed = add_common(sel);
    DataArgs sel_data;
    BasisArgs sel_basis;
    sel_data.attach(sel);
    sel->add_option("--family", sel_basis.family, "radial | tpower");
    sel->add_option("--degree", sel_basis.degree, "polynomial degree g");
    sel->add_option("--k-max", sel_basis.k_max, "largest knot count");
    sel->add_option("--strategy", sel_basis.strategy, "auto | grid | coordinate");
    sel->add_option("--bandwidth", sel_basis.bandwidth, "radial bandwidth (<= 0: knot spacing)");
    std::string sel_output;
    sel->add_option("--output", sel_output, "write JSON here instead of stdout");

    auto* sim = app.add_subcommand("simulate", "replication study for one simulation scenario");
    auto* sim_seed = add_common(sim);
    int scenario = 1;
    std::string shape = "trig", corr = "weak", engines = "wls,gibbs,vb", bases = "radial,tpower";
    int sim_n = 50, sim_m = -1, reps = 50, sim_degree = 2, sim_kmax = 10, sim_draws = 2000, sim_burnin = 500;
    double missing = 0.5;
    bool no_timing = false;
    std::string sim_out = ".";
    sim->add_option("--scenario", scenario, "1 or 2")->check(CLI::IsMember({1, 2}));
    sim->add_option("--shape", shape, "scenario 1 trend: exp | trig");
    sim->add_option("--level", corr, "scenario 1 within-subject correlation: weak | medium | high");
    sim->add_option("--n", sim_n, "subjects per dataset");
    sim->add_option("--m", sim_m, "scheduled times (default 30 for scenario 1, 31 for scenario 2)");
    sim->add_option("--missing", missing, "probability of dropping a scheduled time");
    sim->add_option("--reps", reps, "replications");
    sim->add_option("--engines", engines, "comma list of wls, gibbs, vb");
    sim->add_option("--bases", bases, "comma list of radial, tpower");
    sim->add_option("--degree", sim_degree, "polynomial degree g");
    sim->add_option("--k-max", sim_kmax, "largest knot count searched");
    sim->add_option("--draws", sim_draws, "retained Gibbs draws / VB samples");
    sim->add_option("--burnin", sim_burnin, "Gibbs burn-in");
    sim->add_flag("--no-timing", no_timing, "write 0 ms so reports are byte-identical");
    sim->add_option("--out", sim_out, "output directory");

    auto* bench = app.add_subcommand("bench", "Gibbs vs VB draw-generation time");
    auto* bench_seed = add_common(bench);
    int bench_scenario = 2;
    std::string bench_shape = "exp", bench_n = "100", bench_engine = "both", bench_output;
    int bench_reps = 10, bench_draws = 2000, bench_burnin = 500, bench_kmax = 10;
    bench->add_option("--scenario", bench_scenario, "1 or 2")->check(CLI::IsMember({1, 2}));
    bench->add_option("--shape", bench_shape, "scenario 1 trend: exp (1a) | trig (1b)");
    bench->add_option("--n", bench_n, "comma list of subject counts");
    bench->add_option("--engine", bench_engine, "both | gibbs | vb");
    bench->add_option("--reps", bench_reps, "datasets averaged per row");
    bench->add_option("--draws", bench_draws, "draws generated per engine");
    bench->add_option("--burnin", bench_burnin, "Gibbs burn-in");
    bench->add_option("--k-max", bench_kmax, "largest knot count searched");
    bench->add_option("--output", bench_output, "also write the table as CSV here");

    auto* cv = app.add_subcommand("crossval", "L-fold predictive cross-validation");
    auto* cv_seed = add_common(cv);
    DataArgs cv_data;
    BasisArgs cv_basis;
    EngineArgs cv_engine;
    int folds = 10;
    std::string cv_output;
    cv_data.attach(cv);
    cv_basis.attach(cv);
    cv_engine.attach(cv);
    cv->add_option("--folds", folds, "number of folds L");
    cv->add_option("--output", cv_output, "write JSON here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      return fail("usage", e.what(), 2);
    }

    if (fit->parsed()) {
      return cmd_fit(data_args, basis_args, engine_args, level, grid_size, out_dir, save_draws,
                     resolve_seed(fit_seed, seed_flag), threads, raw_args, out);
    }
    if (sel->parsed()) {
      resolve_seed(sel_seed, seed_flag);
      const LongitudinalDataset data = sel_data.load();
      Json j = to_json(select_knots(data, sel_basis.selection()));
      j["family"] = to_string(parse_basis_family(sel_basis.family));
      j["degree"] = sel_basis.degree;
      j["k_max"] = sel_basis.k_max;
      emit_json(j, sel_output, out);
      return 0;
    }
    if (sim->parsed()) {
      ReplicationConfig cfg;
      cfg.scenario = scenario;
      cfg.replications = reps;
      cfg.degree = sim_degree;
      cfg.k_max = sim_kmax;
      cfg.engine.draws = sim_draws;
      cfg.engine.burnin = sim_burnin;
      cfg.seed = resolve_seed(sim_seed, seed_flag);
      cfg.threads = threads;
      cfg.timing = !no_timing;
      cfg.engines.clear();
      for (const auto& e : split_list(engines)) cfg.engines.push_back(parse_engine(e));
      cfg.bases.clear();
      for (const auto& b : split_list(bases)) cfg.bases.push_back(parse_basis_family(b));
      if (scenario == 1) {
        cfg.scenario1 = Scenario1Config{sim_n, sim_m < 0 ? 30 : sim_m, missing, parse_correlation_level(corr),
                                        parse_trend_shape(shape)};
      } else {
        cfg.scenario2 = Scenario2Config{sim_n, sim_m < 0 ? 31 : sim_m, missing};
      }
      const ReplicationReport report = run_replications(cfg);
      const fs::path dir(sim_out);
      ensure_dir(dir);
      std::ostringstream csv;
      write_report_csv(report, csv);
      write_file(dir / "report.csv", csv.str());
      Json summary = summary_json(report);
      summary["arguments"] = raw_args;
      summary["versions"] = versions();
      write_file(dir / "summary.json", summary.dump(2) + "\n");
      out << summary_json(report).dump(2) << "\n";
      return 0;
    }
    if (bench->parsed()) {
      BenchConfig cfg;
      cfg.setting = bench_scenario == 2 ? "2" : (parse_trend_shape(bench_shape) == TrendShape::Exp ? "1a" : "1b");
      cfg.reps = bench_reps;
      cfg.draws = bench_draws;
      cfg.burnin = bench_burnin;
      cfg.k_max = bench_kmax;
      cfg.seed = resolve_seed(bench_seed, seed_flag);
      if (bench_engine == "gibbs" || bench_engine == "mcmc") cfg.run_vb = false;
      else if (bench_engine == "vb") cfg.run_gibbs = false;
      else if (bench_engine != "both") throw UsageError("--engine must be both, gibbs or vb");
      std::ostringstream table;
      table << "setting,n,mc_ms,vb_ms,reps\n";
      for (int n : int_list(bench_n, "--n")) {
        cfg.n = n;
        const BenchRow row = run_benchmark(cfg);
        table << row.setting << "," << row.n << "," << (cfg.run_gibbs ? fmt(row.mc_millis) : "NA") << ","
              << (cfg.run_vb ? fmt(row.vb_millis) : "NA") << "," << row.reps << "\n";
      }
      if (!bench_output.empty()) write_file(bench_output, table.str());
      out << table.str();
      return 0;
    }
    if (cv->parsed()) {
      const std::uint64_t seed = resolve_seed(cv_seed, seed_flag);
      const LongitudinalDataset data = cv_data.load();
      std::optional<KnotSelection> selected;
      const auto specs = cv_basis.specs(data, selected);
      const Engine engine = parse_engine(cv_engine.engine);
      const double value = crossval_amse(data, specs, engine, cv_engine.options(threads), folds, seed);
      Json j;
      j["cv_amse"] = value;
      j["folds"] = folds;
      j["engine"] = to_string(engine);
      j["seed"] = seed;
      Json spec_json = Json::array();
      for (const auto& s : specs) spec_json.push_back(to_json(s));
      j["basis"] = spec_json;
      emit_json(j, cv_output, out);
      return 0;
    }
    return fail("usage", "no subcommand", 2);
  } catch (const UsageError& e) {
    return fail("usage", e.what(), 2);
  } catch (const Error& e) {
    return fail(std::string(to_string(e.kind())), e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
}

}  // namespace tvcm::cli
