#include "chaosbench/chaosbench.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cb = chaosbench;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  int jobs = 1;
  bool json = false;
  std::string out;
  bool smape_fraction = false;
};

constexpr const char* kDataEnv = "CHAOSBENCH_DATA";

fs::path data_dir(const Globals& g) {
  if (!g.out.empty()) return g.out;
  if (const char* env = std::getenv(kDataEnv); env && *env) return env;
  return "chaosbench-data";
}

// Creates `dir` and proves it accepts files; failures are validation errors so
// they surface as exit 1 before any computation starts.
void require_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw cb::ValidationError("output directory " + dir.string() + " cannot be created: " + ec.message());
  const fs::path probe = dir / ".chaosbench-write-test";
  {
    std::ofstream f(probe);
    if (!f) throw cb::ValidationError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

json num(double v) { return std::isfinite(v) ? json(v) : json(); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<cb::SystemSpec> resolve_systems(const std::vector<std::string>& names) {
  std::vector<std::string> list = names;
  if (list.empty() || (list.size() == 1 && list[0] == "all")) list = cb::list_systems();
  std::vector<cb::SystemSpec> out;
  for (const auto& n : list) out.push_back(cb::lookup(n));
  return out;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string fmt(double v, int precision = 6) {
  if (!std::isfinite(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

void print_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c)
      std::cout << std::left << std::setw(static_cast<int>(width[c]) + (c + 1 < r.size() ? 2 : 0)) << r[c];
    std::cout << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

// ---------------------------------------------------------------------------
// list / info
// ---------------------------------------------------------------------------

int cmd_list(const Globals& g) {
  std::vector<std::vector<std::string>> rows;
  json systems = json::array();
  for (const auto& name : cb::list_systems()) {
    const auto& s = cb::lookup(name);
    systems.push_back({{"name", s.name},
                       {"dimension", s.dimension},
                       {"dt", s.dt},
                       {"period", s.period},
                       {"hamiltonian", s.flags.hamiltonian},
                       {"nonautonomous", s.flags.nonautonomous},
                       {"chaotic", s.flags.chaotic}});
    std::string kind = s.flags.hamiltonian ? "hamiltonian" : "dissipative";
    if (s.flags.nonautonomous) kind += ",forced";
    if (!s.flags.chaotic) kind += ",regular";
    rows.push_back({s.name, std::to_string(s.dimension), fmt(s.dt), fmt(s.period), kind});
  }
  if (g.json) {
    print_json({{"registry_version", std::string(cb::kRegistryVersion)}, {"systems", systems}});
  } else {
    print_table({"name", "dim", "dt", "period", "kind"}, rows);
  }
  return 0;
}

json spec_json(const cb::SystemSpec& s) {
  json params = json::object();
  for (const auto& p : s.parameters) params[p.name] = p.value;
  return {{"name", s.name},
          {"dimension", s.dimension},
          {"parameters", params},
          {"initial_conditions", s.default_initial_condition},
          {"dt", s.dt},
          {"period", s.period},
          {"hamiltonian", s.flags.hamiltonian},
          {"nonautonomous", s.flags.nonautonomous},
          {"chaotic", s.flags.chaotic},
          {"polynomial", s.flags.polynomial},
          {"analytic_jacobian", static_cast<bool>(s.analytic_jacobian)},
          {"unbounded_indices", s.unbounded_indices},
          {"citation", s.citation},
          {"description", s.description}};
}

int cmd_info(const Globals& g, const std::string& name) {
  const auto& s = cb::lookup(name);
  const json j = spec_json(s);
  if (g.json) {
    print_json(j);
    return 0;
  }
  std::cout << s.name << " (" << s.dimension << "D)\n  " << s.description << "\n  " << s.citation << "\n";
  std::cout << "  parameters:";
  for (const auto& p : s.parameters) std::cout << " " << p.name << "=" << fmt(p.value, 10);
  std::cout << "\n  dt=" << fmt(s.dt) << " period=" << fmt(s.period) << "\n  ic:";
  for (double v : s.default_initial_condition) std::cout << " " << fmt(v, 10);
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// integrate / align
// ---------------------------------------------------------------------------

struct IntegrateArgs {
  std::string system;
  long points = 1000;
  double granularity = 100.0;
  double noise = 0.0;
  int settle = 20;
  std::string ic;
};

int cmd_integrate(const Globals& g, const IntegrateArgs& a) {
  const auto& spec = cb::lookup(a.system);
  if (a.points < 2) throw cb::ValidationError("--points must be >= 2");
  if (a.noise < 0.0) throw cb::ValidationError("--noise must be nonnegative");
  cb::Vector ic = cb::to_vector(spec.default_initial_condition);
  if (!a.ic.empty()) {
    std::vector<double> v;
    for (const auto& item : split_list(a.ic)) {
      try {
        v.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw cb::ValidationError("--ic value '" + item + "' is not a number");
      }
    }
    if (static_cast<int>(v.size()) != spec.dimension)
      throw cb::DimensionMismatchError("--ic has " + std::to_string(v.size()) + " values, " + spec.name + " needs " +
                                       std::to_string(spec.dimension));
    ic = cb::to_vector(v);
  }
  if (a.settle > 0) ic = cb::settle_on_attractor(spec, ic, a.settle);
  cb::Trajectory traj = cb::make_trajectory(spec, ic, a.points, a.granularity);
  if (a.noise > 0.0) {
    const double interval = spec.period / a.granularity;
    const Eigen::Index m = cb::substeps_for(spec, interval);
    const cb::Vector sigma = a.noise * cb::coordinate_std(traj.states);
    traj = cb::integrate_stochastic_scaled(spec, ic, interval / static_cast<double>(m), (a.points - 1) * m, sigma,
                                           g.seed, m);
    traj.granularity = a.granularity;
    traj.provenance.noise_amplitude = a.noise;
  }
  const std::string text = g.json ? cb::trajectory_to_json(traj).dump(2) + "\n" : cb::trajectory_to_csv(traj);
  if (g.out.empty()) {
    std::cout << text;
  } else {
    const fs::path path(g.out);
    if (path.has_parent_path()) require_writable(path.parent_path());
    cb::write_file(path, text);
  }
  return 0;
}

int cmd_align(const Globals& g, const std::string& name, int surrogates, double quantile) {
  const auto& spec = cb::lookup(name);
  cb::AlignOptions opts;
  opts.significance.n_surrogates = surrogates;
  opts.significance.quantile = quantile;
  opts.significance.seed = g.seed;
  opts.significance.jobs = g.jobs;
  const auto ts = cb::select_timescales(spec, opts);
  if (g.json) {
    print_json({{"system", spec.name}, {"dt", ts.dt}, {"period", ts.period}, {"spectrum", cb::to_json(ts.spectrum)}});
  } else {
    std::cout << spec.name << ": period " << fmt(ts.period, 10) << ", dt " << fmt(ts.dt, 10) << " ("
              << ts.spectrum.count_significant() << " significant of " << ts.spectrum.frequencies.size() - 1
              << " bins)\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// characterize
// ---------------------------------------------------------------------------

struct CharacterizeArgs {
  std::vector<std::string> systems;
  int replicates = 20;
  int periods = 5;
};

cb::AnnotateOptions annotate_options(const Globals& g, int replicates, int periods) {
  if (replicates < 1) throw cb::ValidationError("--replicates must be >= 1");
  if (periods < 1) throw cb::ValidationError("--periods must be >= 1");
  cb::AnnotateOptions o;
  o.lyapunov.replicates = replicates;
  o.lyapunov.seed = g.seed;
  o.lyapunov.jobs = g.jobs;
  o.periods = periods;
  return o;
}

json error_json(const std::exception& e) {
  std::string type = "error";
  if (dynamic_cast<const cb::NonConvergenceError*>(&e)) type = "non_convergence";
  else if (dynamic_cast<const cb::DivergenceError*>(&e)) type = "divergence";
  else if (dynamic_cast<const cb::NumericalError*>(&e)) type = "numerical";
  else if (dynamic_cast<const cb::IoError*>(&e)) type = "io";
  else if (dynamic_cast<const cb::ValidationError*>(&e)) type = "validation";
  return {{"type", type}, {"message", e.what()}};
}

// annotations.json: system name -> annotation fields (metadata key names).
std::map<std::string, cb::SystemAnnotations> read_annotations(const fs::path& path) {
  const auto j = json::parse(cb::read_file(path));
  std::map<std::string, cb::SystemAnnotations> out;
  for (const auto& [name, value] : j.items()) out[name] = cb::annotations_from_metadata(value);
  return out;
}

void merge_annotations(const fs::path& path, const json& fragment) {
  json merged = json::object();
  if (fs::exists(path)) merged = json::parse(cb::read_file(path));
  for (const auto& [name, value] : fragment.items()) merged[name] = value;
  cb::write_file(path, merged.dump(2) + "\n");
}

int cmd_characterize(const Globals& g, const CharacterizeArgs& a) {
  const auto systems = resolve_systems(a.systems);
  const auto opts = annotate_options(g, a.replicates, a.periods);
  const fs::path dir = data_dir(g);
  if (!g.out.empty()) require_writable(dir);
  json fragment = json::object();
  json errors = json::object();
  std::vector<std::vector<std::string>> rows;
  for (const auto& spec : systems) {
    try {
      const auto ann = cb::annotate(spec, opts);
      fragment[spec.name] = cb::annotations_to_json(ann);
      rows.push_back({spec.name, fmt(ann.largest_lyapunov), fmt(ann.kaplan_yorke_dimension),
                      fmt(ann.correlation_dimension), fmt(ann.multiscale_entropy), fmt(ann.pesin_entropy)});
    } catch (const cb::ValidationError&) {
      throw;
    } catch (const cb::Error& e) {
      errors[spec.name] = error_json(e);
      std::cerr << spec.name << ": " << e.what() << "\n";
    }
  }
  if (!g.out.empty() && !fragment.empty()) merge_annotations(dir / "annotations.json", fragment);
  if (g.json) {
    json j{{"systems", fragment}};
    if (!errors.empty()) j["errors"] = errors;
    print_json(j);
  } else {
    print_table({"system", "lle", "kaplan_yorke", "corr_dim", "mse", "pesin"}, rows);
  }
  return errors.empty() ? 0 : 2;
}

// ---------------------------------------------------------------------------
// dataset
// ---------------------------------------------------------------------------

struct AnnotationSource {
  std::string file;
  bool auto_build = false;
  int replicates = 20;
  int periods = 5;
};

// Annotations for `systems`: an explicit file, else <data>/annotations.json,
// else computed (when allowed) and cached into <data>/annotations.json.
std::map<std::string, cb::SystemAnnotations> gather_annotations(const Globals& g, const fs::path& dir,
                                                                const std::vector<cb::SystemSpec>& systems,
                                                                const AnnotationSource& src, bool compute_missing) {
  std::map<std::string, cb::SystemAnnotations> ann;
  const fs::path cached = dir / "annotations.json";
  if (!src.file.empty()) {
    ann = read_annotations(src.file);
  } else if (fs::exists(cached)) {
    ann = read_annotations(cached);
  }
  std::vector<const cb::SystemSpec*> missing;
  for (const auto& s : systems)
    if (!ann.count(s.name)) missing.push_back(&s);
  if (missing.empty()) return ann;
  if (!compute_missing && !src.auto_build)
    throw cb::ValidationError("no annotations for " + missing.front()->name + " (pass --annotations or --auto)");
  const auto opts = annotate_options(g, src.replicates, src.periods);
  json fragment = json::object();
  for (const auto* s : missing) {
    std::cerr << "characterizing " << s->name << "\n";
    ann[s->name] = cb::annotate(*s, opts);
    fragment[s->name] = cb::annotations_to_json(ann[s->name]);
  }
  merge_annotations(cached, fragment);
  return ann;
}

int cmd_dataset(const Globals& g, const std::vector<std::string>& names, const AnnotationSource& src) {
  const auto systems = resolve_systems(names);
  const fs::path root = data_dir(g);
  require_writable(root);
  const auto ann = gather_annotations(g, root, systems, src, true);
  json status = json::array();
  std::vector<cb::DatasetBundle> bundles;
  bool failed = false;
  for (const auto& spec : systems) {
    try {
      bundles.push_back(cb::build_bundle(spec, ann.at(spec.name), root, g.seed));
      status.push_back({{"system", spec.name},
                        {"status", "ok"},
                        {"trajectories", bundles.back().trajectory_count()},
                        {"files", bundles.back().files.size()}});
      if (!g.json) std::cout << spec.name << ": ok (" << bundles.back().trajectory_count() << " trajectories)\n";
    } catch (const cb::Error& e) {
      failed = true;
      status.push_back({{"system", spec.name}, {"status", "failed"}, {"error", error_json(e)}});
      if (!g.json) std::cout << spec.name << ": FAILED " << e.what() << "\n";
    }
  }
  cb::write_file(root / "manifest.json", cb::manifest_json(bundles, g.seed).dump(2) + "\n");
  if (g.json) print_json({{"root", root.string()}, {"seed", g.seed}, {"systems", status}});
  return failed ? 2 : 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> systems;
  std::string granularity = "coarse";
  std::string models;
  std::string modes = "full,random,weighted";
  AnnotationSource annotations;
};

std::vector<double> parse_granularities(const std::string& s) {
  if (s == "both") return {cb::kCoarseGranularity, cb::kFineGranularity};
  if (s == "coarse" || s == "fine") return {cb::points_per_period(cb::granularity_from_string(s))};
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && v > 0.0) return {v};
  } catch (const std::exception&) {
  }
  throw cb::ValidationError("--granularity must be coarse, fine, both or a positive number, got '" + s + "'");
}

int cmd_bench_forecast(const Globals& g, const BenchArgs& a) {
  const auto systems = resolve_systems(a.systems);
  const fs::path dir = data_dir(g);
  cb::BenchmarkOptions opts;
  opts.granularities = parse_granularities(a.granularity);
  if (!a.models.empty()) {
    opts.models.clear();
    for (const auto& m : split_list(a.models)) opts.models.push_back(cb::model_kind_from_string(m));
  }
  opts.seed = g.seed;
  opts.jobs = g.jobs;
  require_writable(dir);
  const auto ann = gather_annotations(g, dir, systems, a.annotations, false);

  const auto rows = cb::run_benchmark(systems, opts);
  std::size_t failed = 0;
  for (const auto& r : rows)
    if (!r.ok()) {
      ++failed;
      std::cerr << r.system << " " << cb::to_string(r.model) << ": " << r.error << "\n";
    }
  if (failed == rows.size()) throw cb::NumericalError("every forecast row failed");
  cb::write_file(dir / "forecast.csv", cb::benchmark_csv(rows, g.smape_fraction));

  json correlations = json::object();
  for (double gran : opts.granularities) {
    json by_metric = json::object();
    for (const auto& [metric, by_ann] : cb::benchmark_correlations(rows, gran, ann)) {
      json row = json::object();
      for (const auto& [name, rho] : by_ann) row[name] = num(rho);
      by_metric[metric] = row;
    }
    correlations[cb::format_double(gran)] = by_metric;
  }
  cb::write_file(dir / "forecast_correlations.json", correlations.dump(2) + "\n");

  if (g.json) {
    print_json({{"suite", "forecast"},
                {"rows", rows.size()},
                {"failed_rows", failed},
                {"csv", (dir / "forecast.csv").string()},
                {"correlations", correlations}});
  } else {
    std::vector<std::vector<std::string>> table;
    for (double gran : opts.granularities)
      for (const auto& [system, v] : cb::best_model_metric(rows, gran, "smape"))
        table.push_back({system, fmt(gran), fmt(g.smape_fraction ? v / 100.0 : v)});
    print_table({"system", "granularity", "best_smape"}, table);
    std::cout << "wrote " << (dir / "forecast.csv").string() << " and forecast_correlations.json\n";
  }
  return 0;
}

int cmd_bench_sindy(const Globals& g, const BenchArgs& a) {
  const auto systems = resolve_systems(a.systems);
  const fs::path dir = data_dir(g);
  require_writable(dir);
  cb::SindyOptions opts;
  opts.seed = g.seed;
  opts.jobs = g.jobs;
  const auto rows = cb::run_sindy_benchmark(systems, opts);
  std::size_t failed = 0;
  json per_system = json::array();
  for (const auto& r : rows) {
    if (!r.error.empty()) ++failed, std::cerr << r.system << ": " << r.error << "\n";
    const double f = g.smape_fraction ? 0.01 : 1.0;
    per_system.push_back({{"system", r.system},
                          {"test_smape", r.error.empty() ? num(f * r.test_smape) : json()},
                          {"nonzero_terms", r.nonzero_terms}});
  }
  if (failed == rows.size()) throw cb::NumericalError("every sparse-regression row failed");
  cb::write_file(dir / "sindy.csv", cb::sindy_csv(rows, g.smape_fraction));
  if (g.json) {
    print_json({{"suite", "sindy"},
                {"rows", rows.size()},
                {"failed_rows", failed},
                {"csv", (dir / "sindy.csv").string()},
                {"systems", per_system}});
  } else {
    std::cout << cb::sindy_csv(rows, g.smape_fraction);
  }
  return 0;
}

int cmd_bench_importance(const Globals& g, const BenchArgs& a) {
  const auto systems = resolve_systems(a.systems);
  const fs::path dir = data_dir(g);
  std::vector<cb::SamplingMode> modes;
  for (const auto& m : split_list(a.modes)) modes.push_back(cb::sampling_mode_from_string(m));
  if (modes.empty()) throw cb::ValidationError("--modes must name at least one mode");
  require_writable(dir);
  std::vector<cb::ImportanceResult> rows;
  std::size_t failed = 0;
  for (const auto& spec : systems)
    for (auto mode : modes) {
      cb::ImportancePlan plan;
      plan.mode = mode;
      plan.seed = g.seed;
      plan.jobs = g.jobs;
      try {
        rows.push_back(cb::importance_train(spec, plan));
      } catch (const cb::Error& e) {
        ++failed;
        std::cerr << spec.name << " " << cb::to_string(mode) << ": " << e.what() << "\n";
      }
    }
  if (rows.empty()) throw cb::NumericalError("every importance-sampling run failed");
  // Wall-clock seconds make the CSV run-dependent; the JSON summary omits them.
  cb::write_file(dir / "importance.csv", cb::importance_csv(rows, g.smape_fraction));
  if (g.json) {
    json per_mode = json::object();
    for (auto mode : modes) {
      std::vector<double> v;
      for (const auto& r : rows)
        if (r.mode == mode) v.push_back(g.smape_fraction ? r.test_smape / 100.0 : r.test_smape);
      per_mode[cb::to_string(mode)] = v.empty() ? json() : num(cb::median(v));
    }
    print_json({{"suite", "importance"},
                {"rows", rows.size()},
                {"failed_rows", failed},
                {"csv", (dir / "importance.csv").string()},
                {"median_smape", per_mode}});
  } else {
    std::cout << cb::importance_csv(rows, g.smape_fraction);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaotic dynamical systems benchmark toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--json", g.json, "machine-readable JSON on stdout");
  app.add_option("--out", g.out, std::string("output path (default: $") + kDataEnv + " or ./chaosbench-data)");
  app.add_flag("--smape-fraction", g.smape_fraction, "report sMAPE divided by 100");

  auto* list = app.add_subcommand("list", "list registered systems");
  auto* info = app.add_subcommand("info", "show one system");
  std::string info_name;
  info->add_option("system", info_name)->required();

  auto* integ = app.add_subcommand("integrate", "integrate one system to CSV (or JSON with --json)");
  IntegrateArgs ia;
  integ->add_option("system", ia.system)->required();
  integ->add_option("--points", ia.points, "number of samples")->capture_default_str();
  integ->add_option("--granularity", ia.granularity, "samples per period")->capture_default_str();
  integ->add_option("--noise", ia.noise, "noise amplitude as a fraction of each coordinate's std")
      ->capture_default_str();
  integ->add_option("--settle", ia.settle, "transient periods discarded (0 keeps the ic)")->capture_default_str();
  integ->add_option("--ic", ia.ic, "comma-separated initial condition");

  auto* align = app.add_subcommand("align", "select dt and period from the power spectrum");
  std::string align_name;
  int surrogates = 1000;
  double quantile = 0.95;
  align->add_option("system", align_name)->required();
  align->add_option("--surrogates", surrogates)->capture_default_str();
  align->add_option("--quantile", quantile)->capture_default_str();

  auto* charz = app.add_subcommand("characterize", "Lyapunov spectrum, dimensions and entropy");
  CharacterizeArgs ca;
  charz->add_option("systems", ca.systems, "system names or 'all'")->required();
  charz->add_option("--replicates", ca.replicates)->capture_default_str();
  charz->add_option("--periods", ca.periods, "trajectory length for dimension and entropy")->capture_default_str();

  auto* dataset = app.add_subcommand("dataset", "build dataset bundles and manifest");
  std::vector<std::string> dataset_systems;
  AnnotationSource dataset_ann;
  dataset->add_option("systems", dataset_systems, "system names or 'all'")->required();
  dataset->add_option("--annotations", dataset_ann.file, "annotations JSON from 'characterize'");

  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->require_subcommand(1);
  BenchArgs ba;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--systems", ba.systems, "system names (default all)")->delimiter(',');
  };
  auto* bf = bench->add_subcommand("forecast", "forecasting baselines");
  add_common(bf);
  bf->add_option("--granularity", ba.granularity, "coarse, fine, both or samples per period")->capture_default_str();
  bf->add_option("--models", ba.models, "comma-separated model names");
  bf->add_option("--annotations", ba.annotations.file, "annotations JSON from 'characterize'");
  bf->add_flag("--auto", ba.annotations.auto_build, "compute missing annotations");
  auto* bs = bench->add_subcommand("sindy", "sparse symbolic regression");
  add_common(bs);
  auto* bi = bench->add_subcommand("importance", "importance-sampled training");
  add_common(bi);
  bi->add_option("--modes", ba.modes, "comma-separated: full, random, weighted")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*list) return cmd_list(g);
    if (*info) return cmd_info(g, info_name);
    if (*integ) return cmd_integrate(g, ia);
    if (*align) return cmd_align(g, align_name, surrogates, quantile);
    if (*charz) return cmd_characterize(g, ca);
    if (*dataset) return cmd_dataset(g, dataset_systems, dataset_ann);
    if (*bf) return cmd_bench_forecast(g, ba);
    if (*bs) return cmd_bench_sindy(g, ba);
    if (*bi) return cmd_bench_importance(g, ba);
  } catch (const cb::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (g.json) std::cerr << json{{"error", error_json(e)}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (g.json) std::cerr << json{{"error", error_json(e)}}.dump() << "\n";
    return 2;
  }
  return 1;
}
