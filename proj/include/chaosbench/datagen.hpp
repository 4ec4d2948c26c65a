#pragma once

#include "chaosbench/core.hpp"
#include "chaosbench/forecast.hpp"
#include "chaosbench/inference.hpp"
#include "chaosbench/integrate.hpp"
#include "chaosbench/parallel.hpp"
#include "chaosbench/system_spec.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace chaosbench {

namespace fs = std::filesystem;

inline constexpr double kCoarseGranularity = 15.0;
inline constexpr double kFineGranularity = 100.0;
inline constexpr int kTrainPeriods = 10;
inline constexpr int kValidationPeriods = 2;
inline constexpr double kNoiseFraction = 1.0 / 40.0;
inline constexpr int kMaxNoiseDraws = 256;

enum class Granularity { coarse, fine };
enum class Role { train, test };
enum class View { multivariate, univariate };
enum class Noise { clean, noisy };

inline std::string to_string(Granularity g) { return g == Granularity::coarse ? "coarse" : "fine"; }
inline std::string to_string(Role r) { return r == Role::train ? "train" : "test"; }
inline std::string to_string(View v) { return v == View::multivariate ? "multivariate" : "univariate"; }
inline std::string to_string(Noise n) { return n == Noise::clean ? "clean" : "noisy"; }
inline double points_per_period(Granularity g) { return g == Granularity::coarse ? kCoarseGranularity : kFineGranularity; }

inline Granularity granularity_from_string(const std::string& s) {
  if (s == "coarse") return Granularity::coarse;
  if (s == "fine") return Granularity::fine;
  throw ValidationError("granularity must be 'coarse' or 'fine', got '" + s + "'");
}

inline std::string trajectory_file_name(Granularity g, Role r, View v, Noise n) {
  return to_string(g) + "_" + to_string(r) + "_" + to_string(v) + "_" + to_string(n) + ".csv";
}

inline std::string checksum_hex(const std::string& content) {
  static constexpr char digits[] = "0123456789abcdef";
  std::uint64_t h = fnv1a64(content);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFileError("missing file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

// Metadata document with the fields of the per-system property table, in a
// fixed key order.
inline nlohmann::ordered_json export_metadata(const SystemSpec& spec, const SystemAnnotations& ann) {
  std::vector<std::string> missing;
  auto check = [&](const char* name, double v) {
    if (!std::isfinite(v)) missing.emplace_back(name);
  };
  if (ann.lyapunov_spectrum.empty()) missing.emplace_back("lyapunov_spectrum");
  check("largest_lyapunov", ann.largest_lyapunov);
  check("correlation_dimension", ann.correlation_dimension);
  check("kaplan_yorke_dimension", ann.kaplan_yorke_dimension);
  check("multiscale_entropy", ann.multiscale_entropy);
  check("pesin_entropy", ann.pesin_entropy);
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ValidationError("annotations for " + spec.name + " are missing: " + list);
  }
  nlohmann::ordered_json j;
  j["name"] = spec.name;
  j["citation"] = spec.citation;
  j["description"] = spec.description;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& p : spec.parameters) params[p.name] = p.value;
  j["parameters"] = params;
  j["embedding_dimension"] = spec.dimension;
  j["unbounded_indices"] = spec.unbounded_indices;
  j["dt"] = spec.dt;
  j["initial_conditions"] = spec.default_initial_condition;
  j["period"] = spec.period;
  j["lyapunov_spectrum"] = ann.lyapunov_spectrum;
  j["largest_lyapunov"] = ann.largest_lyapunov;
  j["correlation_dimension"] = ann.correlation_dimension;
  j["kaplan_yorke_dimension"] = ann.kaplan_yorke_dimension;
  j["multiscale_entropy"] = ann.multiscale_entropy;
  j["pesin_entropy"] = ann.pesin_entropy;
  j["delay"] = false;
  j["hamiltonian"] = spec.flags.hamiltonian;
  j["nonautonomous"] = spec.flags.nonautonomous;
  return j;
}

// Annotation fields under the metadata key names; NaN becomes null.
inline nlohmann::ordered_json annotations_to_json(const SystemAnnotations& a) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); };
  nlohmann::ordered_json j;
  j["lyapunov_spectrum"] = a.lyapunov_spectrum;
  j["largest_lyapunov"] = num(a.largest_lyapunov);
  j["correlation_dimension"] = num(a.correlation_dimension);
  j["kaplan_yorke_dimension"] = num(a.kaplan_yorke_dimension);
  j["multiscale_entropy"] = num(a.multiscale_entropy);
  j["pesin_entropy"] = num(a.pesin_entropy);
  return j;
}

inline SystemAnnotations annotations_from_metadata(const nlohmann::ordered_json& j) {
  SystemAnnotations a;
  auto num = [&](const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  a.lyapunov_spectrum = j.at("lyapunov_spectrum").get<std::vector<double>>();
  a.largest_lyapunov = num("largest_lyapunov");
  a.correlation_dimension = num("correlation_dimension");
  a.kaplan_yorke_dimension = num("kaplan_yorke_dimension");
  a.multiscale_entropy = num("multiscale_entropy");
  a.pesin_entropy = num("pesin_entropy");
  return a;
}

struct FileRecord {
  std::string name;
  std::string checksum;
  Eigen::Index rows = 0;
  std::uint64_t seed = 0;
  double noise_amplitude = 0.0;
  std::vector<double> initial_condition;
  int noise_redraws = 0;
};

struct DatasetBundle {
  std::string system;
  fs::path directory;
  std::vector<FileRecord> files;  // 16 trajectories, then regression sets and metadata

  std::size_t trajectory_count() const {
    return static_cast<std::size_t>(std::count_if(files.begin(), files.end(), [](const FileRecord& f) {
      return f.name.find("_clean.csv") != std::string::npos || f.name.find("_noisy.csv") != std::string::npos;
    }));
  }
};

namespace detail {

struct NoisyRun {
  Trajectory clean, noisy;
  std::uint64_t seed = 0;  // noise seed of the accepted realization
  int redraws = 0;         // escaped realizations discarded before it
};

// Clean and noisy series share the initial condition and sampling. The noisy
// one adds Wiener increments whose diffusion is 1/40 of each clean
// coordinate's std per dominant period, i.e. sigma_i = std_i / (40 sqrt(T)).
// A realization that escapes the basin is discarded and the next noise
// substream is drawn, up to kMaxNoiseDraws attempts.
inline NoisyRun clean_and_noisy(const SystemSpec& spec, const Vector& ic, double g, std::uint64_t noise_seed) {
  const auto n = static_cast<Eigen::Index>(std::lround((kTrainPeriods + kValidationPeriods) * g));
  NoisyRun out;
  out.clean = make_trajectory(spec, ic, n, g);
  const double interval = spec.period / g;
  const Eigen::Index m = substeps_for(spec, interval);
  const Vector sigma = kNoiseFraction / std::sqrt(spec.period) * coordinate_std(out.clean.states);
  for (;; ++out.redraws) {
    out.seed = out.redraws == 0 ? noise_seed : substream_seed(noise_seed, static_cast<std::uint64_t>(out.redraws));
    try {
      out.noisy = integrate_stochastic_scaled(spec, ic, interval / static_cast<double>(m), (n - 1) * m, sigma,
                                              out.seed, m);
      break;
    } catch (const DivergenceError&) {
      if (out.redraws + 1 >= kMaxNoiseDraws) throw;
    }
  }
  out.noisy.granularity = g;
  out.noisy.provenance.noise_amplitude = kNoiseFraction;
  return out;
}

}  // namespace detail

// Writes <root>/<system>/ atomically: everything goes to a temporary sibling
// directory that is renamed into place only after every file is written.
inline DatasetBundle build_bundle(const SystemSpec& spec, const SystemAnnotations& annotations, const fs::path& root,
                                  std::uint64_t seed) {
  const auto metadata = export_metadata(spec, annotations);
  fs::create_directories(root);
  const fs::path final_dir = root / spec.name;
  const fs::path tmp_dir = root / (".tmp-" + spec.name);
  fs::remove_all(tmp_dir);
  fs::create_directories(tmp_dir);
  DatasetBundle bundle;
  bundle.system = spec.name;
  bundle.directory = final_dir;
  try {
    const auto [ic_train, ic_test] = train_test_initial_conditions(spec, seed);
    const std::uint64_t system_seed = name_seed(seed, spec.name);
    std::uint64_t stream = 0;
    for (Granularity g : {Granularity::coarse, Granularity::fine}) {
      for (Role r : {Role::train, Role::test}) {
        const Vector& ic = r == Role::train ? ic_train : ic_test;
        const std::uint64_t noise_seed = substream_seed(system_seed, stream++);
        const auto run = detail::clean_and_noisy(spec, ic, points_per_period(g), noise_seed);
        for (View v : {View::multivariate, View::univariate}) {
          for (Noise n : {Noise::clean, Noise::noisy}) {
            const bool noisy = n == Noise::noisy;
            const Trajectory& src = noisy ? run.noisy : run.clean;
            const std::string content = trajectory_to_csv(v == View::multivariate ? src : src.view({0}));
            FileRecord rec{trajectory_file_name(g, r, v, n), checksum_hex(content), src.size(),
                           noisy ? run.seed : 0,     noisy ? kNoiseFraction : 0.0,
                           to_std(ic),               noisy ? run.redraws : 0};
            write_file(tmp_dir / rec.name, content);
            bundle.files.push_back(std::move(rec));
          }
        }
      }
    }
    const auto [reg_train, reg_test] = make_regression_dataset(spec, kCoarseGranularity, kTrainPeriods, seed);
    for (const auto* ds : {&reg_train, &reg_test}) {
      const std::string content = regression_csv(*ds);
      FileRecord rec{"regression_" + ds->split + ".csv", checksum_hex(content), ds->inputs.rows(), 0, 0.0,
                     ds->initial_condition};
      write_file(tmp_dir / rec.name, content);
      bundle.files.push_back(std::move(rec));
    }
    const std::string meta = metadata.dump(2) + "\n";
    write_file(tmp_dir / "metadata.json", meta);
    bundle.files.push_back({"metadata.json", checksum_hex(meta), 0, 0, 0.0, {}, 0});
    fs::remove_all(final_dir);
    fs::rename(tmp_dir, final_dir);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(tmp_dir, ec);
    throw;
  }
  return bundle;
}

inline nlohmann::ordered_json manifest_json(const std::vector<DatasetBundle>& bundles, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["registry_version"] = kRegistryVersion;
  j["seed"] = seed;
  nlohmann::ordered_json systems = nlohmann::ordered_json::object();
  for (const auto& b : bundles) {
    nlohmann::ordered_json files = nlohmann::ordered_json::object();
    for (const auto& f : b.files) {
      nlohmann::ordered_json rec;
      rec["checksum"] = f.checksum;
      if (f.rows > 0) rec["rows"] = f.rows;
      if (!f.initial_condition.empty()) rec["initial_condition"] = f.initial_condition;
      if (f.noise_amplitude > 0.0) {
        rec["noise_seed"] = f.seed;
        rec["noise_amplitude"] = f.noise_amplitude;
        rec["noise_redraws"] = f.noise_redraws;
      }
      files[f.name] = rec;
    }
    systems[b.system] = files;
  }
  j["systems"] = systems;
  return j;
}

// Bundles for every system plus <root>/manifest.json.
inline std::vector<DatasetBundle> build_dataset(const std::vector<SystemSpec>& systems,
                                                const std::map<std::string, SystemAnnotations>& annotations,
                                                const fs::path& root, std::uint64_t seed, int jobs = 1) {
  for (const auto& s : systems)
    if (!annotations.count(s.name)) throw ValidationError("no annotations for " + s.name);
  auto bundles = parallel_map(systems.size(), jobs, [&](std::size_t i) {
    return build_bundle(systems[i], annotations.at(systems[i].name), root, seed);
  });
  write_file(root / "manifest.json", manifest_json(bundles, seed).dump(2) + "\n");
  return bundles;
}

struct Split {
  Trajectory train;
  Trajectory validation;
};

// 10-period / 2-period split of one bundle file, after the checksum check
// against <root>/manifest.json.
inline Split load_split(const fs::path& root, const std::string& system, Granularity g, Role r, View v, Noise n) {
  const std::string name = trajectory_file_name(g, r, v, n);
  const fs::path path = root / system / name;
  if (!fs::exists(path)) throw MissingFileError("missing dataset file: " + path.string());
  const fs::path manifest_path = root / "manifest.json";
  const auto manifest = nlohmann::ordered_json::parse(read_file(manifest_path));
  const auto& systems = manifest.at("systems");
  if (!systems.contains(system) || !systems.at(system).contains(name))
    throw MissingFileError("manifest has no entry for " + (fs::path(system) / name).string());
  const std::string content = read_file(path);
  const std::string expected = systems.at(system).at(name).at("checksum").get<std::string>();
  if (checksum_hex(content) != expected)
    throw ChecksumError("checksum mismatch for " + path.string() + " (expected " + expected + ", got " +
                        checksum_hex(content) + ")");
  Trajectory traj = trajectory_from_csv(content);
  const double gran = points_per_period(g);
  traj.granularity = gran;
  traj.provenance.system = system;
  const auto n_train = static_cast<Eigen::Index>(std::lround(kTrainPeriods * gran));
  if (traj.size() < n_train) throw IoError("dataset file " + path.string() + " is shorter than the training split");
  return {traj.slice(0, n_train), traj.slice(n_train, traj.size() - n_train)};
}

}  // namespace chaosbench
