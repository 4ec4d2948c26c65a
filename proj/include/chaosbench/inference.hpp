#pragma once

#include "chaosbench/core.hpp"
#include "chaosbench/forecast.hpp"
#include "chaosbench/integrate.hpp"
#include "chaosbench/metrics.hpp"
#include "chaosbench/registry.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace chaosbench {

struct RegressionDataset {
  Matrix inputs;   // N x d states
  Matrix targets;  // N x d exact time derivatives
  std::vector<double> times;
  std::string split;  // "train" or "test"
  std::string system;
  std::vector<double> initial_condition;
  double granularity = 0.0;
  int periods = 0;
};

namespace detail {

inline RegressionDataset regression_from(const SystemSpec& spec, const Vector& ic, double granularity, int periods,
                                         const std::string& split) {
  const auto n = static_cast<Eigen::Index>(std::lround(granularity * periods));
  const Trajectory traj = make_trajectory(spec, ic, n, granularity);
  RegressionDataset ds;
  ds.inputs = traj.states;
  ds.targets.resize(n, spec.dimension);
  for (Eigen::Index r = 0; r < n; ++r)
    ds.targets.row(r) = rhs_eval(spec, traj.row(r), traj.times[static_cast<std::size_t>(r)]).transpose();
  ds.times = traj.times;
  ds.split = split;
  ds.system = spec.name;
  ds.initial_condition = to_std(ic);
  ds.granularity = granularity;
  ds.periods = periods;
  return ds;
}

}  // namespace detail

// Train and test datasets from two distinct settled initial conditions.
inline std::pair<RegressionDataset, RegressionDataset> make_regression_dataset(const SystemSpec& spec,
                                                                               double granularity = 15.0,
                                                                               int periods = 10,
                                                                               std::uint64_t seed = 0) {
  require(granularity > 0.0 && periods >= 1, "granularity and periods must be positive");
  const auto [ic_train, ic_test] = train_test_initial_conditions(spec, seed);
  return {detail::regression_from(spec, ic_train, granularity, periods, "train"),
          detail::regression_from(spec, ic_test, granularity, periods, "test")};
}

inline std::string regression_csv(const RegressionDataset& ds) {
  const auto d = ds.inputs.cols();
  std::string out = "t";
  for (Eigen::Index i = 0; i < d; ++i) out += ",x" + std::to_string(i);
  for (Eigen::Index i = 0; i < d; ++i) out += ",dx" + std::to_string(i);
  out += '\n';
  for (Eigen::Index r = 0; r < ds.inputs.rows(); ++r) {
    out += format_double(ds.times[static_cast<std::size_t>(r)]);
    for (Eigen::Index i = 0; i < d; ++i) out += "," + format_double(ds.inputs(r, i));
    for (Eigen::Index i = 0; i < d; ++i) out += "," + format_double(ds.targets(r, i));
    out += '\n';
  }
  return out;
}

// Monomial prod_i x_i^{powers_i}.
struct Term {
  std::vector<int> powers;

  int degree() const { return std::accumulate(powers.begin(), powers.end(), 0); }

  double eval(std::span<const double> x) const {
    double v = 1.0;
    for (std::size_t i = 0; i < powers.size(); ++i)
      for (int k = 0; k < powers[i]; ++k) v *= x[i];
    return v;
  }

  std::string name() const {
    std::string out;
    for (std::size_t i = 0; i < powers.size(); ++i) {
      if (powers[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(i);
      if (powers[i] > 1) out += "^" + std::to_string(powers[i]);
    }
    return out.empty() ? "1" : out;
  }
};

// All exponent vectors of total degree <= degree, by degree and then
// lexicographically descending in the leading variables (x^2, xy, y^2).
inline std::vector<Term> polynomial_terms(int dimension, int degree) {
  require(dimension >= 1, "dimension must be >= 1");
  require(degree >= 1, "library degree must be >= 1");
  std::vector<Term> terms;
  std::vector<int> powers(static_cast<std::size_t>(dimension), 0);
  for (int total = 0; total <= degree; ++total) {
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
      if (i + 1 == powers.size()) {
        powers[i] = remaining;
        terms.push_back({powers});
        return;
      }
      for (int p = remaining; p >= 0; --p) {
        powers[i] = p;
        self(self, i + 1, remaining - p);
      }
    };
    rec(rec, 0, total);
  }
  return terms;
}

struct FeatureLibrary {
  Matrix features;  // N x P
  std::vector<Term> terms;
  int degree = 0;
};

inline FeatureLibrary polynomial_library(const Matrix& states, int degree = 3) {
  FeatureLibrary lib;
  lib.degree = degree;
  lib.terms = polynomial_terms(static_cast<int>(states.cols()), degree);
  lib.features.resize(states.rows(), static_cast<Eigen::Index>(lib.terms.size()));
  std::vector<double> row(static_cast<std::size_t>(states.cols()));
  for (Eigen::Index r = 0; r < states.rows(); ++r) {
    for (Eigen::Index i = 0; i < states.cols(); ++i) row[static_cast<std::size_t>(i)] = states(r, i);
    for (std::size_t p = 0; p < lib.terms.size(); ++p) lib.features(r, static_cast<Eigen::Index>(p)) = lib.terms[p].eval(row);
  }
  return lib;
}

struct SparseModel {
  Matrix coefficients;  // P x d
  std::vector<Term> terms;
  int library_degree = 0;
  double threshold = 0.0;
  double ridge = 0.0;
  std::vector<bool> pruned_to_zero;  // per target column
  std::vector<int> iterations;

  bool any_pruned_to_zero() const { return std::find(pruned_to_zero.begin(), pruned_to_zero.end(), true) != pruned_to_zero.end(); }
  Eigen::Index nonzero_count() const { return (coefficients.array() != 0.0).count(); }
};

namespace detail {

// argmin ||A c - y||^2 + ridge ||c||^2 via QR of the augmented system.
inline Vector ridge_solve(const Matrix& A, const Vector& y, double ridge) {
  if (ridge == 0.0) return A.colPivHouseholderQr().solve(y);
  const Eigen::Index n = A.rows(), p = A.cols();
  Matrix aug(n + p, p);
  aug.topRows(n) = A;
  aug.bottomRows(p) = std::sqrt(ridge) * Matrix::Identity(p, p);
  Vector rhs = Vector::Zero(n + p);
  rhs.head(n) = y;
  return aug.householderQr().solve(rhs);
}

}  // namespace detail

// Sequentially thresholded least squares, independently per target column.
inline SparseModel stlsq(const Matrix& features, const Matrix& targets, double threshold = 0.05, double ridge = 1e-6,
                         int max_iter = 20) {
  require(features.rows() == targets.rows(), "features and targets must have the same number of rows");
  require(features.rows() >= 1 && features.cols() >= 1, "empty feature matrix");
  require(threshold >= 0.0 && ridge >= 0.0, "threshold and ridge must be nonnegative");
  require(max_iter >= 1, "max_iter must be >= 1");
  const Eigen::Index P = features.cols(), d = targets.cols();
  SparseModel model;
  model.coefficients = Matrix::Zero(P, d);
  model.threshold = threshold;
  model.ridge = ridge;
  model.pruned_to_zero.assign(static_cast<std::size_t>(d), false);
  model.iterations.assign(static_cast<std::size_t>(d), 0);
  for (Eigen::Index col = 0; col < d; ++col) {
    std::vector<Eigen::Index> active(static_cast<std::size_t>(P));
    std::iota(active.begin(), active.end(), Eigen::Index{0});
    Vector coef = Vector::Zero(P);
    for (int it = 0; it < max_iter; ++it) {
      model.iterations[static_cast<std::size_t>(col)] = it + 1;
      Matrix A(features.rows(), static_cast<Eigen::Index>(active.size()));
      for (std::size_t k = 0; k < active.size(); ++k) A.col(static_cast<Eigen::Index>(k)) = features.col(active[k]);
      const Vector sol = detail::ridge_solve(A, targets.col(col), ridge);
      coef.setZero();
      std::vector<Eigen::Index> keep;
      for (std::size_t k = 0; k < active.size(); ++k) {
        const double c = sol[static_cast<Eigen::Index>(k)];
        if (std::abs(c) >= threshold) {
          keep.push_back(active[k]);
          coef[active[k]] = c;
        }
      }
      if (keep.empty() || keep == active) break;
      active = std::move(keep);
    }
    if ((coef.array() == 0.0).all()) model.pruned_to_zero[static_cast<std::size_t>(col)] = true;
    model.coefficients.col(col) = coef;
  }
  return model;
}

inline SparseModel stlsq(const FeatureLibrary& lib, const Matrix& targets, double threshold = 0.05,
                         double ridge = 1e-6, int max_iter = 20) {
  SparseModel m = stlsq(lib.features, targets, threshold, ridge, max_iter);
  m.terms = lib.terms;
  m.library_degree = lib.degree;
  return m;
}

inline Matrix predict_derivatives(const SparseModel& model, const Matrix& states) {
  const FeatureLibrary lib = polynomial_library(states, model.library_degree);
  if (lib.features.cols() != model.coefficients.rows())
    throw DimensionMismatchError("library size does not match the model");
  return lib.features * model.coefficients;
}

// Median across variables of the per-variable sMAPE between predicted and
// true derivatives.
inline double evaluate_symbolic(const SparseModel& model, const RegressionDataset& test) {
  if (test.targets.cols() != model.coefficients.cols())
    throw DimensionMismatchError("dataset dimension does not match the model");
  const Matrix pred = predict_derivatives(model, test.inputs);
  std::vector<double> per_var;
  for (Eigen::Index i = 0; i < pred.cols(); ++i) {
    const Vector a = test.targets.col(i), p = pred.col(i);
    per_var.push_back(smape(as_span(a), as_span(p)));
  }
  return median(per_var);
}

inline nlohmann::ordered_json to_json(const SparseModel& m) {
  nlohmann::ordered_json j;
  j["library_degree"] = m.library_degree;
  j["threshold"] = m.threshold;
  j["ridge"] = m.ridge;
  auto names = nlohmann::ordered_json::array();
  for (const auto& t : m.terms) names.push_back(t.name());
  j["terms"] = names;
  auto eqs = nlohmann::ordered_json::array();
  for (Eigen::Index c = 0; c < m.coefficients.cols(); ++c) {
    nlohmann::ordered_json eq;
    eq["variable"] = "x" + std::to_string(c);
    nlohmann::ordered_json coef = nlohmann::ordered_json::object();
    for (Eigen::Index p = 0; p < m.coefficients.rows(); ++p)
      if (m.coefficients(p, c) != 0.0)
        coef[p < static_cast<Eigen::Index>(m.terms.size()) ? m.terms[static_cast<std::size_t>(p)].name() : std::to_string(p)] = m.coefficients(p, c);
    eq["coefficients"] = coef;
    eq["pruned_to_zero"] = static_cast<bool>(m.pruned_to_zero[static_cast<std::size_t>(c)]);
    eqs.push_back(eq);
  }
  j["equations"] = eqs;
  return j;
}

struct SindyRow {
  std::string system;
  double train_smape = std::numeric_limits<double>::quiet_NaN();
  double test_smape = std::numeric_limits<double>::quiet_NaN();
  Eigen::Index nonzero_terms = 0;
  std::string error;
};

struct SindyOptions {
  double granularity = 15.0;
  int periods = 10;
  int degree = 3;
  double threshold = 0.05;
  double ridge = 1e-6;
  int max_iter = 20;
  std::uint64_t seed = 0;
  int jobs = 1;
};

inline std::vector<SindyRow> run_sindy_benchmark(const std::vector<SystemSpec>& systems, const SindyOptions& opts = {}) {
  return parallel_map(systems.size(), opts.jobs, [&](std::size_t s) {
    SindyRow row;
    row.system = systems[s].name;
    try {
      const auto [train, test] = make_regression_dataset(systems[s], opts.granularity, opts.periods, opts.seed);
      const SparseModel model =
          stlsq(polynomial_library(train.inputs, opts.degree), train.targets, opts.threshold, opts.ridge, opts.max_iter);
      row.nonzero_terms = model.nonzero_count();
      row.train_smape = evaluate_symbolic(model, train);
      row.test_smape = evaluate_symbolic(model, test);
    } catch (const Error& e) {
      row.error = e.what();
    }
    return row;
  });
}

inline std::string sindy_csv(const std::vector<SindyRow>& rows, bool smape_fraction = false) {
  const double f = smape_fraction ? 0.01 : 1.0;
  std::string out = "system,train_smape,test_smape,nonzero_terms,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out += r.system + "," + (r.error.empty() ? format_double(f * r.train_smape) : "") + "," +
           (r.error.empty() ? format_double(f * r.test_smape) : "") + "," + std::to_string(r.nonzero_terms) + "," + err +
           "\n";
  }
  return out;
}

}  // namespace chaosbench
