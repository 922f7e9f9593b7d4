#pragma once

#include "gvi/core.hpp"
#include "gvi/obstacle.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gvi {

// example2, example3(n), example4(n), obstacle(n) or custom(path).
struct ProblemSpec {
  std::string id;
  int n = 0;
  std::string path;

  static ProblemSpec example2() { return {"example2", 4, ""}; }
  static ProblemSpec example3(int n) { return {"example3", n, ""}; }
  static ProblemSpec example4(int n) { return {"example4", n, ""}; }
  static ProblemSpec obstacle(int n) { return {"obstacle", n, ""}; }
  static ProblemSpec custom(std::string path) { return {"custom", 0, std::move(path)}; }
};

ProblemSpec parse_problem(const std::string& id, int n);

// Unit simplex, four-dimensional rational map; start e projected to e/4.
GviProblem example2();
// tridiag(−1, 4, −1) u − e on [0, 1]^n; start 0.
GviProblem example3(int n);
// diag(1/n, 2/n, ..., 1) u − e on [0, 1]^n; solution e; start 0.
GviProblem example4(int n);
// Affine problem T(u) = Mu + q from a flat key = value file with keys dim, M (row-major),
// q and set (unit-box, orthant, simplex, whole).
GviProblem load_custom(const std::string& path);

Vec start_point(const ProblemSpec& spec);

using BuiltProblem = std::variant<GviProblem, ObstacleProblem>;
BuiltProblem build_problem(const ProblemSpec& spec);

struct BenchConfig {
  std::optional<double> rho;  // unset: each algorithm's default
  double tol = 1e-7;
  int max_iters = 1000;
  double sigma = 0.5;
  double gamma = 0.8;
  BoundaryVariant variant = BoundaryVariant::Verbatim;
};

struct Algorithm {
  std::string id;
  std::optional<double> fixed_rho;  // unset: 0.5 / estimated Lipschitz constant
  std::function<SolveReport(const GviProblem&, const SolveConfig&)> run;
};

// projection, extragradient, two-step, whe, dp-basic, dp-optimal, three-step, gap-descent,
// dynamical, dynamical-full, dynamical-explicit, eq-predictor-corrector, eq-inertial, varlike,
// higher-order.
const std::vector<Algorithm>& algorithm_registry();
const Algorithm& find_algorithm(const std::string& id);

SolveConfig make_solve_config(const Algorithm& alg, const BenchConfig& config,
                              const GviProblem& problem, const Vec& start);

struct BenchResult {
  std::string problem;
  int n = 0;
  std::string algorithm;
  int iterations = 0;
  bool converged = false;
  double residual_norm = 0.0;
  double wall_time = 0.0;  // seconds
  std::string error;  // non-empty when the run threw
  std::optional<double> max_error;  // obstacle rows
};

SolveReport run_algorithm(const ProblemSpec& spec, const std::string& algorithm,
                          const BenchConfig& config);

// Each (problem, algorithm) pair in spec order. Errors are recorded on the row.
std::vector<BenchResult> run_suite(const std::vector<ProblemSpec>& specs,
                                   const std::vector<std::string>& algorithms,
                                   const BenchConfig& config);

enum class TableFormat { Csv, Markdown };
TableFormat parse_format(const std::string& name);

// Columns problem, n, algorithm, iterations, converged, residual, time.
std::string emit_table(const std::vector<BenchResult>& results, TableFormat format,
                       bool include_time = true);

// h, max error (and the ratio to the previous row).
std::string emit_error_table(const std::vector<ErrorRow>& rows, TableFormat format);

}  // namespace gvi
