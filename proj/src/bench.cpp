#include "gvi/bench.hpp"

#include "gvi/auxiliary.hpp"
#include "gvi/equilibrium.hpp"
#include "gvi/solvers.hpp"
#include "gvi/wiener_hopf.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace gvi {

namespace {

GviProblem affine_problem(Mat M, Vec q, ConvexSet K) {
  const int n = static_cast<int>(q.size());
  return GviProblem(n, [M = std::move(M), q = std::move(q)](const Vec& u) -> Vec { return M * u + q; },
                    std::move(K));
}

std::vector<double> parse_numbers(const std::string& text, const std::string& key) {
  std::string cleaned = text;
  for (char& ch : cleaned)
    if (ch == ',' || ch == ';' || ch == '[' || ch == ']') ch = ' ';
  std::istringstream in(cleaned);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    try {
      size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw SpecError("custom problem: bad number '" + token + "' in key " + key);
    }
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string format_number(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

Op iterate_g(const GviProblem& problem) {
  if (problem.g_is_identity()) return {};
  return [problem](const Vec& u) { return problem.g(u); };
}

Op effective_T(const GviProblem& problem) {
  return [problem](const Vec& u) { return problem.T_eff(u); };
}

}  // namespace

ProblemSpec parse_problem(const std::string& id, int n) {
  if (id == "example2") return ProblemSpec::example2();
  if (id == "example3" || id == "example4" || id == "obstacle") {
    if (n < 1) throw SpecError(id + " needs n >= 1");
    if (id == "obstacle" && (n + 1) % 4 != 0)
      throw SpecError("obstacle needs (n + 1) divisible by 4");
    return ProblemSpec{id, n, ""};
  }
  if (id.rfind("custom:", 0) == 0) return ProblemSpec::custom(id.substr(7));
  throw SpecError("unknown problem id '" + id + "'");
}

GviProblem example2() {
  const Op T = [](const Vec& x) -> Vec {
    Vec out(4);
    out << -x[1] + x[2] + x[3],
        x[0] - (4.5 * x[2] + 2.7 * x[3]) / (x[1] + 1.0),
        5.0 - x[0] - (0.5 * x[2] + 0.3 * x[3]) / (x[2] + 1.0),
        3.0 - x[0];
    return out;
  };
  return GviProblem(4, T, make_simplex(1.0));
}

GviProblem example3(int n) {
  if (n < 1) throw SpecError("example3 needs n >= 1");
  Mat M = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    M(i, i) = 4.0;
    if (i > 0) M(i, i - 1) = -1.0;
    if (i + 1 < n) M(i, i + 1) = -1.0;
  }
  return affine_problem(std::move(M), Vec::Constant(n, -1.0), make_unit_box(n));
}

GviProblem example4(int n) {
  if (n < 1) throw SpecError("example4 needs n >= 1");
  Vec diag(n);
  for (int k = 0; k < n; ++k) diag[k] = static_cast<double>(k + 1) / n;
  return affine_problem(diag.asDiagonal(), Vec::Constant(n, -1.0), make_unit_box(n))
      .with_solution(Vec::Ones(n));
}

GviProblem load_custom(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open custom problem file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError("custom problem: expected key = value, got " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  for (const char* key : {"dim", "M", "q"})
    if (!kv.count(key)) throw SpecError(std::string("custom problem: missing key ") + key);
  const auto dims = parse_numbers(kv["dim"], "dim");
  if (dims.size() != 1 || dims[0] < 1) throw SpecError("custom problem: dim must be a positive integer");
  const int n = static_cast<int>(dims[0]);
  const auto m = parse_numbers(kv["M"], "M");
  const auto q = parse_numbers(kv["q"], "q");
  if (static_cast<int>(m.size()) != n * n || static_cast<int>(q.size()) != n)
    throw SpecError("custom problem: M needs dim^2 entries and q needs dim entries");
  Mat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = m[i * n + j];
  const std::string set = kv.count("set") ? kv["set"] : "unit-box";
  ConvexSet K;
  if (set == "unit-box") K = make_unit_box(n);
  else if (set == "orthant") K = NonnegOrthant{};
  else if (set == "simplex") K = make_simplex(1.0);
  else if (set == "whole") K = WholeSpace{};
  else throw SpecError("custom problem: unknown set '" + set + "'");
  return affine_problem(std::move(M), Eigen::Map<const Vec>(q.data(), n), std::move(K));
}

Vec start_point(const ProblemSpec& spec) {
  if (spec.id == "example2") return project(make_simplex(1.0), Vec::Ones(4));
  if (spec.id == "example3" || spec.id == "example4") return Vec::Zero(spec.n);
  if (spec.id == "custom") return Vec::Zero(load_custom(spec.path).dim());
  throw SpecError("no start rule for problem '" + spec.id + "'");
}

BuiltProblem build_problem(const ProblemSpec& spec) {
  if (spec.id == "example2") return example2();
  if (spec.id == "example3") return example3(spec.n);
  if (spec.id == "example4") return example4(spec.n);
  if (spec.id == "obstacle") {
    if (spec.n < 3 || (spec.n + 1) % 4 != 0) throw SpecError("obstacle needs (n + 1) divisible by 4");
    return test_instance();
  }
  if (spec.id == "custom") return load_custom(spec.path);
  throw SpecError("unknown problem id '" + spec.id + "'");
}

const std::vector<Algorithm>& algorithm_registry() {
  static const std::vector<Algorithm> registry = [] {
    std::vector<Algorithm> r;
    r.push_back({"projection", std::nullopt, solve_projection});
    r.push_back({"extragradient", std::nullopt, solve_extragradient});
    r.push_back({"two-step", std::nullopt, [](const GviProblem& p, const SolveConfig& c) {
                   return solve_two_step(p, c, TwoStepScheme{0.5, 0.5});
                 }});
    r.push_back({"whe", std::nullopt, solve_whe});
    r.push_back({"dp-basic", 1.0, [](const GviProblem& p, const SolveConfig& c) {
                   return solve_double_projection_basic(p, c);
                 }});
    r.push_back({"dp-optimal", 1.0, [](const GviProblem& p, const SolveConfig& c) {
                   return solve_double_projection_optimal(p, c);
                 }});
    r.push_back({"three-step", std::nullopt, [](const GviProblem& p, const SolveConfig& c) {
                   SolveConfig cc = c;
                   cc.mu_step = cc.beta_step = c.rho;
                   return solve_three_step(p, cc);
                 }});
    r.push_back({"gap-descent", std::nullopt, [](const GviProblem& p, const SolveConfig& c) {
                   SolveConfig cc = c;
                   cc.sigma = std::min(c.sigma, 0.1);
                   return solve_gap_descent(p, cc);
                 }});
    const auto dyn = [](DynamicalVariant::Tag tag) {
      return [tag](const GviProblem& p, const SolveConfig& c) {
        return solve_dynamical(p, c, DynamicalVariant{tag, 1.0});
      };
    };
    r.push_back({"dynamical", std::nullopt, dyn(DynamicalVariant::Tag::ForwardT)});
    r.push_back({"dynamical-full", std::nullopt, dyn(DynamicalVariant::Tag::FullImplicit)});
    r.push_back({"dynamical-explicit", std::nullopt, dyn(DynamicalVariant::Tag::ExplicitT)});
    r.push_back({"eq-predictor-corrector", std::nullopt, [](const GviProblem& p, const SolveConfig& c) {
                   return solve_eq_predictor_corrector(
                       equilibrium_from_operator(p.dim(), effective_T(p), p.K(), iterate_g(p)), c);
                 }});
    r.push_back({"eq-inertial", std::nullopt, [](const GviProblem& p, const SolveConfig& c) {
                   return solve_eq_inertial(
                       equilibrium_from_operator(p.dim(), effective_T(p), p.K(), iterate_g(p)), c);
                 }});
    r.push_back({"varlike", std::nullopt, [](const GviProblem& p, const SolveConfig& c) {
                   VarLikeProblem vp =
                       varlike_quadratic_kernel(p.dim(), effective_T(p), p.K(), Vec::Ones(p.dim()));
                   vp.g = iterate_g(p);
                   return solve_varlike(vp, c);
                 }});
    r.push_back({"higher-order", std::nullopt, [](const GviProblem& p, const SolveConfig& c) {
                   return solve_higher_order(HigherOrderProblem{p, 2.0, 0.0, std::nullopt}, c);
                 }});
    return r;
  }();
  return registry;
}

const Algorithm& find_algorithm(const std::string& id) {
  for (const auto& alg : algorithm_registry())
    if (alg.id == id) return alg;
  throw SpecError("unknown algorithm '" + id + "'");
}

SolveConfig make_solve_config(const Algorithm& alg, const BenchConfig& config,
                              const GviProblem& problem, const Vec& start) {
  SolveConfig sc;
  sc.rho = config.rho ? *config.rho : alg.fixed_rho ? *alg.fixed_rho : default_rho(problem);
  sc.tol = config.tol;
  sc.max_iters = config.max_iters;
  sc.sigma = config.sigma;
  sc.gamma = config.gamma;
  sc.start = start;
  return sc;
}

SolveReport run_algorithm(const ProblemSpec& spec, const std::string& algorithm,
                          const BenchConfig& config) {
  const Algorithm& alg = find_algorithm(algorithm);
  BuiltProblem built = build_problem(spec);
  const auto* problem = std::get_if<GviProblem>(&built);
  if (!problem) throw SpecError("problem '" + spec.id + "' is not a variational inequality");
  return alg.run(*problem, make_solve_config(alg, config, *problem, start_point(spec)));
}

std::vector<BenchResult> run_suite(const std::vector<ProblemSpec>& specs,
                                   const std::vector<std::string>& algorithms,
                                   const BenchConfig& config) {
  using Clock = std::chrono::steady_clock;
  std::vector<BenchResult> out;
  for (const auto& spec : specs) {
    if (spec.id == "obstacle") {
      BenchResult row;
      row.problem = spec.id;
      row.n = spec.n;
      row.algorithm = std::string("cubic-spline-") + to_string(config.variant);
      const auto t0 = Clock::now();
      try {
        const ObstacleProblem pb = test_instance();
        const SplineSystem sys = assemble(pb, spec.n, config.variant);
        const Vec s = sys.band.solve(sys.rhs);
        row.residual_norm = (sys.dense() * s - sys.rhs).lpNorm<Eigen::Infinity>();
        row.converged = true;
        row.max_error = max_error(pb, spec.n, config.variant);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      row.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
      out.push_back(row);
      continue;
    }
    for (const auto& alg : algorithms) {
      BenchResult row;
      row.problem = spec.id;
      row.n = spec.n;
      row.algorithm = alg;
      const auto t0 = Clock::now();
      try {
        const SolveReport rep = run_algorithm(spec, alg, config);
        row.iterations = rep.iterations;
        row.converged = rep.converged;
        row.residual_norm = rep.residual_norm;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      row.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
      out.push_back(row);
    }
  }
  return out;
}

TableFormat parse_format(const std::string& name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "markdown" || name == "md") return TableFormat::Markdown;
  throw SpecError("unknown table format '" + name + "'");
}

namespace {

std::string join_row(const std::vector<std::string>& cells, TableFormat format) {
  std::string line = format == TableFormat::Markdown ? "| " : "";
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) line += format == TableFormat::Markdown ? " | " : ",";
    line += cells[i];
  }
  if (format == TableFormat::Markdown) line += " |";
  return line + "\n";
}

std::string render(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows, TableFormat format) {
  std::string out = join_row(header, format);
  if (format == TableFormat::Markdown) out += join_row(std::vector<std::string>(header.size(), "---"), format);
  for (const auto& r : rows) out += join_row(r, format);
  return out;
}

}  // namespace

std::string emit_table(const std::vector<BenchResult>& results, TableFormat format,
                       bool include_time) {
  std::vector<std::string> header{"problem", "n", "algorithm", "iterations", "converged", "residual"};
  if (include_time) header.push_back("time");
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : results) {
    std::vector<std::string> cells{r.problem, std::to_string(r.n), r.algorithm,
                                   r.converged ? std::to_string(r.iterations) : "—",
                                   r.converged ? "true" : "false",
                                   r.error.empty() ? format_number("%.3e", r.residual_norm) : "error"};
    if (include_time) cells.push_back(format_number("%.4f", r.wall_time));
    rows.push_back(std::move(cells));
  }
  return render(header, rows, format);
}

std::string emit_error_table(const std::vector<ErrorRow>& rows, TableFormat format) {
  std::vector<std::vector<std::string>> cells;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const long k = std::lround(1.0 / r.h);
    const std::string h = std::abs(k * r.h - 1.0) < 1e-12 ? "1/" + std::to_string(k)
                                                           : format_number("%.6g", r.h);
    cells.push_back({h, format_number("%.3e", r.error),
                     i ? format_number("%.2f", rows[i - 1].error / r.error) : "-"});
  }
  return render({"h", "max error", "ratio"}, cells, format);
}

}  // namespace gvi
