#pragma once

#include "gvi/core.hpp"

#include <functional>
#include <string>

namespace gvi::detail {

using Measure = std::function<double(const Vec&)>;
using Step = std::function<Vec(const Vec&, int)>;

inline void record(const GviProblem& problem, const SolveConfig& config, SolveReport& report,
                   const Vec& u, double measure) {
  TraceRecord rec;
  rec.iterate_norm = u.norm();
  rec.residual_norm = measure;
  if (problem.known_solution()) {
    rec.lyapunov = (problem.g(*problem.known_solution()) - problem.g(u)).squaredNorm();
  }
  report.trace.push_back(rec);
  if (config.record_iterates) report.iterates.push_back(u);
}

inline void guard(const SolveConfig& config, const Vec& u, int n, const std::string& who) {
  if (!u.allFinite() || u.norm() > config.divergence_bound) {
    throw DivergenceError(who + ": iterate norm exceeded divergence bound at iteration " +
                              std::to_string(n),
                          u, n);
  }
}

// Evaluates measure(u_n) before each step; stops at measure <= tol or max_iters.
inline SolveReport run_loop(const GviProblem& problem, const SolveConfig& config,
                            const std::string& who, const Measure& measure, const Step& step) {
  config.validate();
  SolveReport report;
  Vec u = config.start_point(problem.dim());
  int n = 0;
  for (;; ++n) {
    const double r = measure(u);
    record(problem, config, report, u, r);
    report.residual_norm = r;
    if (r <= config.tol) {
      report.converged = true;
      break;
    }
    if (n == config.max_iters) break;
    u = step(u, n);
    guard(config, u, n + 1, who);
  }
  report.iterations = n;
  report.solution = u;
  return report;
}

inline Measure residual_measure(const GviProblem& problem, const SolveConfig& config, double rho) {
  return [&problem, &config, rho](const Vec& u) {
    return norm(residual(problem, u, rho), config.norm);
  };
}

}  // namespace gvi::detail
