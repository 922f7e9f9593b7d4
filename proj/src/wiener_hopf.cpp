#include "gvi/wiener_hopf.hpp"

#include "detail.hpp"

#include <cmath>
#include <string>

namespace gvi {

namespace {

constexpr int kMaxArmijo = 64;

// K ∩ {a'x = b} for the sets that support it.
Vec project_onto_slice(const ConvexSet& K, const Vec& a, double b, const Vec& z) {
  if (const auto* box = std::get_if<Box>(&K)) return project_intersection(*box, a, b, z);
  if (const auto* orth = std::get_if<NonnegOrthant>(&K)) return project_intersection(*orth, a, b, z);
  if (const auto* simp = std::get_if<Simplex>(&K)) return project_intersection(*simp, a, b, z);
  if (std::holds_alternative<WholeSpace>(K)) return project(Hyperplane{a, b}, z);
  throw UnsupportedSetError("optimal double projection needs K = box, orthant, simplex or R^n, got " +
                            describe(K));
}

}  // namespace

SolveReport solve_whe(const GviProblem& problem, const SolveConfig& config) {
  const double rho = config.rho;
  return detail::run_loop(
      problem, config, "wiener-hopf", detail::residual_measure(problem, config, rho),
      [&](const Vec& u, int n) {
        const double alpha = config.alpha_at(n, 1.0);
        if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha_n must lie in (0, 1]");
        const Vec gu = problem.g(u);
        const Vec z = gu - rho * problem.T_eff(u);
        const Vec gy = project(problem.K(), z);
        const Vec y = problem.preimage(u, gu, gy);
        const Vec corr = project(problem.K(), gy - rho * problem.T_eff(y) + gy - z);
        return problem.recover(u, gu, (1.0 - alpha) * gu + alpha * corr);
      });
}

ArmijoResult armijo_search(const GviProblem& problem, const Vec& u, const Vec& R_u, double gamma,
                           double sigma) {
  if (!(gamma > 0.0 && gamma < 1.0) || !(sigma > 0.0 && sigma < 1.0))
    throw InvalidArgument("Armijo needs gamma, sigma in (0, 1)");
  const double rr = R_u.squaredNorm();
  if (!(rr > 0.0)) throw InvalidArgument("Armijo search needs a nonzero residual");
  const Vec tu = problem.T_eff(u);
  double eta = 1.0;
  for (int m = 0; m <= kMaxArmijo; ++m) {
    const Vec trial = u - eta * R_u;
    if ((tu - problem.T_eff(trial)).dot(R_u) <= sigma * rr) return ArmijoResult{m, eta, trial};
    eta *= gamma;
  }
  throw LineSearchError("Armijo search exceeded " + std::to_string(kMaxArmijo) +
                        " reductions; check the scaling of T");
}

DoubleProjectionStep double_projection_step(const GviProblem& problem, const Vec& u,
                                            const SolveConfig& config, bool optimal,
                                            const DoubleProjectionOptions& options) {
  DoubleProjectionStep out;
  const Vec gu = problem.g(u);
  const Vec tu = problem.T_eff(u);
  StepData& s = out.data;
  s.z = project(problem.K(), gu - tu);
  out.residual = gu - s.z;
  const Vec& R = out.residual;

  out.armijo = armijo_search(problem, u, R, config.gamma, config.sigma);
  s.eta = out.armijo.eta;
  s.y = problem.recover(u, gu, gu - s.eta * R);
  const Vec ty = problem.T_eff(s.y);

  s.d = -(s.eta * R - s.eta * tu + ty);
  s.numerator = s.eta * R.dot(R - tu + ty);
  if (!(s.numerator > 0.0))
    throw LineSearchError("double projection: nonpositive step numerator, direction stalls");
  const double dd = s.d.squaredNorm();
  s.alpha = options.denominator == StepDenominator::SquaredNorm ? s.numerator / dd
                                                                : s.numerator / std::sqrt(dd);

  const Vec target = gu + s.alpha * s.d;
  if (optimal) {
    try {
      out.next = problem.recover(
          u, gu, project_onto_slice(problem.K(), s.d, s.numerator + gu.dot(s.d), target));
      return out;
    } catch (const InfeasibleSetError&) {
      out.fallback = true;
    }
  }
  out.next = problem.recover(u, gu, project(problem.K(), target));
  return out;
}

namespace {

SolveReport run_double_projection(const GviProblem& problem, const SolveConfig& config,
                                  const DoubleProjectionOptions& options, bool optimal) {
  SolveReport report;
  std::vector<std::string> fallbacks;
  const std::string who = optimal ? "double-projection-optimal" : "double-projection-basic";
  report = detail::run_loop(problem, config, who,
                            detail::residual_measure(problem, config, 1.0),
                            [&](const Vec& u, int n) {
                              DoubleProjectionStep st =
                                  double_projection_step(problem, u, config, optimal, options);
                              if (st.fallback)
                                fallbacks.push_back("iteration " + std::to_string(n) +
                                                    ": slice empty, basic corrector used");
                              return st.next;
                            });
  report.notes.push_back(options.denominator == StepDenominator::SquaredNorm
                             ? "step denominator: squared norm of d"
                             : "step denominator: norm of d");
  report.notes.insert(report.notes.end(), fallbacks.begin(), fallbacks.end());
  return report;
}

}  // namespace

SolveReport solve_double_projection_basic(const GviProblem& problem, const SolveConfig& config,
                                          const DoubleProjectionOptions& options) {
  return run_double_projection(problem, config, options, false);
}

SolveReport solve_double_projection_optimal(const GviProblem& problem, const SolveConfig& config,
                                            const DoubleProjectionOptions& options) {
  return run_double_projection(problem, config, options, true);
}

}  // namespace gvi
