#include "gvi/solvers.hpp"

#include "detail.hpp"

namespace gvi {

std::string to_string(DynamicalVariant::Tag tag) {
  switch (tag) {
    case DynamicalVariant::Tag::ForwardT:
      return "forward-T";
    case DynamicalVariant::Tag::FullImplicit:
      return "full-implicit";
    case DynamicalVariant::Tag::ExplicitT:
      return "explicit-T";
  }
  return "unknown";
}

SolveReport solve_projection(const GviProblem& problem, const SolveConfig& config) {
  const double rho = config.rho;
  return detail::run_loop(problem, config, "projection",
                          detail::residual_measure(problem, config, rho),
                          [&](const Vec& u, int) {
                            const Vec gu = problem.g(u);
                            return problem.recover(
                                u, gu, project(problem.K(), gu - rho * problem.T_eff(u)));
                          });
}

SolveReport solve_extragradient(const GviProblem& problem, const SolveConfig& config) {
  if (!problem.has_g_inverse())
    throw CapabilityError("extragradient needs g_inverse for non-identity g");
  const double rho = config.rho;
  return detail::run_loop(problem, config, "extragradient",
                          detail::residual_measure(problem, config, rho),
                          [&](const Vec& u, int) {
                            const Vec gu = problem.g(u);
                            const Vec gy = project(problem.K(), gu - rho * problem.T_eff(u));
                            const Vec y = problem.g_inverse(gy);
                            return problem.recover(
                                u, gu, project(problem.K(), gu - rho * problem.T_eff(y)));
                          });
}

SolveReport solve_two_step(const GviProblem& problem, const SolveConfig& config,
                           const TwoStepScheme& scheme) {
  const double lam = scheme.lambda;
  const double xi = scheme.xi;
  if (lam < 0.0 || lam > 1.0 || xi < 0.0 || xi > 1.0)
    throw InvalidArgument("two-step scheme needs lambda, xi in [0, 1]");
  const double rho = config.rho;
  return detail::run_loop(
      problem, config, "two-step", detail::residual_measure(problem, config, rho),
      [&](const Vec& u, int) {
        const Vec gu = problem.g(u);
        const Vec gy = project(problem.K(), gu - rho * problem.T_eff(u));
        const Vec y = problem.recover(u, gu, gy);
        const Vec mixed_g = (1.0 - lam) * gu + lam * gy;
        const Vec mixed_u = (1.0 - xi) * u + xi * y;
        return problem.recover(u, gu,
                               project(problem.K(), mixed_g - rho * problem.T_eff(mixed_u)));
      });
}

SolveReport solve_dynamical(const GviProblem& problem, const SolveConfig& config,
                            const DynamicalVariant& variant) {
  if (!(variant.h > 0.0)) throw InvalidArgument("dynamical step h must be positive");
  const double h = variant.h;
  const double rho = config.rho;
  const std::string tag = to_string(variant.tag);

  const auto step = [&](const Vec& u, int n) -> Vec {
    const Vec gu = problem.g(u);
    if (variant.tag == DynamicalVariant::Tag::ExplicitT) {
      // <ρTu_n + (1+h)/h (g(u+) − g(u_n)), g(v) − g(u+)> >= 0 in closed form.
      const double scale = h / (1.0 + h);
      return problem.recover(u, gu, project(problem.K(), gu - scale * rho * problem.T_eff(u)));
    }
    Vec w = gu;
    for (int k = 0;; ++k) {
      const Vec wt = problem.preimage(u, gu, w);
      const Vec anchor = variant.tag == DynamicalVariant::Tag::ForwardT ? gu : w;
      const Vec next =
          (h * project(problem.K(), anchor - rho * problem.T_eff(wt)) + gu) / (1.0 + h);
      const double change = (next - w).norm();
      w = next;
      if (change <= config.inner_tol) break;
      if (k + 1 >= config.inner_max_iters || !std::isfinite(change)) {
        throw InnerDivergenceError("dynamical[" + tag + "]: inner loop did not settle at outer step " +
                                   std::to_string(n));
      }
    }
    return problem.preimage(u, gu, w);
  };
  return detail::run_loop(problem, config, "dynamical[" + tag + "]",
                          detail::residual_measure(problem, config, rho), step);
}

}  // namespace gvi
