#include "gvi/auxiliary.hpp"

#include "detail.hpp"

#include <limits>

namespace gvi {

ControlledOperator p1_operator() {
  ControlledOperator op;
  op.T = [](const Vec& u, const Vec& z) -> Vec { return (u.array() + z.array() - 1.0).matrix(); };
  op.g = [](const Vec& u, const Vec& z) -> Vec { return (u.array() + z.array().square()).matrix(); };
  op.T_jac_u = [](const Vec& u, const Vec&) -> Mat { return Mat::Identity(u.size(), u.size()); };
  op.g_jac_u = [](const Vec& u, const Vec&) -> Mat { return Mat::Identity(u.size(), u.size()); };
  return op;
}

ConvexSet p1_set() {
  return make_box(Vec::Constant(1, 1.0), Vec::Constant(1, std::numeric_limits<double>::infinity()));
}

SolveReport solve_three_step(const GviProblem& problem, const SolveConfig& config) {
  const double mu = config.mu_step;
  const double beta = config.beta_step;
  const double rho = config.rho;
  const auto forward_backward = [&](const Vec& x, double step) -> Vec {
    const Vec gx = problem.g(x);
    return problem.recover(x, gx, project(problem.K(), gx - step * problem.T_eff(x)));
  };
  return detail::run_loop(problem, config, "three-step",
                          detail::residual_measure(problem, config, rho),
                          [&](const Vec& u, int) {
                            const Vec y = forward_backward(u, mu);
                            const Vec w = forward_backward(y, beta);
                            return forward_backward(w, rho);
                          });
}

GapEvaluation gap_N(const GviProblem& problem, const Vec& u, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  const Vec gu = problem.g(u);
  const Vec step = rho * problem.T_eff(u);
  const Vec shifted = gu - step;
  const Vec gw = project(problem.K(), shifted);
  GapEvaluation ev;
  ev.distance_part = (gw - shifted).norm();
  ev.value = 0.5 * (step.squaredNorm() - ev.distance_part * ev.distance_part);
  ev.minimizer_point = problem.recover(u, gu, gw);
  return ev;
}

SolveReport solve_gap_descent(const GviProblem& problem, const SolveConfig& config) {
  if (!problem.g_is_identity()) throw CapabilityError("gap descent runs in iterate space (g = I)");
  const double rho = config.rho;
  const double alpha = config.sigma;
  const double beta = config.gamma;
  const auto direction = [&](const Vec& u) -> Vec {
    return project(problem.K(), u - rho * problem.T_eff(u)) - u;
  };
  return detail::run_loop(
      problem, config, "gap-descent",
      [&](const Vec& u) { return norm(direction(u), config.norm); },
      [&](const Vec& u, int n) {
        const Vec d = direction(u);
        const double N0 = gap_N(problem, u, rho).value;
        const double dd = d.squaredNorm();
        double t = 1.0;
        for (int l = 0; l <= 64; ++l) {
          const Vec trial = u + t * d;
          if (gap_N(problem, trial, rho).value <= N0 - alpha * t * dd) return trial;
          t *= beta;
        }
        throw LineSearchError("gap descent: backtracking stalled at iteration " +
                              std::to_string(n));
      });
}

GapEvaluation regularized_gap(const ControlledOperator& op, const ConvexSet& K, const Vec& u,
                              const Vec& z, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (!op.T || !op.g) throw InvalidArgument("controlled operator needs T and g");
  const Vec t = op.T(u, z);
  const Vec shifted = op.g(u, z) - rho * t;
  GapEvaluation ev;
  ev.minimizer_point = project(K, shifted);
  ev.distance_part = (shifted - ev.minimizer_point).norm();
  ev.value = 0.5 * (rho * rho * t.squaredNorm() - ev.distance_part * ev.distance_part);
  return ev;
}

Vec regularized_gap_gradient(const ControlledOperator& op, const ConvexSet& K, const Vec& u,
                             const Vec& z, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (!op.T_jac_u || !op.g_jac_u) throw CapabilityError("gap gradient needs both jacobians");
  const Vec t = op.T(u, z);
  const Vec shifted = op.g(u, z) - rho * t;
  const Vec outside = shifted - project(K, shifted);
  const Mat JT = op.T_jac_u(u, z);
  const Mat Jg = op.g_jac_u(u, z);
  return rho * rho * JT.transpose() * t - (Jg.transpose() - rho * JT.transpose()) * outside;
}

}  // namespace gvi
