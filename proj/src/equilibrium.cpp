#include "gvi/equilibrium.hpp"

#include "detail.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace gvi {

namespace {

Vec apply_g(const Op& g, const Vec& u) { return g ? g(u) : u; }

Vec back_to_iterate(const Op& g, const Vec& u, const Vec& gu, const Vec& image) {
  return g ? Vec(u - gu + image) : image;
}

void require_feasible(const ConvexSet& K, const Vec& y, const std::string& who, int n) {
  if (!y.allFinite() || !contains(K, y, 1e-10))
    throw OracleContractError(who + ": oracle returned an infeasible point at iteration " +
                              std::to_string(n));
}

// Displacement-stopped loop shared by the auxiliary-oracle solvers.
// step(u, g(u), n) returns the pair (u+, g(u+)); measure(gu, gu+) is the stopping quantity.
template <class StepFn, class MeasureFn>
SolveReport displacement_loop(int dim, const Op& g, const SolveConfig& config,
                              const std::string& who, StepFn step, MeasureFn measure) {
  config.validate();
  SolveReport report;
  Vec u = config.start_point(dim);
  Vec gu = apply_g(g, u);
  const auto push = [&](const Vec& x, double r) {
    report.trace.push_back(TraceRecord{x.norm(), r, std::nullopt});
    if (config.record_iterates) report.iterates.push_back(x);
  };
  push(u, std::numeric_limits<double>::infinity());
  report.residual_norm = std::numeric_limits<double>::infinity();
  int n = 0;
  while (n < config.max_iters) {
    auto [next, gnext] = step(u, gu, n);
    const double r = measure(gu, gnext);
    u = std::move(next);
    gu = std::move(gnext);
    ++n;
    detail::guard(config, u, n, who);
    push(u, r);
    report.residual_norm = r;
    if (r <= config.tol) {
      report.converged = true;
      break;
    }
  }
  report.iterations = n;
  report.solution = u;
  return report;
}

}  // namespace

EquilibriumProblem equilibrium_from_operator(int dim, Op T, ConvexSet K, Op g) {
  validate(K);
  EquilibriumProblem ep;
  ep.dim = dim;
  ep.g = g;
  ep.K = K;
  ep.F = [T, g](const Vec& u, const Vec& y) { return T(u).dot(y - apply_g(g, u)); };
  ep.aux_oracle = [T, K](const Vec& anchor, const Vec& center, double rho) -> Vec {
    return project(K, center - rho * T(anchor));
  };
  return ep;
}

VarLikeProblem varlike_quadratic_kernel(int dim, Op T, ConvexSet K, Vec D) {
  validate(K);
  if (D.size() != dim || (D.array() <= 0.0).any())
    throw InvalidArgument("kernel weights must be positive with the problem dimension");
  const bool unit = (D.array() == 1.0).all();
  const bool separable = std::holds_alternative<Box>(K) || std::holds_alternative<NonnegOrthant>(K) ||
                         std::holds_alternative<WholeSpace>(K);
  if (!unit && !separable)
    throw UnsupportedSetError("weighted kernel oracle needs a separable K, got " + describe(K));
  VarLikeProblem vp;
  vp.dim = dim;
  vp.T = T;
  vp.K = K;
  vp.eta = [](const Vec& y1, const Vec& y2) -> Vec { return y1 - y2; };
  vp.E_grad = [D](const Vec& y) -> Vec { return D.cwiseProduct(y); };
  // A D-weighted projection onto a separable set is the componentwise clamp.
  vp.aux_oracle = [T, K, D](const Vec& anchor, const Vec& center, double rho) -> Vec {
    return project(K, center - rho * (T(anchor).array() / D.array()).matrix());
  };
  return vp;
}

double eta_antisymmetry_defect(const VarLikeProblem& vp, int samples) {
  if (!vp.eta) throw InvalidArgument("eta is required");
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Vec y(vp.dim);
    for (int i = 0; i < vp.dim; ++i) y[i] = unit(rng);
    worst = std::max(worst, vp.eta(y, y).norm());
  }
  return worst;
}

SolveReport solve_eq_predictor_corrector(const EquilibriumProblem& ep, const SolveConfig& config) {
  if (!ep.aux_oracle) throw CapabilityError("equilibrium solver needs an auxiliary oracle");
  const double beta = config.beta_step > 0.0 ? config.beta_step : config.rho;
  const double rho = config.rho;
  const std::string who = "eq-predictor-corrector";
  return displacement_loop(
      ep.dim, ep.g, config, who,
      [&](const Vec& u, const Vec& gu, int n) {
        const Vec gw = ep.aux_oracle(u, gu, beta);
        require_feasible(ep.K, gw, who, n);
        const Vec w = back_to_iterate(ep.g, u, gu, gw);
        const Vec gnext = ep.aux_oracle(w, gw, rho);
        require_feasible(ep.K, gnext, who, n);
        return std::pair<Vec, Vec>{back_to_iterate(ep.g, w, gw, gnext), gnext};
      },
      [](const Vec& gu, const Vec& gnext) { return (gnext - gu).norm(); });
}

SolveReport solve_eq_inertial(const EquilibriumProblem& ep, const SolveConfig& config) {
  if (!ep.aux_oracle) throw CapabilityError("equilibrium solver needs an auxiliary oracle");
  const double rho = config.rho;
  const std::string who = "eq-inertial";
  Vec g_prev;
  return displacement_loop(
      ep.dim, ep.g, config, who,
      [&](const Vec& u, const Vec& gu, int n) {
        const double alpha = config.alpha_at(n, 0.0);
        if (alpha < 0.0 || alpha >= 1.0) throw InvalidArgument("inertial alpha_n must lie in [0, 1)");
        if (g_prev.size() == 0) g_prev = gu;
        const Vec center = gu + alpha * (gu - g_prev);
        Vec w = gu;
        for (int k = 0;; ++k) {
          const Vec next = ep.aux_oracle(back_to_iterate(ep.g, u, gu, w), center, rho);
          require_feasible(ep.K, next, who, n);
          const double change = (next - w).norm();
          w = next;
          if (change <= config.inner_tol) break;
          if (k + 1 >= config.inner_max_iters || !std::isfinite(change))
            throw InnerDivergenceError(who + ": implicit step did not contract at iteration " +
                                       std::to_string(n));
        }
        g_prev = gu;
        return std::pair<Vec, Vec>{back_to_iterate(ep.g, u, gu, w), w};
      },
      [](const Vec& gu, const Vec& gnext) { return (gnext - gu).norm(); });
}

SolveReport solve_varlike(const VarLikeProblem& vp, const SolveConfig& config) {
  if (!vp.aux_oracle) throw CapabilityError("variational-like solver needs an auxiliary oracle");
  if (!vp.eta) throw InvalidArgument("eta is required");
  const double rho = config.rho;
  const std::string who = "varlike";
  SolveReport report = displacement_loop(
      vp.dim, vp.g, config, who,
      [&](const Vec& u, const Vec& gu, int n) {
        const Vec gnext = vp.aux_oracle(u, gu, rho);
        require_feasible(vp.K, gnext, who, n);
        return std::pair<Vec, Vec>{back_to_iterate(vp.g, u, gu, gnext), gnext};
      },
      [&](const Vec& gu, const Vec& gnext) { return vp.eta(gnext, gu).norm(); });
  const double defect = eta_antisymmetry_defect(vp);
  if (defect > 1e-10)
    report.notes.push_back("warning: eta(y, y) != 0 on probes, max norm " + std::to_string(defect));
  return report;
}

Vec higher_order_substep(const HigherOrderProblem& hp, const Vec& anchor, const SolveConfig& config) {
  const GviProblem& base = hp.base;
  const double rho = config.rho;
  const double nu = hp.nu_value();
  const double p = hp.p;
  const Vec ta = base.T_eff(anchor);
  const Vec v0 = project(base.K(), anchor - rho * ta);
  if (nu == 0.0) return v0;

  const auto phi = [&](const Vec& v) {
    const double r = (v - anchor).norm();
    return rho * ta.dot(v) + 0.5 * r * r + nu / p * std::pow(r, p);
  };
  const auto grad = [&](const Vec& v) -> Vec {
    const Vec diff = v - anchor;
    const double r = diff.norm();
    const double radial = r > 0.0 ? nu * std::pow(r, p - 2.0) : 0.0;
    return rho * ta + diff + radial * diff;
  };

  Vec v = v0;
  double t = 1.0;
  for (int k = 0; k < config.inner_max_iters; ++k) {
    const Vec gv = grad(v);
    const double fv = phi(v);
    Vec next;
    for (int bt = 0;; ++bt) {
      next = project(base.K(), v - t * gv);
      const Vec step = next - v;
      if (phi(next) <= fv + gv.dot(step) + step.squaredNorm() / (2.0 * t) + 1e-15 * std::abs(fv))
        break;
      t *= 0.5;
      if (bt > 60) throw InnerDivergenceError("higher-order subproblem: backtracking stalled");
    }
    const double change = (next - v).norm();
    v = next;
    if (change <= config.inner_tol) return v;
    t = std::min(1.0, 2.0 * t);
  }
  throw InnerDivergenceError("higher-order subproblem: projected gradient did not settle");
}

SolveReport solve_higher_order(const HigherOrderProblem& hp, const SolveConfig& config) {
  if (!(hp.p > 1.0)) throw InvalidArgument("higher-order exponent p must exceed 1");
  if (hp.mu < 0.0 || hp.nu_value() < 0.0) throw InvalidArgument("moduli must be nonnegative");
  if (!hp.base.g_is_identity())
    throw CapabilityError("built-in higher-order subproblem solver needs g = identity");
  const std::string who = "higher-order";
  return displacement_loop(
      hp.base.dim(), Op{}, config, who,
      [&](const Vec& u, const Vec&, int) {
        const Vec y = higher_order_substep(hp, u, config);
        Vec next = higher_order_substep(hp, y, config);
        return std::pair<Vec, Vec>{next, next};
      },
      [](const Vec& u, const Vec& next) { return (next - u).norm(); });
}

}  // namespace gvi
