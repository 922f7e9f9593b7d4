#pragma once

#include "gvi/core.hpp"

#include <optional>

namespace gvi {

struct GapEvaluation {
  double value = 0.0;
  Vec minimizer_point;
  double distance_part = 0.0;
};

// State/control operator T(u, z) with a state map g(u, z). The P1 instance needs g to see the
// control; ordinary problems ignore z in g.
struct ControlledOperator {
  std::function<Vec(const Vec&, const Vec&)> T;
  std::function<Vec(const Vec&, const Vec&)> g;
  std::function<Mat(const Vec&, const Vec&)> T_jac_u;
  std::function<Mat(const Vec&, const Vec&)> g_jac_u;
};

// T(u, z) = u + z − 1, g(u, z) = u + z², K = [1, ∞) on scalars.
ControlledOperator p1_operator();
ConvexSet p1_set();

// Projection realization of the three-step auxiliary scheme with steps μ (mu_step),
// β (beta_step), ρ (rho). μ = 0 is the two-step scheme, μ = β = 0 the one-step scheme.
SolveReport solve_three_step(const GviProblem& problem, const SolveConfig& config);

// N[u] = ½{‖ρTu‖² − ‖P_K[g(u) − ρTu] − (g(u) − ρTu)‖²}
GapEvaluation gap_N(const GviProblem& problem, const Vec& u, double rho);

// Descent on N along d = P_K[u − ρTu] − u with N[u + γ^l d] <= N[u] − σγ^l‖d‖².
// σ plays the Armijo constant and γ the backtracking ratio. Requires g = identity.
SolveReport solve_gap_descent(const GviProblem& problem, const SolveConfig& config);

// h_ρ(u, z) = ½{ρ²‖T(u, z)‖² − d_K²(g(u, z) − ρT(u, z))}; minimizer_point = P_K[g − ρT].
GapEvaluation regularized_gap(const ControlledOperator& op, const ConvexSet& K, const Vec& u,
                              const Vec& z, double rho);

// ρ²T_u'ᵀT − (g_u'ᵀ − ρT_u'ᵀ)(I − P_K)[g − ρT]
Vec regularized_gap_gradient(const ControlledOperator& op, const ConvexSet& K, const Vec& u,
                             const Vec& z, double rho);

}  // namespace gvi
