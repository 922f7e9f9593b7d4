#pragma once

#include "gvi/core.hpp"

#include <functional>
#include <vector>

namespace gvi {

// Returns g(u+) solving ρF(w, y) + <g(u+) − c, y − g(u+)> >= 0 for all y ∈ K,
// given anchor w, center c and ρ.
using AuxOracle = std::function<Vec(const Vec& anchor, const Vec& center, double rho)>;
using Bifunction = std::function<double(const Vec& u, const Vec& y)>;

struct EquilibriumProblem {
  int dim = 0;
  Bifunction F;
  Op g;  // empty means identity
  ConvexSet K = WholeSpace{};
  AuxOracle aux_oracle;
};

// F(u, y) = <Tu, y − g(u)> together with its closed-form projection oracle P_K[c − ρTw].
EquilibriumProblem equilibrium_from_operator(int dim, Op T, ConvexSet K, Op g = {});

struct VarLikeProblem {
  int dim = 0;
  Op T;
  Op g;  // empty means identity
  std::function<Vec(const Vec&, const Vec&)> eta;
  Op E_grad;
  ConvexSet K = WholeSpace{};
  // (u_n, g(u_n), ρ) -> g(u_{n+1}) solving <ρTu_n + E'(g(u+)) − E'(g(u_n)), η(y, g(u+))> >= 0.
  AuxOracle aux_oracle;
};

// η(y1, y2) = y1 − y2 and E(y) = ½ y'Dy with D > 0 diagonal. The oracle is the D-weighted
// projection, available in closed form for separable K (or any K when D = I).
VarLikeProblem varlike_quadratic_kernel(int dim, Op T, ConvexSet K, Vec D);

// Samples η(y, y) on a fixed probe set; returns the largest norm seen.
double eta_antisymmetry_defect(const VarLikeProblem& vp, int samples = 32);

struct HigherOrderProblem {
  GviProblem base;
  double p = 2.0;
  double mu = 0.0;
  // Subproblem modulus; defaults to mu when unset.
  std::optional<double> nu;
  double nu_value() const { return nu.value_or(mu); }
};

// Predictor g(w) = oracle(u, g(u), β), corrector g(u+) = oracle(w, g(w), ρ) (β = beta_step).
SolveReport solve_eq_predictor_corrector(const EquilibriumProblem& ep, const SolveConfig& config);

// Implicit inertial proximal step; α_n from config.alpha_schedule (default 0).
SolveReport solve_eq_inertial(const EquilibriumProblem& ep, const SolveConfig& config);

SolveReport solve_varlike(const VarLikeProblem& vp, const SolveConfig& config);

// Two half-steps, each minimizing ρ<T(a), v> + ½‖v − a‖² + (ν/p)‖v − a‖^p over K with a the
// current anchor (u_n, then the predictor y_n). ν = 0 is solved in closed form by projection.
SolveReport solve_higher_order(const HigherOrderProblem& hp, const SolveConfig& config);

// Minimizer of the half-step subproblem above, exposed for checking.
Vec higher_order_substep(const HigherOrderProblem& hp, const Vec& anchor, const SolveConfig& config);

}  // namespace gvi
