#pragma once

#include "gvi/core.hpp"

#include <string>

namespace gvi {

// λ weights g(y) against g(u); ξ places the T-evaluation between u and y.
// (½, 1), (0, ½) and (½, ½) give the averaged, mid-point and fully averaged schemes.
struct TwoStepScheme {
  double lambda = 0.5;
  double xi = 0.5;
};

struct DynamicalVariant {
  enum class Tag { ForwardT, FullImplicit, ExplicitT };
  Tag tag = Tag::ForwardT;
  double h = 1.0;
};

std::string to_string(DynamicalVariant::Tag tag);

// u+ = u − g(u) + P_K[g(u) − ρTu]
SolveReport solve_projection(const GviProblem& problem, const SolveConfig& config);

// Predictor g(y) = P_K[g(u) − ρTu], corrector with T evaluated at y = g⁻¹(g(y)).
SolveReport solve_extragradient(const GviProblem& problem, const SolveConfig& config);

SolveReport solve_two_step(const GviProblem& problem, const SolveConfig& config,
                           const TwoStepScheme& scheme);

// Implicit discretizations of dg(u)/dt + g(u) = P_K[g(u) − ρTu]; inner fixed-point loops
// run to config.inner_tol. The step is variant.h (config.h is ignored).
SolveReport solve_dynamical(const GviProblem& problem, const SolveConfig& config,
                            const DynamicalVariant& variant);

}  // namespace gvi
