#pragma once

#include "gvi/core.hpp"

namespace gvi {

struct ArmijoResult {
  int m = 0;
  double eta = 1.0;
  Vec trial_point;
};

struct StepData {
  Vec d;
  double alpha = 0.0;
  Vec z;
  Vec y;
  double eta = 1.0;
  // η<R, R − Tu + Ty>
  double numerator = 0.0;
};

enum class StepDenominator { SquaredNorm, Norm };

struct DoubleProjectionOptions {
  StepDenominator denominator = StepDenominator::SquaredNorm;
};

struct DoubleProjectionStep {
  ArmijoResult armijo;
  StepData data;
  Vec residual;
  Vec next;
  bool fallback = false;
};

// g(y) = P_K[g(u) − ρTu];
// g(u+) = (1 − α_n)g(u) + α_n P_K[g(y) − ρTy + g(y) − (g(u) − ρTu)]
// α_n comes from config.alpha_schedule (default 1).
SolveReport solve_whe(const GviProblem& problem, const SolveConfig& config);

// Smallest m >= 0 with <T(u) − T(u − γ^m R), R> <= σ‖R‖².
ArmijoResult armijo_search(const GviProblem& problem, const Vec& u, const Vec& R_u, double gamma,
                           double sigma);

// One predictor/direction/corrector pass at u (ρ = 1 inside the predictor).
DoubleProjectionStep double_projection_step(const GviProblem& problem, const Vec& u,
                                            const SolveConfig& config, bool optimal,
                                            const DoubleProjectionOptions& options = {});

SolveReport solve_double_projection_basic(const GviProblem& problem, const SolveConfig& config,
                                          const DoubleProjectionOptions& options = {});

// Corrector projects onto K ∩ H_n; when the slice is empty the basic corrector is used.
SolveReport solve_double_projection_optimal(const GviProblem& problem, const SolveConfig& config,
                                            const DoubleProjectionOptions& options = {});

}  // namespace gvi
