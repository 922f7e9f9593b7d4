#pragma once

#include "gvi/sets.hpp"
#include "gvi/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gvi {

enum class NormKind { L2, Linf };

double norm(const Vec& v, NormKind kind = NormKind::L2);

// Find u with g(u) ∈ K and <Tu − A(u), g(v) − g(u)> >= 0 for all g(v) ∈ K.
// Values are immutable; the with_* members return modified copies.
class GviProblem {
 public:
  GviProblem(int dim, Op T, ConvexSet K);

  // g_inverse is checked against g on a fixed probe set; mismatch throws InvalidArgument.
  GviProblem with_g(Op g, std::optional<Op> g_inverse = std::nullopt) const;
  GviProblem with_A(Op A) const;
  GviProblem with_solution(Vec u) const;

  int dim() const { return dim_; }
  const ConvexSet& K() const { return K_; }
  const std::optional<Vec>& known_solution() const { return solution_; }
  bool g_is_identity() const { return !g_; }
  bool has_g_inverse() const { return g_is_identity() || g_inverse_.has_value(); }
  bool has_A() const { return static_cast<bool>(A_); }

  Vec T(const Vec& u) const;
  Vec g(const Vec& u) const;
  Vec g_inverse(const Vec& y) const;
  Vec A(const Vec& u) const;
  // T − A, the operator every solver actually steps with.
  Vec T_eff(const Vec& u) const;

  // Map a g-image back to iterate space: u − g(u) + image (exact identity when g = I).
  Vec recover(const Vec& u, const Vec& gu, const Vec& image) const;
  // g_inverse when available, otherwise the recovery device anchored at u.
  Vec preimage(const Vec& u, const Vec& gu, const Vec& image) const;

 private:
  int dim_;
  Op T_;
  Op g_;
  std::optional<Op> g_inverse_;
  Op A_;
  ConvexSet K_;
  std::optional<Vec> solution_;
};

struct SolveConfig {
  double rho = 1.0;
  double tol = 1e-7;
  int max_iters = 1000;
  double lambda = 0.5;
  double xi = 0.5;
  double h = 1.0;
  double mu_step = 0.0;
  double beta_step = 0.0;
  double sigma = 0.5;
  double gamma = 0.8;
  double inner_tol = 1e-10;
  int inner_max_iters = 10000;
  // α_n; empty means each solver's own constant default.
  std::function<double(int)> alpha_schedule;
  NormKind norm = NormKind::L2;
  std::optional<Vec> start;
  bool record_iterates = false;
  double divergence_bound = 1e12;

  void validate() const;
  double alpha_at(int n, double fallback) const;
  Vec start_point(int dim) const;
};

struct TraceRecord {
  double iterate_norm = 0.0;
  double residual_norm = 0.0;
  std::optional<double> lyapunov;
};

struct SolveReport {
  Vec solution;
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
  std::vector<TraceRecord> trace;
  std::vector<Vec> iterates;
  std::vector<std::string> notes;
};

// R(u) = g(u) − P_K[g(u) − ρ(Tu − A(u))]
Vec residual(const GviProblem& problem, const Vec& u, double rho);

bool is_solution(const GviProblem& problem, const Vec& u, double rho, double tol,
                 NormKind kind = NormKind::L2);

struct ComplementarityGap {
  double primal_violation = 0.0;
  double dual_violation = 0.0;
  double pairing = 0.0;
};

// Requires K = nonnegative orthant.
ComplementarityGap complementarity_gap(const GviProblem& problem, const Vec& u);

// Quasi-VI with K(u) = m(u) + K, rewritten with g(u) = u − m(u).
GviProblem quasi_to_general(int dim, Op m, ConvexSet K, Op T);

// ρT(g⁻¹(P_K z)) + z − P_K z
Vec wiener_hopf_residual(const GviProblem& problem, const Vec& z, double rho);

// Largest ‖T(u) − T(v)‖/‖u − v‖ over random nearby pairs in [−1, 1]^n.
double lipschitz_estimate(const GviProblem& problem, int samples = 20, unsigned seed = 12345);
double default_rho(const GviProblem& problem);

}  // namespace gvi
