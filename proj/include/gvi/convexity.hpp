#pragma once

#include "gvi/types.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace gvi {

using ScalarField = std::function<double(const Vec&)>;

struct FunctionUnderTest {
  ScalarField F;
  Op grad_F;  // empty: central differences with step 1e-6
  Op g;       // empty: identity
  std::function<Vec(std::mt19937_64&)> sampler;
  double p = 2.0;
  double mu = 0.0;
};

struct Witness {
  Vec u, v;
  double t = 0.0;
};

// Reports "no violation found on the samples", never class membership.
struct CertReport {
  long checked_count = 0;
  double worst_violation = 0.0;  // max of LHS − RHS over sampled triples
  Witness witness;
  double tolerance = 0.0;
  bool pass = true;
};

std::vector<double> default_t_grid();

// Per-triple LHS − RHS of each inequality, evaluated at g(u), g(v). Regenerating a report's
// worst_violation from its witness goes through these.
double hos_convex_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v, double t);
double hos_affine_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v, double t);
double gradient_char_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v);
double monotonicity_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v);
double exp_convex_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v, double t,
                            bool strong, bool concave);
double exp_gradient_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v,
                              bool strong, bool concave);

CertReport check_hos_convex(const FunctionUnderTest& fut, int samples,
                            const std::vector<double>& t_grid = default_t_grid(),
                            std::uint64_t seed = 2024);

// Equality form of the affine class.
CertReport check_hos_affine(const FunctionUnderTest& fut, int samples,
                            const std::vector<double>& t_grid = default_t_grid(),
                            std::uint64_t seed = 2024);

// Gradient inequality F(y) − F(x) >= <F'(x), y − x> + μ‖y − x‖^p and monotonicity
// <F'(x) − F'(y), x − y> >= 2μ‖y − x‖^p; the report carries the worse of the two.
CertReport check_gradient_char(const FunctionUnderTest& fut, int samples,
                               std::uint64_t seed = 2024);

struct ExpConvexReport {
  CertReport definition;
  CertReport gradient_form;  // checked_count = 0 when skipped
};

// e^F convex (or concave) along segments, optionally strengthened by μt(1−t)‖·‖².
// The gradient form is checked when grad_F is supplied.
ExpConvexReport check_exp_convex(const FunctionUnderTest& fut, int samples,
                                 const std::vector<double>& t_grid = default_t_grid(), bool strong = false,
                                 bool concave = false, std::uint64_t seed = 2024);

struct HierarchyReport {
  CertReport log_convex;    // e^{F(comb)} <= e^{(1−t)F(x) + tF(y)}
  CertReport convex;        // e^{F(comb)} <= (1−t)e^{F(x)} + te^{F(y)}
  CertReport quasi_convex;  // e^{F(comb)} <= max(e^{F(x)}, e^{F(y)})
  // Triples where a stronger leg held and the next weaker one failed.
  long implication_failures = 0;
  Witness counterexample;
  bool pass() const { return implication_failures == 0; }
};

HierarchyReport check_hierarchy(const FunctionUnderTest& fut, int samples,
                                const std::vector<double>& t_grid = default_t_grid(),
                                std::uint64_t seed = 2024);

struct ParallelogramReport {
  CertReport lower;     // ‖x+y‖^p + μ‖x−y‖^p <= 2^{p−1}(‖x‖^p + ‖y‖^p)
  CertReport upper;     // the reverse inequality
  CertReport equality;  // |LHS − RHS| at p = 2, μ = 1
  double mu_lower = 0.0;  // largest μ for which the lower law holds on the samples
  double mu_upper = 0.0;  // smallest μ for which the upper law holds on the samples
};

ParallelogramReport check_parallelogram(double p, double mu, int samples, int dim = 3,
                                        std::uint64_t seed = 2024);

// Built-in functions for the CLI: square, linear, exp-square, quartic, sin, log1p-square,
// erf-sqrt, square-plus-one, sqrt-abs, constant.
FunctionUnderTest builtin_function(const std::string& id, double p, double mu);
std::vector<std::string> builtin_function_ids();

}  // namespace gvi
