#include "gvi/solvers.hpp"

#include "oracles.hpp"
#include "problems.hpp"

#include <gtest/gtest.h>

using gvi::Vec;
using testprob::config;
using testprob::ex3;
using testprob::ex4;

namespace {

gvi::GviProblem rotation() {
  return gvi::GviProblem(2, [](const Vec& u) -> Vec {
    Vec r(2);
    r << u[1], -u[0];
    return r;
  }, gvi::WholeSpace{});
}

double dist_inf(const Vec& a, const Vec& b) { return (a - b).lpNorm<Eigen::Infinity>(); }

gvi::SolveReport fixed_horizon(const std::function<gvi::SolveReport(const gvi::SolveConfig&)>& run,
                               double rho, int steps) {
  auto c = config(rho);
  c.tol = 1e-300;
  c.max_iters = steps;
  c.record_iterates = true;
  return run(c);
}

}  // namespace

TEST(Projection, KnownSolution) {
  const auto r = gvi::solve_projection(ex4(10), config(0.5));
  ASSERT_TRUE(r.converged);
  EXPECT_LE(dist_inf(r.solution, Vec::Ones(10)), 1e-6);
  EXPECT_EQ(r.trace.size(), static_cast<size_t>(r.iterations) + 1);
  EXPECT_LE(r.residual_norm, 1e-7);
}

TEST(Projection, ZeroOperatorFeasibleStart) {
  const Vec u0 = Vec::Constant(3, 0.4);
  const auto r = gvi::solve_projection(testprob::zero_T(3, gvi::make_unit_box(3)), config(1.0, u0));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 1);
  EXPECT_EQ(r.solution, u0);
}

TEST(Projection, MatchesGridOracle) {
  const auto p = ex3(2);
  const Vec ref = oracle::grid_solve_box2([&](const Vec& u) { return p.T(u); });
  const auto r = gvi::solve_projection(p, config(0.2));
  ASSERT_TRUE(r.converged);
  EXPECT_LE(dist_inf(r.solution, ref), 1e-3);
}

TEST(Projection, DivergenceCarriesLastIterate) {
  const gvi::GviProblem p(1, [](const Vec& u) -> Vec { return -u; }, gvi::WholeSpace{});
  try {
    gvi::solve_projection(p, config(1.0, Vec::Ones(1)));
    FAIL() << "expected divergence";
  } catch (const gvi::DivergenceError& e) {
    EXPECT_GT(e.last_iterate.norm(), 1e12);
    EXPECT_GT(e.iteration, 0);
  }
}

TEST(Extragradient, StronglyMonotoneInstance) {
  // ρ below 1/L ≈ 0.17.
  const auto r = gvi::solve_extragradient(ex3(10), config(0.1));
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.residual_norm, 1e-7);
  EXPECT_LE(dist_inf(r.solution, oracle::example3_solution(10)), 1e-6);
}

TEST(Extragradient, ZeroOperator) {
  const auto r = gvi::solve_extragradient(testprob::zero_T(2, gvi::make_unit_box(2)),
                                          config(1.0, Vec::Constant(2, 0.5)));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 1);
}

TEST(Extragradient, RotationConvergesWhereProjectionDiverges) {
  Vec u0(2);
  u0 << 1, 0;
  const auto r = gvi::solve_extragradient(rotation(), config(0.5, u0));
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.solution.norm(), 1e-6);
  EXPECT_THROW(gvi::solve_projection(rotation(), config(0.5, u0)), gvi::DivergenceError);
}

TEST(Extragradient, NeedsInverse) {
  const auto p = ex4(2).with_g([](const Vec& u) -> Vec { return u.array().cube().matrix(); });
  EXPECT_THROW(gvi::solve_extragradient(p, config(0.5)), gvi::CapabilityError);
}

TEST(TwoStep, ZeroZeroIsProjection) {
  const auto p = ex4(10);
  const auto a = fixed_horizon([&](const auto& c) { return gvi::solve_projection(p, c); }, 0.5, 10);
  const auto b = fixed_horizon(
      [&](const auto& c) { return gvi::solve_two_step(p, c, gvi::TwoStepScheme{0, 0}); }, 0.5, 10);
  ASSERT_EQ(a.iterates.size(), b.iterates.size());
  for (size_t k = 0; k < a.iterates.size(); ++k) EXPECT_EQ(a.iterates[k], b.iterates[k]) << k;
}

TEST(TwoStep, AveragedSchemeKnownSolution) {
  const auto r = gvi::solve_two_step(ex4(10), config(0.5), gvi::TwoStepScheme{0.5, 0.5});
  ASSERT_TRUE(r.converged);
  EXPECT_LE(dist_inf(r.solution, Vec::Ones(10)), 1e-6);
}

TEST(TwoStep, SchemesDifferAtStepThree) {
  const auto p = ex3(10);
  const auto a = fixed_horizon(
      [&](const auto& c) { return gvi::solve_two_step(p, c, gvi::TwoStepScheme{0.5, 1}); }, 0.2, 3);
  const auto b = fixed_horizon(
      [&](const auto& c) { return gvi::solve_two_step(p, c, gvi::TwoStepScheme{0, 0}); }, 0.2, 3);
  EXPECT_GT((a.iterates[3] - b.iterates[3]).norm(), 1e-6);
  const auto full = gvi::solve_two_step(p, config(0.2), gvi::TwoStepScheme{0.5, 1});
  EXPECT_TRUE(full.converged);
}

TEST(TwoStep, RejectsOutOfRangeWeights) {
  EXPECT_THROW(gvi::solve_two_step(ex4(2), config(0.5), gvi::TwoStepScheme{1.5, 0}), gvi::InvalidArgument);
}

TEST(Dynamical, ZeroOperatorStationary) {
  const Vec u0 = Vec::Constant(2, 0.25);
  for (auto tag : {gvi::DynamicalVariant::Tag::ForwardT, gvi::DynamicalVariant::Tag::FullImplicit,
                   gvi::DynamicalVariant::Tag::ExplicitT}) {
    auto c = config(1.0, u0);
    c.tol = 1e-300;
    c.max_iters = 1;
    c.record_iterates = true;
    const auto r = gvi::solve_dynamical(testprob::zero_T(2, gvi::make_unit_box(2)), c,
                                        gvi::DynamicalVariant{tag, 0.7});
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.iterations, 1);
    EXPECT_LE((r.iterates.back() - u0).norm(), 1e-12) << gvi::to_string(tag);
  }
}

TEST(Dynamical, ForwardTKnownSolution) {
  const auto r = gvi::solve_dynamical(ex4(10), config(0.5), gvi::DynamicalVariant{});
  ASSERT_TRUE(r.converged);
  EXPECT_LE(dist_inf(r.solution, Vec::Ones(10)), 1e-6);
}

TEST(Dynamical, FullImplicitLyapunovDecreasing) {
  const Vec star = oracle::example3_solution(10);
  const auto p = ex3(10).with_solution(star);
  const auto r = gvi::solve_dynamical(
      p, config(0.2), gvi::DynamicalVariant{gvi::DynamicalVariant::Tag::FullImplicit, 1.0});
  ASSERT_TRUE(r.converged);
  for (size_t k = 1; k < r.trace.size(); ++k) {
    ASSERT_TRUE(r.trace[k].lyapunov.has_value());
    EXPECT_LT(*r.trace[k].lyapunov, *r.trace[k - 1].lyapunov) << k;
  }
}

TEST(Dynamical, ForwardTDescentInequality) {
  const Vec star = oracle::example3_solution(10);
  auto c = config(0.2);
  c.record_iterates = true;
  const auto r = gvi::solve_dynamical(ex3(10), c, gvi::DynamicalVariant{});
  ASSERT_TRUE(r.converged);
  for (size_t k = 0; k + 1 < r.iterates.size(); ++k) {
    const Vec& u = r.iterates[k];
    const Vec& v = r.iterates[k + 1];
    EXPECT_LE((star - v).squaredNorm(), (star - u).squaredNorm() - (u - v).squaredNorm() + 1e-8) << k;
  }
}

TEST(Dynamical, InnerLoopCap) {
  auto c = config(0.2);
  c.inner_max_iters = 1;
  EXPECT_THROW(gvi::solve_dynamical(ex3(4), c, gvi::DynamicalVariant{}), gvi::InnerDivergenceError);
}

TEST(Dynamical, RejectsNonPositiveStep) {
  EXPECT_THROW(gvi::solve_dynamical(ex4(2), config(0.5),
                                    gvi::DynamicalVariant{gvi::DynamicalVariant::Tag::ForwardT, 0.0}),
               gvi::InvalidArgument);
}

TEST(Consistency, SolversAgreeAndPassResidualCheck) {
  const auto p = ex3(10);
  const auto c = config(0.1);
  const std::vector<gvi::SolveReport> runs = {
      gvi::solve_projection(p, c), gvi::solve_extragradient(p, c),
      gvi::solve_two_step(p, c, gvi::TwoStepScheme{0.5, 0.5}),
      gvi::solve_dynamical(p, c, gvi::DynamicalVariant{})};
  for (const auto& r : runs) {
    ASSERT_TRUE(r.converged);
    EXPECT_TRUE(gvi::is_solution(p, r.solution, 0.1, c.tol));
    EXPECT_LE((r.solution - runs[0].solution).norm(), 1e-5);
  }
}

TEST(GeneralG, RecoveryDeviceFixedPoint) {
  // g(u) = 2u: the recovered iteration settles where 2u solves the problem in g-space.
  const auto p = ex4(3).with_g([](const Vec& u) -> Vec { return 2 * u; });
  const auto r = gvi::solve_projection(p, config(0.5));
  ASSERT_TRUE(r.converged);
  EXPECT_LE(gvi::residual(p, r.solution, 0.5).norm(), 1e-7);
}
