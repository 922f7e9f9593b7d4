#include "gvi/obstacle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using gvi::Vec;

namespace {

// Same as the test instance but with a smooth source, no coupling and r = 0, so every row
// carries only the plain stencil.
gvi::ObstacleProblem plain_instance() {
  gvi::ObstacleProblem p;
  p.f = [](double x) { return std::sin(3 * x) + x; };
  return p;
}

double fd(double x, double step = 1e-6) {
  return (gvi::analytic_solution(x + step) - gvi::analytic_solution(x - step)) / (2 * step);
}

}  // namespace

TEST(Assemble, InteriorRowsCarryStencil) {
  const int n = 15;
  const auto pb = plain_instance();
  const auto sys = gvi::assemble(pb, n);
  const double h = 1.0 / 16;
  EXPECT_DOUBLE_EQ(sys.h, h);
  const auto M = sys.dense();
  for (int i = 3; i <= n - 1; ++i) {
    const int row = i - 1;
    const double stencil[4] = {-1, 3, -3, 1};
    for (int k = 0; k < 4; ++k) EXPECT_EQ(M(row, i - 3 + k), stencil[k]) << "row " << i;
    for (int j = 0; j < n; ++j)
      if (j < i - 3 || j > i) EXPECT_EQ(M(row, j), 0.0);
    const auto f = [&](int j) { return pb.f(j * h); };
    EXPECT_NEAR(sys.rhs[row], h * h * h / 12 * (f(i - 2) + 5 * f(i - 1) + 5 * f(i) + f(i + 1)), 1e-15);
  }
}

TEST(Assemble, HomogeneousSystem) {
  const auto sys = gvi::assemble(gvi::homogeneous_instance(), 15);
  EXPECT_EQ(sys.rhs.norm(), 0.0);
  const Vec s = gvi::solve_grid(gvi::homogeneous_instance(), 15);
  EXPECT_EQ(s.lpNorm<Eigen::Infinity>(), 0.0);
}

TEST(Assemble, CouplingFoldedIntoMatrixInsideRegion) {
  const int n = 15;
  const auto pb = gvi::test_instance();
  const auto sys = gvi::assemble(pb, n);
  const auto plain = gvi::assemble(gvi::homogeneous_instance(), n);
  const double c = std::pow(1.0 / 16, 3) / 12;
  const double w[4] = {1, 5, 5, 1};
  for (int i = 3; i <= n - 1; ++i) {
    for (int k = 0; k < 4; ++k) {
      const int j = i - 2 + k;  // node index
      const bool inside = j > (n + 1) / 4 && j <= 3 * (n + 1) / 4;
      EXPECT_EQ(gvi::in_contact_region(pb, j / 16.0, 1.0 / 16), inside) << j;
      const double expected = plain.band.get(i - 1, j - 1) - (inside ? c * w[k] : 0.0);
      EXPECT_NEAR(sys.band.get(i - 1, j - 1), expected, 1e-15) << "row " << i << " node " << j;
    }
  }
}

TEST(Assemble, GridErrors) {
  EXPECT_THROW(gvi::assemble(gvi::test_instance(), 14), gvi::GridError);
  EXPECT_THROW(gvi::assemble(gvi::test_instance(), 2), gvi::GridError);
  gvi::ObstacleProblem bad;
  bad.c = 0.8;
  bad.d = 0.2;
  EXPECT_THROW(gvi::validate(bad), gvi::InvalidArgument);
}

TEST(BandMatrix, SolveMatchesDenseLU) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> U(-1, 1);
  const int n = 12;
  gvi::BandMatrix B(n, 2, 1);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 1); ++j) B.add(i, j, U(rng) + (i == j ? 0.1 : 0));
  Vec b(n);
  for (auto& x : b) x = U(rng);
  const Vec ref = B.dense().partialPivLu().solve(b);
  EXPECT_LE((B.solve(b) - ref).norm(), 1e-10 * (1 + ref.norm()));
  EXPECT_THROW(B.add(0, 3, 1.0), gvi::InvalidArgument);
}

TEST(BandMatrix, SingularReportsRow) {
  gvi::BandMatrix B(3, 2, 1);
  B.add(0, 0, 1);
  B.add(1, 1, 1);
  try {
    B.solve(Vec::Ones(3));
    FAIL() << "expected assembly error";
  } catch (const gvi::AssemblyError& e) {
    EXPECT_EQ(e.row, 3);
  }
}

TEST(SolveGrid, ErrorAgainstTableTargets) {
  const double e15 = gvi::max_error(gvi::test_instance(), 15);
  const double e31 = gvi::max_error(gvi::test_instance(), 31);
  EXPECT_GE(e15, 1.23e-3 / 2);
  EXPECT_LE(e15, 1.23e-3 * 2);
  EXPECT_GE(e31, 5.53e-4 / 2);
  EXPECT_LE(e31, 5.53e-4 * 2);
  EXPECT_LT(e31, e15);
  EXPECT_EQ(gvi::max_error(gvi::homogeneous_instance(), 15), 0.0);
}

TEST(SolveGrid, ErrorRatiosAndMonotoneDecrease) {
  for (auto v : {gvi::BoundaryVariant::Verbatim, gvi::BoundaryVariant::Corrected}) {
    const auto rows = gvi::error_table(gvi::test_instance(), {15, 31, 63, 127}, v);
    ASSERT_EQ(rows.size(), 4u);
    for (size_t k = 1; k < rows.size(); ++k) {
      EXPECT_LT(rows[k].error, rows[k - 1].error);
      const double ratio = rows[k - 1].error / rows[k].error;
      EXPECT_GE(ratio, 1.8) << gvi::to_string(v);
      EXPECT_LE(ratio, 4.5) << gvi::to_string(v);
    }
  }
}

TEST(SolveGrid, BoundaryVariantWeights) {
  EXPECT_EQ(gvi::last_row_weight(gvi::BoundaryVariant::Verbatim), 31.0);
  EXPECT_EQ(gvi::last_row_weight(gvi::BoundaryVariant::Corrected), 3.0);
}

TEST(Analytic, BoundaryConditions) {
  EXPECT_EQ(gvi::analytic_solution(0.0), 0.0);
  EXPECT_LE(std::abs(fd(0.0)), 1e-8);
  EXPECT_LE(std::abs(fd(1.0)), 1e-8);
}

TEST(Analytic, ContinuousAtInterfaces) {
  for (double x : {0.25, 0.75}) {
    EXPECT_NEAR(gvi::analytic_solution(std::nextafter(x, 0.0)), gvi::analytic_solution(std::nextafter(x, 1.0)),
                1e-10);
    const double step = 1e-5;
    const double left = (gvi::analytic_solution(x) - gvi::analytic_solution(x - step)) / step;
    const double right = (gvi::analytic_solution(x + step) - gvi::analytic_solution(x)) / step;
    EXPECT_NEAR(left, right, 1e-4) << x;
  }
}

TEST(Spline, SmoothAtInteriorKnots) {
  for (int n : {15, 31, 63}) {
    const auto pb = gvi::test_instance();
    const Vec s = gvi::solve_grid(pb, n);
    const auto pieces = gvi::reconstruct_spline(pb, n, s);
    ASSERT_EQ(pieces.size(), static_cast<size_t>(n + 1));
    EXPECT_LE(gvi::smoothness_residual(pieces, 1.0 / (n + 1)), 1e-8) << n;
    EXPECT_LE(std::abs(pieces.front().eval(0.0) - pb.alpha), 1e-8);
    EXPECT_LE(std::abs(pieces.front().eval(0.0, 1) - pb.beta1), 1e-8);
    EXPECT_LE(std::abs(pieces.back().eval(1.0, 1) - pb.beta2), 1e-8);
    for (int i = 0; i <= n; ++i) EXPECT_NEAR(pieces[i].eval(pieces[i].x0), s[i], 1e-12);
  }
}

TEST(Energy, ZeroGrid) { EXPECT_EQ(gvi::discrete_energy(Vec::Zero(20), 0.05), 0.0); }

TEST(Energy, QuadraticProfile) {
  const int m = 64;
  Vec v(m + 1);
  for (int i = 0; i <= m; ++i) v[i] = std::pow(double(i) / m, 2);
  EXPECT_NEAR(gvi::discrete_energy(v, 1.0 / m), 4.0, 1e-2);
}

TEST(Energy, AnalyticGridBelowFeasiblePerturbations) {
  const int n = 63;
  const double h = 1.0 / (n + 1);
  const auto pb = gvi::test_instance();
  Vec u(n + 2), psi(n + 2);
  for (int i = 0; i <= n + 1; ++i) u[i] = gvi::analytic_solution(i * h), psi[i] = pb.psi(i * h);
  const double base = gvi::discrete_energy(u, h);
  std::mt19937_64 rng(47);
  std::normal_distribution<double> N(0, 1e-3);
  for (int t = 0; t < 100; ++t) {
    Vec v = u;
    for (int i = 1; i <= n + 1; ++i) v[i] = std::max(u[i] + N(rng), psi[i]);
    EXPECT_LE(base, gvi::discrete_energy(v, h)) << t;
  }
}

TEST(Complementarity, HomogeneousInstance) {
  const auto pb = gvi::homogeneous_instance();
  EXPECT_LE(gvi::complementarity_check(gvi::solve_grid(pb, 15), pb), 1e-8);
}

TEST(Complementarity, TruncationOrderBound) {
  const int n = 63;
  const auto pb = gvi::test_instance();
  const double h = 1.0 / (n + 1);
  EXPECT_LE(gvi::complementarity_check(gvi::solve_grid(pb, n), pb), 10 * h * h);
}

TEST(Complementarity, ContactNearInterfaces) {
  const int n = 63;
  const auto pb = gvi::test_instance();
  const Vec s = gvi::solve_grid(pb, n);
  const double h = 1.0 / (n + 1);
  for (int i : {(n + 1) / 4 + 1, 3 * (n + 1) / 4}) {
    EXPECT_LE(std::abs(s[i] - pb.psi(i * h)), 1e-2) << "node " << i;
  }
}
