#include "gvi/bench.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

using gvi::Vec;

namespace {

Vec unit(int n, int k) {
  Vec e = Vec::Zero(n);
  e[k] = 1;
  return e;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

gvi::BenchResult row(bool converged) {
  gvi::BenchResult r;
  r.problem = "example3";
  r.n = 10;
  r.algorithm = "dp-basic";
  r.iterations = 42;
  r.converged = converged;
  r.residual_norm = 5e-8;
  return r;
}

}  // namespace

TEST(BuildProblem, Example3Matrix) {
  const auto p = gvi::example3(3);
  const Vec q = p.T(Vec::Zero(3));
  EXPECT_EQ(q, Vec::Constant(3, -1.0));
  const double M[3][3] = {{4, -1, 0}, {-1, 4, -1}, {0, -1, 4}};
  for (int j = 0; j < 3; ++j) {
    const Vec col = p.T(unit(3, j)) - q;
    for (int i = 0; i < 3; ++i) EXPECT_EQ(col[i], M[i][j]);
  }
}

TEST(BuildProblem, Example4Matrix) {
  const auto p = gvi::example4(2);
  const Vec q = p.T(Vec::Zero(2));
  EXPECT_EQ(q, Vec::Constant(2, -1.0));
  EXPECT_EQ(p.T(unit(2, 0)) - q, Vec(unit(2, 0) * 0.5));
  EXPECT_EQ(p.T(unit(2, 1)) - q, unit(2, 1));
  ASSERT_TRUE(p.known_solution().has_value());
  EXPECT_EQ(*p.known_solution(), Vec::Ones(2));
}

TEST(BuildProblem, Example2Evaluation) {
  Vec expected(4);
  expected << 0, 1, 4, 2;
  EXPECT_EQ(gvi::example2().T(unit(4, 0)), expected);
  EXPECT_TRUE(gvi::start_point(gvi::ProblemSpec::example2()).isApprox(Vec::Constant(4, 0.25)));
}

TEST(BuildProblem, Variants) {
  EXPECT_TRUE(std::holds_alternative<gvi::ObstacleProblem>(gvi::build_problem(gvi::ProblemSpec::obstacle(15))));
  EXPECT_THROW(gvi::build_problem(gvi::ProblemSpec{"nope", 3, ""}), gvi::SpecError);
  EXPECT_THROW(gvi::parse_problem("obstacle", 14), gvi::SpecError);
  EXPECT_THROW(gvi::parse_problem("example3", 0), gvi::SpecError);
  EXPECT_EQ(gvi::parse_problem("custom:/tmp/x.txt", 0).path, "/tmp/x.txt");
  EXPECT_EQ(gvi::start_point(gvi::ProblemSpec::example4(5)), Vec::Zero(5));
}

TEST(BuildProblem, CustomFile) {
  const auto path = std::filesystem::temp_directory_path() / "gvi_custom_test.txt";
  {
    std::ofstream f(path);
    f << "# small affine problem\ndim = 2\nM = 2, 0, 0, 2\nq = -1, -4\nset = unit-box\n";
  }
  const auto p = gvi::load_custom(path.string());
  EXPECT_EQ(p.dim(), 2);
  Vec u(2);
  u << 1, 1;
  Vec expected(2);
  expected << 1, -2;
  EXPECT_EQ(p.T(u), expected);
  const auto r = gvi::run_algorithm(gvi::ProblemSpec::custom(path.string()), "projection", {});
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.solution[0], 0.5, 1e-6);
  EXPECT_NEAR(r.solution[1], 1.0, 1e-6);
  {
    std::ofstream f(path);
    f << "dim = 2\nM = 1, 2, 3\nq = 0, 0\n";
  }
  EXPECT_THROW(gvi::load_custom(path.string()), gvi::SpecError);
  std::filesystem::remove(path);
}

TEST(Registry, KnownIds) {
  for (const char* id : {"projection", "extragradient", "two-step", "whe", "dp-basic", "dp-optimal",
                         "three-step", "gap-descent", "dynamical", "dynamical-full", "dynamical-explicit",
                         "eq-predictor-corrector", "eq-inertial", "varlike", "higher-order"})
    EXPECT_NO_THROW(gvi::find_algorithm(id)) << id;
  EXPECT_THROW(gvi::find_algorithm("nope"), gvi::SpecError);
  EXPECT_EQ(gvi::find_algorithm("dp-basic").fixed_rho, 1.0);
}

TEST(Registry, ConfigOverridesRho) {
  const auto p = gvi::example3(4);
  gvi::BenchConfig cfg;
  EXPECT_EQ(gvi::make_solve_config(gvi::find_algorithm("dp-optimal"), cfg, p, Vec::Zero(4)).rho, 1.0);
  EXPECT_DOUBLE_EQ(gvi::make_solve_config(gvi::find_algorithm("projection"), cfg, p, Vec::Zero(4)).rho,
                   gvi::default_rho(p));
  cfg.rho = 0.3;
  EXPECT_EQ(gvi::make_solve_config(gvi::find_algorithm("dp-optimal"), cfg, p, Vec::Zero(4)).rho, 0.3);
}

TEST(RunSuite, EmptySuite) { EXPECT_TRUE(gvi::run_suite({}, {"dp-basic"}, {}).empty()); }

TEST(RunSuite, Table1Column) {
  const int targets[] = {47, 50, 52, 53};
  const auto rows = gvi::run_suite({gvi::ProblemSpec::example3(10), gvi::ProblemSpec::example3(20),
                                    gvi::ProblemSpec::example3(50), gvi::ProblemSpec::example3(100)},
                                   {"dp-basic"}, {});
  ASSERT_EQ(rows.size(), 4u);
  for (int k = 0; k < 4; ++k) {
    EXPECT_TRUE(rows[k].converged);
    EXPECT_LE(rows[k].residual_norm, 1e-7);
    EXPECT_LE(std::abs(rows[k].iterations - targets[k]), 0.3 * targets[k]) << rows[k].iterations;
  }
}

TEST(RunSuite, Table2Example4Row) {
  const auto rows = gvi::run_suite({gvi::ProblemSpec::example4(10)}, {"dp-optimal"}, {});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].converged);
  EXPECT_LE(std::abs(rows[0].iterations - 35), 0.3 * 35) << rows[0].iterations;
}

TEST(RunSuite, ErrorsRecordedPerRow) {
  const auto rows = gvi::run_suite({gvi::ProblemSpec::example3(3)}, {"nope", "projection"}, {});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(rows[1].error.empty());
  EXPECT_TRUE(rows[1].converged);
}

TEST(RunSuite, ObstacleRow) {
  const auto rows = gvi::run_suite({gvi::ProblemSpec::obstacle(15)}, {}, {});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].algorithm, "cubic-spline-verbatim");
  ASSERT_TRUE(rows[0].max_error.has_value());
  EXPECT_LE(rows[0].residual_norm, 1e-12);
}

TEST(RunSuite, ReRunReproducesIterations) {
  const auto rows = gvi::run_suite({gvi::ProblemSpec::example4(10)}, {"extragradient", "whe"}, {});
  for (const auto& r : rows)
    EXPECT_EQ(gvi::run_algorithm(gvi::ProblemSpec::example4(10), r.algorithm, {}).iterations, r.iterations);
}

TEST(EmitTable, SingleRow) {
  const std::string csv = gvi::emit_table({row(true)}, gvi::TableFormat::Csv, false);
  EXPECT_EQ(count_lines(csv), 2);
  EXPECT_EQ(csv, "problem,n,algorithm,iterations,converged,residual\nexample3,10,dp-basic,42,true,5.000e-08\n");
}

TEST(EmitTable, NonConvergedMarker) {
  const std::string csv = gvi::emit_table({row(false)}, gvi::TableFormat::Csv, false);
  EXPECT_NE(csv.find(",—,false,"), std::string::npos);
}

TEST(EmitTable, MarkdownRowOrder) {
  auto a = row(true), b = row(true);
  b.n = 20;
  const std::string md = gvi::emit_table({a, b}, gvi::TableFormat::Markdown, true);
  EXPECT_EQ(count_lines(md), 4);
  EXPECT_LT(md.find("| example3 | 10 |"), md.find("| example3 | 20 |"));
  EXPECT_NE(md.find("| time |"), std::string::npos);
}

TEST(EmitTable, DeterministicCsv) {
  const auto run = [] {
    return gvi::emit_table(gvi::run_suite({gvi::ProblemSpec::example3(10), gvi::ProblemSpec::example2()},
                                          {"dp-optimal", "projection"}, {}),
                           gvi::TableFormat::Csv, false);
  };
  EXPECT_EQ(run(), run());
}

TEST(EmitErrorTable, Layout) {
  const std::string md = gvi::emit_error_table({{15, 1.0 / 16, 1.2e-3}, {31, 1.0 / 32, 6e-4}}, gvi::TableFormat::Markdown);
  EXPECT_NE(md.find("| 1/16 | 1.200e-03 | - |"), std::string::npos);
  EXPECT_NE(md.find("| 1/32 | 6.000e-04 | 2.00 |"), std::string::npos);
}

TEST(Formats, Parse) {
  EXPECT_EQ(gvi::parse_format("csv"), gvi::TableFormat::Csv);
  EXPECT_EQ(gvi::parse_format("markdown"), gvi::TableFormat::Markdown);
  EXPECT_THROW(gvi::parse_format("xml"), gvi::SpecError);
}
