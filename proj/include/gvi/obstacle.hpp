#pragma once

#include "gvi/types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace gvi {

using ScalarFn = std::function<double(double)>;

// -u''' = f outside [c, d] and u''' = p u + f + r inside, u(a) = alpha, u'(a) = beta1,
// u'(b) = beta2, obstacle psi. Empty f / p / psi mean zero.
struct ObstacleProblem {
  double a = 0.0;
  double b = 1.0;
  ScalarFn f;
  ScalarFn p;
  double r = 0.0;
  double alpha = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  ScalarFn psi;
  std::optional<double> c;
  std::optional<double> d;
  // Closed-form solution when known; used by max_error.
  ScalarFn exact;

  double c_value() const { return c.value_or((3.0 * a + b) / 4.0); }
  double d_value() const { return d.value_or((a + 3.0 * b) / 4.0); }
};

void validate(const ObstacleProblem& problem);

// Weight on T_n in the right boundary row: 31 as printed, 3 in the corrected form.
enum class BoundaryVariant { Verbatim, Corrected };
double last_row_weight(BoundaryVariant variant);
const char* to_string(BoundaryVariant variant);

// Square band matrix with kl sub- and ku super-diagonals, plus kl extra super-diagonals of
// room for the fill produced by row pivoting.
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }
  bool in_band(int i, int j) const { return j - i >= -kl_ && j - i <= ku_; }
  double get(int i, int j) const;
  void add(int i, int j, double value);
  Mat dense() const;

  // Gaussian elimination with partial pivoting; throws AssemblyError at a zero pivot.
  Vec solve(const Vec& rhs) const;

 private:
  int n_ = 0, kl_ = 0, ku_ = 0, width_ = 0;
  std::vector<double> data_;
  double& slot(int i, int j) { return data_[static_cast<size_t>(i) * width_ + (j - i + kl_)]; }
  double slot(int i, int j) const { return data_[static_cast<size_t>(i) * width_ + (j - i + kl_)]; }
};

struct SplineSystem {
  int n = 0;
  double h = 0.0;
  BandMatrix band;  // rows/columns for s_1..s_n
  Vec rhs;
  Vec grid;  // x_0..x_{n+1}
  Mat dense() const { return band.dense(); }
};

// True when node x carries the p s + f + r branch, i.e. c < x <= d.
bool in_contact_region(const ObstacleProblem& problem, double x, double h);

SplineSystem assemble(const ObstacleProblem& problem, int n,
                      BoundaryVariant variant = BoundaryVariant::Verbatim);

// s_0..s_{n+1}: s_0 = alpha, s_1..s_n from the band solve, s_{n+1} from u'(b) = beta2 on the
// last cubic piece.
Vec solve_grid(const ObstacleProblem& problem, int n,
               BoundaryVariant variant = BoundaryVariant::Verbatim);

// T_0..T_{n+1} for a grid solution s_0..s_{n+1}.
Vec node_T(const ObstacleProblem& problem, int n, const Vec& s);

struct SplinePiece {
  double x0 = 0.0;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  // m-th derivative at x, m in 0..3.
  double eval(double x, int m = 0) const;
};

// Pieces P_0..P_n covering [a, b]; slopes from the central consistency relation, D_0 = beta1.
std::vector<SplinePiece> reconstruct_spline(const ObstacleProblem& problem, int n, const Vec& s);

// Largest jump in value, first or second derivative across interior knots.
double smoothness_residual(const std::vector<SplinePiece>& pieces, double h);

// Constants a_1..a_6 of the closed-form solution of the test instance.
const std::array<double, 6>& analytic_constants();
double analytic_solution(double x);

// f = 0, p = 1, r = -1 on [0, 1] with zero boundary data and psi = -1 / +1 / -1.
ObstacleProblem test_instance();

// f = p = r = 0, zero data, psi = -1, exact = 0.
ObstacleProblem homogeneous_instance();

double max_error(const ObstacleProblem& problem, int n,
                 BoundaryVariant variant = BoundaryVariant::Verbatim);

struct ErrorRow {
  int n = 0;
  double h = 0.0;
  double error = 0.0;
};
std::vector<ErrorRow> error_table(const ObstacleProblem& problem, const std::vector<int>& ns,
                                  BoundaryVariant variant = BoundaryVariant::Verbatim);

// I[v] = ∫(v'')² − 2∫f v' by the trapezoid rule on nodal second/first differences; v holds
// node values on a uniform grid of spacing h, f_nodes the source at the same nodes (empty = 0).
double discrete_energy(const Vec& v, double h, const Vec& f_nodes = Vec());

// max_i |(−D³s_i − f_i)(s_i − psi_i)| with D³ the five-point third difference.
double complementarity_check(const Vec& s, const ObstacleProblem& problem);

}  // namespace gvi
