#include "gvi/obstacle.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <string>

namespace gvi {

namespace {

double eval_or_zero(const ScalarFn& fn, double x) { return fn ? fn(x) : 0.0; }

void check_grid(int n) {
  if (n < 3) throw GridError("obstacle grid needs n >= 3, got " + std::to_string(n));
  if ((n + 1) % 4 != 0)
    throw GridError("obstacle grid needs (n + 1) divisible by 4, got n = " + std::to_string(n));
}

}  // namespace

void validate(const ObstacleProblem& problem) {
  const double c = problem.c_value();
  const double d = problem.d_value();
  if (!(problem.a < c && c < d && d < problem.b))
    throw InvalidArgument("obstacle problem needs a < c < d < b");
}

double last_row_weight(BoundaryVariant variant) {
  return variant == BoundaryVariant::Verbatim ? 31.0 : 3.0;
}

const char* to_string(BoundaryVariant variant) {
  return variant == BoundaryVariant::Verbatim ? "verbatim" : "corrected";
}

BandMatrix::BandMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1),
      data_(static_cast<size_t>(n) * (2 * kl + ku + 1), 0.0) {
  if (n < 1 || kl < 0 || ku < 0) throw InvalidArgument("band matrix needs n >= 1, kl, ku >= 0");
}

double BandMatrix::get(int i, int j) const { return in_band(i, j) ? slot(i, j) : 0.0; }

void BandMatrix::add(int i, int j, double value) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || !in_band(i, j))
    throw InvalidArgument("band matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") is outside the band");
  slot(i, j) += value;
}

Mat BandMatrix::dense() const {
  Mat m = Mat::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) m(i, j) = slot(i, j);
  return m;
}

Vec BandMatrix::solve(const Vec& rhs) const {
  if (rhs.size() != n_) throw InvalidArgument("band solve: rhs size mismatch");
  BandMatrix lu = *this;
  Vec x = rhs;
  const int reach = kl_ + ku_;
  double scale = 0.0;
  for (double v : data_) scale = std::max(scale, std::abs(v));
  for (int k = 0; k < n_; ++k) {
    const int last = std::min(n_ - 1, k + kl_);
    int piv = k;
    for (int i = k + 1; i <= last; ++i)
      if (std::abs(lu.slot(i, k)) > std::abs(lu.slot(piv, k))) piv = i;
    if (!(std::abs(lu.slot(piv, k)) > 1e-14 * scale))
      throw AssemblyError("spline system is singular at row " + std::to_string(k + 1), k + 1);
    const int right = std::min(n_ - 1, k + reach);
    if (piv != k) {
      for (int j = k; j <= right; ++j) std::swap(lu.slot(k, j), lu.slot(piv, j));
      std::swap(x[k], x[piv]);
    }
    for (int i = k + 1; i <= last; ++i) {
      const double m = lu.slot(i, k) / lu.slot(k, k);
      if (m == 0.0) continue;
      lu.slot(i, k) = 0.0;
      for (int j = k + 1; j <= right; ++j) lu.slot(i, j) -= m * lu.slot(k, j);
      x[i] -= m * x[k];
    }
  }
  for (int k = n_ - 1; k >= 0; --k) {
    double acc = x[k];
    for (int j = k + 1; j <= std::min(n_ - 1, k + reach); ++j) acc -= lu.slot(k, j) * x[j];
    x[k] = acc / lu.slot(k, k);
  }
  return x;
}

bool in_contact_region(const ObstacleProblem& problem, double x, double h) {
  const double eps = 1e-9 * h;
  return x > problem.c_value() + eps && x <= problem.d_value() + eps;
}

SplineSystem assemble(const ObstacleProblem& problem, int n, BoundaryVariant variant) {
  validate(problem);
  check_grid(n);
  SplineSystem sys;
  sys.n = n;
  sys.h = (problem.b - problem.a) / (n + 1);
  const double h = sys.h;
  const double h3 = h * h * h / 12.0;
  sys.grid.resize(n + 2);
  for (int i = 0; i <= n + 1; ++i) sys.grid[i] = problem.a + i * h;
  sys.band = BandMatrix(n, 2, 1);
  sys.rhs = Vec::Zero(n);

  // Unknown s_j (1 <= j <= n) sits in column j - 1; s_0 = alpha is known.
  const auto add_s = [&](int row, int j, double coef) {
    if (j == 0)
      sys.rhs[row] -= coef * problem.alpha;
    else
      sys.band.add(row, j - 1, coef);
  };
  const auto add_T = [&](int row, int j, double weight) {
    const double x = sys.grid[j];
    const double c = h3 * weight;
    double known = eval_or_zero(problem.f, x);
    if (in_contact_region(problem, x, h)) {
      known += problem.r;
      add_s(row, j, -c * eval_or_zero(problem.p, x));
    }
    sys.rhs[row] += c * known;
  };

  for (int i = 1; i <= n; ++i) {
    const int row = i - 1;
    if (i == 1) {
      add_s(row, 0, 3.0);
      add_s(row, 1, -4.0);
      add_s(row, 2, 1.0);
      sys.rhs[row] += -2.0 * h * problem.beta1;
      add_T(row, 0, 3.0);
      add_T(row, 1, 4.0);
      add_T(row, 2, 1.0);
    } else if (i == n) {
      add_s(row, n - 2, -3.0);
      add_s(row, n - 1, 8.0);
      add_s(row, n, -5.0);
      sys.rhs[row] += -2.0 * h * problem.beta2;
      add_T(row, n - 2, 3.0);
      add_T(row, n - 1, 10.0);
      add_T(row, n, last_row_weight(variant));
    } else {
      add_s(row, i - 2, -1.0);
      add_s(row, i - 1, 3.0);
      add_s(row, i, -3.0);
      add_s(row, i + 1, 1.0);
      add_T(row, i - 2, 1.0);
      add_T(row, i - 1, 5.0);
      add_T(row, i, 5.0);
      add_T(row, i + 1, 1.0);
    }
  }
  return sys;
}

Vec node_T(const ObstacleProblem& problem, int n, const Vec& s) {
  if (s.size() != n + 2) throw InvalidArgument("node_T expects s_0..s_{n+1}");
  const double h = (problem.b - problem.a) / (n + 1);
  Vec T(n + 2);
  for (int i = 0; i <= n + 1; ++i) {
    const double x = problem.a + i * h;
    T[i] = eval_or_zero(problem.f, x);
    if (in_contact_region(problem, x, h)) T[i] += eval_or_zero(problem.p, x) * s[i] + problem.r;
  }
  return T;
}

Vec solve_grid(const ObstacleProblem& problem, int n, BoundaryVariant variant) {
  const SplineSystem sys = assemble(problem, n, variant);
  const Vec inner = sys.band.solve(sys.rhs);
  Vec s(n + 2);
  s[0] = problem.alpha;
  s.segment(1, n) = inner;
  s[n + 1] = 0.0;
  // The end node lies outside [c, d], so T_{n+1} = f(b) does not involve s_{n+1}.
  const Vec T = node_T(problem, n, s);
  const double h = sys.h;
  const double h3 = h * h * h;
  const double S = T[n + 1] + 2.0 * T[n] + T[n - 1];
  s[n + 1] = (s[n] - 0.25 * s[n - 1] + 0.5 * h * problem.beta2 - h3 / 48.0 * S -
              h3 / 24.0 * (T[n + 1] + T[n])) /
             0.75;
  return s;
}

double SplinePiece::eval(double x, int m) const {
  const double t = x - x0;
  switch (m) {
    case 0: return ((a * t + b) * t + c) * t + d;
    case 1: return (3.0 * a * t + 2.0 * b) * t + c;
    case 2: return 6.0 * a * t + 2.0 * b;
    case 3: return 6.0 * a;
    default: throw InvalidArgument("spline derivative order must be 0..3");
  }
}

std::vector<SplinePiece> reconstruct_spline(const ObstacleProblem& problem, int n, const Vec& s) {
  const Vec T = node_T(problem, n, s);
  const double h = (problem.b - problem.a) / (n + 1);
  const double h3 = h * h * h;
  Vec D(n + 1);
  D[0] = problem.beta1;
  for (int i = 1; i <= n; ++i)
    D[i] = (s[i + 1] - s[i - 1] - h3 / 12.0 * (T[i + 1] + 2.0 * T[i] + T[i - 1])) / (2.0 * h);
  std::vector<SplinePiece> pieces(n + 1);
  for (int i = 0; i <= n; ++i) {
    SplinePiece& P = pieces[i];
    P.x0 = problem.a + i * h;
    P.a = (T[i + 1] + T[i]) / 12.0;
    P.c = D[i];
    P.d = s[i];
    P.b = (s[i + 1] - s[i] - D[i] * h - P.a * h3) / (h * h);
  }
  return pieces;
}

double smoothness_residual(const std::vector<SplinePiece>& pieces, double h) {
  double worst = 0.0;
  for (size_t i = 1; i < pieces.size(); ++i) {
    const double knot = pieces[i].x0;
    for (int m = 0; m <= 2; ++m) {
      const double left = pieces[i - 1].eval(pieces[i - 1].x0 + h, m);
      worst = std::max(worst, std::abs(left - pieces[i].eval(knot, m)));
    }
  }
  return worst;
}

const std::array<double, 6>& analytic_constants() {
  static const std::array<double, 6> constants = [] {
    const double S1 = std::exp(0.25), S2 = std::exp(-0.125);
    const double S3 = std::exp(0.75), S4 = std::exp(-0.375);
    const double r3 = std::sqrt(3.0);
    const double C1 = std::cos(r3 / 8.0), Z1 = std::sin(r3 / 8.0);
    const double C2 = std::cos(3.0 * r3 / 8.0), Z2 = std::sin(3.0 * r3 / 8.0);
    Eigen::Matrix<double, 6, 6> M;
    M << 1.0 / 32.0, -S1, -S2 * C1, -S2 * Z1, 0.0, 0.0,
        0.25, -S1, 0.5 * S2 * (r3 * Z1 + C1), -0.5 * S2 * (r3 * C1 - Z1), 0.0, 0.0,
        1.0, -S1, -0.5 * S2 * (r3 * Z1 - C1), 0.5 * S2 * (r3 * C1 + Z1), 0.0, 0.0,
        0.0, S3, S4 * C2, S4 * Z2, 15.0 / 32.0, -1.0,
        0.0, S3, -0.5 * S4 * (r3 * Z2 + C2), 0.5 * S4 * (r3 * C2 - Z2), 0.25, 0.0,
        0.0, S3, 0.5 * S4 * (r3 * Z2 - C2), 0.5 * S4 * (-r3 * C2 - Z2), -1.0, 0.0;
    Eigen::Matrix<double, 6, 1> rhs;
    rhs << 1.0, 0.0, 0.0, -1.0, 0.0, 0.0;
    const Eigen::Matrix<double, 6, 1> sol = M.partialPivLu().solve(rhs);
    std::array<double, 6> out{};
    for (int k = 0; k < 6; ++k) out[k] = sol[k];
    return out;
  }();
  return constants;
}

double analytic_solution(double x) {
  const auto& a = analytic_constants();
  if (x <= 0.25) return 0.5 * a[0] * x * x;
  if (x <= 0.75) {
    const double w = std::sqrt(3.0) / 2.0 * x;
    return 1.0 + a[1] * std::exp(x) + std::exp(-x / 2.0) * (a[2] * std::cos(w) + a[3] * std::sin(w));
  }
  return 0.5 * a[4] * x * (x - 2.0) + a[5];
}

ObstacleProblem test_instance() {
  ObstacleProblem pb;
  pb.p = [](double) { return 1.0; };
  pb.r = -1.0;
  pb.psi = [](double x) { return (x >= 0.25 && x <= 0.75) ? 1.0 : -1.0; };
  pb.exact = analytic_solution;
  return pb;
}

ObstacleProblem homogeneous_instance() {
  ObstacleProblem pb;
  pb.psi = [](double) { return -1.0; };
  pb.exact = [](double) { return 0.0; };
  return pb;
}

double max_error(const ObstacleProblem& problem, int n, BoundaryVariant variant) {
  if (!problem.exact) throw InvalidArgument("max_error needs a closed-form solution");
  const Vec s = solve_grid(problem, n, variant);
  const double h = (problem.b - problem.a) / (n + 1);
  double worst = 0.0;
  for (int i = 1; i <= n; ++i)
    worst = std::max(worst, std::abs(s[i] - problem.exact(problem.a + i * h)));
  return worst;
}

std::vector<ErrorRow> error_table(const ObstacleProblem& problem, const std::vector<int>& ns,
                                  BoundaryVariant variant) {
  std::vector<ErrorRow> rows;
  for (int n : ns)
    rows.push_back(ErrorRow{n, (problem.b - problem.a) / (n + 1), max_error(problem, n, variant)});
  return rows;
}

double discrete_energy(const Vec& v, double h, const Vec& f_nodes) {
  const int N = static_cast<int>(v.size());
  if (N < 3) throw InvalidArgument("discrete energy needs at least 3 nodes");
  if (!(h > 0.0)) throw InvalidArgument("grid spacing must be positive");
  if (f_nodes.size() != 0 && f_nodes.size() != N)
    throw InvalidArgument("source values must match the grid");
  const auto trapezoid = [&](const Vec& y) {
    return h * (y.sum() - 0.5 * (y[0] + y[N - 1]));
  };
  Vec d2(N);
  for (int i = 1; i < N - 1; ++i) d2[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
  d2[0] = d2[1];
  d2[N - 1] = d2[N - 2];
  double energy = trapezoid(d2.array().square().matrix());
  if (f_nodes.size() != 0) {
    Vec d1(N);
    d1[0] = (v[1] - v[0]) / h;
    d1[N - 1] = (v[N - 1] - v[N - 2]) / h;
    for (int i = 1; i < N - 1; ++i) d1[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    energy -= 2.0 * trapezoid(f_nodes.cwiseProduct(d1));
  }
  return energy;
}

double complementarity_check(const Vec& s, const ObstacleProblem& problem) {
  const int N = static_cast<int>(s.size());
  if (N < 5) throw InvalidArgument("complementarity check needs at least 5 nodes");
  const double h = (problem.b - problem.a) / (N - 1);
  const double h3 = h * h * h;
  double worst = 0.0;
  for (int i = 2; i < N - 2; ++i) {
    const double x = problem.a + i * h;
    const double d3 = (s[i + 2] - 2.0 * s[i + 1] + 2.0 * s[i - 1] - s[i - 2]) / (2.0 * h3);
    const double gap = s[i] - eval_or_zero(problem.psi, x);
    worst = std::max(worst, std::abs((-d3 - eval_or_zero(problem.f, x)) * gap));
  }
  return worst;
}

}  // namespace gvi
