#include "gvi/convexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace gvi {

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kRelTol = 1e-9;

Vec image(const FunctionUnderTest& fut, const Vec& u) { return fut.g ? fut.g(u) : u; }

Vec gradient(const FunctionUnderTest& fut, const Vec& x) {
  if (fut.grad_F) return fut.grad_F(x);
  Vec grad(x.size());
  Vec probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + kFdStep;
    const double fp = fut.F(probe);
    probe[i] = x[i] - kFdStep;
    const double fm = fut.F(probe);
    probe[i] = x[i];
    grad[i] = (fp - fm) / (2.0 * kFdStep);
  }
  return grad;
}

double strength(double t, double p) {
  return std::pow(t, p) * (1.0 - t) + t * std::pow(1.0 - t, p);
}

void require(const FunctionUnderTest& fut) {
  if (!fut.F) throw InvalidArgument("function under test needs F");
  if (!fut.sampler) throw InvalidArgument("function under test needs a domain sampler");
  if (!(fut.p > 1.0)) throw InvalidArgument("exponent p must exceed 1");
  if (fut.mu < 0.0) throw InvalidArgument("modulus mu must be nonnegative");
}

// Runs violation(u, v, t) over samples × t_grid, scaling the tolerance by scale(u, v).
template <class Violation, class Scale>
CertReport sweep(const FunctionUnderTest& fut, int samples, const std::vector<double>& t_grid,
                 std::uint64_t seed, Violation violation, Scale scale) {
  require(fut);
  if (samples < 1) throw InvalidArgument("at least one sample is required");
  std::mt19937_64 rng(seed);
  CertReport rep;
  rep.worst_violation = -std::numeric_limits<double>::infinity();
  double magnitude = 1.0;
  for (int k = 0; k < samples; ++k) {
    const Vec u = fut.sampler(rng);
    const Vec v = fut.sampler(rng);
    magnitude = std::max(magnitude, scale(u, v));
    for (double t : t_grid) {
      const double viol = violation(u, v, t);
      ++rep.checked_count;
      if (!(viol <= rep.worst_violation)) {
        rep.worst_violation = viol;
        rep.witness = Witness{u, v, t};
      }
    }
  }
  rep.tolerance = kRelTol * magnitude;
  rep.pass = rep.worst_violation <= rep.tolerance;
  return rep;
}

double f_scale(const FunctionUnderTest& fut, const Vec& u, const Vec& v) {
  return std::max(std::abs(fut.F(image(fut, u))), std::abs(fut.F(image(fut, v))));
}

double exp_scale(const FunctionUnderTest& fut, const Vec& u, const Vec& v) {
  return std::max(std::exp(fut.F(image(fut, u))), std::exp(fut.F(image(fut, v))));
}

}  // namespace

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(k / 10.0);
  return grid;
}

double hos_convex_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v, double t) {
  const Vec x = image(fut, u), y = image(fut, v);
  const double lhs = fut.F(x + t * (y - x));
  const double rhs = (1.0 - t) * fut.F(x) + t * fut.F(y) -
                     fut.mu * strength(t, fut.p) * std::pow((y - x).norm(), fut.p);
  return lhs - rhs;
}

double hos_affine_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v, double t) {
  return std::abs(hos_convex_violation(fut, u, v, t));
}

double gradient_char_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v) {
  const Vec x = image(fut, u), y = image(fut, v);
  const double rhs = gradient(fut, x).dot(y - x) + fut.mu * std::pow((y - x).norm(), fut.p);
  return rhs - (fut.F(y) - fut.F(x));
}

double monotonicity_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v) {
  const Vec x = image(fut, u), y = image(fut, v);
  const double lhs = (gradient(fut, x) - gradient(fut, y)).dot(x - y);
  return 2.0 * fut.mu * std::pow((y - x).norm(), fut.p) - lhs;
}

double exp_convex_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v, double t,
                            bool strong, bool concave) {
  const Vec x = image(fut, u), y = image(fut, v);
  const double at_comb = std::exp(fut.F((1.0 - t) * x + t * y));
  const double chord = (1.0 - t) * std::exp(fut.F(x)) + t * std::exp(fut.F(y));
  const double extra = strong ? fut.mu * t * (1.0 - t) * (y - x).squaredNorm() : 0.0;
  return concave ? chord + extra - at_comb : at_comb - (chord - extra);
}

double exp_gradient_violation(const FunctionUnderTest& fut, const Vec& u, const Vec& v,
                              bool strong, bool concave) {
  const Vec x = image(fut, u), y = image(fut, v);
  const double ex = std::exp(fut.F(x));
  const double rise = std::exp(fut.F(y)) - ex;
  const double linear = ex * gradient(fut, x).dot(y - x);
  const double extra = strong ? fut.mu * (y - x).squaredNorm() : 0.0;
  return concave ? rise - (linear - extra) : linear + extra - rise;
}

CertReport check_hos_convex(const FunctionUnderTest& fut, int samples,
                            const std::vector<double>& t_grid, std::uint64_t seed) {
  return sweep(
      fut, samples, t_grid, seed,
      [&](const Vec& u, const Vec& v, double t) { return hos_convex_violation(fut, u, v, t); },
      [&](const Vec& u, const Vec& v) { return f_scale(fut, u, v); });
}

CertReport check_hos_affine(const FunctionUnderTest& fut, int samples,
                            const std::vector<double>& t_grid, std::uint64_t seed) {
  return sweep(
      fut, samples, t_grid, seed,
      [&](const Vec& u, const Vec& v, double t) { return hos_affine_violation(fut, u, v, t); },
      [&](const Vec& u, const Vec& v) { return f_scale(fut, u, v); });
}

CertReport check_gradient_char(const FunctionUnderTest& fut, int samples, std::uint64_t seed) {
  return sweep(
      fut, samples, {0.0}, seed,
      [&](const Vec& u, const Vec& v, double) {
        return std::max(gradient_char_violation(fut, u, v), monotonicity_violation(fut, u, v));
      },
      [&](const Vec& u, const Vec& v) { return f_scale(fut, u, v); });
}

ExpConvexReport check_exp_convex(const FunctionUnderTest& fut, int samples,
                                 const std::vector<double>& t_grid, bool strong, bool concave,
                                 std::uint64_t seed) {
  ExpConvexReport rep;
  const auto scale = [&](const Vec& u, const Vec& v) { return exp_scale(fut, u, v); };
  rep.definition = sweep(
      fut, samples, t_grid, seed,
      [&](const Vec& u, const Vec& v, double t) {
        return exp_convex_violation(fut, u, v, t, strong, concave);
      },
      scale);
  if (fut.grad_F)
    rep.gradient_form = sweep(
        fut, samples, {0.0}, seed,
        [&](const Vec& u, const Vec& v, double) {
          return exp_gradient_violation(fut, u, v, strong, concave);
        },
        scale);
  return rep;
}

HierarchyReport check_hierarchy(const FunctionUnderTest& fut, int samples,
                                const std::vector<double>& t_grid, std::uint64_t seed) {
  HierarchyReport rep;
  const auto legs = [&](const Vec& u, const Vec& v, double t) {
    const Vec x = image(fut, u), y = image(fut, v);
    const double fx = fut.F(x), fy = fut.F(y);
    const double at_comb = std::exp(fut.F((1.0 - t) * x + t * y));
    return std::array<double, 3>{at_comb - std::exp((1.0 - t) * fx + t * fy),
                                 at_comb - ((1.0 - t) * std::exp(fx) + t * std::exp(fy)),
                                 at_comb - std::max(std::exp(fx), std::exp(fy))};
  };
  const auto scale = [&](const Vec& u, const Vec& v) { return exp_scale(fut, u, v); };
  rep.log_convex = sweep(
      fut, samples, t_grid, seed, [&](const Vec& u, const Vec& v, double t) { return legs(u, v, t)[0]; },
      scale);
  rep.convex = sweep(
      fut, samples, t_grid, seed, [&](const Vec& u, const Vec& v, double t) { return legs(u, v, t)[1]; },
      scale);
  rep.quasi_convex = sweep(
      fut, samples, t_grid, seed, [&](const Vec& u, const Vec& v, double t) { return legs(u, v, t)[2]; },
      scale);

  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    const Vec u = fut.sampler(rng);
    const Vec v = fut.sampler(rng);
    const double tol = kRelTol * std::max(1.0, scale(u, v));
    for (double t : t_grid) {
      const auto l = legs(u, v, t);
      if ((l[0] <= tol && l[1] > tol) || (l[1] <= tol && l[2] > tol)) {
        if (rep.implication_failures == 0) rep.counterexample = Witness{u, v, t};
        ++rep.implication_failures;
      }
    }
  }
  return rep;
}

ParallelogramReport check_parallelogram(double p, double mu, int samples, int dim,
                                        std::uint64_t seed) {
  if (!(p > 1.0)) throw InvalidArgument("exponent p must exceed 1");
  if (samples < 1 || dim < 1) throw InvalidArgument("need samples >= 1 and dim >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ParallelogramReport rep;
  rep.mu_lower = std::numeric_limits<double>::infinity();
  rep.mu_upper = -std::numeric_limits<double>::infinity();
  for (CertReport* r : {&rep.lower, &rep.upper, &rep.equality})
    r->worst_violation = -std::numeric_limits<double>::infinity();
  double magnitude = 1.0;
  const auto track = [](CertReport& r, double viol, const Vec& x, const Vec& y) {
    ++r.checked_count;
    if (viol > r.worst_violation) {
      r.worst_violation = viol;
      r.witness = Witness{x, y, 0.5};
    }
  };
  for (int k = 0; k < samples; ++k) {
    Vec x(dim), y(dim);
    for (int i = 0; i < dim; ++i) x[i] = normal(rng);
    for (int i = 0; i < dim; ++i) y[i] = normal(rng);
    const double sum = std::pow((x + y).norm(), p);
    const double diff = std::pow((y - x).norm(), p);
    const double rhs = std::pow(2.0, p - 1.0) * (std::pow(x.norm(), p) + std::pow(y.norm(), p));
    magnitude = std::max(magnitude, rhs);
    if (diff > 0.0) {
      const double ratio = (rhs - sum) / diff;
      rep.mu_lower = std::min(rep.mu_lower, ratio);
      rep.mu_upper = std::max(rep.mu_upper, ratio);
    }
    track(rep.lower, sum + mu * diff - rhs, x, y);
    track(rep.upper, rhs - (sum + mu * diff), x, y);
    const double classical = (x + y).squaredNorm() + (y - x).squaredNorm() -
                             2.0 * (x.squaredNorm() + y.squaredNorm());
    track(rep.equality, std::abs(classical), x, y);
  }
  rep.lower.tolerance = rep.upper.tolerance = kRelTol * magnitude;
  rep.equality.tolerance = 1e-12 * magnitude;
  for (CertReport* r : {&rep.lower, &rep.upper, &rep.equality})
    r->pass = r->worst_violation <= r->tolerance;
  return rep;
}

namespace {

std::function<Vec(std::mt19937_64&)> interval_sampler(double lo, double hi, bool open_left = false) {
  return [lo, hi, open_left](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double s = unit(rng);
    return Vec::Constant(1, open_left ? hi - (hi - lo) * s : lo + (hi - lo) * s);
  };
}

}  // namespace

std::vector<std::string> builtin_function_ids() {
  return {"square", "linear", "exp-square", "quartic", "sin", "log1p-square",
          "erf-sqrt", "square-plus-one", "sqrt-abs", "constant"};
}

FunctionUnderTest builtin_function(const std::string& id, double p, double mu) {
  FunctionUnderTest fut;
  fut.p = p;
  fut.mu = mu;
  if (id == "square") {
    fut.F = [](const Vec& x) { return x.squaredNorm(); };
    fut.grad_F = [](const Vec& x) -> Vec { return 2.0 * x; };
    fut.sampler = [](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> unit(-2.0, 2.0);
      Vec x(2);
      x[0] = unit(rng);
      x[1] = unit(rng);
      return x;
    };
  } else if (id == "linear") {
    fut.F = [](const Vec& x) { return x.sum(); };
    fut.grad_F = [](const Vec& x) -> Vec { return Vec::Ones(x.size()); };
    fut.sampler = interval_sampler(-2.0, 2.0);
  } else if (id == "exp-square") {
    fut.F = [](const Vec& x) { return std::exp(x.squaredNorm()); };
    fut.g = [](const Vec& x) -> Vec { return x.array().square().matrix(); };
    fut.sampler = interval_sampler(0.0, 2.0);
  } else if (id == "quartic") {
    fut.F = [](const Vec& x) { return std::pow(x[0], 4); };
    fut.grad_F = [](const Vec& x) -> Vec { return Vec::Constant(1, 4.0 * std::pow(x[0], 3)); };
    fut.sampler = interval_sampler(-1.0, 1.0);
  } else if (id == "sin") {
    fut.F = [](const Vec& x) { return std::sin(x[0]); };
    fut.grad_F = [](const Vec& x) -> Vec { return Vec::Constant(1, std::cos(x[0])); };
    fut.sampler = interval_sampler(0.0, M_PI);
  } else if (id == "log1p-square") {
    fut.F = [](const Vec& x) { return std::log1p(x[0] * x[0]); };
    fut.grad_F = [](const Vec& x) -> Vec { return Vec::Constant(1, 2.0 * x[0] / (1.0 + x[0] * x[0])); };
    fut.sampler = interval_sampler(-1.0, 1.0);
  } else if (id == "erf-sqrt") {
    fut.F = [](const Vec& x) { return std::erf(std::sqrt(x[0])); };
    fut.grad_F = [](const Vec& x) -> Vec {
      return Vec::Constant(1, std::exp(-x[0]) / std::sqrt(M_PI * x[0]));
    };
    fut.sampler = interval_sampler(0.0, 4.0, true);
  } else if (id == "square-plus-one") {
    fut.F = [](const Vec& x) { return x[0] * x[0] + 1.0; };
    fut.grad_F = [](const Vec& x) -> Vec { return Vec::Constant(1, 2.0 * x[0]); };
    fut.sampler = interval_sampler(-2.0, 2.0);
  } else if (id == "sqrt-abs") {
    fut.F = [](const Vec& x) { return std::sqrt(std::abs(x[0])); };
    fut.sampler = interval_sampler(-2.0, 2.0);
  } else if (id == "constant") {
    fut.F = [](const Vec&) { return 3.0; };
    fut.grad_F = [](const Vec& x) -> Vec { return Vec::Zero(x.size()); };
    fut.sampler = interval_sampler(-2.0, 2.0);
  } else {
    throw SpecError("unknown builtin function '" + id + "'");
  }
  return fut;
}

}  // namespace gvi
