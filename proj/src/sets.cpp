#include "gvi/sets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace gvi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kMultiplierTol = 1e-15;
constexpr int kBracketDoublings = 110;
constexpr int kBisectionSteps = 300;

void require_size(const Vec& v, Eigen::Index n, const char* what) {
  if (v.size() != n) {
    std::ostringstream os;
    os << what << ": dimension " << v.size() << " does not match " << n;
    throw InvalidArgument(os.str());
  }
}

Vec project_box(const Box& box, const Vec& z) {
  require_size(box.lo, z.size(), "box projection");
  return z.cwiseMax(box.lo).cwiseMin(box.hi);
}

// Sort-based exact projection onto {x >= 0, sum x = total}.
Vec project_simplex(double total, const Vec& z) {
  const Eigen::Index n = z.size();
  if (n == 0) throw InvalidArgument("simplex projection: empty vector");
  std::vector<double> sorted(z.data(), z.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - total) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  return (z.array() - theta).cwiseMax(0.0).matrix();
}

Vec project_affine(const Vec& a, double b, const Vec& z, bool halfspace) {
  require_size(a, z.size(), "affine projection");
  const double excess = a.dot(z) - b;
  if (halfspace && excess <= 0.0) return z;
  const double aa = a.squaredNorm();
  if (aa == 0.0) {
    if (halfspace ? b >= 0.0 : b == 0.0) return z;
    throw InfeasibleSetError("degenerate affine set with a = 0 is empty");
  }
  return z - (excess / aa) * a;
}

}  // namespace

ConvexSet make_box(Vec lo, Vec hi) {
  ConvexSet s = Box{std::move(lo), std::move(hi)};
  validate(s);
  return s;
}

ConvexSet make_unit_box(int n) { return make_box(Vec::Zero(n), Vec::Ones(n)); }

ConvexSet make_simplex(double total) {
  ConvexSet s = Simplex{total};
  validate(s);
  return s;
}

ConvexSet make_halfspace(Vec a, double b) {
  ConvexSet s = Halfspace{std::move(a), b};
  validate(s);
  return s;
}

ConvexSet make_hyperplane(Vec a, double b) {
  ConvexSet s = Hyperplane{std::move(a), b};
  validate(s);
  return s;
}

ConvexSet make_slice(BaseSet base, Vec a, double b) {
  ConvexSet s = HyperplaneSlice{std::move(base), std::move(a), b};
  validate(s);
  return s;
}

void validate(const BaseSet& set) {
  std::visit(overloaded{
                 [](const Box& b) {
                   if (b.lo.size() != b.hi.size())
                     throw InvalidArgument("box bounds differ in dimension");
                   if ((b.lo.array() > b.hi.array()).any())
                     throw InvalidArgument("box requires lo <= hi componentwise");
                 },
                 [](const NonnegOrthant&) {},
                 [](const Simplex& s) {
                   if (!(s.total > 0.0)) throw InvalidArgument("simplex total must be positive");
                 },
             },
             set);
}

void validate(const ConvexSet& set) {
  std::visit(overloaded{
                 [](const WholeSpace&) {},
                 [](const NonnegOrthant&) {},
                 [](const Box& b) { validate(BaseSet{b}); },
                 [](const Simplex& s) { validate(BaseSet{s}); },
                 [](const Halfspace&) {},
                 [](const Hyperplane& h) {
                   if (h.a.size() == 0 || h.a.isZero(0.0))
                     throw InvalidArgument("hyperplane normal must be nonzero");
                 },
                 [](const HyperplaneSlice& s) {
                   validate(s.base);
                   if (s.a.size() == 0 || s.a.isZero(0.0))
                     throw InvalidArgument("slice normal must be nonzero");
                 },
             },
             set);
}

Vec project(const BaseSet& set, const Vec& z) {
  return std::visit(overloaded{
                        [&](const Box& b) { return project_box(b, z); },
                        [&](const NonnegOrthant&) -> Vec { return z.cwiseMax(0.0); },
                        [&](const Simplex& s) { return project_simplex(s.total, z); },
                    },
                    set);
}

Vec project(const ConvexSet& set, const Vec& z) {
  return std::visit(overloaded{
                        [&](const WholeSpace&) -> Vec { return z; },
                        [&](const NonnegOrthant&) -> Vec { return z.cwiseMax(0.0); },
                        [&](const Box& b) { return project_box(b, z); },
                        [&](const Simplex& s) { return project_simplex(s.total, z); },
                        [&](const Halfspace& h) { return project_affine(h.a, h.b, z, true); },
                        [&](const Hyperplane& h) { return project_affine(h.a, h.b, z, false); },
                        [&](const HyperplaneSlice& s) {
                          return project_intersection(s.base, s.a, s.b, z);
                        },
                    },
                    set);
}

double distance(const ConvexSet& set, const Vec& z) { return (z - project(set, z)).norm(); }

bool contains(const ConvexSet& set, const Vec& x, double tol) {
  const auto in_base = [&](const BaseSet& base) {
    return std::visit(
        overloaded{
            [&](const Box& b) {
              return x.size() == b.lo.size() && (x.array() >= b.lo.array() - tol).all() &&
                     (x.array() <= b.hi.array() + tol).all();
            },
            [&](const NonnegOrthant&) { return (x.array() >= -tol).all(); },
            [&](const Simplex& s) {
              return (x.array() >= -tol).all() && std::abs(x.sum() - s.total) <= tol;
            },
        },
        base);
  };
  return std::visit(overloaded{
                        [&](const WholeSpace&) { return true; },
                        [&](const NonnegOrthant& o) { return in_base(o); },
                        [&](const Box& b) { return in_base(b); },
                        [&](const Simplex& s) { return in_base(s); },
                        [&](const Halfspace& h) { return h.a.dot(x) <= h.b + tol; },
                        [&](const Hyperplane& h) { return std::abs(h.a.dot(x) - h.b) <= tol; },
                        [&](const HyperplaneSlice& s) {
                          return in_base(s.base) && std::abs(s.a.dot(x) - s.b) <= tol;
                        },
                    },
                    set);
}

Vec project_intersection(const BaseSet& base, const Vec& a, double b, const Vec& z) {
  validate(base);
  require_size(a, z.size(), "slice projection");
  if (a.isZero(0.0)) throw InvalidArgument("slice normal must be nonzero");

  // x(θ) = P_base(z − θa); φ(θ) = a'x(θ) − b is continuous and nonincreasing.
  const auto x_of = [&](double theta) -> Vec { return project(base, z - theta * a); };
  const auto phi = [&](double theta) { return a.dot(x_of(theta)) - b; };

  // The useful step can sit far below any residual-scaled tolerance on φ, so the multiplier
  // is resolved to machine precision instead.
  const double phi0 = phi(0.0);
  if (phi0 == 0.0) return x_of(0.0);

  double lo = 0.0, hi = 0.0, phi_lo = phi0, phi_hi = phi0;
  double step = 1.0;
  int grown = 0;
  if (phi0 > 0.0) {
    for (;;) {
      hi = step;
      phi_hi = phi(hi);
      if (phi_hi <= 0.0) break;
      lo = hi;
      phi_lo = phi_hi;
      step *= 2.0;
      if (++grown > kBracketDoublings)
        throw InfeasibleSetError("hyperplane does not meet the base set (phi stays positive)");
    }
  } else {
    for (;;) {
      lo = -step;
      phi_lo = phi(lo);
      if (phi_lo >= 0.0) break;
      hi = lo;
      phi_hi = phi_lo;
      step *= 2.0;
      if (++grown > kBracketDoublings)
        throw InfeasibleSetError("hyperplane does not meet the base set (phi stays negative)");
    }
  }

  for (int it = 0; it < kBisectionSteps; ++it) {
    if (phi_lo == 0.0) return x_of(lo);
    if (phi_hi == 0.0) return x_of(hi);
    if (hi - lo <= kMultiplierTol * std::max(std::abs(lo), std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double pm = phi(mid);
    if (pm == 0.0) return x_of(mid);
    if (pm > 0.0) {
      lo = mid;
      phi_lo = pm;
    } else {
      hi = mid;
      phi_hi = pm;
    }
  }

  // φ is piecewise linear; a secant step on the final bracket lands on the root of its piece.
  double best = std::abs(phi_lo) < std::abs(phi_hi) ? lo : hi;
  double best_val = std::min(std::abs(phi_lo), std::abs(phi_hi));
  if (phi_lo != phi_hi) {
    const double theta = lo + phi_lo / (phi_lo - phi_hi) * (hi - lo);
    const double val = std::abs(phi(theta));
    if (val < best_val) best = theta;
  }
  return x_of(best);
}

std::string describe(const ConvexSet& set) {
  return std::visit(overloaded{
                        [](const WholeSpace&) -> std::string { return "whole-space"; },
                        [](const NonnegOrthant&) -> std::string { return "nonneg-orthant"; },
                        [](const Box& b) { return "box(n=" + std::to_string(b.lo.size()) + ")"; },
                        [](const Simplex& s) { return "simplex(total=" + std::to_string(s.total) + ")"; },
                        [](const Halfspace&) -> std::string { return "halfspace"; },
                        [](const Hyperplane&) -> std::string { return "hyperplane"; },
                        [](const HyperplaneSlice&) -> std::string { return "slice"; },
                    },
                    set);
}

}  // namespace gvi
