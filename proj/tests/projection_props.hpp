#pragma once

#include "gvi/sets.hpp"

#include <random>
#include <string>
#include <vector>

namespace props {

using gvi::Vec;

struct NamedSet {
  std::string name;
  gvi::ConvexSet set;
  int dim;
};

inline std::vector<NamedSet> all_set_variants() {
  Vec lo(3), hi(3), a(3), w(3);
  lo << -1, 0, 0.5;
  hi << 1, 2, 0.5;
  a << 1, -2, 0.5;
  w << 1, 2, 3;
  return {
      {"whole-space", gvi::WholeSpace{}, 3},
      {"orthant", gvi::NonnegOrthant{}, 3},
      {"box", gvi::make_box(lo, hi), 3},
      {"simplex", gvi::make_simplex(2.0), 3},
      {"halfspace", gvi::make_halfspace(a, 0.3), 3},
      {"hyperplane", gvi::make_hyperplane(a, -0.7), 3},
      {"box-slice", gvi::make_slice(gvi::Box{Vec::Zero(3), Vec::Ones(3)}, w, 2.5), 3},
      {"orthant-slice", gvi::make_slice(gvi::NonnegOrthant{}, w, 1.0), 3},
      {"simplex-slice", gvi::make_slice(gvi::Simplex{1.0}, w, 2.0), 3},
  };
}

struct Violations {
  int nonexpansive = 0;
  int firm = 0;
  int idempotent = 0;
  int characterization = 0;
  int infeasible = 0;
  int total() const { return nonexpansive + firm + idempotent + characterization + infeasible; }
};

// `trials` random draws per property. Feasible points are projections of random draws,
// checked with contains().
inline Violations check_projection_properties(const NamedSet& s, int trials, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 3.0);
  const auto draw = [&] {
    Vec z(s.dim);
    for (auto& x : z) x = N(rng);
    return z;
  };
  Violations v;
  for (int t = 0; t < trials; ++t) {
    const Vec z1 = draw(), z2 = draw();
    const Vec p1 = gvi::project(s.set, z1), p2 = gvi::project(s.set, z2);
    const Vec u = gvi::project(s.set, draw());
    if (!gvi::contains(s.set, p1, 1e-9) || !gvi::contains(s.set, u, 1e-9)) ++v.infeasible;

    const double scale = 1.0 + z1.squaredNorm() + z2.squaredNorm() + u.squaredNorm();
    if ((p1 - p2).norm() > (z1 - z2).norm() * (1 + 1e-12) + 1e-12) ++v.nonexpansive;
    if ((p1 - u).squaredNorm() > (z1 - u).squaredNorm() - (z1 - p1).squaredNorm() + 1e-10 * scale)
      ++v.firm;
    if ((gvi::project(s.set, p1) - p1).norm() > 1e-12 * (1 + p1.norm())) ++v.idempotent;
    if ((p1 - z1).dot(u - p1) < -1e-10 * scale) ++v.characterization;
  }
  return v;
}

}  // namespace props
