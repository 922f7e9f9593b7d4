#pragma once

#include "gvi/types.hpp"

#include <string>
#include <variant>

namespace gvi {

struct WholeSpace {};

struct NonnegOrthant {};

struct Box {
  Vec lo;
  Vec hi;
};

// {x >= 0, sum(x) = total}
struct Simplex {
  double total = 1.0;
};

// {x : a'x <= b}
struct Halfspace {
  Vec a;
  double b = 0.0;
};

// {x : a'x = b}
struct Hyperplane {
  Vec a;
  double b = 0.0;
};

using BaseSet = std::variant<Box, NonnegOrthant, Simplex>;

// base ∩ {x : a'x = b}
struct HyperplaneSlice {
  BaseSet base;
  Vec a;
  double b = 0.0;
};

using ConvexSet =
    std::variant<WholeSpace, NonnegOrthant, Box, Simplex, Halfspace, Hyperplane, HyperplaneSlice>;

ConvexSet make_box(Vec lo, Vec hi);
ConvexSet make_unit_box(int n);
ConvexSet make_simplex(double total = 1.0);
ConvexSet make_halfspace(Vec a, double b);
ConvexSet make_hyperplane(Vec a, double b);
ConvexSet make_slice(BaseSet base, Vec a, double b);

// Throws InvalidArgument when the set's own invariants are broken.
void validate(const ConvexSet& set);
void validate(const BaseSet& set);

Vec project(const ConvexSet& set, const Vec& z);
Vec project(const BaseSet& set, const Vec& z);
double distance(const ConvexSet& set, const Vec& z);
bool contains(const ConvexSet& set, const Vec& x, double tol = 1e-10);

// Projection onto base ∩ {a'x = b} through the scalar dual multiplier.
Vec project_intersection(const BaseSet& base, const Vec& a, double b, const Vec& z);

std::string describe(const ConvexSet& set);

}  // namespace gvi
