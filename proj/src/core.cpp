#include "gvi/core.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace gvi {

namespace {

Vec checked(const Vec& v, int dim, const char* name) {
  if (v.size() != dim) {
    std::ostringstream os;
    os << name << " returned dimension " << v.size() << ", expected " << dim;
    throw NumericDomainError(os.str());
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      std::ostringstream os;
      os << name << " produced a non-finite value in component " << i;
      throw NumericDomainError(os.str());
    }
  }
  return v;
}

std::vector<Vec> probe_points(int dim) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Vec> probes;
  probes.push_back(Vec::Zero(dim));
  for (int k = 0; k < 5; ++k) {
    Vec p(dim);
    for (int i = 0; i < dim; ++i) p[i] = 2.0 * unit(rng);
    probes.push_back(p);
  }
  return probes;
}

}  // namespace

double norm(const Vec& v, NormKind kind) {
  if (v.size() == 0) return 0.0;
  return kind == NormKind::L2 ? v.norm() : v.cwiseAbs().maxCoeff();
}

GviProblem::GviProblem(int dim, Op T, ConvexSet K) : dim_(dim), T_(std::move(T)), K_(std::move(K)) {
  if (dim < 1) throw InvalidArgument("problem dimension must be at least 1");
  if (!T_) throw InvalidArgument("operator T is required");
  validate(K_);
}

GviProblem GviProblem::with_g(Op g, std::optional<Op> g_inverse) const {
  if (!g) throw InvalidArgument("operator g is empty");
  GviProblem copy = *this;
  copy.g_ = std::move(g);
  copy.g_inverse_ = std::move(g_inverse);
  if (copy.g_inverse_) {
    for (const Vec& u : probe_points(dim_)) {
      const Vec back = copy.g_inverse(copy.g(u));
      if ((back - u).norm() > 1e-10 * std::max(1.0, u.norm()))
        throw InvalidArgument("g_inverse(g(u)) does not reproduce u on the probe set");
    }
  }
  return copy;
}

GviProblem GviProblem::with_A(Op A) const {
  GviProblem copy = *this;
  copy.A_ = std::move(A);
  return copy;
}

GviProblem GviProblem::with_solution(Vec u) const {
  if (u.size() != dim_) throw InvalidArgument("known solution has wrong dimension");
  GviProblem copy = *this;
  copy.solution_ = std::move(u);
  return copy;
}

Vec GviProblem::T(const Vec& u) const { return checked(T_(u), dim_, "T"); }

Vec GviProblem::g(const Vec& u) const { return g_ ? checked(g_(u), dim_, "g") : u; }

Vec GviProblem::g_inverse(const Vec& y) const {
  if (!g_) return y;
  if (!g_inverse_) throw CapabilityError("g_inverse is required but was not supplied");
  return checked((*g_inverse_)(y), dim_, "g_inverse");
}

Vec GviProblem::A(const Vec& u) const {
  return A_ ? checked(A_(u), dim_, "A") : Vec::Zero(dim_);
}

Vec GviProblem::T_eff(const Vec& u) const {
  if (!A_) return T(u);
  return T(u) - A(u);
}

Vec GviProblem::recover(const Vec& u, const Vec& gu, const Vec& image) const {
  if (!g_) return image;
  return u - gu + image;
}

Vec GviProblem::preimage(const Vec& u, const Vec& gu, const Vec& image) const {
  if (!g_) return image;
  if (g_inverse_) return g_inverse(image);
  return u - gu + image;
}

void SolveConfig::validate() const {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (max_iters < 1) throw InvalidArgument("max_iters must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in (0, 1)");
  if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidArgument("sigma must lie in (0, 1)");
  if (lambda < 0.0 || lambda > 1.0 || xi < 0.0 || xi > 1.0)
    throw InvalidArgument("lambda and xi must lie in [0, 1]");
  if (!(h > 0.0)) throw InvalidArgument("h must be positive");
  if (mu_step < 0.0 || beta_step < 0.0) throw InvalidArgument("mu_step and beta_step must be >= 0");
  if (!(inner_tol > 0.0) || inner_max_iters < 1) throw InvalidArgument("bad inner-loop controls");
}

double SolveConfig::alpha_at(int n, double fallback) const {
  return alpha_schedule ? alpha_schedule(n) : fallback;
}

Vec SolveConfig::start_point(int dim) const {
  if (!start) return Vec::Zero(dim);
  if (start->size() != dim) throw InvalidArgument("start point has wrong dimension");
  return *start;
}

Vec residual(const GviProblem& problem, const Vec& u, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  const Vec gu = problem.g(u);
  return gu - project(problem.K(), gu - rho * problem.T_eff(u));
}

bool is_solution(const GviProblem& problem, const Vec& u, double rho, double tol, NormKind kind) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  return norm(residual(problem, u, rho), kind) <= tol;
}

ComplementarityGap complementarity_gap(const GviProblem& problem, const Vec& u) {
  if (!std::holds_alternative<NonnegOrthant>(problem.K()))
    throw UnsupportedSetError("complementarity gap needs K = nonnegative orthant, got " +
                              describe(problem.K()));
  const Vec gu = problem.g(u);
  const Vec tu = problem.T_eff(u);
  ComplementarityGap gap;
  gap.primal_violation = norm(gu.cwiseMin(0.0), NormKind::Linf);
  gap.dual_violation = norm(tu.cwiseMin(0.0), NormKind::Linf);
  gap.pairing = tu.dot(gu);
  return gap;
}

GviProblem quasi_to_general(int dim, Op m, ConvexSet K, Op T) {
  if (!m) throw InvalidArgument("m is required");
  Op g = [m = std::move(m)](const Vec& u) -> Vec { return u - m(u); };
  return GviProblem(dim, std::move(T), std::move(K)).with_g(std::move(g));
}

Vec wiener_hopf_residual(const GviProblem& problem, const Vec& z, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (!problem.has_g_inverse())
    throw CapabilityError("Wiener-Hopf residual needs g_inverse for non-identity g");
  const Vec pz = project(problem.K(), z);
  return rho * problem.T_eff(problem.g_inverse(pz)) + z - pz;
}

double lipschitz_estimate(const GviProblem& problem, int samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int n = problem.dim();
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    Vec u(n), d(n);
    for (int i = 0; i < n; ++i) {
      u[i] = unit(rng);
      d[i] = unit(rng);
    }
    d *= 1e-3 / std::max(d.norm(), 1e-300);
    best = std::max(best, (problem.T_eff(u + d) - problem.T_eff(u)).norm() / d.norm());
  }
  return best;
}

double default_rho(const GviProblem& problem) {
  const double L = lipschitz_estimate(problem);
  return L > 0.0 ? 0.5 / L : 1.0;
}

}  // namespace gvi
