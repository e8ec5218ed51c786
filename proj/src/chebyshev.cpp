#include "greedylab/chebyshev.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "greedylab/simplex.hpp"
#include "greedylab/subsets.hpp"

namespace greedylab {

namespace {

constexpr int kSubgradientCap = 10000;
constexpr int kCertificateEvery = 250;

struct Workspace {
  Eigen::MatrixXd b;       // ambient_dim x k columns of the support
  Eigen::VectorXd target;  // synthesized x
};

Workspace make_workspace(const MinimalSystem& sys, const CoeffVec& x,
                         const std::vector<int>& support) {
  Workspace w;
  const int n = sys.ambient_dim;
  const int k = static_cast<int>(support.size());
  w.b.resize(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) w.b(i, j) = sys.basis[support[j]][i];
  AmbientVec amb = synthesize(sys, x);
  w.target = Eigen::Map<Eigen::VectorXd>(amb.data(), n);
  return w;
}

double eval_residual(const MinimalSystem& sys, const Workspace& w, const Eigen::VectorXd& z) {
  Eigen::VectorXd r = w.target - w.b * z;
  AmbientVec rv(r.data(), r.data() + r.size());
  return sys.vec_norm(rv);
}

// Dual lower bound on the optimum: any g with B^T g = 0 and dual norm 1
// satisfies <g, x> <= ||x - Bz|| for all z. Candidates come from norming
// functionals projected (Euclidean) onto the null space of B^T.
double dual_lower_bound(const MinimalSystem& sys, const Workspace& w, const Eigen::VectorXd& z) {
  Eigen::VectorXd r = w.target - w.b * z;
  if (r.norm() == 0.0) return 0.0;
  AmbientVec rv(r.data(), r.data() + r.size());
  AmbientVec lam = norming_functional(sys.norm_spec, rv);
  Eigen::Map<Eigen::VectorXd> lam_v(lam.data(), static_cast<Eigen::Index>(lam.size()));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w.b, Eigen::ComputeThinU);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  Eigen::VectorXd perp = lam_v;
  for (Eigen::Index j = 0; j < svd.singularValues().size(); ++j) {
    if (svd.singularValues()(j) <= 1e-12 * std::max(1.0, smax)) continue;
    Eigen::VectorXd u = svd.matrixU().col(j);
    perp -= u.dot(perp) * u;
  }
  AmbientVec pv(perp.data(), perp.data() + perp.size());
  double dn = dual_norm(sys.norm_spec, pv);
  if (dn <= 1e-14) return 0.0;
  double lb = 0.0;
  for (Eigen::Index i = 0; i < w.target.size(); ++i) lb += pv[i] / dn * w.target(i);
  return std::max(lb, 0.0);
}

ChebSolution solve_least_squares(const MinimalSystem& sys, const CoeffVec& x,
                                 const std::vector<int>& support, const Workspace& w) {
  Eigen::MatrixXd bs = w.b;
  Eigen::VectorXd ts = w.target;
  if (sys.norm_spec.is_weighted()) {
    for (int i = 0; i < sys.ambient_dim; ++i) {
      double sw = std::sqrt(sys.norm_spec.weights[i]);
      bs.row(i) *= sw;
      ts(i) *= sw;
    }
  }
  Eigen::VectorXd z =
      bs.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(ts);
  ChebSolution sol;
  sol.support = support;
  sol.coeffs.assign(z.data(), z.data() + z.size());
  sol.error = eval_residual(sys, w, z);
  sol.backend = "least-squares";
  sol.certificate_gap = 0.0;
  (void)x;
  return sol;
}

ChebSolution solve_lp_norm(const MinimalSystem& sys, const std::vector<int>& support,
                           const Workspace& w) {
  const int n = sys.ambient_dim;
  const int k = static_cast<int>(support.size());
  const bool sup_norm = sys.norm_spec.kind == NormKind::Linf;
  const int nt = sup_norm ? 1 : n;  // one bound variable per row for l1, a single one for linf
  const int nv = 2 * k + nt;

  LpProblem lp;
  lp.a = Eigen::MatrixXd::Zero(2 * n, nv);
  lp.b = Eigen::VectorXd::Zero(2 * n);
  lp.c = Eigen::VectorXd::Zero(nv);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      lp.a(i, j) = -w.b(i, j);
      lp.a(i, k + j) = w.b(i, j);
      lp.a(n + i, j) = w.b(i, j);
      lp.a(n + i, k + j) = -w.b(i, j);
    }
    int tcol = 2 * k + (sup_norm ? 0 : i);
    lp.a(i, tcol) = -1.0;
    lp.a(n + i, tcol) = -1.0;
    lp.b(i) = -w.target(i);
    lp.b(n + i) = w.target(i);
  }
  if (sup_norm) {
    lp.c(2 * k) = 1.0;
  } else {
    for (int i = 0; i < n; ++i)
      lp.c(2 * k + i) = sys.norm_spec.is_weighted() ? sys.norm_spec.weights[i] : 1.0;
  }

  LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::Optimal)
    throw std::runtime_error("chebyshev_approximant: LP did not reach an optimum");
  Eigen::VectorXd z(k);
  for (int j = 0; j < k; ++j) z(j) = s.u(j) - s.u(k + j);
  ChebSolution sol;
  sol.support = support;
  sol.coeffs.assign(z.data(), z.data() + z.size());
  sol.error = eval_residual(sys, w, z);
  sol.backend = "simplex-lp";
  sol.certificate_gap = 0.0;
  sol.iterations = s.pivots;
  return sol;
}

ChebSolution solve_subgradient_impl(const MinimalSystem& sys, const CoeffVec& x,
                                    const std::vector<int>& support, const Workspace& w) {
  const int k = static_cast<int>(support.size());
  const double x_norm = coeff_norm(sys, x);
  const double tol = 1e-6 * std::max(1.0, x_norm);

  double min_basis = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sys.size(); ++i)
    min_basis = std::min(min_basis, sys.vec_norm(sys.basis[i]));
  const double diameter = 2.0 * x_norm / min_basis;  // sizes the step schedule
  // every minimizer satisfies |z_j| <= ||x_j'|| * 2||x||, which bounds the
  // projection ball (the ball must contain the optimum, not just the scale)
  double dual_sq = 0.0;
  for (int j : support) {
    double dn = dual_norm(sys.norm_spec, sys.duals[j]);
    dual_sq += dn * dn;
  }
  const double radius = 2.0 * x_norm * std::sqrt(dual_sq);

  Eigen::VectorXd z(k);
  for (int j = 0; j < k; ++j) z(j) = x[support[j]];  // start at the projection
  Eigen::VectorXd best_z = z;
  double best_f = eval_residual(sys, w, z);
  double lb = 0.0;
  int iters = 0;

  for (int it = 1; it <= kSubgradientCap && best_f > 1e-14 * std::max(1.0, x_norm); ++it) {
    iters = it;
    Eigen::VectorXd r = w.target - w.b * z;
    AmbientVec rv(r.data(), r.data() + r.size());
    double f = sys.vec_norm(rv);
    if (f < best_f) {
      best_f = f;
      best_z = z;
    }
    if (f == 0.0) break;
    AmbientVec lam = norming_functional(sys.norm_spec, rv);
    Eigen::Map<Eigen::VectorXd> lam_v(lam.data(), static_cast<Eigen::Index>(lam.size()));
    Eigen::VectorXd g = -w.b.transpose() * lam_v;
    if (g.squaredNorm() <= 1e-30) break;
    z -= (diameter / std::sqrt(static_cast<double>(it))) * g;
    if (z.norm() > radius) z *= radius / z.norm();
    if (it % kCertificateEvery == 0) {
      lb = std::max(lb, dual_lower_bound(sys, w, best_z));
      if (best_f - lb <= tol) break;
    }
  }
  lb = std::max(lb, dual_lower_bound(sys, w, best_z));

  ChebSolution sol;
  sol.support = support;
  sol.coeffs.assign(best_z.data(), best_z.data() + best_z.size());
  sol.error = best_f;
  sol.backend = "subgradient";
  sol.certificate_gap = std::max(best_f - lb, 0.0);
  sol.iterations = iters;
  return sol;
}

}  // namespace

double residual_norm(const MinimalSystem& sys, const CoeffVec& x, const std::vector<int>& support,
                     const std::vector<double>& b) {
  if (support.size() != b.size())
    throw std::invalid_argument("residual_norm: support/coefficient length mismatch");
  CoeffVec r(x);
  for (size_t j = 0; j < support.size(); ++j) {
    int i = support[j];
    if (i < 0 || static_cast<size_t>(i) >= x.size())
      throw std::out_of_range("residual_norm: index out of range");
    r[i] -= b[j];
  }
  return coeff_norm(sys, r);
}

ChebSolution chebyshev_approximant(const MinimalSystem& sys, const CoeffVec& x,
                                   const std::vector<int>& support) {
  if (x.size() != static_cast<size_t>(sys.size()))
    throw std::invalid_argument("chebyshev_approximant: coefficient length mismatch");
  std::vector<int> s(support);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int i : s)
    if (i < 0 || i >= sys.size()) throw std::out_of_range("chebyshev_approximant: support index");

  // exact when the support covers supp(x): the projection reproduces x
  bool covers = true;
  {
    std::vector<char> in(x.size(), 0);
    for (int i : s) in[i] = 1;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0.0 && !in[i]) {
        covers = false;
        break;
      }
  }
  if (covers) {
    ChebSolution sol;
    sol.support = s;
    sol.coeffs.reserve(s.size());
    for (int i : s) sol.coeffs.push_back(x[i]);
    sol.error = 0.0;
    sol.backend = "projection";
    return sol;
  }
  if (s.empty()) {
    ChebSolution sol;
    sol.error = coeff_norm(sys, x);
    sol.backend = "projection";
    return sol;
  }

  Workspace w = make_workspace(sys, x, s);
  switch (sys.norm_spec.kind) {
    case NormKind::Linf:
      return solve_lp_norm(sys, s, w);
    case NormKind::Lp:
    case NormKind::WeightedLp:
      if (sys.norm_spec.p == 2.0) return solve_least_squares(sys, x, s, w);
      if (sys.norm_spec.p == 1.0) return solve_lp_norm(sys, s, w);
      return solve_subgradient_impl(sys, x, s, w);
  }
  throw std::logic_error("chebyshev_approximant: unreachable");
}

ChebSolution chebyshev_subgradient(const MinimalSystem& sys, const CoeffVec& x,
                                   const std::vector<int>& support) {
  if (sys.norm_spec.kind == NormKind::Linf)
    throw std::invalid_argument("chebyshev_subgradient: finite p required");
  std::vector<int> s(support);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) return chebyshev_approximant(sys, x, s);
  for (int i : s)
    if (i < 0 || i >= sys.size()) throw std::out_of_range("chebyshev_subgradient: support index");
  Workspace w = make_workspace(sys, x, s);
  return solve_subgradient_impl(sys, x, s, w);
}

MTermError sigma_m(const MinimalSystem& sys, const CoeffVec& x, int m) {
  const int n = sys.size();
  if (m < 0 || m > n) throw std::invalid_argument("sigma_m: m out of range");
  MTermError out;
  out.m = m;
  if (m == 0) {
    out.value = coeff_norm(sys, x);
    return out;
  }
  require_enumerable(n, m, "sigma_m");
  bool first = true;
  for_each_subset(n, m, [&](const std::vector<int>& s) {
    ChebSolution sol = chebyshev_approximant(sys, x, s);
    if (first || sol.error < out.value) {
      first = false;
      out.value = sol.error;
      out.support = s;
      out.coeffs = sol.coeffs;
    }
  });
  return out;
}

MTermError sigma_tilde_m(const MinimalSystem& sys, const CoeffVec& x, int m) {
  const int n = sys.size();
  if (m < 0 || m > n) throw std::invalid_argument("sigma_tilde_m: m out of range");
  std::uint64_t total = 0;
  for (int k = 0; k <= m; ++k) total += binomial(n, k);
  if (total > kEnumerationCap) throw EnumerationCapError("sigma_tilde_m: subset count exceeds cap");

  MTermError out;
  out.m = m;
  out.value = coeff_norm(sys, x);  // A = empty set
  for (int k = 1; k <= m; ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& a) {
      CoeffVec r(x);
      for (int i : a) r[i] = 0.0;
      double v = coeff_norm(sys, r);
      if (v < out.value) {
        out.value = v;
        out.support = a;
      }
    });
  }
  out.coeffs.reserve(out.support.size());
  for (int i : out.support) out.coeffs.push_back(x[i]);
  return out;
}

}  // namespace greedylab
