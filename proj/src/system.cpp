#include "greedylab/system.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace greedylab {

namespace {

constexpr double kBiorthTol = 1e-10;
constexpr double kRankTol = 1e-9;

Eigen::MatrixXd rows_to_matrix(const std::vector<AmbientVec>& rows, int cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), j) = rows[i][j];
  return m;
}

}  // namespace

MinimalSystem make_system(int ambient_dim, NormSpec norm_spec, std::vector<AmbientVec> basis,
                          std::vector<AmbientVec> duals, std::vector<int> labels) {
  if (ambient_dim <= 0) throw std::invalid_argument("make_system: ambient_dim must be positive");
  if (basis.size() != duals.size())
    throw std::invalid_argument("make_system: basis/dual count mismatch");
  if (basis.size() > static_cast<size_t>(ambient_dim))
    throw std::invalid_argument("make_system: more vectors than ambient dimension");
  if (norm_spec.is_weighted() && norm_spec.weights.size() != static_cast<size_t>(ambient_dim))
    throw std::invalid_argument("make_system: weight count must equal ambient_dim");
  for (const auto& r : basis)
    if (r.size() != static_cast<size_t>(ambient_dim))
      throw std::invalid_argument("make_system: basis row length mismatch");
  for (const auto& r : duals)
    if (r.size() != static_cast<size_t>(ambient_dim))
      throw std::invalid_argument("make_system: dual row length mismatch");
  for (const auto& r : basis)
    for (double x : r)
      if (!std::isfinite(x)) throw std::invalid_argument("make_system: non-finite basis entry");
  for (const auto& r : duals)
    for (double x : r)
      if (!std::isfinite(x)) throw std::invalid_argument("make_system: non-finite dual entry");
  if (!labels.empty() && labels.size() != basis.size())
    throw std::invalid_argument("make_system: label count mismatch");
  MinimalSystem sys;
  sys.ambient_dim = ambient_dim;
  sys.norm_spec = std::move(norm_spec);
  sys.basis = std::move(basis);
  sys.duals = std::move(duals);
  sys.labels = std::move(labels);
  return sys;
}

MinimalSystem unit_vector_system(int n, NormSpec norm_spec) {
  std::vector<AmbientVec> rows(n, AmbientVec(n, 0.0));
  for (int i = 0; i < n; ++i) rows[i][i] = 1.0;
  return make_system(n, std::move(norm_spec), rows, rows);
}

SystemValidation validate_system(const MinimalSystem& sys) {
  SystemValidation out;
  const int n = sys.size();
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double dot = 0.0;
      for (int k = 0; k < sys.ambient_dim; ++k) dot += sys.duals[i][k] * sys.basis[j][k];
      res = std::max(res, std::fabs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  out.biorth_residual = res;
  out.biorth_ok = res <= kBiorthTol;

  if (n > 0) {
    Eigen::MatrixXd b = rows_to_matrix(sys.basis, sys.ambient_dim);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
    double smax = svd.singularValues()(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > kRankTol * std::max(1.0, smax)) ++rank;
    out.numeric_rank = rank;
    out.rank_ok = rank == n;

    out.min_basis_norm = out.max_basis_norm = sys.vec_norm(sys.basis[0]);
    for (int i = 1; i < n; ++i) {
      double v = sys.vec_norm(sys.basis[i]);
      out.min_basis_norm = std::min(out.min_basis_norm, v);
      out.max_basis_norm = std::max(out.max_basis_norm, v);
    }
    out.dual_upper_bounds.reserve(n);
    for (int i = 0; i < n; ++i) out.dual_upper_bounds.push_back(dual_norm(sys.norm_spec, sys.duals[i]));
  } else {
    out.rank_ok = true;
  }
  return out;
}

AmbientVec synthesize(const MinimalSystem& sys, const CoeffVec& c) {
  if (c.size() != static_cast<size_t>(sys.size()))
    throw std::invalid_argument("synthesize: coefficient length mismatch");
  AmbientVec v(sys.ambient_dim, 0.0);
  for (int i = 0; i < sys.size(); ++i) {
    if (c[i] == 0.0) continue;
    for (int k = 0; k < sys.ambient_dim; ++k) v[k] += c[i] * sys.basis[i][k];
  }
  return v;
}

CoeffVec analyze(const MinimalSystem& sys, const AmbientVec& v) {
  if (v.size() != static_cast<size_t>(sys.ambient_dim))
    throw std::invalid_argument("analyze: ambient length mismatch");
  CoeffVec c(sys.size(), 0.0);
  for (int i = 0; i < sys.size(); ++i) {
    double dot = 0.0;
    for (int k = 0; k < sys.ambient_dim; ++k) dot += sys.duals[i][k] * v[k];
    c[i] = dot;
  }
  return c;
}

double coeff_norm(const MinimalSystem& sys, const CoeffVec& c) {
  return sys.vec_norm(synthesize(sys, c));
}

CoeffVec project(const CoeffVec& c, const std::vector<int>& a) {
  CoeffVec out(c.size(), 0.0);
  for (int i : a) {
    if (i < 0 || static_cast<size_t>(i) >= c.size())
      throw std::out_of_range("project: index out of range");
    out[i] = c[i];
  }
  return out;
}

std::pair<double, double> dual_norm_bounds(const MinimalSystem& sys, int i,
                                           const std::vector<CoeffVec>& corpus) {
  if (i < 0 || i >= sys.size()) throw std::out_of_range("dual_norm_bounds: index");
  if (corpus.empty()) throw std::invalid_argument("dual_norm_bounds: empty corpus");
  double lower = 0.0;
  for (const auto& c : corpus) {
    double nx = coeff_norm(sys, c);
    if (nx <= 0.0) continue;
    lower = std::max(lower, std::fabs(c[i]) / nx);
  }
  double upper = dual_norm(sys.norm_spec, sys.duals[i]);
  return {lower, upper};
}

std::pair<double, double> basis_constant_bounds(const MinimalSystem& sys,
                                                const std::vector<CoeffVec>& corpus) {
  const int n = sys.size();
  double lower = n > 0 ? 1.0 : 0.0;  // S_N = identity
  for (const auto& c : corpus) {
    double nx = coeff_norm(sys, c);
    if (nx <= 0.0) continue;
    CoeffVec head(c.size(), 0.0);
    for (int k = 0; k < n; ++k) {
      head[k] = c[k];
      lower = std::max(lower, coeff_norm(sys, head) / nx);
    }
  }
  double upper = 0.0, acc = 0.0;
  for (int k = 0; k < n; ++k) {
    acc += sys.vec_norm(sys.basis[k]) * dual_norm(sys.norm_spec, sys.duals[k]);
    upper = std::max(upper, acc);
  }
  return {lower, std::max(upper, lower)};
}

MinimalSystem extend_with_apex(const MinimalSystem& sys) {
  if (sys.norm_spec.is_weighted())
    throw std::invalid_argument("extend_with_apex: weighted norms have no weight for the new coordinate");
  if (sys.size() == 0) throw std::invalid_argument("extend_with_apex: empty system");
  double s = 0.0;
  for (int i = 0; i < sys.size(); ++i) s = std::max(s, sys.vec_norm(sys.basis[i]));
  const int n1 = sys.ambient_dim + 1;

  std::vector<AmbientVec> basis, duals;
  basis.reserve(sys.size() + 1);
  duals.reserve(sys.size() + 1);
  AmbientVec apex(n1, 0.0), apex_dual(n1, 0.0);
  apex[n1 - 1] = s;
  apex_dual[n1 - 1] = 1.0 / s;
  basis.push_back(apex);
  duals.push_back(apex_dual);
  for (int i = 0; i < sys.size(); ++i) {
    AmbientVec b(n1, 0.0), d(n1, 0.0);
    for (int k = 0; k < sys.ambient_dim; ++k) {
      b[k] = sys.basis[i][k];
      d[k] = sys.duals[i][k];
    }
    basis.push_back(std::move(b));
    duals.push_back(std::move(d));
  }
  std::vector<int> labels;
  if (!sys.labels.empty()) {
    labels.push_back(0);  // apex by convention
    labels.insert(labels.end(), sys.labels.begin(), sys.labels.end());
  }
  return make_system(n1, sys.norm_spec, std::move(basis), std::move(duals), std::move(labels));
}

}  // namespace greedylab
