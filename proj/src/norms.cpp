#include "greedylab/norms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace greedylab {

NormSpec NormSpec::lp(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("NormSpec: p must be >= 1");
  NormSpec s;
  s.kind = NormKind::Lp;
  s.p = p;
  return s;
}

NormSpec NormSpec::linf() {
  NormSpec s;
  s.kind = NormKind::Linf;
  s.p = 0.0;
  return s;
}

NormSpec NormSpec::weighted_lp(double p, std::vector<double> weights) {
  if (!(p >= 1.0)) throw std::invalid_argument("NormSpec: p must be >= 1");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("NormSpec: weights must be positive");
  NormSpec s;
  s.kind = NormKind::WeightedLp;
  s.p = p;
  s.weights = std::move(weights);
  return s;
}

std::string NormSpec::to_string() const {
  char buf[64];
  switch (kind) {
    case NormKind::Lp:
      std::snprintf(buf, sizeof(buf), "lp(p=%g)", p);
      return buf;
    case NormKind::Linf:
      return "linf";
    case NormKind::WeightedLp:
      std::snprintf(buf, sizeof(buf), "weighted_lp(p=%g,dim=%zu)", p, weights.size());
      return buf;
  }
  return "?";
}

namespace {

void check_dim(const NormSpec& spec, const AmbientVec& v) {
  if (spec.kind == NormKind::WeightedLp && spec.weights.size() != v.size())
    throw std::invalid_argument("norm: weight count does not match vector dimension");
}

}  // namespace

double norm(const NormSpec& spec, const AmbientVec& v) {
  check_dim(spec, v);
  switch (spec.kind) {
    case NormKind::Linf: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::fabs(x));
      return m;
    }
    case NormKind::Lp: {
      if (spec.p == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::fabs(x);
        return s;
      }
      if (spec.p == 2.0) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
      }
      double s = 0.0;
      for (double x : v) s += std::pow(std::fabs(x), spec.p);
      return std::pow(s, 1.0 / spec.p);
    }
    case NormKind::WeightedLp: {
      double s = 0.0;
      for (size_t i = 0; i < v.size(); ++i) s += spec.weights[i] * std::pow(std::fabs(v[i]), spec.p);
      return std::pow(s, 1.0 / spec.p);
    }
  }
  return 0.0;
}

double dual_norm(const NormSpec& spec, const AmbientVec& f) {
  check_dim(spec, f);
  switch (spec.kind) {
    case NormKind::Linf: {  // dual of sup norm is l1
      double s = 0.0;
      for (double x : f) s += std::fabs(x);
      return s;
    }
    case NormKind::Lp: {
      if (spec.p == 1.0) {
        double m = 0.0;
        for (double x : f) m = std::max(m, std::fabs(x));
        return m;
      }
      double q = spec.p / (spec.p - 1.0);
      return norm(NormSpec::lp(q), f);
    }
    case NormKind::WeightedLp: {
      if (spec.p == 1.0) {
        double m = 0.0;
        for (size_t i = 0; i < f.size(); ++i) m = std::max(m, std::fabs(f[i]) / spec.weights[i]);
        return m;
      }
      // ||f||_* = (sum w_i^(1-q) |f_i|^q)^(1/q), q conjugate to p
      double q = spec.p / (spec.p - 1.0);
      double s = 0.0;
      for (size_t i = 0; i < f.size(); ++i)
        s += std::pow(spec.weights[i], 1.0 - q) * std::pow(std::fabs(f[i]), q);
      return std::pow(s, 1.0 / q);
    }
  }
  return 0.0;
}

AmbientVec norming_functional(const NormSpec& spec, const AmbientVec& r) {
  check_dim(spec, r);
  double nr = norm(spec, r);
  if (nr == 0.0) throw std::invalid_argument("norming_functional: zero vector");
  AmbientVec g(r.size(), 0.0);
  auto sgn = [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); };
  switch (spec.kind) {
    case NormKind::Linf: {
      size_t best = 0;
      for (size_t i = 1; i < r.size(); ++i)
        if (std::fabs(r[i]) > std::fabs(r[best])) best = i;
      g[best] = sgn(r[best]);
      return g;
    }
    case NormKind::Lp: {
      if (spec.p == 1.0) {
        for (size_t i = 0; i < r.size(); ++i) g[i] = sgn(r[i]);
        return g;
      }
      double denom = std::pow(nr, spec.p - 1.0);
      for (size_t i = 0; i < r.size(); ++i)
        g[i] = sgn(r[i]) * std::pow(std::fabs(r[i]), spec.p - 1.0) / denom;
      return g;
    }
    case NormKind::WeightedLp: {
      if (spec.p == 1.0) {
        for (size_t i = 0; i < r.size(); ++i) g[i] = spec.weights[i] * sgn(r[i]);
        return g;
      }
      double denom = std::pow(nr, spec.p - 1.0);
      for (size_t i = 0; i < r.size(); ++i)
        g[i] = spec.weights[i] * sgn(r[i]) * std::pow(std::fabs(r[i]), spec.p - 1.0) / denom;
      return g;
    }
  }
  return g;
}

}  // namespace greedylab
