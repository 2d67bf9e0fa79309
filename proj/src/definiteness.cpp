#include "loewner/definiteness.hpp"

#include <algorithm>
#include <cmath>

namespace loewner {

std::string to_string(Property p) {
  switch (p) {
    case Property::PSD:
      return "psd";
    case Property::CPD:
      return "cpd";
    case Property::CND:
      return "cnd";
  }
  return "?";
}

Property property_from_string(const std::string& name) {
  if (name == "psd") return Property::PSD;
  if (name == "cpd") return Property::CPD;
  if (name == "cnd") return Property::CND;
  throw ConfigError("unknown definiteness property '" + name + "' (expected psd, cpd, cnd)");
}

double DefinitenessVerdict::relative_violation() const {
  const double signed_eig = property == Property::CND ? extremal_eigenvalue : -extremal_eigenvalue;
  return signed_eig / scale;
}

DefinitenessVerdict is_psd(const Matrix& m, double tol) {
  const auto sd = sym_eigen(m);
  DefinitenessVerdict v;
  v.property = Property::PSD;
  v.scale = std::max(1.0, sd.spectral_radius());
  v.tolerance_used = tol * v.scale;
  v.extremal_eigenvalue = sd.min();
  v.holds = sd.min() >= -v.tolerance_used;
  v.marginal = v.holds && std::abs(sd.min()) <= v.tolerance_used;
  v.witness = sd.eigenvectors.col(0);
  return v;
}

DefinitenessVerdict is_cpd(const Matrix& m, double tol) {
  require_symmetric(m);
  DefinitenessVerdict v;
  v.property = Property::CPD;
  const Eigen::Index n = m.rows();
  if (n == 1) {
    // The sum-zero subspace is {0}; the condition is void.
    v.scale = std::max(1.0, std::abs(m(0, 0)));
    v.tolerance_used = tol * v.scale;
    v.witness = Vector::Zero(1);
    return v;
  }
  v.scale = std::max(1.0, sym_eigen(m).spectral_radius());
  v.tolerance_used = tol * v.scale;
  const auto sd = sym_eigen(compress_sumzero(m));
  v.extremal_eigenvalue = sd.min();
  v.holds = sd.min() >= -v.tolerance_used;
  v.marginal = v.holds && std::abs(sd.min()) <= v.tolerance_used;
  v.witness = sumzero_basis<double>(n) * sd.eigenvectors.col(0);
  return v;
}

DefinitenessVerdict is_cnd(const Matrix& m, double tol) {
  DefinitenessVerdict v = is_cpd(-m, tol);
  v.property = Property::CND;
  v.extremal_eigenvalue = -v.extremal_eigenvalue;
  return v;
}

DefinitenessVerdict test_property(const Matrix& m, Property p, double tol) {
  switch (p) {
    case Property::PSD:
      return is_psd(m, tol);
    case Property::CPD:
      return is_cpd(m, tol);
    case Property::CND:
      return is_cnd(m, tol);
  }
  return is_psd(m, tol);
}

double ClosedFormSlacks::decisive_margin() const {
  if (order == 2) return std::abs(first);
  return std::min({std::abs(first), std::abs(second), std::abs(det)});
}

ClosedFormSlacks closed_form_slacks(const Matrix& m, Property mode) {
  require_symmetric(m);
  if (mode == Property::PSD) throw ConfigError("closed-form criterion covers cpd and cnd only");
  const Matrix a = mode == Property::CND ? Matrix(-m) : m;
  ClosedFormSlacks s;
  s.order = static_cast<int>(a.rows());
  if (s.order == 2) {
    s.first = s.second = a(0, 0) + a(1, 1) - 2.0 * a(0, 1);
    return s;
  }
  if (s.order != 3) throw ShapeError("closed-form criterion needs order 2 or 3");
  // [a d e; d b f; e f c]
  const double aa = a(0, 0), bb = a(1, 1), cc = a(2, 2);
  const double d = a(0, 1), e = a(0, 2), f = a(1, 2);
  s.first = aa + cc - 2.0 * e;
  s.second = bb + cc - 2.0 * f;
  s.coupling = cc + d - e - f;
  s.det = s.first * s.second - s.coupling * s.coupling;
  return s;
}

DefinitenessVerdict cpd_closed_form_small(const Matrix& m, Property mode, double tol) {
  const ClosedFormSlacks s = closed_form_slacks(m, mode);
  DefinitenessVerdict v;
  v.property = mode;
  v.scale = std::max(1.0, m.norm());
  v.tolerance_used = tol * v.scale;
  const double thr = v.tolerance_used;

  if (s.order == 2) {
    // The sum-zero direction (1, -1)/sqrt(2) gives the single compressed entry.
    const double lam = 0.5 * s.first;
    v.holds = lam >= -thr;
    v.marginal = v.holds && std::abs(lam) <= thr;
    v.extremal_eigenvalue = mode == Property::CND ? -lam : lam;
    v.witness = Vector::Zero(2);
    v.witness << 1.0, -1.0;
    return v;
  }

  // Quadratic form on x = s u + r v with u = (1,0,-1), v = (0,1,-1), halved.
  const double p = 0.5 * s.first, q = 0.5 * s.second, r = 0.5 * s.coupling;
  const double det = 0.25 * s.det;
  v.holds = p >= -thr && q >= -thr && det >= -thr * (std::abs(p) + std::abs(q));
  const double lam = 0.5 * (p + q) - std::hypot(0.5 * (p - q), r);
  v.marginal = v.holds && std::abs(lam) <= thr;
  v.extremal_eigenvalue = mode == Property::CND ? -lam : lam;

  Vector u(3), w(3);
  u << 1.0, 0.0, -1.0;
  w << 0.0, 1.0, -1.0;
  if (p < -thr) {
    v.witness = u;
  } else if (q < -thr) {
    v.witness = w;
  } else if (p > 0.0 && p >= q) {
    v.witness = r * u - p * w;
  } else if (q > 0.0) {
    v.witness = r * w - q * u;
  } else {
    v.witness = u - (r >= 0.0 ? 1.0 : -1.0) * w;
  }
  return v;
}

}  // namespace loewner
