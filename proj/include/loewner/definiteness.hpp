#pragma once

#include <string>

#include "loewner/spectral.hpp"

namespace loewner {

enum class Property { PSD, CPD, CND };

std::string to_string(Property p);
Property property_from_string(const std::string& name);

inline constexpr double kDefaultTolerance = 1e-9;

/// Outcome of a (conditional) definiteness test.
///
/// For PSD/CPD the extremal eigenvalue is the smallest one (of M, or of M
/// compressed to the sum-zero subspace); for CND it is the largest eigenvalue
/// of the compressed M. A failing verdict carries a witness x with
/// <x, Mx> violating the property by more than `tolerance_used`; CPD/CND
/// witnesses sum to zero.
struct DefinitenessVerdict {
  Property property = Property::PSD;
  bool holds = true;
  bool marginal = false;
  double extremal_eigenvalue = 0.0;
  Vector witness;
  double tolerance_used = 0.0;  // absolute threshold, tol * scale
  double scale = 1.0;           // max(1, spectral radius of the tested matrix)

  // Amount by which the property is violated, relative to scale (<= 0 when
  // the property holds exactly).
  double relative_violation() const;
};

DefinitenessVerdict is_psd(const Matrix& m, double tol = kDefaultTolerance);
DefinitenessVerdict is_cpd(const Matrix& m, double tol = kDefaultTolerance);
DefinitenessVerdict is_cnd(const Matrix& m, double tol = kDefaultTolerance);
DefinitenessVerdict test_property(const Matrix& m, Property p, double tol = kDefaultTolerance);

// Columns (e_k - e_{k+1}) / sqrt(2), k = 1..n-1: a basis of the sum-zero subspace.
template <typename Scalar>
Mat<Scalar> sumzero_basis(Eigen::Index n) {
  using std::sqrt;
  Mat<Scalar> v = Mat<Scalar>::Zero(n, n - 1);
  const Scalar r = Scalar(1) / sqrt(Scalar(2));
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    v(k, k) = r;
    v(k + 1, k) = -r;
  }
  return v;
}

/// V^T M V for the difference basis V. M is c.p.d. iff the result is PSD.
template <typename Derived>
Mat<typename Derived::Scalar> compress_sumzero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  require_symmetric(m);
  if (m.rows() < 2) throw ShapeError("sum-zero compression needs order >= 2");
  const Mat<Scalar> v = sumzero_basis<Scalar>(m.rows());
  Mat<Scalar> c = v.transpose() * m * v;
  return (c + c.transpose()) / Scalar(2);
}

/// [a_ij - a_ip - a_pj + a_pp] over i, j != p, with p the last index by
/// default. PSD whenever M is c.p.d.
template <typename Derived>
Mat<typename Derived::Scalar> border_compress(const Eigen::MatrixBase<Derived>& m,
                                               Eigen::Index pivot = -1) {
  using Scalar = typename Derived::Scalar;
  require_symmetric(m);
  const Eigen::Index n = m.rows();
  if (n < 2) throw ShapeError("border compression needs order >= 2");
  if (pivot < 0) pivot = n - 1;
  if (pivot >= n) throw ShapeError("border compression pivot out of range");
  Mat<Scalar> out(n - 1, n - 1);
  for (Eigen::Index i = 0, oi = 0; i < n; ++i) {
    if (i == pivot) continue;
    for (Eigen::Index j = 0, oj = 0; j < n; ++j) {
      if (j == pivot) continue;
      out(oi, oj) = m(i, j) - m(i, pivot) - m(pivot, j) + m(pivot, pivot);
      ++oj;
    }
    ++oi;
  }
  return out;
}

/// Slacks of the closed-form c.p.d. criterion for orders 2 and 3.
///
/// Order 3, M = [a d e; d b f; e f c]: first = a+c-2e, second = b+c-2f,
/// det = first*second - (c+d-e-f)^2; c.p.d. iff all three are >= 0.
/// Order 2, M = [a d; d b]: first = second = a+b-2d, det unused (0).
/// For c.n.d. the slacks are those of -M.
struct ClosedFormSlacks {
  double first = 0.0;
  double second = 0.0;
  double det = 0.0;
  double coupling = 0.0;  // c+d-e-f (order 3)
  int order = 0;

  // Smallest |slack| among the inequalities that decide the verdict.
  double decisive_margin() const;
};

ClosedFormSlacks closed_form_slacks(const Matrix& m, Property mode);

/// Closed-form c.p.d./c.n.d. test for orders 2 and 3, no eigensolver.
/// Inequalities are evaluated with the same tolerance convention as is_cpd.
DefinitenessVerdict cpd_closed_form_small(const Matrix& m, Property mode,
                                          double tol = kDefaultTolerance);

}  // namespace loewner
