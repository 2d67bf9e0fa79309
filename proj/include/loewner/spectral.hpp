#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "loewner/errors.hpp"

namespace loewner {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = Mat<double>;
using Vector = Vec<double>;

inline constexpr Eigen::Index kMaxJacobiOrder = 64;
inline constexpr int kMaxJacobiSweeps = 100;

// Eigenvalues ascending; eigenvectors stored column-wise in matching order.
template <typename Scalar>
struct SpectralDecomposition {
  Vec<Scalar> eigenvalues;
  Mat<Scalar> eigenvectors;

  Scalar min() const { return eigenvalues(0); }
  Scalar max() const { return eigenvalues(eigenvalues.size() - 1); }
  Scalar spectral_radius() const { return std::max(std::abs(min()), std::abs(max())); }
};

template <typename Derived>
void require_symmetric(const Eigen::MatrixBase<Derived>& m, double rel_tol = 1e-12) {
  using std::abs;
  if (m.rows() != m.cols()) {
    throw ShapeError("expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
  const auto scale = std::max<typename Derived::Scalar>(1, m.cwiseAbs().maxCoeff());
  const auto asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= rel_tol * scale)) throw ShapeError("matrix is not symmetric");
}

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
///
/// Sweeps over all (p, q) pairs with exact rotations until the off-diagonal
/// Frobenius norm drops below 1e-14 * ||M||_F. Throws ConvergenceError after
/// kMaxJacobiSweeps sweeps.
template <typename Derived>
SpectralDecomposition<typename Derived::Scalar> sym_eigen(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  require_symmetric(m);
  const Eigen::Index n = m.rows();
  if (n > kMaxJacobiOrder) throw ShapeError("Jacobi eigensolver limited to order 64");

  Mat<Scalar> a = (m + m.transpose()) / Scalar(2);
  Mat<Scalar> v = Mat<Scalar>::Identity(n, n);
  const Scalar target = Scalar(1e-14) * a.norm();

  auto off_norm = [&] {
    Scalar s = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) s += 2 * a(p, q) * a(p, q);
    return sqrt(s);
  };

  int sweep = 0;
  for (; sweep < kMaxJacobiSweeps; ++sweep) {
    const Scalar off = off_norm();
    if (off <= target || off == Scalar(0)) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (2 * apq);
        const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) / (abs(theta) + sqrt(theta * theta + 1));
        const Scalar c = 1 / sqrt(t * t + 1);
        const Scalar s = t * c;
        const Scalar tau = s / (1 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const Scalar arp = a(r, p), arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const Scalar vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (sweep == kMaxJacobiSweeps && off_norm() > target) {
    throw ConvergenceError("Jacobi eigensolver did not converge in 100 sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SpectralDecomposition<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]);
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

}  // namespace loewner
