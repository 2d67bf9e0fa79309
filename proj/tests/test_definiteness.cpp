#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "loewner/definiteness.hpp"
#include "loewner/errors.hpp"
#include "loewner/loewner_matrix.hpp"
#include "oracles.hpp"

using namespace loewner;

namespace {

Matrix random_symmetric(std::mt19937_64& gen, int n, double lo = -5, double hi = 5) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = u(gen);
  return m;
}

// smallest eigenvalue on the sum-zero subspace via an orthonormal complement of 1
double oracle_cpd_min(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  Matrix basis = Matrix::Identity(n, n);
  basis.col(0).setOnes();
  const Eigen::HouseholderQR<Matrix> qr(basis);
  const Matrix q = Matrix(qr.householderQ()).rightCols(n - 1);
  return Eigen::SelfAdjointEigenSolver<Matrix>(q.transpose() * m * q).eigenvalues()(0);
}

}  // namespace

TEST_CASE("psd examples") {
  const auto e3 = is_psd(ones_matrix(3));
  CHECK(e3.holds);
  CHECK(e3.extremal_eigenvalue == doctest::Approx(0).scale(1));
  Matrix d = Eigen::Vector2d(1, -1).asDiagonal();
  const auto v = is_psd(d);
  CHECK_FALSE(v.holds);
  CHECK(std::abs(v.witness(0)) == doctest::Approx(0).scale(1));
  CHECK(std::abs(v.witness(1)) == doctest::Approx(1));
  const std::vector<double> pts{1, 4};
  CHECK(is_psd(build_loewner(power(0.5), pts).entries).holds);
  Matrix bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(is_psd(bad), ShapeError);
  Matrix asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK_THROWS_AS(is_psd(asym), ShapeError);
}

TEST_CASE("sum-zero compression") {
  CHECK(compress_sumzero(ones_matrix(3)).isZero(1e-15));
  Matrix d(2, 2);
  d << 3, 0, 0, 5;
  CHECK(compress_sumzero(d)(0, 0) == doctest::Approx(4));
  Matrix expect(2, 2);
  expect << 1, -0.5, -0.5, 1;
  CHECK(compress_sumzero(Matrix(Matrix::Identity(3, 3))).isApprox(expect));
  CHECK_THROWS_AS(compress_sumzero(Matrix(Matrix::Ones(1, 1))), ShapeError);
  const Matrix v = sumzero_basis<double>(5);
  CHECK(v.colwise().sum().cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("cpd and cnd examples") {
  for (int n : {2, 3, 5}) {
    CHECK(is_cpd(ones_matrix(n)).holds);
    CHECK(is_cnd(ones_matrix(n)).holds);
  }
  const std::vector<double> pts{1, 2};
  const Matrix m = build_loewner(power(3), pts).entries;
  Matrix expect(2, 2);
  expect << 3, 7, 7, 12;
  CHECK(m.isApprox(expect));
  const auto v = is_cnd(m);
  CHECK_FALSE(v.holds);
  CHECK(m(0, 0) + m(1, 1) - 2 * m(0, 1) == doctest::Approx(1));
  CHECK(v.witness.dot(m * v.witness) == doctest::Approx(0.5));  // (1,-1)/sqrt2

  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 500; ++k) {
    const double x = u(gen), y = u(gen);
    if (x <= 0 || y <= 0) continue;
    const std::vector<double> p{x, y, 1.0};
    CHECK(is_cpd(build_loewner(power(2.5), p).entries).holds);
  }
}

TEST_CASE("closed-form small criterion") {
  Matrix m(3, 3);
  m << 2, 0, 1, 0, 2, 1, 1, 1, 2;
  const auto s = closed_form_slacks(m, Property::CPD);
  CHECK(s.first == doctest::Approx(2));
  CHECK(s.second == doctest::Approx(2));
  CHECK(s.coupling == doctest::Approx(0));
  CHECK(cpd_closed_form_small(m, Property::CPD).holds);
  CHECK(is_cpd(m).holds);
  Matrix w(2, 2);
  w << 3, 7, 7, 12;
  CHECK_FALSE(cpd_closed_form_small(w, Property::CND).holds);
  const auto e = closed_form_slacks(ones_matrix(3), Property::CPD);
  CHECK(e.first == 0);
  CHECK(e.second == 0);
  CHECK(e.det == 0);
  CHECK(cpd_closed_form_small(ones_matrix(3), Property::CPD).holds);
  CHECK_THROWS_AS(cpd_closed_form_small(ones_matrix(4), Property::CPD), ShapeError);
  CHECK_THROWS_AS(cpd_closed_form_small(ones_matrix(3), Property::PSD), ConfigError);
}

TEST_CASE("closed form and projection agree away from the boundary") {
  std::mt19937_64 gen(7);
  int compared = 0;
  for (int k = 0; k < 3000; ++k) {
    const int n = 2 + k % 2;
    const Matrix m = random_symmetric(gen, n);
    for (Property p : {Property::CPD, Property::CND}) {
      if (closed_form_slacks(m, p).decisive_margin() <= 1e-8) continue;
      ++compared;
      const bool proj = test_property(m, p).holds;
      CHECK(cpd_closed_form_small(m, p).holds == proj);
      const double lam = p == Property::CPD ? oracle_cpd_min(m) : oracle_cpd_min(-m);
      if (std::abs(lam) > 1e-6) CHECK(proj == (lam > 0));
    }
  }
  CHECK(compared > 5000);
}

TEST_CASE("cnd is cpd of the negation") {
  std::mt19937_64 gen(8);
  for (int k = 0; k < 300; ++k) {
    const Matrix m = random_symmetric(gen, 2 + k % 4);
    const auto a = is_cnd(m), b = is_cpd(-m);
    CHECK(a.holds == b.holds);
    CHECK(a.extremal_eigenvalue == -b.extremal_eigenvalue);
  }
}

TEST_CASE("psd implies cpd on gram matrices") {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> g;
  for (int k = 0; k < 1000; ++k) {
    const int n = 2 + k % 5;
    Matrix x(n + 1, n);
    for (int i = 0; i < x.size(); ++i) x.data()[i] = g(gen);
    CHECK(is_cpd(x.transpose() * x).holds);
  }
}

TEST_CASE("failing verdicts carry valid witnesses") {
  std::mt19937_64 gen(10);
  for (int k = 0; k < 400; ++k) {
    const Matrix m = random_symmetric(gen, 2 + k % 4);
    for (Property p : {Property::PSD, Property::CPD, Property::CND}) {
      const auto v = test_property(m, p);
      if (v.holds) continue;
      const double q = v.witness.dot(m * v.witness) / v.witness.squaredNorm();
      if (p == Property::CND) {
        CHECK(q > v.tolerance_used);
      } else {
        CHECK(q < -v.tolerance_used);
      }
      if (p != Property::PSD) CHECK(std::abs(v.witness.sum()) <= 1e-12);
      CHECK(v.relative_violation() > 0);
    }
  }
}

TEST_CASE("border compression") {
  CHECK(border_compress(ones_matrix(3)).isZero(1e-15));
  std::mt19937_64 gen(12);
  for (int k = 0; k < 50; ++k) {
    const Matrix m = random_symmetric(gen, 4);
    const Matrix c = border_compress(m);
    // adding back the border terms recovers the leading block
    Matrix back(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) back(i, j) = c(i, j) + m(i, 3) + m(3, j) - m(3, 3);
    CHECK(back.isApprox(m.topLeftCorner(3, 3), 1e-13));
  }
  CHECK_THROWS_AS(border_compress(Matrix(Matrix::Ones(1, 1))), ShapeError);
}

TEST_CASE("border compression near the origin matches the origin identity matrix") {
  const double eta = 1e-4;
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0.5, 5.0);
  const auto f = oracle::power(2.5);
  const auto q = oracle::power(-0.5);  // t^2 / f
  for (int k = 0; k < 20; ++k) {
    const double x = u(gen), y = u(gen);
    const std::vector<double> pts{x, y, eta};
    const Matrix c = border_compress(build_loewner(power(2.5), pts).entries);
    const double t[2] = {x, y};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double fi = f(t[i]) / t[i], fj = f(t[j]) / t[j];
        const double qq = i == j ? -0.5 * std::pow(t[i], -1.5) : oracle::dq(q, t[i], t[j]);
        CHECK(c(i, j) == doctest::Approx(-fi * qq * fj).epsilon(1e-3));
      }
  }
}

TEST_CASE("border compression of constructed cpd matrices is psd") {
  std::mt19937_64 gen(14);
  std::normal_distribution<double> g;
  for (int k = 0; k < 1000; ++k) {
    const int n = 3 + k % 4;
    Matrix x(n, n);
    for (int i = 0; i < x.size(); ++i) x.data()[i] = g(gen);
    Vector r(n);
    for (int i = 0; i < n; ++i) r(i) = 3 * g(gen);
    const Matrix m = x.transpose() * x + r * Vector::Ones(n).transpose() +
                     Vector::Ones(n) * r.transpose() + g(gen) * ones_matrix(n);
    REQUIRE(is_cpd(m).holds);
    const Matrix c = border_compress(m);
    const auto v = is_psd(c);
    CHECK(v.holds);
    CHECK(v.extremal_eigenvalue >= -1e-9 * v.scale);
  }
}
