#include <doctest.h>

#include <random>

#include "loewner/errors.hpp"
#include "loewner/intervals.hpp"
#include "oracles.hpp"

using namespace loewner;

TEST_CASE("psi and its inverse") {
  CHECK(psi(make_conjugation_map(-1, 1), 0) == doctest::Approx(1));
  CHECK(psi(make_conjugation_map(0, 1), 0.5) == doctest::Approx(1));
  CHECK(psi_inv(make_conjugation_map(0, 2), 1) == doctest::Approx(1));
  const auto map = make_conjugation_map(0.1, 5);
  for (double t : {0.1000001, 0.3, 1.0, 4.9, 4.9999}) {
    CHECK(psi_inv(map, psi(map, t)) == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK_THROWS_AS(psi(map, 0.1), DomainError);
  CHECK_THROWS_AS(psi(map, 6), DomainError);
  CHECK_THROWS_AS(psi_inv(map, 0), DomainError);
  CHECK_THROWS_AS(make_conjugation_map(0, kInf), ConfigError);
  CHECK_THROWS_AS(make_conjugation_map(1, 0), ConfigError);
}

TEST_CASE("conjugate examples") {
  const auto one = conjugate(restricted(constant(1), {0, 1}));
  CHECK(domain(one) == Interval{0, kInf});
  for (double x : {1e-3, 1.0, 1e3}) CHECK(eval(one, x) == doctest::Approx(1));
  CHECK(eval(conjugate(restricted(affine(0, 1), {0, 1})), 1) == doctest::Approx(0.5));
  CHECK(eval(conjugate(moebius_monotone(0.5)), 1) == doctest::Approx(0).scale(1));
  CHECK_THROWS_AS(conjugate(power(0.5)), ConfigError);
}

TEST_CASE("conjugation round trip") {
  const auto f = restricted(power(1.5), {0.1, 5});
  const auto map = make_conjugation_map(0.1, 5);
  const auto back = conjugate_inverse(conjugate(f), map);
  for (int k = 1; k < 50; ++k) {
    const double t = 0.1 + 4.9 * k / 50.0;
    CHECK(eval(back, t) == doctest::Approx(eval(f, t)).epsilon(1e-12));
  }
}

TEST_CASE("transfer identities for divided differences") {
  const auto map = make_conjugation_map(0.1, 5);
  const auto f = restricted(power(0.5), {0.1, 5});
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.1, 5);
  for (int k = 0; k < 200; ++k) {
    const double ti = u(gen), tj = u(gen);
    for (TransferKind kind : {TransferKind::BSquared, TransferKind::Product, TransferKind::ASquared}) {
      CHECK(verify_conjugation_dd(f, map, kind, ti, tj).residual <= 1e-9);
      CHECK(oracle::transfer_residual(oracle::power(0.5), 0.1, 5, static_cast<int>(kind), ti, tj) <= 1e-9);
    }
  }
  const auto c = restricted(constant(3), {0.1, 5});
  const auto r = verify_conjugation_dd(c, map, TransferKind::Product, 0.7, 2.2);
  CHECK(r.residual <= 1e-14);
  CHECK(r.lhs == doctest::Approx(3.0));  // (x * 3)[1] = 3
  for (double t : {0.2, 1.0, 4.0}) {
    CHECK(verify_conjugation_dd(f, map, TransferKind::ASquared, t, t).residual <= 1e-9);
  }
  CHECK(transfer_kind_from_string("ta-bt") == TransferKind::Product);
  CHECK_THROWS_AS(transfer_kind_from_string("beta"), ConfigError);
}

TEST_CASE("limit forms agree pointwise under the substitution") {
  const double a = 0.1, b = 5;
  const auto map = make_conjugation_map(a, b);
  for (double alpha : {0.5, 1.5}) {
    const auto f = restricted(power(alpha), {a, b});
    const auto g = oracle::power(alpha);
    for (int k = 1; k <= 12; ++k) {
      const double d = std::pow(10.0, -k / 2.0);
      for (double t : {a + d * (b - a), b - d * (b - a)}) {
        const double x = (t - a) / (b - t);
        const double ft = g(t), tilde = g(b - (b - a) / (x + 1));
        const double expect[4] = {tilde / x, tilde, x * tilde, x * x * tilde};
        const double pointwise[4] = {(b - t) * ft / (t - a), ft, (t - a) * ft / (b - t),
                                     (t - a) * (t - a) * ft / ((b - t) * (b - t))};
        const LimitForm forms[4] = {LimitForm::OverXAtInfinity, LimitForm::AtInfinity,
                                    LimitForm::TimesXAtZero, LimitForm::TimesXSquaredAtZero};
        for (int i = 0; i < 4; ++i) {
          const auto s = limit_sample(f, map, forms[i], t);
          CHECK(s.x == doctest::Approx(x).epsilon(1e-12));
          CHECK(oracle::rel(s.lhs, s.rhs, {}) <= 1e-9 * std::max(1.0, std::abs(s.rhs)));
          CHECK(s.lhs == doctest::Approx(expect[i]).epsilon(1e-9));
          CHECK(s.rhs == doctest::Approx(pointwise[i]).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("boundary estimates") {
  const auto e = boundary_estimate(power(0.5), BoundaryKind::SupOverTAtInfinity);
  CHECK(e.trend == Trend::BoundedAbove);
  CHECK(e.heuristic);
  CHECK(e.grid.size() == 12);
  CHECK(e.values.back() < 1e-4);
  for (std::size_t k = 1; k < e.grid.size(); ++k) CHECK(e.grid[k] > e.grid[k - 1]);
  CHECK(e.supports(BoundaryCondition::BelowPlusInfinity) == std::optional<bool>(true));

  const auto d = boundary_estimate(power(3), BoundaryKind::SupOverTAtInfinity);
  CHECK(d.trend == Trend::Diverging);
  CHECK(d.supports(BoundaryCondition::BelowPlusInfinity) == std::optional<bool>(false));

  const auto z = boundary_estimate(power(-1), BoundaryKind::InfTimesTAtZero);
  for (double v : z.values) CHECK(v == doctest::Approx(1));
  for (std::size_t k = 1; k < z.grid.size(); ++k) CHECK(z.grid[k] < z.grid[k - 1]);
  CHECK(z.trend == Trend::BoundedBelow);
  CHECK(z.supports(BoundaryCondition::AtMostZero) == std::optional<bool>(false));
  CHECK(z.supports(BoundaryCondition::AtLeastZero) == std::optional<bool>(true));
  CHECK(classify_trend(z.kind, z.values) == z.trend);

  CHECK_THROWS_AS(boundary_estimate(moebius_monotone(0.5), BoundaryKind::InfTimesTAtZero), DomainError);
  const auto b = boundary_estimate(moebius_monotone(0.9), BoundaryKind::SupBMinusTAtB);
  CHECK(b.trend == Trend::BoundedAbove);
  CHECK(classify_trend(BoundaryKind::SupOverTAtInfinity, {1, 2}) == Trend::Inconclusive);
}

TEST_CASE("psd verdicts transfer through the conjugation") {
  for (double alpha : {0.5, 1.5}) {
    for (int n : {2, 3}) {
      const auto c = compare_conjugated_psd(restricted(power(alpha), {0.1, 5}), n, 300, 99);
      CHECK(c.tuples == 300);
      CHECK(c.mismatches == 0);
      if (alpha > 1) {
        CHECK(c.failing > 0);
      } else {
        CHECK(c.failing == 0);
      }
    }
  }
}
