#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "loewner/divdiff.hpp"
#include "loewner/errors.hpp"
#include "loewner/funcs.hpp"
#include "loewner/loewner_matrix.hpp"

using namespace loewner;

TEST_CASE("first divided differences") {
  CHECK(fdd(power(2), 1, 3) == doctest::Approx(4));
  CHECK(fdd(power(0.5), 1, 4) == doctest::Approx(1.0 / 3.0));
  CHECK(fdd(power(0.5), 1, 4) == doctest::Approx((1.0 - 2.0) / (1.0 - 4.0)));
  CHECK(fdd(power(3), 2, 2) == doctest::Approx(12));
  CHECK_THROWS_AS(fdd(power(0.5), -1, 4), DomainError);
}

TEST_CASE("confluence uses the midpoint derivative inside the relative threshold") {
  const auto f = power(3);
  const double s = 1e6, t = s * (1 + 5e-8);
  CHECK(confluent(s, t, {}));
  CHECK(fdd(f, s, t) == doctest::Approx(deriv(f, (s + t) / 2)).epsilon(1e-14));
  CHECK_FALSE(confluent(1.0, 1.0 + 1e-6, {}));
  CHECK_THROWS_AS(make_confluence_policy(0.0), ConfigError);
}

TEST_CASE("second divided differences") {
  CHECK(sdd(power(2), 0.5, 1, 2) == doctest::Approx(1));
  const auto g = weighted(power(0.5), WeightTag::TMinusASquared, 0.3);
  CHECK(sdd(g, 2, 0.3, 0.3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // recursive quotient with nearly coincident points tends to the same value
  const double h = 1e-4;
  const double near = ((eval(g, 2) - eval(g, 0.3)) / 1.7 - (eval(g, 0.3 + h) - eval(g, 0.3)) / h) / (2 - 0.3);
  CHECK(near == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  for (auto [u, v, w] : {std::array{0.1, 0.7, 3.0}, std::array{-2.0, 5.0, 11.0}}) {
    CHECK(sdd(affine(1, 5), u, v, w) == doctest::Approx(0).scale(1));
  }
  CHECK(sdd(power(3), 2, 2, 2) == doctest::Approx(6));
}

TEST_CASE("symmetry of divided differences") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.05, 10);
  const std::vector<FunctionDescriptor> fs = {power(-1.5), power(2.5), piecewise_quad_linear(),
                                             weighted(power(0.5), WeightTag::TSquared)};
  for (const auto& f : fs) {
    for (int k = 0; k < 50; ++k) {
      std::array<double, 3> p{u(gen), u(gen), u(gen)};
      CHECK(fdd(f, p[0], p[1]) == fdd(f, p[1], p[0]));
      const double ref = sdd(f, p[0], p[1], p[2]);
      std::sort(p.begin(), p.end());
      do {
        CHECK(sdd(f, p[0], p[1], p[2]) == doctest::Approx(ref).epsilon(1e-10));
      } while (std::next_permutation(p.begin(), p.end()));
    }
  }
}

TEST_CASE("divided differences approach the derivative at confluence") {
  const std::vector<FunctionDescriptor> fs = {power(0.5), power(-2), power(3.5), moebius_monotone(0.6),
                                             moebius_convex(-0.4), affine(2, -1)};
  for (const auto& f : fs) {
    const double t = domain(f).hi < kInf ? 0.2 : 1.7;
    double prev = kInf;
    for (double eta : {1e-4, 1e-5, 1e-6}) {
      const double err = std::abs(fdd(f, t, t + eta) - deriv(f, t));
      CAPTURE(describe(f));
      CHECK(err <= prev + 1e-12);
      CHECK(err <= 10 * eta * std::max(1.0, std::abs(deriv(f, t))));
      prev = err;
    }
  }
}
