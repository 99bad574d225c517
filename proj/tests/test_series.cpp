#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kgeo/comparison.hpp"
#include "kgeo/geodesic.hpp"
#include "kgeo/series.hpp"

using namespace kgeo;
using numkit::BigRational;

TEST_CASE("Bernoulli numbers from the recurrence") {
  const auto b = series::bernoulli(100);
  CHECK(b[0] == BigRational(1));
  CHECK(b[1] == BigRational(numkit::BigInt(-1), numkit::BigInt(2)));
  CHECK(b[2] == BigRational(numkit::BigInt(1), numkit::BigInt(6)));
  CHECK(b[3] == BigRational(0));
  CHECK(b[4] == BigRational(numkit::BigInt(-1), numkit::BigInt(30)));
  CHECK(b[6] == BigRational(numkit::BigInt(1), numkit::BigInt(42)));
  CHECK(b[8] == BigRational(numkit::BigInt(-1), numkit::BigInt(30)));
  CHECK(b[12] == BigRational(numkit::BigInt(-691), numkit::BigInt(2730)));
  // odd ones vanish, even ones alternate: (-1)^k B_2k < 0
  for (int k = 2; k <= 49; ++k) CHECK(b[2 * k - 1] == BigRational(0));
  for (int k = 1; k <= 50; ++k) {
    const BigRational signed_val = (k % 2 == 0) ? b[2 * k] : -b[2 * k];
    REQUIRE(signed_val < BigRational(0));
  }
  CHECK_THROWS_AS(series::bernoulli(-1), std::invalid_argument);
}

TEST_CASE("bracket values are exact") {
  CHECK(series::bracket(1) == BigRational(0));
  CHECK(series::bracket(2) == BigRational(0));
  CHECK(series::bracket(3) == BigRational(numkit::BigInt(-3), numkit::BigInt(2)));
  CHECK(series::bracket(4) == BigRational(-6));
  // negative for every k >= 3; the full term stays positive regardless
  // because (-1)^k B_2k < 0
  for (int k = 3; k <= 100; ++k) REQUIRE(series::bracket(k) < BigRational(0));
  CHECK_THROWS_AS(series::bracket(0), std::invalid_argument);
}

TEST_CASE("series coefficients are positive from k = 3 on") {
  const auto s = series::g_coefficients(100);
  CHECK(s.coeffs[0] == BigRational(0));
  CHECK(s.coeffs[1] == BigRational(0));
  CHECK(s.coeffs[2] == BigRational(numkit::BigInt(1), numkit::BigInt(315)));
  for (int k = 3; k <= 100; ++k) REQUIRE(s.coeffs[k - 1] > BigRational(0));
  CHECK(s.radius == Catch::Approx(comparison::kPi / std::sqrt(2.0)).margin(1e-14));
}

TEST_CASE("documented tail-bound constant dominates the computed terms") {
  const auto s = series::g_coefficients(100);
  for (int k = 1; k <= 100; ++k) {
    const double ck = std::abs(s.coeffs[k - 1].to_double());
    const double cap = 24.0 * std::pow(2.0 / (comparison::kPi * comparison::kPi), k);
    REQUIRE(ck <= cap);
  }
}

TEST_CASE("series and closed form agree within the remainder bound") {
  {
    const auto se = series::g_eval_series(0.5, 40);
    const double closed = series::g_eval_closed(0.5);
    CHECK(std::abs(se.value - closed) <= se.remainder_bound);
    CHECK(se.remainder_bound <= 1e-12);
  }
  const double top = comparison::kPi / std::sqrt(2.0) - 0.01;
  for (int i = 0; i < 100; ++i) {
    const double r = 0.02 + (top - 0.02) * i / 99.0;
    const auto se = series::g_eval_series(r, 40);
    REQUIRE(std::abs(se.value - series::g_eval_closed(r)) <= se.remainder_bound);
  }
}

TEST_CASE("g is positive on the whole interval") {
  const double top = comparison::kPi / std::sqrt(2.0) - 0.01;
  for (int i = 0; i < 1000; ++i) {
    const double r = 0.01 + (top - 0.01) * i / 999.0;
    REQUIRE(series::g_eval_closed(r) > 0.0);
  }
}

TEST_CASE("leading behavior g(r) ~ c_3 r^5") {
  const double c3 = 1.0 / 315.0;
  // radii small enough that the c_4 r^2 correction stays ~1e-3 but large
  // enough that extended-precision rounding in the closed form is invisible
  for (double r : {0.02, 0.03, 0.05}) {
    const double ratio = series::g_eval_closed(r) / std::pow(r, 5);
    REQUIRE(ratio == Catch::Approx(c3).epsilon(2e-3));
  }
}

TEST_CASE("series evaluator domain errors") {
  CHECK_THROWS_AS(series::g_eval_closed(comparison::kPi / std::sqrt(2.0)), std::domain_error);
  CHECK_THROWS_AS(series::g_eval_closed(0.0), std::domain_error);
  CHECK_THROWS_AS(series::g_eval_series(0.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(series::g_eval_series(3.0, 40), std::domain_error);
}

TEST_CASE("closed form is consistent with the geodesic module") {
  const double top = comparison::kPi / std::sqrt(2.0) - 0.02;
  for (int i = 0; i < 60; ++i) {
    const double r = 0.05 + (top - 0.05) * i / 59.0;
    const double from_modules =
        geodesic::product_laplacian_max(2, r) - comparison::kahler_model_laplacian(2, 1.0, r);
    REQUIRE(series::g_eval_closed(r) == Catch::Approx(from_modules).margin(1e-10));
  }
}
