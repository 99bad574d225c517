#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "kgeo/curvature.hpp"
#include "kgeo/symop.hpp"

using namespace kgeo;
using curvature::KahlerCurvature;
using curvature::ModelSpace;
using numkit::cdouble;
using numkit::CMatrix;

namespace {

std::vector<cdouble> unit_vector(int n, int i) {
  std::vector<cdouble> v(n, cdouble(0.0, 0.0));
  v[i] = 1.0;
  return v;
}

std::vector<cdouble> random_unit(int n, std::uint64_t seed) {
  numkit::SeededRng rng(seed);
  std::vector<cdouble> v(n);
  double norm = 0.0;
  for (auto& x : v) {
    x = {rng.gaussian(), rng.gaussian()};
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

}  // namespace

TEST_CASE("const_hbsc anchors: Ricci, HSC and operator spectrum") {
  const auto r21 = curvature::const_hbsc(2, 1.0);
  const CMatrix ric = curvature::ricci_matrix(r21);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(ric(i, j) - (i == j ? cdouble(3.0) : cdouble(0.0))) < 1e-14);

  const auto zero = curvature::const_hbsc(1, 0.0);
  for (const auto& v : zero.raw()) CHECK(v == cdouble(0.0, 0.0));

  const auto op = symop::build(curvature::const_hbsc(3, 1.0));
  REQUIRE(op.N == 6);
  for (double v : op.spectrum) CHECK(v == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("hyperquadric spectrum gate") {
  // mandatory check of the adopted frame form: spectrum {2-n} u {2}^{N-1}
  {
    const auto op = symop::build(curvature::hyperquadric(2));
    REQUIRE(op.N == 3);
    CHECK(op.spectrum[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(op.spectrum[1] == Catch::Approx(2.0).margin(1e-12));
    CHECK(op.spectrum[2] == Catch::Approx(2.0).margin(1e-12));
  }
  {
    const auto op = symop::build(curvature::hyperquadric(4));
    REQUIRE(op.N == 10);
    CHECK(op.spectrum[0] == Catch::Approx(-2.0).margin(1e-12));
    for (int i = 1; i < 10; ++i) CHECK(op.spectrum[i] == Catch::Approx(2.0).margin(1e-12));
  }
  // Einstein constant n, cross-checked against the partial trace
  const auto hq = curvature::hyperquadric(2);
  const CMatrix ric = curvature::ricci_matrix(hq);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cdouble trace(0.0, 0.0);
      for (int k = 0; k < 2; ++k) trace += hq.at(i, j, k, k);
      CHECK(std::abs(ric(i, j) - trace) == 0.0);
      CHECK(std::abs(ric(i, j) - (i == j ? cdouble(2.0) : cdouble(0.0))) < 1e-14);
    }
  CHECK_THROWS_AS(curvature::hyperquadric(1), std::invalid_argument);
}

TEST_CASE("product tensors") {
  // two copies of a CP^1 with HSC 3
  const auto f = curvature::const_hbsc(1, 1.5);
  const auto prod = curvature::product({f, f});
  const auto op = symop::build(prod);
  REQUIRE(op.N == 3);
  CHECK(op.spectrum[0] == Catch::Approx(0.0).margin(1e-12));
  CHECK(op.spectrum[1] == Catch::Approx(3.0).margin(1e-12));
  CHECK(op.spectrum[2] == Catch::Approx(3.0).margin(1e-12));

  // single factor round-trips exactly
  const auto single = curvature::product({curvature::const_hbsc(2, -0.5)});
  const auto ref = curvature::const_hbsc(2, -0.5);
  for (std::size_t i = 0; i < ref.raw().size(); ++i) CHECK(single.raw()[i] == ref.raw()[i]);

  // (CP^1 with HSC n+1)^n has Ric = (n+1) id
  for (int n : {2, 3, 4}) {
    std::vector<KahlerCurvature> fs(n, curvature::const_hbsc(1, (n + 1) / 2.0));
    const CMatrix ric = curvature::ricci_matrix(curvature::product(fs));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(ric(i, j) - (i == j ? cdouble(n + 1.0) : cdouble(0.0))) < 1e-14);
  }

  CHECK_THROWS_AS(curvature::product({}), std::invalid_argument);
}

TEST_CASE("scale_metric") {
  const auto cp1 = curvature::const_hbsc(1, 1.0);
  const auto scaled = curvature::scale_metric(cp1, 2.0 / 3.0);
  const std::vector<cdouble> x = {1.0};
  CHECK(curvature::hsc(scaled, x) == Catch::Approx(3.0).margin(1e-14));

  const auto same = curvature::scale_metric(cp1, 1.0);
  for (std::size_t i = 0; i < cp1.raw().size(); ++i) CHECK(same.raw()[i] == cp1.raw()[i]);

  // scaling twice composes
  const auto r = symop::random_kahler_curvature(3, 77);
  const auto a = curvature::scale_metric(curvature::scale_metric(r, 1.7), 0.4);
  const auto b = curvature::scale_metric(r, 1.7 * 0.4);
  for (std::size_t i = 0; i < r.raw().size(); ++i)
    CHECK(std::abs(a.raw()[i] - b.raw()[i]) < 1e-15);

  CHECK_THROWS_AS(curvature::scale_metric(cp1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(curvature::scale_metric(cp1, -1.0), std::invalid_argument);
}

TEST_CASE("curvature queries") {
  for (int n : {2, 4}) {
    for (double c : {-1.0, 0.5, 2.0}) {
      const auto rc = curvature::const_hbsc(n, c);
      for (int s = 0; s < 10; ++s) {
        const auto x = random_unit(n, 100 * n + s);
        CHECK(curvature::hsc(rc, x) == Catch::Approx(2.0 * c).margin(1e-12));
      }
      CHECK(curvature::hbsc(rc, unit_vector(n, 0), unit_vector(n, 1)) ==
            Catch::Approx(c).margin(1e-14));
      CHECK(curvature::ricci_min_eigenvalue(rc) == Catch::Approx((n + 1) * c).margin(1e-12));
    }
  }
  const KahlerCurvature zero(3);
  CHECK(curvature::hsc(zero, unit_vector(3, 1)) == 0.0);
  CHECK(curvature::ricci_min_eigenvalue(zero) == Catch::Approx(0.0).margin(1e-15));

  std::vector<cdouble> too_long = {2.0, 0.0};
  CHECK_THROWS_AS(curvature::hsc(curvature::const_hbsc(2, 1.0), too_long),
                  std::invalid_argument);
}

TEST_CASE("symmetry closure is exact as stored") {
  numkit::SeededRng rng(31337);
  const std::vector<KahlerCurvature> tensors = {
      curvature::const_hbsc(3, 1.0), curvature::hyperquadric(4),
      curvature::product({curvature::const_hbsc(1, 1.5), curvature::const_hbsc(2, -1.0)}),
      curvature::scale_metric(curvature::hyperquadric(3), 0.7),
      symop::random_kahler_curvature(4, 2024)};
  for (const auto& rc : tensors) {
    const int n = rc.dim();
    for (int trial = 0; trial < 10000; ++trial) {
      const int i = static_cast<int>(rng.uniform() * n);
      const int j = static_cast<int>(rng.uniform() * n);
      const int k = static_cast<int>(rng.uniform() * n);
      const int l = static_cast<int>(rng.uniform() * n);
      const cdouble v = rc.at(i, j, k, l);
      REQUIRE(v == rc.at(k, j, i, l));
      REQUIRE(v == rc.at(i, l, k, j));
      REQUIRE(v == std::conj(rc.at(j, i, l, k)));
    }
    CHECK(curvature::symmetry_defect(rc) == 0.0);
  }
}

TEST_CASE("operator spectrum is frame covariant") {
  numkit::SeededRng pick(555);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(pick.uniform() * 5);  // up to 6
    const auto rc = symop::random_kahler_curvature(n, 9000 + trial);
    const auto u = numkit::random_unitary(n, 40000 + trial);
    const auto base = symop::build(rc).spectrum;
    const auto rotated = symop::build(curvature::rotate_frame(rc, u)).spectrum;
    REQUIRE(base.size() == rotated.size());
    for (std::size_t i = 0; i < base.size(); ++i)
      REQUIRE(std::abs(base[i] - rotated[i]) <= 1e-9 * (1.0 + std::abs(base[i])));
  }
}

TEST_CASE("spectrum scales inversely with the metric factor") {
  for (std::uint64_t seed : {3u, 17u}) {
    const auto rc = symop::random_kahler_curvature(3, seed);
    const auto base = symop::build(rc).spectrum;
    for (double lambda : {0.25, 2.0, 7.5}) {
      const auto scaled = symop::build(curvature::scale_metric(rc, lambda)).spectrum;
      for (std::size_t i = 0; i < base.size(); ++i)
        REQUIRE(std::abs(scaled[i] - base[i] / lambda) <= 1e-10 * (1.0 + std::abs(base[i])));
    }
  }
}

TEST_CASE("model catalog and radial profiles") {
  const auto mc = ModelSpace::space_form(2, 1.0);
  const auto p = curvature::radial_profile(mc);
  REQUIRE(p.entries.size() == 2);
  CHECK(p.entries[0] == std::pair<int, double>{1, 2.0});
  CHECK(p.entries[1] == std::pair<int, double>{2, 0.5});
  CHECK(p.multiplicity_sum() == p.dim());

  const auto flat = curvature::radial_profile(ModelSpace::space_form(3, 0.0));
  for (const auto& [mult, kappa] : flat.entries) CHECK(kappa == 0.0);

  // scaled CP^1 collapses to a space form with rescaled constant
  const auto scaled = ModelSpace::scaled(ModelSpace::space_form(1, 1.0), 2.0 / 3.0);
  const auto sp = curvature::radial_profile(scaled);
  CHECK(sp.entries[0].second == Catch::Approx(3.0).margin(1e-15));

  // product of two HSC-3 factors, mix (1, 0)
  const auto prod = ModelSpace::product({scaled, scaled});
  const std::vector<double> mix = {1.0, 0.0};
  const auto pp = curvature::radial_profile(prod, mix);
  REQUIRE(pp.entries.size() == 3);
  CHECK(pp.entries[0].second == Catch::Approx(3.0).margin(1e-15));
  CHECK(pp.entries[1].second == 0.0);
  CHECK(pp.entries[2] == std::pair<int, double>{1, 0.0});
  CHECK(pp.multiplicity_sum() == pp.dim());

  const std::vector<double> bad = {1.0, 1.0};
  CHECK_THROWS_AS(curvature::radial_profile(prod, bad), std::invalid_argument);
  CHECK_THROWS_AS(curvature::radial_profile(ModelSpace::hyperquadric(3)), std::invalid_argument);

  // catalog tensors agree with the direct constructors
  const auto prod_tensor = curvature::to_curvature(prod);
  const auto direct = curvature::product(
      {curvature::const_hbsc(1, 1.5), curvature::const_hbsc(1, 1.5)});
  for (std::size_t i = 0; i < direct.raw().size(); ++i)
    CHECK(std::abs(prod_tensor.raw()[i] - direct.raw()[i]) < 1e-15);

  CHECK(curvature::product_min_hsc(std::vector<double>{3.0, 3.0}) ==
        Catch::Approx(1.5).margin(1e-15));
}

TEST_CASE("validate_symmetries flags broken tensors") {
  auto rc = curvature::const_hbsc(2, 1.0);
  rc.at(0, 1, 1, 0) += cdouble(0.5, 0.0);
  CHECK_THROWS_AS(curvature::validate_symmetries(rc), std::invalid_argument);
  CHECK_THROWS_AS(symop::build(rc), std::invalid_argument);
}
