#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/constants/constants.hpp>

#include "siegel/lfunction.hpp"

using namespace siegel;
using boost::math::constants::euler;
using boost::math::constants::pi;

namespace {
Real tiny(const char* s) { return Real(s); }
}  // namespace

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == Rational(1));
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(3) == Rational(0));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK(bernoulli(30) == Rational(BigInt("8615841276005"), 14322));
}

TEST_CASE("alternating-series acceleration coefficients") {
  // weights start at ~1 (early terms kept whole) and decay to ~0 at the tail
  auto e = borwein_coefficients(20);
  REQUIRE(e->size() == 20);
  CHECK((*e)[0] > Rational(999, 1000));
  CHECK((*e)[0] < 1);
  for (std::size_t k = 1; k < e->size(); ++k) {
    CHECK((*e)[k] <= (*e)[k - 1]);
    CHECK((*e)[k] > 0);
  }
  CHECK((*e)[19] < Rational(1, 2));
}

TEST_CASE("zeta at classical points") {
  auto z2 = zeta_eta<MpProfile>(Complex(Real(2)));
  Real expect = pi<Real>() * pi<Real>() / 6;
  CHECK(abs(z2.value.real() - expect) <= z2.error_bound);
  CHECK(abs(z2.value.real() - expect) < tiny("1e-40"));
  CHECK(abs(z2.value.imag()) < tiny("1e-40"));

  // continued into the strip
  auto zh = zeta_eta<MpProfile>(Complex(Real(1) / 2));
  Real half_ref = tiny("-1.4603545088095868128894991525152980124672");
  CHECK(abs(zh.value.real() - half_ref) < tiny("1e-38"));

  auto z3 = zeta_eta<MpProfile>(Complex(Real(3)));
  CHECK(abs(z3.value.real() - tiny("1.2020569031595942853997381615114499907650")) <
        tiny("1e-38"));
}

TEST_CASE("zeta dual route: acceleration vs Euler-Maclaurin") {
  for (Complex s : {Complex(Real("0.75"), Real(10)), Complex(Real("1.5"), Real(3)),
                    Complex(Real("0.6")), Complex(Real("0.9"), Real(-25))}) {
    auto a = zeta_eta<MpProfile>(s);
    auto b = hurwitz_zeta<MpProfile>(s, Real(1));
    CHECK(abs(a.value - b.value) <= a.error_bound + b.error_bound + tiny("1e-38"));
  }
}

TEST_CASE("zeta domain errors") {
  CHECK_THROWS_AS(zeta_eta<MpProfile>(Complex(Real(1))), std::domain_error);
  CHECK_THROWS_AS(zeta_eta<MpProfile>(Complex(Real("-0.5"))), std::domain_error);
  CHECK_THROWS_AS(hurwitz_zeta<MpProfile>(Complex(Real(2)), Real(0)),
                  std::domain_error);
}

TEST_CASE("Hurwitz shift identity zeta(s,a) = a^{-s} + zeta(s, a+1)") {
  Complex s(Real("1.25"), Real(4));
  Real a = Real(1) / 3;
  auto lhs = hurwitz_zeta<MpProfile>(s, a);
  auto rhs = hurwitz_zeta<MpProfile>(s, a + 1);
  Complex shift = exp(-s * log(a));
  CHECK(abs(lhs.value - (rhs.value + shift)) <=
        lhs.error_bound + rhs.error_bound + tiny("1e-38"));
}

TEST_CASE("digamma reference values") {
  CHECK(abs(digamma<Real>(Real(1)) + euler<Real>()) < tiny("1e-40"));
  CHECK(abs(digamma<Real>(Real(1) / 2) + euler<Real>() + 2 * log(Real(2))) <
        tiny("1e-40"));
  // recurrence psi(x+1) = psi(x) + 1/x
  Real x = Real("0.3");
  CHECK(abs(digamma<Real>(x + 1) - digamma<Real>(x) - 1 / x) < tiny("1e-40"));
}

TEST_CASE("L(1) closed forms") {
  RealPrimitiveCharacter chim4(-4), chi5(5);
  CHECK(abs(L_one(chim4) - pi<Real>() / 4) < tiny("1e-40"));
  Real golden = (1 + sqrt(Real(5))) / 2;
  CHECK(abs(L_one(chi5) - 2 / sqrt(Real(5)) * log(golden)) < tiny("1e-40"));
  CHECK(abs(L_real(Real(1), chi5) - L_one(chi5)) == 0);
}

TEST_CASE("L-series routes agree") {
  RealPrimitiveCharacter chi5(5);
  // in the strip the direct series converges like N^{-sigma}, so compare the
  // two routes at fixed cutoffs against the direct route's own tail bound
  for (Complex s : {Complex(Real(2)), Complex(Real("0.8"), Real(2)),
                    Complex(Real("0.75"), Real(20))}) {
    auto direct = L_chi(s, chi5, 100'000);
    auto accel = L_hurwitz<MpProfile>(s, chi5);
    CHECK(abs(direct.value - accel.value) <=
          direct.error_bound + accel.error_bound);
  }
  // and the advertised cutoff really delivers the requested tolerance
  auto n = L_chi_required_cutoff(Complex(Real(2)), chi5, tiny("1e-10"));
  auto tight = L_chi(Complex(Real(2)), chi5, n);
  CHECK(tight.error_bound <= tiny("1e-10"));
  auto ref = L_hurwitz<MpProfile>(Complex(Real(2)), chi5);
  CHECK(abs(tight.value - ref.value) <= tiny("1e-10") + ref.error_bound);
  // the direct route's tail bound is honest
  auto coarse = L_chi(Complex(Real(2)), chi5, 50);
  auto fine = L_hurwitz<MpProfile>(Complex(Real(2)), chi5);
  CHECK(abs(coarse.value - fine.value) <= coarse.error_bound + fine.error_bound);
}

TEST_CASE("synthetic zero scanner") {
  auto err_small = [](Real) { return Real("1e-30"); };
  // zero placed off the sample grid so every sample clears the error bound
  auto scan1 = scan_real_zeros([](Real x) { return x - Real("0.905"); },
                               err_small, Real("0.6"), Real("0.99"),
                               Real("0.01"), Real("1e-12"));
  REQUIRE(scan1.zeros.size() == 1);
  CHECK(abs(scan1.zeros[0].beta - Real("0.905")) < tiny("1e-10"));
  CHECK(!scan1.inconclusive);

  auto scan2 = scan_real_zeros([](Real x) { return x * x + 1; }, err_small,
                               Real("0.6"), Real("0.99"), Real("0.01"),
                               Real("1e-12"));
  CHECK(scan2.zeros.empty());

  // evaluation noise larger than the samples must be flagged
  auto scan3 = scan_real_zeros([](Real x) { return (x - Real("0.905")) / 1000; },
                               [](Real) { return Real(1); }, Real("0.6"),
                               Real("0.99"), Real("0.01"), Real("1e-12"));
  CHECK(scan3.inconclusive);
}

TEST_CASE("no real zero of desk-scale L on (0.6, 0.99)") {
  RealPrimitiveCharacter chim4(-4);
  auto scan = find_real_zeros(chim4, Real("0.6"), Real("0.99"), Real("5e-3"));
  CHECK(scan.zeros.empty());
  CHECK(!scan.inconclusive);
}

TEST_CASE("critical-line ratio diagnostics") {
  RealPrimitiveCharacter chi5(5);
  auto ratios = lemma2_ratios(chi5, Real("0.9"));
  CHECK(ratios.L1 > 0);
  CHECK(abs(ratios.rho1 - ratios.L1 / (1 - Real("0.9"))) < tiny("1e-35"));
  CHECK(ratios.rho2 < ratios.rho1);
  CHECK_THROWS_AS(lemma2_ratios(chi5, Real("1.5")), std::invalid_argument);
}
