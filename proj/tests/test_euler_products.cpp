#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siegel/euler_products.hpp"

using namespace siegel;

namespace {

const FactorSieve& sieve() {
  static FactorSieve s(200'000);
  return s;
}

std::vector<std::uint32_t> mollifier_support(std::uint32_t R) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t r = 1; r <= R; ++r) {
    if (r % 2 && r % 3 && sieve().is_squarefree(r)) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("prime cache snapshots") {
  auto a = primes_up_to(100);
  CHECK(a->front() == 2);
  auto b = primes_up_to(10'000);
  CHECK(b->size() >= 1229);
  // the earlier snapshot stays intact after growth
  CHECK(a->front() == 2);
  std::size_t count = 0;
  for (std::uint32_t p : *b) {
    if (p > 100) break;
    ++count;
  }
  CHECK(count == 25);
}

TEST_CASE("pair weight at a prime") {
  CHECK(pseudo_f_pair_at_prime(5, 35, 55) == Rational(25, 4));
  CHECK(pseudo_f_pair_at_prime(5, 35, 7) == Rational(-5, 2));
  CHECK(pseudo_f_pair_at_prime(5, 7, 11) == Rational(1));
}

TEST_CASE("operand validation") {
  CHECK_THROWS_AS(P_at_one_closed(4, 1, RealPrimitiveCharacter(5), sieve()),
                  std::invalid_argument);  // even
  CHECK_THROWS_AS(P_at_one_closed(25, 1, RealPrimitiveCharacter(5), sieve()),
                  std::invalid_argument);  // not squarefree
  CHECK_THROWS_AS(P_at_one_closed(21, 1, RealPrimitiveCharacter(5), sieve()),
                  std::invalid_argument);  // divisible by 3
}

TEST_CASE("product and closed form at w = 1 agree exactly, r,t <= 100") {
  for (long long d : enumerate_fundamental_discriminants(-24, 24)) {
    RealPrimitiveCharacter chi(d);
    for (std::uint32_t r : mollifier_support(100)) {
      for (std::uint32_t t : mollifier_support(100)) {
        CHECK(P_at_one_direct(r, t, chi, sieve()) ==
              P_at_one_closed(r, t, chi, sieve()));
      }
    }
  }
}

TEST_CASE("off-diagonal values: split primes annihilate, inert ones do not") {
  RealPrimitiveCharacter chim4(-4);  // chi(5) = +1
  CHECK(chim4(5) == 1);
  CHECK(P_at_one_closed(1, 5, chim4, sieve()) == Rational(0));
  CHECK(P_at_one_closed(5, 5, chim4, sieve()) == Rational(5, 2));
  CHECK(P_at_one_closed(5, 65, chim4, sieve()) == Rational(0));  // 13 splits too

  RealPrimitiveCharacter chi5(5);  // chi(7) = -1: the pair (1,7) is NOT killed
  CHECK(chi5(7) == -1);
  CHECK(P_at_one_closed(1, 7, chi5, sieve()) == Rational(1));
  CHECK(P_at_one_direct(1, 7, chi5, sieve()) == Rational(1));
  CHECK(P_at_one_closed(7, 7, chi5, sieve()) == Rational(1));
  // split distinguishing prime for d = 5: chi(11) = 1
  CHECK(chi5(11) == 1);
  CHECK(P_at_one_closed(1, 11, chi5, sieve()) == Rational(0));
  CHECK(P_at_one_closed(11, 11, chi5, sieve()) == Rational(11, 2));
}

TEST_CASE("P on the line matches the exact route at w = 1") {
  RealPrimitiveCharacter chim4(-4);
  Complex at_one = P_eval(5, 5, chim4, Complex(Real(1)), sieve());
  CHECK(at_one.real() == to_real(Rational(5, 2)));
  CHECK(at_one.imag() == 0);
  // continuity: numerical route near 1 approaches the rational value
  Complex nearby = P_eval(5, 5, chim4, Complex(Real("1.000001")), sieve());
  CHECK(abs(nearby.real() - to_real(Rational(5, 2))) < Real("1e-4"));
}

TEST_CASE("Q truncation is Cauchy within its stated tails") {
  RealPrimitiveCharacter chi5(5);
  Complex w(Real(3) / 4, Real(1));
  for (std::uint32_t P : {1000u, 10'000u}) {
    auto lo = Q_eval(chi5, w, P);
    auto hi = Q_eval(chi5, w, 2 * P);
    CHECK(abs(lo.value - hi.value) <= lo.error_bound + hi.error_bound);
    CHECK(hi.error_bound < lo.error_bound);
  }
}

TEST_CASE("plain and accelerated Q agree") {
  RealPrimitiveCharacter chi5(5);
  for (Complex w : {Complex(Real(1)), Complex(Real("0.75"), Real(2)),
                    Complex(Real("0.6"), Real(-5))}) {
    auto plain = Q_eval(chi5, w, 60'000);
    auto accel = Q_accel<MpProfile>(chi5, w, 1000);
    CHECK(abs(plain.value - accel.value) <= plain.error_bound + accel.error_bound);
  }
  CHECK_THROWS_AS(Q_accel<MpProfile>(chi5, Complex(Real(1)), 50),
                  std::invalid_argument);
  CHECK_THROWS_AS(Q_eval(chi5, Complex(Real("0.4")), 1000), std::domain_error);
}

TEST_CASE("double-sum diagnostics against an explicit loop") {
  RealPrimitiveCharacter chi5(5);
  auto res = lemma6_double_sum(10, chi5, sieve());
  REQUIRE(res.full_exact.has_value());
  REQUIRE(res.diagonal_exact.has_value());

  Rational full(0), diag(0);
  for (std::uint32_t r : mollifier_support(10)) {
    for (std::uint32_t t : mollifier_support(10)) {
      Rational term = P_at_one_direct(r, t, chi5, sieve()) / (Rational(r) * t);
      full += term;
      if (r == t) diag += term;
    }
  }
  CHECK(*res.full_exact == full);
  CHECK(*res.diagonal_exact == diag);
  // documented deviation: the off-diagonal part is NOT identically zero
  CHECK(*res.full_exact != *res.diagonal_exact);
  CHECK(res.fitted_constant > 0);
}

TEST_CASE("pair-product growth scan runs and normalizes") {
  RealPrimitiveCharacter chi5(5);
  auto scan = p_growth_scan(15, 10, 11, chi5, sieve());
  CHECK(scan.fitted_constant >= 1);  // r = t = 1 gives ratio exactly 1
  CHECK(scan.argmax_r >= 1);
}
