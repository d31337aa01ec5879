#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <numeric>

#include "siegel/arith.hpp"

using namespace siegel;

namespace {

const FactorSieve& sieve() {
  static FactorSieve s(200'000);
  return s;
}

// trial-division oracles, independent of the sieve
int mobius_oracle(std::uint64_t n) {
  int m = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

int omega_oracle(std::uint64_t n) {
  int w = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ++w;
    while (n % p == 0) n /= p;
  }
  return w + (n > 1 ? 1 : 0);
}

}  // namespace

TEST_CASE("smallest prime factors and primality") {
  CHECK(sieve().smallest_prime_factor(2) == 2);
  CHECK(sieve().smallest_prime_factor(91) == 7);
  CHECK(sieve().smallest_prime_factor(97) == 97);
  CHECK(sieve().is_prime(2));
  CHECK(sieve().is_prime(199'999));
  CHECK(!sieve().is_prime(1));
  CHECK(!sieve().is_prime(91));
}

TEST_CASE("factorize reassembles the input") {
  for (std::uint64_t n : {2ULL, 360ULL, 9973ULL, 65536ULL, 199'998ULL}) {
    auto f = sieve().factorize(n);
    CHECK(f.value() == n);
    for (std::size_t i = 1; i < f.pairs.size(); ++i) {
      CHECK(f.pairs[i - 1].p < f.pairs[i].p);
    }
  }
  auto f = sieve().factorize(360);
  REQUIRE(f.pairs.size() == 3);
  CHECK(f.pairs[0] == PrimePower{2, 3});
  CHECK(f.pairs[1] == PrimePower{3, 2});
  CHECK(f.pairs[2] == PrimePower{5, 1});
}

TEST_CASE("mobius / omega / squarefree against trial division") {
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    CHECK(sieve().mobius(n) == mobius_oracle(n));
    CHECK(sieve().omega(n) == omega_oracle(n));
    CHECK(sieve().is_squarefree(n) == (mobius_oracle(n) != 0));
  }
}

TEST_CASE("queries beyond the sieve limit throw") {
  CHECK_THROWS_AS(sieve().factorize(400'000), std::out_of_range);
  CHECK_THROWS_AS(sieve().mobius(10'000'000'000ULL), std::out_of_range);
}

TEST_CASE("binary cache round-trips") {
  auto dir = std::filesystem::temp_directory_path() / "siegel-sieve-test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "spf_small.sgsv").string();
  FactorSieve small(5000);
  REQUIRE(small.save(path));
  FactorSieve loaded = FactorSieve::load(path);
  CHECK(loaded.limit() == 5000);
  for (std::uint64_t n = 2; n <= 5000; ++n) {
    CHECK(loaded.smallest_prime_factor(n) == small.smallest_prime_factor(n));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("divisor-character sum a(n)") {
  RealPrimitiveCharacter chi5(5), chim4(-4);
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    for (const auto* chi : {&chi5, &chim4}) {
      long long direct = 0;
      for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d == 0) direct += (*chi)(static_cast<long long>(d));
      }
      CHECK(a_coeff(n, *chi, sieve()) == direct);
      CHECK(a_coeff(n, *chi, sieve()) >= 0);
    }
  }
}

TEST_CASE("pseudocharacter weight f") {
  CHECK(pseudo_f(1, sieve()) == Rational(1));
  CHECK(pseudo_f(2, sieve()) == Rational(-1));
  CHECK(pseudo_f(6, sieve()) == Rational(3, 2));  // mu=1, 2^{-2} * 6
  CHECK(pseudo_f(4, sieve()) == Rational(0));
  CHECK(pseudo_f(30, sieve()) == Rational(-30, 8));
  for (std::uint64_t n = 1; n <= 500; ++n) {
    Rational expect = sieve().is_squarefree(n)
                          ? Rational(BigInt(sieve().mobius(n)) * n,
                                     BigInt(1) << sieve().omega(n))
                          : Rational(0);
    CHECK(pseudo_f(n, sieve()) == expect);
  }
}

TEST_CASE("f_r depends only on gcd(n, r)") {
  for (std::uint64_t r : {1ULL, 5ULL, 35ULL, 77ULL}) {
    for (std::uint64_t n = 1; n <= 300; ++n) {
      CHECK(pseudo_f_r(n, r, sieve()) == pseudo_f(std::gcd(n, r), sieve()));
    }
  }
  CHECK(pseudo_f_r(9, 5, sieve()) == Rational(1));  // gcd = 1 even off-support
}
