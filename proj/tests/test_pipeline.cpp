#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "siegel/pipeline.hpp"

using namespace siegel;

namespace {

const FactorSieve& sieve() {
  static FactorSieve s(200'000);
  return s;
}

// brute-force oracle for the weighted sum, sharing nothing with the
// library implementation except the character
Real weighted_oracle(const RealPrimitiveCharacter& chi, Real beta, Real y,
                     std::uint64_t r, std::uint64_t t) {
  Real total{};
  for (std::uint64_t n = 1; Real(static_cast<double>(n)) < y; ++n) {
    bool squarefree = true;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
      if (n % (p * p) == 0) squarefree = false;
    }
    if (!squarefree || std::gcd(n, static_cast<std::uint64_t>(chi.modulus())) != 1) {
      continue;
    }
    long long a = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) a += chi(static_cast<long long>(d));
    }
    auto f_at = [&](std::uint64_t m) {
      std::uint64_t g = std::gcd(n, m);
      int mu = 1, w = 0;
      for (std::uint64_t p = 2; p * p <= g; ++p) {
        if (g % p) continue;
        mu = -mu;
        ++w;
        g /= p;
      }
      if (g > 1) {
        mu = -mu;
        ++w;
      }
      return Real(mu) * Real(static_cast<double>(std::gcd(n, m))) /
             pow(Real(2), w);
    };
    Real nr(static_cast<double>(n));
    total += Real(a) * f_at(r) * f_at(t) * exp(-beta * log(nr)) * (1 - nr / y);
  }
  return total;
}

}  // namespace

TEST_CASE("weighted sum: y = 2 keeps only the n = 1 term") {
  RealPrimitiveCharacter chi5(5);
  WeightedSumSpec spec{&chi5, Real("0.9"), Real(2), 1, 1};
  CHECK(weighted_sum(spec, sieve()) == Real("0.5"));
  spec.y = Real(1);
  CHECK(weighted_sum(spec, sieve()) == Real(0));
}

TEST_CASE("weighted sum against a brute-force oracle") {
  RealPrimitiveCharacter chi5(5), chim4(-4);
  for (auto [chi, r, t] :
       {std::tuple<const RealPrimitiveCharacter*, std::uint64_t, std::uint64_t>{
            &chi5, 1, 1},
        {&chi5, 7, 11},
        {&chim4, 5, 5}}) {
    WeightedSumSpec spec{chi, Real("0.9"), Real(200), r, t};
    Real lib = weighted_sum(spec, sieve());
    Real oracle = weighted_oracle(*chi, spec.beta, spec.y, r, t);
    CHECK(abs(lib - oracle) < Real("1e-35"));
  }
}

TEST_CASE("deterministic reduction is thread-count independent") {
  RealPrimitiveCharacter chi5(5);
  WeightedSumSpec spec{&chi5, Real("0.9"), Real(40'000), 7, 7};
  worker_thread_cap() = 1;
  Real serial = weighted_sum(spec, sieve());
  worker_thread_cap() = 5;
  Real threaded = weighted_sum(spec, sieve());
  worker_thread_cap() = 0;
  CHECK(serial == threaded);  // bitwise
}

TEST_CASE("contour-shift identity at a cheap configuration") {
  RealPrimitiveCharacter chi5(5);
  WeightedSumSpec spec{&chi5, Real("0.9"), Real(200), 1, 1};
  ContourOptions opt;
  opt.V = 200;
  auto res = contour_decomposition(spec, sieve(), opt);
  CHECK(res.pass);
  CHECK(res.identity_defect < Real("1e-3"));
  CHECK(res.direct_sum > 0);
  CHECK(res.quadrature_error >= 0);
  // the reinstated kernel-pole residue is a genuine part of the identity
  CHECK(abs(res.zero_residue) > Real("0.01"));
}

TEST_CASE("aggregated mollified sum") {
  RealPrimitiveCharacter chi5(5);

  auto at2 = aggregated_sum(chi5, Real("0.9"), 35, Real(2), sieve());
  CHECK(at2.lhs == at2.lower_bound);  // bitwise at y = 2
  CHECK(at2.defect == 0);

  auto res = aggregated_sum(chi5, Real("0.9"), 35, Real(5000), sieve());
  CHECK(res.lhs >= res.lower_bound);
  CHECK(res.defect == 0);
  CHECK(res.rhs_main > 0);
  CHECK(res.psi_one > 1);

  // R = 1 mollifier degenerates to the plain weighted sum
  auto flat = aggregated_sum(chi5, Real("0.9"), 1, Real(5000), sieve());
  WeightedSumSpec spec{&chi5, Real("0.9"), Real(5000), 1, 1};
  CHECK(abs(flat.lhs - weighted_sum(spec, sieve())) < Real("1e-30"));
}

TEST_CASE("work budget guard") {
  RealPrimitiveCharacter chi5(5);
  CHECK_THROWS_AS(aggregated_sum(chi5, Real("0.9"), 50, Real(100'000), sieve(), 1000),
                  ResourceGuard);
}

TEST_CASE("exclusion-radius bookkeeping in log space") {
  auto res = bound_report(Real("1e100"), Real(3));
  CHECK(abs(res.self_check - 3) < Real("1e-40"));
  CHECK(abs(res.c - log(Real(3)) / 32) < Real("1e-45"));
  CHECK(res.beta_bound < 1);
  CHECK(res.beta_bound > Real("0.99"));
  CHECK(res.log_y == 32 * res.log_R);

  auto small = bound_report(Real(1'000'003), Real(3));
  CHECK(abs(small.self_check - 3) < Real("1e-40"));
  CHECK_THROWS_AS(bound_report(Real(2), Real(3)), std::domain_error);

  CHECK(bound_report_json(Real(1'000'003)).verdict == "pass");
}
