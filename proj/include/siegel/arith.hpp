#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "siegel/characters.hpp"
#include "siegel/numeric.hpp"

namespace siegel {

struct PrimePower {
  std::uint64_t p;
  std::uint32_t alpha;
  bool operator==(const PrimePower&) const = default;
};

// Prime factorization with strictly increasing primes.
struct Factorization {
  std::vector<PrimePower> pairs;
  std::uint64_t value() const;
};

// Smallest-prime-factor table. Built once, immutable afterwards; all
// queries are pure reads.
class FactorSieve {
 public:
  static constexpr std::uint32_t kDefaultLimit = 10'000'000;

  explicit FactorSieve(std::uint32_t limit = kDefaultLimit);

  // Loads from the SIEGEL_GAP_CACHE directory when possible, building and
  // persisting otherwise. Falls back to a plain build on any cache error.
  static FactorSieve cached(std::uint32_t limit = kDefaultLimit);

  std::uint32_t limit() const { return limit_; }
  std::uint32_t smallest_prime_factor(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;

  Factorization factorize(std::uint64_t n) const;
  int mobius(std::uint64_t n) const;
  int omega(std::uint64_t n) const;
  bool is_squarefree(std::uint64_t n) const;

  // Binary cache format: "SGSV1" magic, then limit and spf[2..limit] as
  // little-endian 32-bit words.
  bool save(const std::string& path) const;
  static FactorSieve load(const std::string& path);

  const std::vector<std::uint32_t>& primes() const;

 private:
  struct RawTag {};
  FactorSieve(RawTag, std::uint32_t limit, std::vector<std::uint32_t> spf);

  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  mutable std::vector<std::uint32_t> primes_;
};

// a(n) = sum_{d|n} chi(d), via the per-prime product form. Nonnegative.
long long a_coeff(std::uint64_t n, const RealPrimitiveCharacter& chi,
                  const FactorSieve& sieve);

// f(n) = mu(n) 2^{-omega(n)} n; zero on non-squarefree input.
Rational pseudo_f(std::uint64_t n, const FactorSieve& sieve);

// f_r(n) = f(gcd(n, r)).
Rational pseudo_f_r(std::uint64_t n, std::uint64_t r, const FactorSieve& sieve);

}  // namespace siegel
