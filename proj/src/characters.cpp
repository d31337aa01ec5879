#include "siegel/characters.hpp"

#include <cstdlib>
#include <numeric>

namespace siegel {

namespace {

bool squarefree_trial(long long n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

long long mod4(long long x) { return ((x % 4) + 4) % 4; }

}  // namespace

// Cohen, "A Course in Computational Algebraic Number Theory", Alg. 1.4.10.
int kronecker(long long a, long long n) {
  static const int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  int k = (v & 1) ? tab2[((a % 8) + 8) % 8] : 1;
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  for (;;) {
    if (a == 0) return (n > 1) ? 0 : k;
    v = 0;
    while ((a & 1) == 0) {
      a >>= 1;
      ++v;
    }
    if (v & 1) k *= tab2[n & 7];
    if (a & n & 2) k = -k;  // both == 3 mod 4 (two's complement works for a < 0)
    long long r = a < 0 ? -a : a;
    a = n % r;
    n = r;
  }
}

bool is_fundamental_discriminant(long long d) {
  if (d == 0 || d == 1) return false;
  if (mod4(d) == 1) return squarefree_trial(d);
  if (mod4(d) == 0) {
    long long m = d / 4;
    long long mm = mod4(m);
    return (mm == 2 || mm == 3) && squarefree_trial(m);
  }
  return false;
}

std::vector<long long> enumerate_fundamental_discriminants(long long lo, long long hi) {
  std::vector<long long> out;
  for (long long d = lo; d <= hi; ++d) {
    if (is_fundamental_discriminant(d)) out.push_back(d);
  }
  return out;
}

RealPrimitiveCharacter::RealPrimitiveCharacter(long long d) : d_(d) {
  if (!is_fundamental_discriminant(d)) {
    throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(d));
  }
  q_ = static_cast<std::uint64_t>(d < 0 ? -d : d);
}

long long RealPrimitiveCharacter::max_partial_sum() const {
  if (max_partial_sum_ < 0) {
    long long sum = 0, best = 0;
    for (std::uint64_t n = 1; n <= q_; ++n) {
      sum += kronecker(d_, static_cast<long long>(n));
      best = std::max(best, std::llabs(sum));
    }
    max_partial_sum_ = best;
  }
  return max_partial_sum_;
}

int chi0(std::uint64_t q, long long n) {
  if (q == 0) throw std::invalid_argument("chi0: q must be positive");
  long long m = n % static_cast<long long>(q);
  if (m < 0) m += static_cast<long long>(q);
  return std::gcd(static_cast<std::uint64_t>(m), q) == 1 ? 1 : 0;
}

}  // namespace siegel
