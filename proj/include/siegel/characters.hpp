#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace siegel {

// Full Kronecker symbol (a|n), defined for every integer pair.
int kronecker(long long a, long long n);

// d = 1 is the trivial character and is rejected here (the toolkit only
// deals with non-principal real primitive characters).
bool is_fundamental_discriminant(long long d);

// All fundamental discriminants in [lo, hi], ascending, excluding 1.
std::vector<long long> enumerate_fundamental_discriminants(long long lo, long long hi);

// Real primitive character mod q = |d|, realized as n -> (d|n).
class RealPrimitiveCharacter {
 public:
  explicit RealPrimitiveCharacter(long long d);

  long long discriminant() const { return d_; }
  std::uint64_t modulus() const { return q_; }

  int operator()(long long n) const { return kronecker(d_, n); }

  // max_k |sum_{n<=k} chi(n)| over one period; used in L-series tail bounds.
  long long max_partial_sum() const;

 private:
  long long d_;
  std::uint64_t q_;
  mutable long long max_partial_sum_ = -1;
};

// Principal character mod q.
int chi0(std::uint64_t q, long long n);

}  // namespace siegel
