#pragma once

#include <optional>

#include "siegel/arith.hpp"
#include "siegel/lfunction.hpp"

namespace siegel {

// Cached ascending primes covering at least [2, n]; the snapshot stays
// valid even if another thread grows the cache.
std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint32_t n);

// Upper bound for |log| of the tail of the plain truncated Q product past
// p_max, at Re w = sigma > 1/2.
Real Q_tail_log_bound(const RealPrimitiveCharacter& chi, Real sigma,
                      std::uint32_t p_max);

// Plain truncated Euler product for
//   Q(w) = prod_{chi(p)=1}(1-3p^{-2w}+2p^{-3w})
//          prod_{chi(p)=-1}(1-p^{-2w}) prod_{p|q}(1-p^{-w}),
// over p <= p_max, with the tail folded into error_bound.
EvalResult Q_eval(const RealPrimitiveCharacter& chi, Complex w, std::uint32_t p_max);

// zeta(2w)^{-2} L(2w,chi)^{-1}-accelerated form of the same product; the
// residual per-prime factors decay like p^{-3 Re w}, so modest cutoffs give
// tight tails. Requires p_max >= 100 and p_max >= every prime dividing q.
template <class P>
EvalResultT<P> Q_accel(const RealPrimitiveCharacter& chi, typename P::C w,
                       std::uint32_t p_max);

// f_r f_t(p) for a prime p (p^2/4, -p/2 or 1 by divisibility).
Rational pseudo_f_pair_at_prime(std::uint64_t p, std::uint64_t r, std::uint64_t t);

// Throws unless n is squarefree and coprime to 6.
void require_p_product_operand(std::uint64_t n, const FactorSieve& sieve,
                               const char* name);

// P_{r,t}(1) evaluated by multiplying the actual local factors
// (1 + 2 f_r f_t(p)/p)/(1 + 2/p) over p | rt with chi(p) = 1.
Rational P_at_one_direct(std::uint64_t r, std::uint64_t t,
                         const RealPrimitiveCharacter& chi, const FactorSieve& sieve);

// Case-table closed form: 0 as soon as some prime dividing exactly one of
// r, t has chi(p) = 1; otherwise prod_{p | gcd(r,t), chi(p)=1} p/2.
// (For r != t this is zero exactly when such a distinguishing prime is
// split; the r = t case always gives the product form.)
Rational P_at_one_closed(std::uint64_t r, std::uint64_t t,
                         const RealPrimitiveCharacter& chi, const FactorSieve& sieve);

// P_{r,t}(w): finite product over p | rt with chi(p) = 1; exact rational
// route at w = 1, numerical otherwise.
Complex P_eval(std::uint64_t r, std::uint64_t t, const RealPrimitiveCharacter& chi,
               Complex w, const FactorSieve& sieve);

template <class P>
typename P::C P_eval_c(std::uint64_t r, std::uint64_t t,
                       const RealPrimitiveCharacter& chi, typename P::C w,
                       const FactorSieve& sieve);

struct Lemma6Sum {
  std::uint32_t R = 0;
  // Exact full double loop and exact diagonal part, for small R.
  std::optional<Rational> full_exact;
  std::optional<Rational> diagonal_exact;
  Real diagonal;        // diagonal-form sum, any R
  Real comparison;      // log^{1/2} R
  Real fitted_constant; // diagonal / comparison
};

// sum_{r,t <= R, (rt,6)=1} mu^2(r)/r mu^2(t)/t P_{r,t}(1), reported with
// its log^{1/2} R comparison. Full exact loop kept for R <= exact_threshold.
Lemma6Sum lemma6_double_sum(std::uint32_t R, const RealPrimitiveCharacter& chi,
                            const FactorSieve& sieve,
                            std::uint32_t exact_threshold = 200);

struct PGrowthScan {
  std::uint64_t rt_max = 0;
  double v_max = 0;
  Real fitted_constant;  // max |P(3/4+iv)| / (r t)^{3/2}
  std::uint64_t argmax_r = 0, argmax_t = 0;
  double argmax_v = 0;
};

// Lemma 6 growth bound as an empirical scan over squarefree pairs
// coprime to 6.
PGrowthScan p_growth_scan(std::uint64_t rt_max, double v_max, int v_samples,
                          const RealPrimitiveCharacter& chi, const FactorSieve& sieve);

// --- template implementations ---

template <class P>
typename P::C P_eval_c(std::uint64_t r, std::uint64_t t,
                       const RealPrimitiveCharacter& chi, typename P::C w,
                       const FactorSieve& sieve) {
  using R = typename P::R;
  using C = typename P::C;
  using std::exp;
  using std::log;
  require_p_product_operand(r, sieve, "r");
  require_p_product_operand(t, sieve, "t");
  C prod(R(1));
  for (const auto& pp : sieve.factorize(r * t).pairs) {
    if (chi(static_cast<long long>(pp.p)) != 1) continue;
    C x = exp(-w * log(R(static_cast<double>(pp.p))));
    R frt = rational_to<R>(pseudo_f_pair_at_prime(pp.p, r, t));
    prod *= (R(1) + R(2) * frt * x) / (R(1) + R(2) * x);
  }
  return prod;
}

template <class P>
EvalResultT<P> Q_accel(const RealPrimitiveCharacter& chi, typename P::C w,
                       std::uint32_t p_max) {
  using R = typename P::R;
  using C = typename P::C;
  using std::exp;
  using std::log;
  using std::pow;

  const R sigma = w.real();
  if (sigma <= R(1) / 2) throw std::domain_error("Q_accel: requires Re w > 1/2");
  if (p_max < 100) throw std::invalid_argument("Q_accel: p_max >= 100 required");

  const C two_w = R(2) * w;
  auto z2 = zeta_eta<P>(two_w);
  auto l2 = L_hurwitz<P>(two_w, chi);
  C value = R(1) / (z2.value * z2.value * l2.value);

  const auto primes = primes_up_to(p_max);
  // every prime dividing q must be inside the truncated product
  {
    std::uint64_t q = chi.modulus();
    for (std::uint32_t p : *primes) {
      if (p > p_max) break;
      while (q % p == 0) q /= p;
    }
    if (q != 1) throw std::invalid_argument("Q_accel: p_max below a prime factor of q");
  }

  for (std::uint32_t p : *primes) {
    if (p > p_max) break;
    C x = exp(-w * log(R(p)));
    int c = chi(static_cast<long long>(p));
    C local;
    if (c == 1) {
      // (1+2x) / ((1-x)(1+x)^3)
      C oneplus = R(1) + x;
      local = (R(1) + R(2) * x) / ((R(1) - x) * oneplus * oneplus * oneplus);
    } else if (c == -1) {
      C x2 = x * x;
      local = R(1) / (R(1) - x2 * x2);
    } else {
      // p | q: 1 / ((1-x)(1+x)^2)
      C oneplus = R(1) + x;
      local = R(1) / ((R(1) - x) * oneplus * oneplus);
    }
    value *= local;
  }

  // |log R_p| <= 10 p^{-3 sigma} for p > 100, summed by integral comparison
  R tail_log = 10 * pow(R(p_max), 1 - 3 * sigma) / (3 * sigma - 1);
  EvalResultT<P> out;
  out.value = value;
  using std::abs;
  out.error_bound = abs(value) * (exp(tail_log) - 1) +
                    abs(value) * (z2.error_bound + l2.error_bound) * 4;
  return out;
}

}  // namespace siegel
