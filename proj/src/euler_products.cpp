#include "siegel/euler_products.hpp"

#include <mutex>
#include <numeric>

namespace siegel {

using std::abs;
using std::exp;
using std::log;
using std::pow;
using std::sqrt;

std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint32_t n) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<std::uint32_t>> primes;
  static std::uint32_t covered = 1;
  std::lock_guard<std::mutex> lock(mu);
  if (n > covered) {
    std::uint32_t new_limit = std::max(n, covered * 2);
    std::vector<bool> comp(static_cast<std::size_t>(new_limit) + 1, false);
    auto fresh = std::make_shared<std::vector<std::uint32_t>>();
    for (std::uint64_t i = 2; i <= new_limit; ++i) {
      if (comp[i]) continue;
      fresh->push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= new_limit; j += i) comp[j] = true;
    }
    primes = std::move(fresh);
    covered = new_limit;
  }
  // ascending; callers iterate while p <= their own n
  return primes;
}

Real Q_tail_log_bound(const RealPrimitiveCharacter& chi, Real sigma,
                      std::uint32_t p_max) {
  if (sigma <= Real(1) / 2) throw std::domain_error("Q tail: requires Re w > 1/2");
  Real P(p_max);
  Real tail = 3 * pow(P, 1 - 2 * sigma) / (2 * sigma - 1) +
              2 * pow(P, 1 - 3 * sigma) / (3 * sigma - 1) +
              pow(P, 1 - 2 * sigma) / (2 * sigma - 1);
  // primes dividing q beyond the cutoff contribute p^{-sigma} each
  std::uint64_t q = chi.modulus();
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    while (q % p == 0) q /= p;
    if (p > p_max) tail += pow(Real(static_cast<double>(p)), -sigma);
  }
  if (q > 1 && q > p_max) tail += pow(Real(static_cast<double>(q)), -sigma);
  return tail;
}

EvalResult Q_eval(const RealPrimitiveCharacter& chi, Complex w, std::uint32_t p_max) {
  const Real sigma = w.real();
  if (sigma <= Real(1) / 2) throw std::domain_error("Q_eval: requires Re w > 1/2");
  Complex value(Real(1));
  const auto primes = primes_up_to(std::max<std::uint32_t>(p_max, 2));
  for (std::uint32_t p : *primes) {
    if (p > p_max) break;
    Complex x = exp(-w * log(Real(p)));
    int c = chi(static_cast<long long>(p));
    if (c == 1) {
      value *= Real(1) - 3 * x * x + 2 * x * x * x;
    } else if (c == -1) {
      value *= Real(1) - x * x;
    } else {
      value *= Real(1) - x;
    }
  }
  EvalResult out;
  out.value = value;
  out.error_bound = abs(value) * (exp(Q_tail_log_bound(chi, sigma, p_max)) - 1);
  return out;
}

Rational pseudo_f_pair_at_prime(std::uint64_t p, std::uint64_t r, std::uint64_t t) {
  bool pr = (r % p == 0), pt = (t % p == 0);
  if (pr && pt) return Rational(BigInt(p) * BigInt(p), 4);
  if (pr || pt) return Rational(-BigInt(p), 2);
  return Rational(1);
}

void require_p_product_operand(std::uint64_t n, const FactorSieve& sieve,
                               const char* name) {
  if (n == 0 || !sieve.is_squarefree(n)) {
    throw std::invalid_argument(std::string("P product: ") + name +
                                " must be squarefree");
  }
  if (n % 2 == 0 || n % 3 == 0) {
    throw std::invalid_argument(std::string("P product: ") + name +
                                " must be coprime to 6");
  }
}

Rational P_at_one_direct(std::uint64_t r, std::uint64_t t,
                         const RealPrimitiveCharacter& chi, const FactorSieve& sieve) {
  require_p_product_operand(r, sieve, "r");
  require_p_product_operand(t, sieve, "t");
  Rational prod(1);
  for (const auto& pp : sieve.factorize(r * t).pairs) {
    if (chi(static_cast<long long>(pp.p)) != 1) continue;
    Rational frt = pseudo_f_pair_at_prime(pp.p, r, t);
    Rational x(1, BigInt(pp.p));
    prod *= (1 + 2 * frt * x) / (1 + 2 * x);
  }
  return prod;
}

Rational P_at_one_closed(std::uint64_t r, std::uint64_t t,
                         const RealPrimitiveCharacter& chi, const FactorSieve& sieve) {
  require_p_product_operand(r, sieve, "r");
  require_p_product_operand(t, sieve, "t");
  std::uint64_t g = std::gcd(r, t);
  for (const auto& pp : sieve.factorize(r * t / (g * g)).pairs) {
    if (chi(static_cast<long long>(pp.p)) == 1) return Rational(0);
  }
  Rational prod(1);
  for (const auto& pp : sieve.factorize(g).pairs) {
    if (chi(static_cast<long long>(pp.p)) == 1) prod *= Rational(BigInt(pp.p), 2);
  }
  return prod;
}

Complex P_eval(std::uint64_t r, std::uint64_t t, const RealPrimitiveCharacter& chi,
               Complex w, const FactorSieve& sieve) {
  if (w.imag() == 0 && w.real() == 1) {
    return Complex(to_real(P_at_one_direct(r, t, chi, sieve)));
  }
  return P_eval_c<MpProfile>(r, t, chi, w, sieve);
}

namespace {

std::vector<std::uint32_t> squarefree_coprime6_up_to(std::uint32_t R,
                                                     const FactorSieve& sieve) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t r = 1; r <= R; ++r) {
    if (r % 2 == 0 || r % 3 == 0) continue;
    if (!sieve.is_squarefree(r)) continue;
    out.push_back(r);
  }
  return out;
}

}  // namespace

Lemma6Sum lemma6_double_sum(std::uint32_t R, const RealPrimitiveCharacter& chi,
                            const FactorSieve& sieve, std::uint32_t exact_threshold) {
  if (R < 1) throw std::invalid_argument("lemma6_double_sum: R >= 1");
  Lemma6Sum out;
  out.R = R;
  auto rs = squarefree_coprime6_up_to(R, sieve);

  // diagonal form: sum mu^2(r)/r^2 * prod_{p|r, chi(p)=1} p/2
  Real diag{};
  for (std::uint32_t r : rs) {
    Rational term(1, BigInt(r) * r);
    for (const auto& pp : sieve.factorize(r).pairs) {
      if (chi(static_cast<long long>(pp.p)) == 1) term *= Rational(BigInt(pp.p), 2);
    }
    diag += to_real(term);
  }
  out.diagonal = diag;
  out.comparison = R == 1 ? Real(0) : sqrt(log(Real(R)));
  out.fitted_constant = R == 1 ? diag : diag / out.comparison;

  if (R <= exact_threshold) {
    Rational full(0), diagonal(0);
    for (std::uint32_t r : rs) {
      for (std::uint32_t t : rs) {
        Rational p1 = P_at_one_closed(r, t, chi, sieve);
        if (p1 == 0) continue;
        Rational term = p1 / (BigInt(r) * BigInt(t));
        full += term;
        if (r == t) diagonal += term;
      }
    }
    out.full_exact = full;
    out.diagonal_exact = diagonal;
  }
  return out;
}

PGrowthScan p_growth_scan(std::uint64_t rt_max, double v_max, int v_samples,
                          const RealPrimitiveCharacter& chi, const FactorSieve& sieve) {
  if (v_samples < 1) throw std::invalid_argument("p_growth_scan: v_samples >= 1");
  PGrowthScan out;
  out.rt_max = rt_max;
  out.v_max = v_max;
  out.fitted_constant = 0;
  auto rs = squarefree_coprime6_up_to(static_cast<std::uint32_t>(rt_max), sieve);
  const Real three_quarters = Real(3) / 4;
  for (std::uint32_t r : rs) {
    for (std::uint32_t t : rs) {
      Real norm = pow(Real(r) * Real(t), Real(3) / 2);
      for (int i = 0; i < v_samples; ++i) {
        double v = v_samples == 1 ? v_max : v_max * i / (v_samples - 1);
        Complex w(three_quarters, Real(v));
        Real ratio = abs(P_eval_c<MpProfile>(r, t, chi, w, sieve)) / norm;
        if (ratio > out.fitted_constant) {
          out.fitted_constant = ratio;
          out.argmax_r = r;
          out.argmax_t = t;
          out.argmax_v = v;
        }
      }
    }
  }
  return out;
}

}  // namespace siegel
