#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "siegel/numeric.hpp"

namespace siegel {

// Value plus a rigorous truncation/remainder bound. `heuristic` marks
// results whose bound came from an empirical fit rather than analysis.
template <class P>
struct EvalResultT {
  typename P::C value{};
  typename P::R error_bound{};
  bool heuristic = false;
};

using EvalResult = EvalResultT<MpProfile>;

// Bernoulli number B_m as an exact rational (B_1 = -1/2).
const Rational& bernoulli(int m);

// Borwein eta-acceleration coefficients e_k = (d_n - d_k)/d_n, k < n,
// computed exactly and cached per n.
std::shared_ptr<const std::vector<Rational>> borwein_coefficients(int n);

namespace detail {

template <class RealT>
std::shared_ptr<const std::vector<RealT>> borwein_coefficients_as(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const std::vector<RealT>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto exact = borwein_coefficients(n);
  auto conv = std::make_shared<std::vector<RealT>>();
  conv->reserve(exact->size());
  for (const auto& q : *exact) conv->push_back(rational_to<RealT>(q));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, conv);
  return cache[n];
}

}  // namespace detail

// Riemann zeta on Re s > 0, s != 1, via the alternating eta series with
// Borwein's binomial acceleration. The remainder bound is Borwein's
// 3 (3+sqrt8)^{-n} (1+2|t|) e^{pi|t|/2} / |1-2^{1-s}|; the term count n is
// chosen from it.
template <class P>
EvalResultT<P> zeta_eta(typename P::C s) {
  using R = typename P::R;
  using C = typename P::C;
  using std::abs;
  using std::ceil;
  using std::exp;
  using std::log;

  const R sigma = s.real();
  const R t = abs(s.imag());
  if (sigma <= 0) throw std::domain_error("zeta_eta: requires Re s > 0");

  const R ln2 = log(R(2));
  const C one_minus = R(1) - exp((R(1) - s) * ln2);
  const R denom = abs(one_minus);
  if (denom == 0 || (sigma == 1 && s.imag() == 0)) {
    throw std::domain_error("zeta_eta: pole/eta-zero at s");
  }

  const R half_pi = boost::math::constants::half_pi<R>();
  const R ln_rate = log(R(3) + 2 * boost::math::constants::root_two<R>());
  R ln_budget = R(P::decimal_digits + 3) * log(R(10)) + half_pi * t +
                log(1 + 2 * t) + log(R(3)) + 2;
  if (denom < 1) ln_budget -= log(denom);
  int n = static_cast<int>(ceil(ln_budget / ln_rate)) + 5;
  if (n < 20) n = 20;
  n = ((n + 15) / 16) * 16;  // quantize so the coefficient cache stays small

  auto coeffs = detail::borwein_coefficients_as<R>(n);
  C sum{};
  for (int k = 0; k < n; ++k) {
    C term = (*coeffs)[static_cast<std::size_t>(k)] * exp(-s * log(R(k + 1)));
    if (k & 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }

  EvalResultT<P> out;
  out.value = sum / one_minus;
  out.error_bound =
      exp(log(R(3)) - R(n) * ln_rate + log(1 + 2 * t) + half_pi * t - log(denom));
  return out;
}

// Hurwitz zeta(s, a) for Re s > 0, s != 1, a > 0, by Euler-Maclaurin with
// an explicit remainder bound.
template <class P>
EvalResultT<P> hurwitz_zeta(typename P::C s, typename P::R a) {
  using R = typename P::R;
  using C = typename P::C;
  using std::abs;
  using std::ceil;
  using std::exp;
  using std::log;
  using std::pow;

  if (a <= 0) throw std::domain_error("hurwitz_zeta: requires a > 0");
  const R sigma = s.real();
  if (sigma <= 0) throw std::domain_error("hurwitz_zeta: requires Re s > 0");
  if (s.imag() == 0 && sigma == 1) throw std::domain_error("hurwitz_zeta: pole at s = 1");

  constexpr int M = std::is_same_v<R, double> ? 10 : 24;
  const R abs_s = abs(s);
  const R two_pi = boost::math::constants::two_pi<R>();
  const R digits = R(P::decimal_digits + 2);
  // (|s| + 2M + 2) / (2 pi (N+a)) <= 10^{-digits/(2M+2)} makes the
  // remainder comparable to 10^{-digits}.
  R grow = pow(R(10), digits / R(2 * M + 2));
  long long N = static_cast<long long>(
      ceil((abs_s + R(2 * M + 2)) / two_pi * grow)) + 10;

  // factorials up to 2M+2 and Pochhammer pieces are cheap; remainder bound:
  // |B_{2M+2}/(2M+2)!| |(s)_{2M+1}| (N+a)^{-sigma-2M-1} (|s+2M+1|/(sigma+2M+1))
  auto remainder_bound = [&](long long NN) {
    R fact(1);
    for (int i = 2; i <= 2 * M + 2; ++i) fact *= i;
    R poch(1);
    for (int j = 0; j <= 2 * M; ++j) poch *= abs(s + R(j));
    R b = abs(rational_to<R>(bernoulli(2 * M + 2))) / fact;
    R na = R(NN) + a;
    return b * poch * pow(na, -(sigma + R(2 * M + 1))) *
           (abs(s + R(2 * M + 1)) / (sigma + R(2 * M + 1)));
  };
  R rem = remainder_bound(N);
  const R target = pow(R(10), -digits);
  while (rem > target && N < (1LL << 24)) {
    N *= 2;
    rem = remainder_bound(N);
  }

  C sum{};
  for (long long k = 0; k < N; ++k) {
    sum += exp(-s * log(R(k) + a));
  }
  const R na = R(N) + a;
  const C log_na = C(log(na));
  sum += exp((R(1) - s) * log_na) / (s - R(1));
  sum += exp(-s * log_na) / R(2);

  C poch = s;  // (s)_{2j-1} built incrementally
  C na_pow = exp(-(s + R(1)) * log_na);
  const C na_inv2 = exp(C(-2 * log(na)));
  R fact(2);  // (2j)!
  for (int j = 1; j <= M; ++j) {
    sum += rational_to<R>(bernoulli(2 * j)) / fact * poch * na_pow;
    if (j < M) {
      poch *= (s + R(2 * j - 1)) * (s + R(2 * j));
      na_pow *= na_inv2;
      fact *= (2 * j + 1) * (2 * j + 2);
    }
  }

  EvalResultT<P> out;
  out.value = sum;
  out.error_bound = rem;
  return out;
}

// Digamma for real x > 0: shift to x + K >= 40, then the asymptotic series.
template <class RealT>
RealT digamma(RealT x) {
  using std::log;
  if (x <= 0) throw std::domain_error("digamma: requires x > 0");
  RealT shift{};
  while (x < 40) {
    shift += 1 / x;
    x += 1;
  }
  RealT psi = log(x) - 1 / (2 * x);
  RealT x2 = 1 / (x * x);
  RealT xp = x2;
  for (int j = 1; j <= 30; ++j) {
    psi -= rational_to<RealT>(bernoulli(2 * j)) / (2 * j) * xp;
    xp *= x2;
  }
  return psi - shift;
}

}  // namespace siegel
