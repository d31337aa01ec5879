#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "siegel/characters.hpp"
#include "siegel/zeta.hpp"

namespace siegel {

// Riemann zeta on Re s > 0, s != 1 (spec surface; eta acceleration).
EvalResult zeta(Complex s);

// Direct series sum_{n<=N} chi(n) n^{-s} with the Abel-summation tail
// bound S_max (1 + |s|/sigma) N^{-sigma}. Valid for Re s > 1/2.
EvalResult L_chi(Complex s, const RealPrimitiveCharacter& chi, std::uint64_t cutoff);

// Smallest cutoff making the Abel tail bound <= err; throws if none fits
// in uint64.
std::uint64_t L_chi_required_cutoff(Complex s, const RealPrimitiveCharacter& chi,
                                    Real err);

// Accelerated evaluation via the Hurwitz decomposition
// L(s,chi) = q^{-s} sum_a chi(a) zeta(s, a/q); full working precision.
// Requires Re s > 0, s != 1.
template <class P>
EvalResultT<P> L_hurwitz(typename P::C s, const RealPrimitiveCharacter& chi) {
  using R = typename P::R;
  using C = typename P::C;
  using std::exp;
  using std::log;
  const R q = R(static_cast<double>(chi.modulus()));
  C sum{};
  R err{};
  for (std::uint64_t a = 1; a < chi.modulus(); ++a) {
    int c = chi(static_cast<long long>(a));
    if (c == 0) continue;
    auto h = hurwitz_zeta<P>(s, R(static_cast<double>(a)) / q);
    sum += R(c) * h.value;
    err += h.error_bound;
  }
  C scale = exp(-s * log(q));
  EvalResultT<P> out;
  out.value = scale * sum;
  out.error_bound = abs(scale) * err;
  return out;
}

// L(1, chi) through the digamma formula -(1/q) sum chi(a) psi(a/q).
Real L_one(const RealPrimitiveCharacter& chi);

// L(sigma, chi) for real sigma in (0, infty); dispatches to the digamma
// formula at sigma == 1.
Real L_real(Real sigma, const RealPrimitiveCharacter& chi);

struct ZeroBracket {
  Real lo;
  Real hi;
  Real beta;       // refined zero
  Real tolerance;  // bisection tolerance actually met
};

struct RealZeroScan {
  long long discriminant = 0;
  Real a, b;
  Real grid_step;
  std::vector<ZeroBracket> zeros;
  bool inconclusive = false;  // evaluation error exceeded grid values somewhere
};

// Grid sign-scan + bisection on a real function with an error-bound
// companion; the generic core keeps the scanner testable against
// synthetic functions.
RealZeroScan scan_real_zeros(const std::function<Real(Real)>& f,
                             const std::function<Real(Real)>& f_err,
                             Real a, Real b, Real step, Real tol);

// Scan L(sigma, chi) for sign changes on [a, b] inside (1/2, 1).
RealZeroScan find_real_zeros(const RealPrimitiveCharacter& chi, Real a, Real b,
                             Real step = Real("1e-3"), Real tol = Real("1e-10"));

struct Lemma1Scan {
  double t_lo = 0, t_hi = 0;
  int samples = 0;
  Real fitted_zeta_constant;            // max |zeta(3/4+it)| / ((|t|+2)^{1/8} log(|t|+2))
  double zeta_argmax_t = 0;
  std::optional<Real> fitted_L_constant;  // analogue with the q factor
  double L_argmax_t = 0;
  long long discriminant = 0;
};

Lemma1Scan lemma1_constant_scan(double t_lo, double t_hi, int samples,
                                const RealPrimitiveCharacter* chi = nullptr);

struct Lemma2Ratios {
  Real L1;            // L(1, chi)
  Real rho1;          // L(1,chi) / (1 - beta)
  Real rho2;          // L(1,chi) / ((1 - beta) log^2 q)
  Real error_bound;   // evaluation error propagated to the ratios
};

Lemma2Ratios lemma2_ratios(const RealPrimitiveCharacter& chi, Real beta);

}  // namespace siegel
