#pragma once

#include <optional>

#include "siegel/euler_products.hpp"
#include "siegel/report.hpp"

namespace siegel {

// Truncated power series with exact rational coefficients, c[0..D].
// Every Euler local factor handled here has c[0] = 1.
struct RationalSeries {
  std::vector<Rational> c;

  static RationalSeries one(int degree);
  static RationalSeries poly(std::vector<Rational> coeffs, int degree);
  // 1 / (1 - a x)
  static RationalSeries geometric(const Rational& a, int degree);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  RationalSeries operator*(const RationalSeries& other) const;
  bool operator==(const RationalSeries&) const = default;
};

// One Euler factor as a polynomial in x = p^{-w}.
struct LocalFactorPolynomial {
  std::uint64_t p = 0;
  std::vector<Rational> coeffs;  // coeffs[0] == 1 throughout this artifact
};

// Left local factor of the Lemma 7 Dirichlet series at p:
// 1 + chi0(p) a(p) f_r f_t(p) x  (degree <= 1; mu^2 kills higher powers).
LocalFactorPolynomial lemma7_left_local(std::uint64_t p,
                                        const RealPrimitiveCharacter& chi,
                                        std::uint64_t r, std::uint64_t t);

struct Lemma7LocalResult {
  bool pass = true;
  int first_bad_degree = -1;
};

// Coefficient-wise exact comparison of the left local factor against the
// product of the zeta, L, Q and P local expansions, up to degree D.
Lemma7LocalResult lemma7_local_check(std::uint64_t p, std::uint64_t r, std::uint64_t t,
                                     const RealPrimitiveCharacter& chi, int degree,
                                     const FactorSieve& sieve);

// Sweep over all primes <= p_max for fixed (chi, r, t).
LemmaReport lemma7_local_report(const RealPrimitiveCharacter& chi, std::uint64_t r,
                                std::uint64_t t, std::uint64_t p_max, int degree,
                                const FactorSieve& sieve);

struct Lemma7SeriesResult {
  bool pass = true;
  std::uint64_t first_mismatch = 0;
  Rational lhs_at_mismatch, rhs_at_mismatch;
};

// First N Dirichlet coefficients of zeta * L * Q * P_{r,t} by explicit
// convolution of local expansions, compared exactly against
// mu^2(n) chi0(n) a(n) f_r f_t(n).
Lemma7SeriesResult lemma7_series_check(std::uint64_t N, std::uint64_t r,
                                       std::uint64_t t,
                                       const RealPrimitiveCharacter& chi,
                                       const FactorSieve& sieve);

LemmaReport lemma7_series_report(const RealPrimitiveCharacter& chi, std::uint64_t r,
                                 std::uint64_t t, std::uint64_t N,
                                 const FactorSieve& sieve);

struct Lemma8Result {
  Real y, b, V;
  Real numeric;        // truncated line integral + tail correction
  Real closed_form;    // max(0, 1 - 1/y)
  Real defect;
  Real quadrature_error;
  Real tail_uncertainty;  // bound on the part of the tail not corrected for
  bool inconclusive = false;
  Real required_V;     // V that would bring the tail under tolerance
};

// (1/2 pi i) int_{b-iV}^{b+iV} y^w / (w (w+1)) dw, with the |v| > V part
// handled exactly (y = 1) or by two integrations by parts (y != 1).
Lemma8Result lemma8_quadrature(Real y, Real b, Real V, Real step,
                               Real tolerance = Real("1e-9"));

// V making the post-IBP tail remainder <= tolerance/2.
Real lemma8_required_V(Real y, Real b, Real tolerance);

LemmaReport lemma8_report(Real y, Real b, std::optional<Real> V_opt,
                          std::optional<Real> step_opt,
                          Real tolerance = Real("1e-9"));

struct Lemma3Result {
  std::uint64_t R;
  std::optional<Rational> exact;     // for R <= 1000
  Real sum;                          // sum_{r<=R,(r,6)=1} mu^2(r)/r
  Real comparison;                   // (3/pi^2) log R
  Real ratio;
  Real D1, D2, D4;                   // D(R), D(2R), D(4R): sum - (3/pi^2) log
};

Lemma3Result lemma3_partial_sum(std::uint64_t R, const FactorSieve& sieve);

LemmaReport lemma3_report(std::uint64_t R, const FactorSieve& sieve,
                          double ratio_band = 0.2);

struct Lemma5Result {
  std::uint64_t x;
  double sum;        // sum_{n<=x} 2^{-omega(n)}; exact in double at desk scale
  Real lambda;       // S(x) sqrt(log x) / x
};

Lemma5Result lemma5_partial_sum(std::uint64_t x);

// Reports fitted lambda at x and x/10, with the relative drift.
LemmaReport lemma5_report(std::uint64_t x, double stability_band = 0.05);

}  // namespace siegel
