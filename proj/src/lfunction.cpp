#include "siegel/lfunction.hpp"

#include <cmath>

namespace siegel {

using std::abs;
using std::exp;
using std::log;
using std::pow;

EvalResult zeta(Complex s) {
  if (s.real() <= 0) throw std::domain_error("zeta: requires Re s > 0");
  if (s.imag() == 0 && s.real() == 1) throw std::domain_error("zeta: pole at s = 1");
  return zeta_eta<MpProfile>(s);
}

EvalResult L_chi(Complex s, const RealPrimitiveCharacter& chi, std::uint64_t cutoff) {
  if (s.real() <= Real(1) / 2) throw std::domain_error("L_chi: requires Re s > 1/2");
  Complex sum{};
  for (std::uint64_t n = 1; n <= cutoff; ++n) {
    int c = chi(static_cast<long long>(n));
    if (c == 0) continue;
    sum += Real(c) * exp(-s * log(Real(n)));
  }
  EvalResult out;
  out.value = sum;
  const Real sigma = s.real();
  out.error_bound = Real(chi.max_partial_sum()) * (1 + abs(s) / sigma) *
                    pow(Real(cutoff), -sigma);
  return out;
}

std::uint64_t L_chi_required_cutoff(Complex s, const RealPrimitiveCharacter& chi,
                                    Real err) {
  if (err <= 0) throw std::invalid_argument("L_chi_required_cutoff: err must be > 0");
  const Real sigma = s.real();
  if (sigma <= Real(1) / 2) throw std::domain_error("L_chi: requires Re s > 1/2");
  Real n = pow(Real(chi.max_partial_sum()) * (1 + abs(s) / sigma) / err, 1 / sigma);
  if (n > Real("1e18")) {
    throw std::runtime_error(
        "L_chi: requested error needs cutoff beyond 1e18; required N ~ " +
        decimal_string(n, 6));
  }
  return static_cast<std::uint64_t>(ceil(n).convert_to<double>());
}

Real L_one(const RealPrimitiveCharacter& chi) {
  const std::uint64_t q = chi.modulus();
  Real sum{};
  for (std::uint64_t a = 1; a < q; ++a) {
    int c = chi(static_cast<long long>(a));
    if (c == 0) continue;
    sum += Real(c) * digamma(Real(static_cast<double>(a)) / Real(static_cast<double>(q)));
  }
  return -sum / Real(static_cast<double>(q));
}

Real L_real(Real sigma, const RealPrimitiveCharacter& chi) {
  if (sigma == 1) return L_one(chi);
  return L_hurwitz<MpProfile>(Complex(sigma), chi).value.real();
}

RealZeroScan scan_real_zeros(const std::function<Real(Real)>& f,
                             const std::function<Real(Real)>& f_err,
                             Real a, Real b, Real step, Real tol) {
  if (!(a < b) || step <= 0 || tol <= 0) {
    throw std::invalid_argument("scan_real_zeros: bad interval/step/tol");
  }
  RealZeroScan scan;
  scan.a = a;
  scan.b = b;
  scan.grid_step = step;

  Real x0 = a;
  Real v0 = f(x0);
  if (abs(v0) <= f_err(x0)) scan.inconclusive = true;
  while (x0 < b) {
    Real x1 = x0 + step;
    if (x1 > b) x1 = b;
    Real v1 = f(x1);
    if (abs(v1) <= f_err(x1)) scan.inconclusive = true;
    if (v0 * v1 < 0) {
      Real lo = x0, hi = x1, flo = v0;
      while (hi - lo > tol) {
        Real mid = (lo + hi) / 2;
        Real fm = f(mid);
        if (fm == 0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      scan.zeros.push_back({x0, x1, (lo + hi) / 2, hi - lo});
    }
    x0 = x1;
    v0 = v1;
    if (x1 >= b) break;
  }
  return scan;
}

RealZeroScan find_real_zeros(const RealPrimitiveCharacter& chi, Real a, Real b,
                             Real step, Real tol) {
  if (!(a > Real(1) / 2 && b < 1)) {
    throw std::invalid_argument("find_real_zeros: interval must lie in (1/2, 1)");
  }
  Real err_cache{};
  auto f = [&chi, &err_cache](Real sigma) {
    auto r = L_hurwitz<MpProfile>(Complex(sigma), chi);
    err_cache = r.error_bound;
    return Real(r.value.real());
  };
  auto f_err = [&err_cache](Real) { return err_cache; };
  auto scan = scan_real_zeros(f, f_err, a, b, step, tol);
  scan.discriminant = chi.discriminant();
  return scan;
}

Lemma1Scan lemma1_constant_scan(double t_lo, double t_hi, int samples,
                                const RealPrimitiveCharacter* chi) {
  if (samples < 1) throw std::invalid_argument("lemma1_constant_scan: samples >= 1");
  Lemma1Scan out;
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  out.samples = samples;
  out.fitted_zeta_constant = 0;
  if (chi != nullptr) {
    out.fitted_L_constant = Real(0);
    out.discriminant = chi->discriminant();
  }
  // double precision: the fitted envelope constants carry no error bars
  const double q = chi ? static_cast<double>(chi->modulus()) : 1.0;
  double zbest = 0, lbest = 0;
  for (int i = 0; i < samples; ++i) {
    double t = samples == 1 ? t_lo : t_lo + (t_hi - t_lo) * i / (samples - 1);
    std::complex<double> s(0.75, t);
    double at = std::abs(t);
    double zdenom = std::pow(at + 2, 0.125) * std::log(at + 2);
    double zratio = std::abs(zeta_eta<DoubleProfile>(s).value) / zdenom;
    if (zratio > zbest) {
      zbest = zratio;
      out.zeta_argmax_t = t;
    }
    if (chi != nullptr) {
      double ldenom = std::pow(q * (at + 2), 0.125) * std::log(q * (at + 2));
      double lratio = std::abs(L_hurwitz<DoubleProfile>(s, *chi).value) / ldenom;
      if (lratio > lbest) {
        lbest = lratio;
        out.L_argmax_t = t;
      }
    }
  }
  out.fitted_zeta_constant = zbest;
  if (chi != nullptr) out.fitted_L_constant = Real(lbest);
  return out;
}

Lemma2Ratios lemma2_ratios(const RealPrimitiveCharacter& chi, Real beta) {
  if (!(beta > Real(1) / 2 && beta < 1)) {
    throw std::invalid_argument("lemma2_ratios: beta must lie in (1/2, 1)");
  }
  Lemma2Ratios out;
  out.L1 = L_one(chi);
  Real gap = 1 - beta;
  Real logq = log(Real(static_cast<double>(chi.modulus())));
  out.rho1 = out.L1 / gap;
  out.rho2 = out.rho1 / (logq * logq);
  // digamma-based L(1) is accurate to working precision; propagate a
  // conservative ulp-scale bound through the division
  out.error_bound = abs(out.rho1) * Real("1e-40");
  return out;
}

}  // namespace siegel
