#include "siegel/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/constants/constants.hpp>

#include "siegel/quadrature.hpp"

namespace siegel {

namespace {

// mu^2(n) chi0(n) a(n) f_r f_t(n) as an exact rational; 0 off the support.
Rational series_coefficient(std::uint64_t n, const RealPrimitiveCharacter& chi,
                            std::uint64_t r, std::uint64_t t,
                            const FactorSieve& sieve) {
  if (!sieve.is_squarefree(n)) return Rational(0);
  if (std::gcd(n, static_cast<std::uint64_t>(chi.modulus())) != 1) return Rational(0);
  return Rational(a_coeff(n, chi, sieve)) * pseudo_f_r(n, r, sieve) *
         pseudo_f_r(n, t, sieve);
}

std::uint64_t terms_below(const Real& y) {
  using std::floor;
  Real f = floor(y);
  std::uint64_t n = f.convert_to<std::uint64_t>();
  if (Real(static_cast<double>(n)) >= y && n > 0) --n;  // weight vanishes at n = y
  return n;
}

}  // namespace

Real weighted_sum(const WeightedSumSpec& spec, const FactorSieve& sieve) {
  using std::exp;
  using std::log;
  if (spec.chi == nullptr) throw std::invalid_argument("weighted_sum: chi required");
  if (spec.y <= 1) return Real(0);
  const std::uint64_t n_max = terms_below(spec.y);

  return parallel_sum<Real>(
      1, static_cast<std::int64_t>(n_max) + 1, 1024,
      [&](std::int64_t lo, std::int64_t hi) {
        Real acc{};
        for (std::int64_t n = lo; n < hi; ++n) {
          Rational c = series_coefficient(static_cast<std::uint64_t>(n), *spec.chi,
                                          spec.r, spec.t, sieve);
          if (c == 0) continue;
          Real nr(static_cast<double>(n));
          acc += to_real(c) * exp(-spec.beta * log(nr)) * (1 - nr / spec.y);
        }
        return acc;
      });
}

ContourDecomposition contour_decomposition(const WeightedSumSpec& spec,
                                           const FactorSieve& sieve,
                                           const ContourOptions& opt) {
  using std::exp;
  using std::log;
  using std::pow;
  if (spec.chi == nullptr) {
    throw std::invalid_argument("contour_decomposition: chi required");
  }
  const RealPrimitiveCharacter& chi = *spec.chi;
  const Real beta = spec.beta;
  const Real y = spec.y;
  if (beta <= Real("0.5") || beta >= 1) {
    throw std::domain_error("contour_decomposition: beta in (1/2, 1) required");
  }
  if (y <= 1) throw std::domain_error("contour_decomposition: y > 1 required");

  primes_up_to(opt.q_prime_cutoff);  // warm the shared prime cache up front

  ContourDecomposition out;
  out.direct_sum = weighted_sum(spec, sieve);

  const Real pi = boost::math::constants::pi<Real>();
  const Real log_y = log(y);

  // pole of zeta(w + beta) at w = 1 - beta
  Real L1 = L_one(chi);
  auto Q1 = Q_accel<MpProfile>(chi, Complex(Real(1)), opt.q_prime_cutoff);
  Rational P1 = P_at_one_closed(spec.r, spec.t, chi, sieve);
  out.main_term = exp((1 - beta) * log_y) * L1 * Q1.value.real() * to_real(P1) /
                  ((1 - beta) * (2 - beta));

  // kernel pole at w = 0: residue G(beta)
  Complex beta_c(beta);
  auto zb = zeta_eta<MpProfile>(beta_c);
  auto lb = L_hurwitz<MpProfile>(beta_c, chi);
  auto qb = Q_accel<MpProfile>(chi, beta_c, opt.q_prime_cutoff);
  Complex pb = P_eval_c<MpProfile>(spec.r, spec.t, chi, beta_c, sieve);
  out.zero_residue = (zb.value * lb.value * qb.value * pb).real();
  Real residue_err = abs(lb.value * qb.value * pb) * zb.error_bound +
                     abs(zb.value * qb.value * pb) * lb.error_bound +
                     abs(zb.value * lb.value * pb) * qb.error_bound;

  // shifted line Re s = 3/4; kernel variable w = s - beta
  const double a = 0.75 - beta.convert_to<double>();
  const double ly = log_y.convert_to<double>();
  const double yb = std::exp(a * ly);  // y^{3/4 - beta}

  double envelope = 0;  // max |G(3/4+iv)| / ((v+2)^{1/4} log^2(v+2))
  double g_at_V = 0;
  auto G = [&](double v) {
    std::complex<double> s(0.75, v);
    auto z = zeta_eta<DoubleProfile>(s);
    auto l = L_hurwitz<DoubleProfile>(s, chi);
    auto q = Q_accel<DoubleProfile>(chi, s, opt.q_prime_cutoff);
    std::complex<double> p = P_eval_c<DoubleProfile>(spec.r, spec.t, chi, s, sieve);
    std::complex<double> g = z.value * l.value * q.value * p;
    double lg = std::log(v + 2);
    envelope = std::max(envelope, std::abs(g) / (std::pow(v + 2, 0.25) * lg * lg));
    return g;
  };
  auto integrand = [&](double v) {
    std::complex<double> w(a, v);
    std::complex<double> kern = std::exp(w * ly) / (w * (w + 1.0));
    return (G(v) * kern).real();
  };

  double panel = opt.panel_width;
  if (panel <= 0) panel = std::min(2.0, 3.0 / std::max(ly, 1.0));
  double quad_err = 0;
  double body = composite_gauss<double>(integrand, 0.0, opt.V, panel, &quad_err);
  out.remainder_integral = Real(body) / pi;
  out.quadrature_error = Real(quad_err) / pi;

  {
    std::complex<double> gv = G(opt.V);
    g_at_V = std::abs(gv);
  }
  const double V = opt.V;
  double h_at_V = g_at_V * yb / std::abs(std::complex<double>(a, V) *
                                         std::complex<double>(a + 1, V));
  out.tail_estimate = Real(2 * h_at_V / (boost::math::constants::pi<double>() *
                                         std::max(std::abs(ly), 1e-9)));

  // fitted-envelope bound: |G| <= C (v+2)^{1/4} log^2(v+2), kernel <= y^a/v^2
  double Lv = std::log(2 * V);
  double env_int = std::pow(V, -0.75) *
                   ((4.0 / 3.0) * Lv * Lv + (32.0 / 9.0) * Lv + 128.0 / 27.0);
  double cprime = 2 * envelope * std::pow(1 + 2 / V, 0.25);
  out.tail_bound_crude =
      Real(cprime * yb * env_int / boost::math::constants::pi<double>());

  out.identity_defect = abs(out.direct_sum - out.main_term - out.zero_residue -
                            out.remainder_integral);
  out.error_budget = out.quadrature_error + out.tail_estimate + residue_err +
                     Q1.error_bound * abs(Real(L1)) + Real("1e-10") * Real(V);
  out.pass = out.identity_defect <= opt.tolerance;
  return out;
}

LemmaReport contour_report(const WeightedSumSpec& spec, const FactorSieve& sieve,
                           const ContourOptions& opt) {
  auto res = contour_decomposition(spec, sieve, opt);
  LemmaReport rep;
  rep.id = "theorem-contour";
  rep.inputs["d"] = spec.chi->discriminant();
  rep.inputs["beta"] = real_entry(spec.beta);
  rep.inputs["y"] = real_entry(spec.y);
  rep.inputs["r"] = spec.r;
  rep.inputs["t"] = spec.t;
  rep.inputs["V"] = opt.V;
  rep.inputs["tolerance"] = real_entry(opt.tolerance);
  rep.measured["direct_sum"] = real_entry(res.direct_sum);
  rep.measured["main_term"] = real_entry(res.main_term);
  rep.measured["zero_residue"] = real_entry(res.zero_residue);
  rep.measured["remainder_integral"] = real_entry(res.remainder_integral);
  rep.measured["quadrature_error"] = real_entry(res.quadrature_error);
  rep.measured["tail_estimate"] = real_entry(res.tail_estimate);
  rep.measured["tail_bound_crude"] = real_entry(res.tail_bound_crude);
  rep.comparison["identity_defect"] = real_entry(res.identity_defect);
  rep.comparison["error_budget"] = real_entry(res.error_budget);
  if (!res.pass && res.identity_defect <= res.error_budget) {
    rep.verdict = "inconclusive";
    rep.detail = "defect above tolerance but inside the error budget; raise V";
  } else {
    rep.verdict = res.pass ? "pass" : "fail";
  }
  return rep;
}

AggregatedSum aggregated_sum(const RealPrimitiveCharacter& chi, Real beta,
                             std::uint32_t R, Real y, const FactorSieve& sieve,
                             std::uint64_t work_limit) {
  using std::exp;
  using std::log;
  if (R < 1) throw std::invalid_argument("aggregated_sum: R >= 1");
  if (y <= 1) throw std::domain_error("aggregated_sum: y > 1 required");
  const std::uint64_t n_max = terms_below(y);

  // mollifier support: squarefree r <= R coprime to 6, with weights mu^2(r)/r
  std::vector<std::uint32_t> rs;
  for (std::uint32_t r = 1; r <= R; ++r) {
    if (r % 2 != 0 && r % 3 != 0 && sieve.is_squarefree(r)) rs.push_back(r);
  }
  if (n_max * rs.size() > work_limit) {
    throw ResourceGuard("aggregated_sum: y * R work product exceeds the budget");
  }

  std::vector<Rational> fval(R + 1);
  for (std::uint32_t g = 1; g <= R; ++g) fval[g] = pseudo_f(g, sieve);

  Rational psi1(0);
  for (std::uint32_t r : rs) psi1 += Rational(1, r);

  AggregatedSum out;
  out.discriminant = chi.discriminant();
  out.beta = beta;
  out.R = R;
  out.y = y;
  out.psi_one = to_real(psi1);

  out.lhs = parallel_sum<Real>(
      1, static_cast<std::int64_t>(n_max) + 1, 512,
      [&](std::int64_t lo, std::int64_t hi) {
        Real acc{};
        for (std::int64_t ns = lo; ns < hi; ++ns) {
          auto n = static_cast<std::uint64_t>(ns);
          if (!sieve.is_squarefree(n)) continue;
          if (std::gcd(n, static_cast<std::uint64_t>(chi.modulus())) != 1) continue;
          Rational psi(0);
          for (std::uint32_t r : rs) {
            psi += fval[std::gcd(n, static_cast<std::uint64_t>(r))] / r;
          }
          Rational term = Rational(a_coeff(n, chi, sieve)) * psi * psi;
          if (term == 0) continue;
          Real nr(static_cast<double>(n));
          acc += to_real(term) * exp(-beta * log(nr)) * (1 - nr / y);
        }
        return acc;
      });

  // rounded after the exact square so the y = 2 run reproduces the n = 1
  // term bit-for-bit
  out.lower_bound = to_real(psi1 * psi1) * (1 - 1 / y);

  Rational p_weights(0);
  for (std::uint32_t r : rs) {
    for (std::uint32_t t : rs) {
      p_weights += P_at_one_closed(r, t, chi, sieve) / (Rational(r) * t);
    }
  }
  Real L1 = L_one(chi);
  auto Q1 = Q_accel<MpProfile>(chi, Complex(Real(1)), 20'000);
  out.rhs_main = exp((1 - beta) * log(y)) * L1 * Q1.value.real() *
                 to_real(p_weights) / ((1 - beta) * (2 - beta));

  Real slack = out.lower_bound - out.lhs;
  out.defect = slack > 0 ? slack : Real(0);
  return out;
}

LemmaReport aggregate_report(const AggregatedSum& res) {
  LemmaReport rep;
  rep.id = "theorem-aggregate";
  rep.inputs["d"] = res.discriminant;
  rep.inputs["beta"] = real_entry(res.beta);
  rep.inputs["R"] = res.R;
  rep.inputs["y"] = real_entry(res.y);
  rep.measured["lhs"] = real_entry(res.lhs);
  rep.measured["psi_one"] = real_entry(res.psi_one);
  rep.measured["rhs_main"] = real_entry(res.rhs_main);
  rep.comparison["lower_bound"] = real_entry(res.lower_bound);
  rep.comparison["defect"] = real_entry(res.defect);
  rep.verdict = res.defect == 0 ? "pass" : "fail";
  if (res.defect != 0) rep.detail = "positivity lower bound violated";
  return rep;
}

LemmaReport aggregate_report(const RealPrimitiveCharacter& chi, Real beta,
                             std::uint32_t R, Real y, const FactorSieve& sieve,
                             std::uint64_t work_limit) {
  return aggregate_report(aggregated_sum(chi, beta, R, y, sieve, work_limit));
}

BoundReport bound_report(Real q, Real c1) {
  using std::log;
  using std::pow;
  if (q < 3) throw std::domain_error("bound_report: q >= 3 required");
  if (c1 <= 0) throw std::domain_error("bound_report: c1 > 0 required");
  BoundReport out;
  out.q = q;
  out.c1 = c1;
  const Real lq = log(q);
  out.log_R = pow(3 * lq * lq / c1, Real(2) / 3);
  out.log_y = 32 * out.log_R;
  out.self_check = c1 * pow(out.log_R, Real(3) / 2) / (lq * lq);
  out.c = log(Real(3)) / 32 * pow(c1 / 3, Real(2) / 3);
  out.gap = out.c / pow(lq, Real(4) / 3);
  out.beta_bound = 1 - out.gap;
  return out;
}

LemmaReport bound_report_json(Real q, Real c1) {
  auto res = bound_report(q, c1);
  LemmaReport rep;
  rep.id = "theorem-bound";
  rep.inputs["q"] = real_entry(res.q);
  rep.inputs["c1"] = real_entry(res.c1);
  rep.measured["log_R"] = real_entry(res.log_R);
  rep.measured["log_y"] = real_entry(res.log_y);
  rep.measured["c"] = real_entry(res.c);
  rep.measured["gap"] = real_entry(res.gap);
  rep.measured["beta_bound"] = real_entry(res.beta_bound);
  rep.comparison["self_check"] = real_entry(res.self_check);
  rep.detail = "exploratory parameter bookkeeping, not a certification";
  rep.verdict = abs(res.self_check - 3) < Real("1e-40") ? "pass" : "fail";
  return rep;
}

}  // namespace siegel
