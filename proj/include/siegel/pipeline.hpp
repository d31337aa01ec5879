#pragma once

#include <stdexcept>

#include "siegel/euler_products.hpp"
#include "siegel/identities.hpp"

namespace siegel {

// Thrown when a requested computation exceeds its work budget; the CLI
// maps it to a dedicated exit code.
struct ResourceGuard : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightedSumSpec {
  const RealPrimitiveCharacter* chi = nullptr;
  Real beta;
  Real y;
  std::uint64_t r = 1, t = 1;
};

// sum_{n < y} mu^2(n) chi0(n) a(n) f_r f_t(n) n^{-beta} (1 - n/y),
// deterministic chunked reduction.
Real weighted_sum(const WeightedSumSpec& spec, const FactorSieve& sieve);

struct ContourOptions {
  double V = 300;              // truncation height of the shifted line
  double panel_width = 0;      // 0: choose from log y
  std::uint32_t q_prime_cutoff = 20'000;
  Real tolerance = Real("1e-3");
};

struct ContourDecomposition {
  Real direct_sum;          // weighted Dirichlet sum, extended precision
  Real main_term;           // pole of zeta at w = 1: y^{1-beta} L Q P /((1-b)(2-b))
  Real zero_residue;        // kernel pole at the evaluation point: G(beta)
  Real remainder_integral;  // shifted-line integral, Re s = 3/4
  Real quadrature_error;
  Real tail_estimate;       // first integration-by-parts term at V (heuristic)
  Real tail_bound_crude;    // fitted-envelope integral past V (heuristic)
  Real identity_defect;     // |direct - (main + residue + remainder)|
  Real error_budget;
  bool pass = false;
};

// Verifies direct_sum = main_term + zero_residue + remainder_integral by
// shifting the kernel integral from the convergent half-plane to Re s = 3/4.
ContourDecomposition contour_decomposition(const WeightedSumSpec& spec,
                                           const FactorSieve& sieve,
                                           const ContourOptions& opt = {});

LemmaReport contour_report(const WeightedSumSpec& spec, const FactorSieve& sieve,
                           const ContourOptions& opt = {});

struct AggregatedSum {
  long long discriminant = 0;
  Real beta;
  std::uint32_t R = 0;
  Real y;
  Real psi_one;       // sum_{r<=R,(r,6)=1} mu^2(r)/r = psi(1)
  Real lhs;           // sum_n mu^2 chi0 a(n) n^{-beta} (1-n/y) psi(n)^2
  Real lower_bound;   // n = 1 term: psi(1)^2 (1 - 1/y)
  Real rhs_main;      // y^{1-beta} L(1) Q(1) / ((1-b)(2-b)) * sum_{r,t} P_{r,t}(1) weights
  Real defect;        // max(0, lower_bound - lhs); positivity demands 0
};

// The theorem's mollified sum: every term is nonnegative, so the n = 1
// term is an unconditional lower bound. work_limit caps y * R.
AggregatedSum aggregated_sum(const RealPrimitiveCharacter& chi, Real beta,
                             std::uint32_t R, Real y, const FactorSieve& sieve,
                             std::uint64_t work_limit = 2'000'000'000ULL);

LemmaReport aggregate_report(const AggregatedSum& res);

LemmaReport aggregate_report(const RealPrimitiveCharacter& chi, Real beta,
                             std::uint32_t R, Real y, const FactorSieve& sieve,
                             std::uint64_t work_limit = 2'000'000'000ULL);

struct BoundReport {
  Real q;            // modulus, as a real (may be astronomically large)
  Real c1;
  Real log_R;        // (3 log^2 q / c1)^{2/3}
  Real log_y;        // 32 log R
  Real self_check;   // c1 log^{3/2} R / log^2 q, must equal 3
  Real c;            // (log 3 / 32) (c1/3)^{2/3}
  Real gap;          // c / log^{4/3} q
  Real beta_bound;   // 1 - gap
};

// Parameter bookkeeping for the final exclusion radius; works entirely in
// log space so very large moduli stay representable. Exploratory: it
// tabulates the asserted constants, it does not certify them.
BoundReport bound_report(Real q, Real c1 = Real(3));

LemmaReport bound_report_json(Real q, Real c1 = Real(3));

}  // namespace siegel
