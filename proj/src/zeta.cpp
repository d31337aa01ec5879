#include "siegel/zeta.hpp"

namespace siegel {

namespace {

// B_0..B_m via sum_{j=0}^{m} C(m+1, j) B_j = 0.
std::vector<Rational> bernoulli_table(int m) {
  std::vector<Rational> b(static_cast<std::size_t>(m) + 1);
  b[0] = 1;
  for (int n = 1; n <= m; ++n) {
    Rational sum(0);
    BigInt binom(1);  // C(n+1, j)
    for (int j = 0; j < n; ++j) {
      sum += binom * b[static_cast<std::size_t>(j)];
      binom = binom * (n + 1 - j) / (j + 1);
    }
    b[static_cast<std::size_t>(n)] = -sum / binom;
  }
  return b;
}

}  // namespace

const Rational& bernoulli(int m) {
  static std::mutex mu;
  static std::vector<Rational> table;
  std::lock_guard<std::mutex> lock(mu);
  if (m >= static_cast<int>(table.size())) {
    table = bernoulli_table(std::max(m, 128));
  }
  return table[static_cast<std::size_t>(m)];
}

std::shared_ptr<const std::vector<Rational>> borwein_coefficients(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const std::vector<Rational>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), by term recurrence.
  std::vector<Rational> d(static_cast<std::size_t>(n) + 1);
  Rational term(1);  // i = 0 term (the leading n folded in)
  Rational sum(1);
  d[0] = sum;
  for (int i = 0; i < n; ++i) {
    term *= Rational(BigInt(4) * (n + i) * (n - i), BigInt(2 * i + 1) * (2 * i + 2));
    sum += term;
    d[static_cast<std::size_t>(i) + 1] = sum;
  }
  auto e = std::make_shared<std::vector<Rational>>(static_cast<std::size_t>(n));
  const Rational& dn = d[static_cast<std::size_t>(n)];
  for (int k = 0; k < n; ++k) {
    (*e)[static_cast<std::size_t>(k)] = (dn - d[static_cast<std::size_t>(k)]) / dn;
  }
  cache.emplace(n, e);
  return cache[n];
}

}  // namespace siegel
