#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "siegel/numeric.hpp"

namespace siegel {

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration
// at the requested precision and cached per order.
template <class RealT>
struct GaussLegendre {
  std::vector<RealT> nodes;
  std::vector<RealT> weights;

  static const GaussLegendre& order(int n);
};

namespace detail {

template <class RealT>
GaussLegendre<RealT> build_gauss_legendre(int n) {
  using std::cos;
  GaussLegendre<RealT> rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, then Newton on P_n
    RealT x(cos(pi * (i + 0.75) / (n + 0.5)));
    RealT dp{};
    for (int iter = 0; iter < 60; ++iter) {
      RealT p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        RealT p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      RealT dx = p1 / dp;
      x -= dx;
      using std::abs;
      if (abs(dx) < std::numeric_limits<RealT>::epsilon() * 4) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace detail

template <class RealT>
const GaussLegendre<RealT>& GaussLegendre<RealT>::order(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre<RealT>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, detail::build_gauss_legendre<RealT>(n)).first;
  }
  return it->second;
}

// Composite Gauss-Legendre over [a, b] with fixed panel width. Returns the
// order-16 value; *error_estimate (optional) receives the summed |GL16-GL8|
// panel discrepancies.
template <class RealT, class F>
auto composite_gauss(F f, RealT a, RealT b, RealT panel_width,
                     RealT* error_estimate = nullptr) {
  using Value = decltype(f(a));
  const auto& g16 = GaussLegendre<RealT>::order(16);
  const auto& g8 = GaussLegendre<RealT>::order(8);
  Value total{};
  RealT err{};
  RealT x0 = a;
  while (x0 < b) {
    RealT x1 = x0 + panel_width;
    if (x1 > b) x1 = b;
    RealT mid = (x0 + x1) / 2, half = (x1 - x0) / 2;
    Value v16{}, v8{};
    std::vector<Value> samples(16);
    for (int i = 0; i < 16; ++i) {
      samples[static_cast<std::size_t>(i)] = f(mid + half * g16.nodes[i]);
      v16 += g16.weights[i] * samples[static_cast<std::size_t>(i)];
    }
    if (error_estimate != nullptr) {
      for (int i = 0; i < 8; ++i) v8 += g8.weights[i] * f(mid + half * g8.nodes[i]);
      using std::abs;
      err += abs(half * (v16 - v8));
    }
    total += half * v16;
    x0 = x1;
  }
  if (error_estimate != nullptr) *error_estimate = err;
  return total;
}

}  // namespace siegel
