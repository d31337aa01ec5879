#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace siegel {

// Extended-precision scalars used for all reported analytic values.
using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Numeric profiles let the same evaluators run in extended precision
// (point values, reports) or plain double (oscillatory quadrature
// integrands, where the quadrature error dominates anyway).
struct MpProfile {
  using R = Real;
  using C = Complex;
  static constexpr int decimal_digits = 45;
};

struct DoubleProfile {
  using R = double;
  using C = std::complex<double>;
  static constexpr int decimal_digits = 14;
};

template <class P>
typename P::C make_complex(typename P::R re, typename P::R im) {
  return typename P::C(re, im);
}

inline Real to_real(const Rational& q) {
  return Real(boost::multiprecision::numerator(q)) /
         Real(boost::multiprecision::denominator(q));
}

template <class RealT>
RealT rational_to(const Rational& q) {
  if constexpr (std::is_same_v<RealT, double>) {
    return q.convert_to<double>();
  } else {
    return to_real(q);
  }
}

// Fixed significant-digit decimal rendering; deterministic across runs.
template <class T>
std::string decimal_string(const T& x, int digits = 30) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

// Worker cap for the chunked reductions below. 0 means "hardware".
inline std::atomic<unsigned>& worker_thread_cap() {
  static std::atomic<unsigned> cap{0};
  return cap;
}

inline unsigned worker_thread_count() {
  unsigned cap = worker_thread_cap().load();
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return cap == 0 ? hw : std::min(cap, hw);
}

// Deterministic parallel reduction: the range is cut into fixed-size
// chunks and partial results are combined in chunk order, so the result
// does not depend on the number of workers.
template <class T, class F>
T parallel_sum(std::int64_t lo, std::int64_t hi, std::int64_t chunk, F partial) {
  if (hi <= lo) return T{};
  const std::int64_t n_chunks = (hi - lo + chunk - 1) / chunk;
  unsigned workers = worker_thread_count();
  if (n_chunks == 1 || workers <= 1) return partial(lo, hi);

  std::vector<T> results(static_cast<std::size_t>(n_chunks));
  std::atomic<std::int64_t> next{0};
  auto run = [&] {
    for (;;) {
      std::int64_t i = next.fetch_add(1);
      if (i >= n_chunks) break;
      std::int64_t a = lo + i * chunk;
      std::int64_t b = std::min(hi, a + chunk);
      results[static_cast<std::size_t>(i)] = partial(a, b);
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = std::min<std::int64_t>(workers, n_chunks);
  pool.reserve(spawn);
  for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(run);
  for (auto& th : pool) th.join();

  T total{};
  for (auto& r : results) total += r;
  return total;
}

}  // namespace siegel
