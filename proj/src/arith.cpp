#include "siegel/arith.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace siegel {

namespace {

void put_u32_le(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

constexpr char kMagic[5] = {'S', 'G', 'S', 'V', '1'};

}  // namespace

std::uint64_t Factorization::value() const {
  std::uint64_t v = 1;
  for (const auto& pp : pairs) {
    for (std::uint32_t i = 0; i < pp.alpha; ++i) v *= pp.p;
  }
  return v;
}

FactorSieve::FactorSieve(std::uint32_t limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("FactorSieve: limit must be >= 2");
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      for (std::uint64_t j = i; j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }
}

FactorSieve::FactorSieve(RawTag, std::uint32_t limit, std::vector<std::uint32_t> spf)
    : limit_(limit), spf_(std::move(spf)) {}

FactorSieve FactorSieve::cached(std::uint32_t limit) {
  const char* dir = std::getenv("SIEGEL_GAP_CACHE");
  if (dir == nullptr || *dir == '\0') return FactorSieve(limit);
  std::filesystem::path path =
      std::filesystem::path(dir) / ("spf_" + std::to_string(limit) + ".sgsv");
  if (std::filesystem::exists(path)) {
    try {
      return load(path.string());
    } catch (const std::exception&) {
      // corrupt cache entry; rebuild below
    }
  }
  FactorSieve sieve(limit);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  sieve.save(path.string());
  return sieve;
}

std::uint32_t FactorSieve::smallest_prime_factor(std::uint64_t n) const {
  if (n < 2 || n > limit_) {
    throw std::out_of_range("FactorSieve: n out of range: " + std::to_string(n));
  }
  return spf_[n];
}

bool FactorSieve::is_prime(std::uint64_t n) const {
  return n >= 2 && smallest_prime_factor(n) == n;
}

Factorization FactorSieve::factorize(std::uint64_t n) const {
  if (n == 0 || n > limit_) {
    throw std::out_of_range("FactorSieve: n out of range: " + std::to_string(n));
  }
  Factorization f;
  while (n > 1) {
    std::uint64_t p = spf_[n];
    std::uint32_t a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    f.pairs.push_back({p, a});
  }
  return f;
}

int FactorSieve::mobius(std::uint64_t n) const {
  if (n == 0 || n > limit_) {
    throw std::out_of_range("FactorSieve: n out of range: " + std::to_string(n));
  }
  int k = 0;
  while (n > 1) {
    std::uint64_t p = spf_[n];
    n /= p;
    if (n % p == 0) return 0;
    ++k;
  }
  return (k & 1) ? -1 : 1;
}

int FactorSieve::omega(std::uint64_t n) const {
  if (n == 0 || n > limit_) {
    throw std::out_of_range("FactorSieve: n out of range: " + std::to_string(n));
  }
  int k = 0;
  while (n > 1) {
    std::uint64_t p = spf_[n];
    while (n % p == 0) n /= p;
    ++k;
  }
  return k;
}

bool FactorSieve::is_squarefree(std::uint64_t n) const { return mobius(n) != 0; }

bool FactorSieve::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) return false;
  os.write(kMagic, sizeof(kMagic));
  put_u32_le(os, limit_);
  for (std::uint64_t n = 2; n <= limit_; ++n) put_u32_le(os, spf_[n]);
  return static_cast<bool>(os);
}

FactorSieve FactorSieve::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("FactorSieve: cannot open " + path);
  char magic[5];
  is.read(magic, 5);
  if (!is || std::memcmp(magic, kMagic, 5) != 0) {
    throw std::runtime_error("FactorSieve: bad magic in " + path);
  }
  std::uint32_t limit = get_u32_le(is);
  if (limit < 2) throw std::runtime_error("FactorSieve: bad limit in " + path);
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t n = 2; n <= limit; ++n) spf[n] = get_u32_le(is);
  if (!is) throw std::runtime_error("FactorSieve: truncated file " + path);
  return FactorSieve(RawTag{}, limit, std::move(spf));
}

const std::vector<std::uint32_t>& FactorSieve::primes() const {
  if (primes_.empty()) {
    for (std::uint64_t n = 2; n <= limit_; ++n) {
      if (spf_[n] == n) primes_.push_back(static_cast<std::uint32_t>(n));
    }
  }
  return primes_;
}

long long a_coeff(std::uint64_t n, const RealPrimitiveCharacter& chi,
                  const FactorSieve& sieve) {
  long long a = 1;
  for (const auto& pp : sieve.factorize(n).pairs) {
    int c = chi(static_cast<long long>(pp.p));
    if (c == 1) {
      a *= static_cast<long long>(pp.alpha) + 1;
    } else if (c == -1) {
      if (pp.alpha & 1) return 0;
      // even alpha: the geometric block 1 - 1 + ... + 1 equals 1
    }
    // c == 0: block is 1
  }
  return a;
}

Rational pseudo_f(std::uint64_t n, const FactorSieve& sieve) {
  int mu = sieve.mobius(n);
  if (mu == 0) return Rational(0);
  int om = sieve.omega(n);
  Rational r(BigInt(n) * mu, BigInt(1) << om);
  return r;
}

Rational pseudo_f_r(std::uint64_t n, std::uint64_t r, const FactorSieve& sieve) {
  std::uint64_t g = std::gcd(n, r);
  if (g == 1) return Rational(1);
  return pseudo_f(g, sieve);
}

}  // namespace siegel
