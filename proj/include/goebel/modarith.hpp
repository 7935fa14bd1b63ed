#pragma once

// Modular arithmetic kernel: prime tables, factorization, p-adic valuations
// of factorials, modular exponentiation and inversion, Legendre symbols.
//
// Word-size routines take std::uint64_t and multiply through unsigned
// __int128. Arbitrary-precision routines take BigNat (GMP's mpz_class).

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace goebel {

using BigNat = mpz_class;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u128 = unsigned __int128;

class NotInvertible : public std::domain_error {
 public:
  NotInvertible(const std::string& what) : std::domain_error(what) {}
};

class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what) : std::domain_error(what) {}
};

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

// Sieve of Eratosthenes over [0, limit]. Immutable after construction.
class PrimeTable {
 public:
  explicit PrimeTable(u64 limit) : limit_(limit), composite_(limit + 1, false) {
    composite_[0] = true;
    if (limit >= 1) composite_[1] = true;
    for (u64 i = 2; i * i <= limit; ++i) {
      if (composite_[i]) continue;
      for (u64 j = i * i; j <= limit; j += i) composite_[j] = true;
    }
    for (u64 i = 2; i <= limit; ++i)
      if (!composite_[i]) primes_.push_back(i);
  }

  u64 limit() const { return limit_; }
  const std::vector<u64>& primes() const { return primes_; }

  // Exact for n <= limit(); falls back to trial division above it.
  bool is_prime(u64 n) const {
    if (n <= limit_) return !composite_[n];
    for (u64 p : primes_) {
      if (p * p > n) return true;
      if (n % p == 0) return false;
    }
    for (u64 d = limit_ + 1 + (limit_ % 2); d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }

  // Primes in [lo, hi]; hi must not exceed limit().
  std::vector<u64> primes_in(u64 lo, u64 hi) const {
    if (hi > limit_) throw std::out_of_range("PrimeTable::primes_in beyond sieve limit");
    std::vector<u64> out;
    for (u64 p : primes_) {
      if (p > hi) break;
      if (p >= lo) out.push_back(p);
    }
    return out;
  }

 private:
  u64 limit_;
  std::vector<bool> composite_;
  std::vector<u64> primes_;
};

inline constexpr u64 kDefaultPrimeBound = 1'000'000;

inline const PrimeTable& default_prime_table() {
  static const PrimeTable table(kDefaultPrimeBound);
  return table;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

struct PrimePower {
  u64 prime;
  u32 exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Ascending primes, exponents >= 1. Empty for n = 1.
using Factorization = std::vector<PrimePower>;

inline Factorization factorize(u64 n, const PrimeTable& table = default_prime_table()) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization out;
  auto take = [&](u64 p) {
    u32 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  for (u64 p : table.primes()) {
    if (p * p > n) break;
    take(p);
  }
  // Trial division past the table bound for inputs beyond limit()^2.
  if (!table.primes().empty()) {
    u64 last = table.primes().back();
    if (last * last < n) {
      for (u64 d = last + 2; d * d <= n; d += 2) take(d);
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline BigNat expand(const Factorization& f) {
  BigNat v = 1;
  for (const auto& [p, e] : f) {
    BigNat pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
    v *= pe;
  }
  return v;
}

// nu_p(n!) = sum_{i>=1} floor(n / p^i)
inline u64 factorial_valuation(u64 n, u64 p) {
  u64 total = 0;
  for (u64 q = n / p; q > 0; q /= p) total += q;
  return total;
}

// Product over primes p | n of p^{nu_p(n!)}: the initial modulus for an
// integrality run ending at index n.
inline BigNat cumulative_product(u64 n, const PrimeTable& table = default_prime_table()) {
  if (n == 0) throw std::invalid_argument("cumulative_product: n must be positive");
  BigNat P = 1;
  for (const auto& pe : factorize(n, table)) {
    BigNat term;
    mpz_ui_pow_ui(term.get_mpz_t(), pe.prime, factorial_valuation(n, pe.prime));
    P *= term;
  }
  return P;
}

// ---------------------------------------------------------------------------
// Word-size modular arithmetic
// ---------------------------------------------------------------------------

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

// Left-to-right square-and-multiply. Returns 1 mod m for y = 0.
inline u64 powmod(u64 x, u64 y, u64 m) {
  if (m == 0) throw std::invalid_argument("powmod: modulus must be positive");
  if (m == 1) return 0;
  x %= m;
  u64 r = 1;
  int top = 63;
  while (top >= 0 && ((y >> top) & 1u) == 0) --top;
  for (int bit = top; bit >= 0; --bit) {
    r = mulmod(r, r, m);
    if ((y >> bit) & 1u) r = mulmod(r, x, m);
  }
  return r;
}

// Extended Euclid. Result in [0, m).
inline u64 invmod(u64 x, u64 m) {
  if (m == 0) throw std::invalid_argument("invmod: modulus must be positive");
  if (m == 1) return 0;
  __int128 old_r = static_cast<__int128>(x % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1)
    throw NotInvertible("invmod: " + std::to_string(x) + " is not invertible modulo " + std::to_string(m));
  __int128 v = old_s % static_cast<__int128>(m);
  if (v < 0) v += m;
  return static_cast<u64>(v);
}

// ---------------------------------------------------------------------------
// Arbitrary-precision modular arithmetic
// ---------------------------------------------------------------------------

// Left-to-right square-and-multiply with reduction after every product.
inline BigNat powmod(const BigNat& x, u64 y, const BigNat& m) {
  if (m <= 0) throw std::invalid_argument("powmod: modulus must be positive");
  if (m == 1) return 0;
  BigNat base = x % m;
  if (base < 0) base += m;
  BigNat r = 1;
  int top = 63;
  while (top >= 0 && ((y >> top) & 1u) == 0) --top;
  for (int bit = top; bit >= 0; --bit) {
    r *= r;
    r %= m;
    if ((y >> bit) & 1u) {
      r *= base;
      r %= m;
    }
  }
  return r;
}

inline BigNat invmod(const BigNat& x, const BigNat& m) {
  if (m <= 0) throw std::invalid_argument("invmod: modulus must be positive");
  if (m == 1) return 0;
  BigNat r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
    throw NotInvertible("invmod: " + x.get_str() + " is not invertible modulo " + m.get_str());
  return r;
}

inline BigNat gcd(const BigNat& a, const BigNat& b) {
  BigNat r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// Legendre symbol
// ---------------------------------------------------------------------------

inline u64 reduce_signed(long long a, u64 p) {
  long long r = a % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  return static_cast<u64>(r);
}

// Euler's criterion, a^{(p-1)/2} mod p. p must be an odd prime.
inline int legendre(long long a, u64 p) {
  u64 r = reduce_signed(a, p);
  if (r == 0) return 0;
  u64 e = powmod(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

// Squares bitmap for one odd prime, built in O(p) from (i+1)^2 = i^2 + 2i + 1.
// Shared read-only across workers.
class LegendreTable {
 public:
  explicit LegendreTable(u32 p) : p_(p), chi_(p, -1) {
    if (p < 3 || p % 2 == 0) throw DomainError("LegendreTable: p must be an odd prime");
    chi_[0] = 0;
    u64 sq = 0;
    for (u64 i = 1; i <= (p - 1) / 2; ++i) {
      sq += 2 * i - 1;
      if (sq >= p) sq %= p;
      chi_[sq] = 1;
    }
  }

  u32 p() const { return p_; }

  // Argument must already lie in [0, p - 1].
  int operator[](u32 a) const { return chi_[a]; }

  int operator()(long long a) const { return chi_[reduce_signed(a, p_)]; }

 private:
  u32 p_;
  std::vector<signed char> chi_;
};

}  // namespace goebel
