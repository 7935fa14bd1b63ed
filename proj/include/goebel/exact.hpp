#pragma once

// Exact breakdown index N_{k,l} of the (k,l)-Goebel sequence
//
//   (n+1) g(n+1) = g(n) * (n + g(n)^{k-1}),   g(1) = l,
//
// tracked as a residue modulo a shrinking modulus. A run up to n_max starts
// from P = cumulative_product(n_max). Each step multiplies through, divides
// the modulus by m = gcd(d, n+1) and divides the residue by (n+1): the m part
// exactly, the cofactor (n+1)/m by inversion modulo d/m. Dividing by the full
// gcd removes, for every prime, either all of its occurrences in n+1 or all of
// its occurrences in d, so (n+1)/m is always a unit modulo d/m. The run is
// only meaningful once integrality below n_max is known, which exact_N
// guarantees by scanning n_max upward.

#include "goebel/modarith.hpp"

#include <optional>
#include <variant>

namespace goebel {

struct GobelState {
  u64 n = 1;
  BigNat g;  // residue of g(n) modulo d, 0 <= g < d
  BigNat d;  // divides the initial modulus
};

// Outcome of a step whose product (n+1) g(n+1) is not divisible by m_gcd.
struct ProceedBreak {
  BigNat residue;  // g_mult mod d
  BigNat m_gcd;
};

using ProceedResult = std::variant<GobelState, ProceedBreak>;

struct BreakReport {
  u64 k = 0;
  u64 l = 0;
  u64 n_break = 0;
  BigNat residue;
  BigNat modulus_at_break;
};

struct NkResult {
  enum class Status { Exact, Exceeded };
  u64 k = 0;
  u64 l = 0;
  Status status = Status::Exceeded;
  u64 value = 0;  // N when Exact, the search limit when Exceeded

  bool exact() const { return status == Status::Exact; }
  friend bool operator==(const NkResult&, const NkResult&) = default;
};

inline constexpr u64 kDefaultNLimit = 12000;

inline ProceedResult goebel_proceed(const GobelState& s, u64 k) {
  BigNat g_mult = s.n * s.g + powmod(s.g, k, s.d);
  u64 next = s.n + 1;
  u64 m = mpz_gcd_ui(nullptr, s.d.get_mpz_t(), next);
  if (!mpz_divisible_ui_p(g_mult.get_mpz_t(), m)) {
    BigNat r = g_mult % s.d;
    return ProceedBreak{r, BigNat(m)};
  }
  GobelState out;
  out.n = next;
  mpz_divexact_ui(out.d.get_mpz_t(), s.d.get_mpz_t(), m);
  BigNat reduced_product;
  mpz_divexact_ui(reduced_product.get_mpz_t(), g_mult.get_mpz_t(), m);
  if (out.d == 1) {
    out.g = 0;
    return out;
  }
  out.g = invmod(BigNat(next / m), out.d) * reduced_product % out.d;
  return out;
}

// Final step of a run: the residue of n_last * g(n_last) modulo the modulus
// remaining at that step, whether or not it broke integrality.
struct RunDetail {
  bool broke = false;
  u64 n_last = 0;
  BigNat residue;
  BigNat modulus;
};

namespace detail {

// Word-size run for moduli below 2^62.
inline RunDetail run_word(u64 k, u64 l, u64 n_max, u64 P) {
  u64 d = P;
  u64 g = l % d;
  RunDetail out;
  for (u64 n = 1; n < n_max; ++n) {
    u64 next = n + 1;
    u128 g_mult = static_cast<u128>(n) * g + powmod(g, k, d);
    u64 m = std::gcd(d, next);
    if (n + 1 == n_max || g_mult % m != 0) {
      out.n_last = next;
      out.residue = static_cast<u64>(g_mult % d);
      out.modulus = d;
      if (g_mult % m != 0) {
        out.broke = true;
        return out;
      }
    }
    u64 d_next = d / m;
    if (d_next == 1) {
      g = 0;
    } else {
      u64 q = static_cast<u64>((g_mult / m) % d_next);
      g = mulmod(invmod(next / m, d_next), q, d_next);
    }
    d = d_next;
  }
  return out;
}

// Arbitrary-precision run with in-place GMP temporaries.
inline RunDetail run_big(u64 k, u64 l, u64 n_max, const BigNat& P) {
  BigNat d = P;
  BigNat g = BigNat(l) % d;
  BigNat g_mult, pw, inv, tmp;
  RunDetail out;
  int top = 63;
  while (top >= 0 && ((k >> top) & 1u) == 0) --top;
  for (u64 n = 1; n < n_max; ++n) {
    u64 next = n + 1;
    // pw = g^k mod d by square-and-multiply
    pw = 1;
    for (int bit = top; bit >= 0; --bit) {
      mpz_mul(tmp.get_mpz_t(), pw.get_mpz_t(), pw.get_mpz_t());
      mpz_tdiv_r(pw.get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
      if ((k >> bit) & 1u) {
        mpz_mul(tmp.get_mpz_t(), pw.get_mpz_t(), g.get_mpz_t());
        mpz_tdiv_r(pw.get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
      }
    }
    if (d == 1) pw = 0;
    mpz_mul_ui(g_mult.get_mpz_t(), g.get_mpz_t(), n);
    mpz_add(g_mult.get_mpz_t(), g_mult.get_mpz_t(), pw.get_mpz_t());
    u64 m = mpz_gcd_ui(nullptr, d.get_mpz_t(), next);
    bool divisible = mpz_divisible_ui_p(g_mult.get_mpz_t(), m) != 0;
    if (next == n_max || !divisible) {
      out.n_last = next;
      mpz_tdiv_r(out.residue.get_mpz_t(), g_mult.get_mpz_t(), d.get_mpz_t());
      out.modulus = d;
      if (!divisible) {
        out.broke = true;
        return out;
      }
    }
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), m);
    mpz_divexact_ui(g_mult.get_mpz_t(), g_mult.get_mpz_t(), m);
    if (d == 1) {
      g = 0;
      continue;
    }
    tmp = next / m;
    mpz_invert(inv.get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
    mpz_mul(tmp.get_mpz_t(), inv.get_mpz_t(), g_mult.get_mpz_t());
    mpz_tdiv_r(g.get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
  }
  return out;
}

}  // namespace detail

inline RunDetail run_once_detailed(u64 k, u64 l, u64 n_max,
                                   const PrimeTable& table = default_prime_table()) {
  if (k < 1) throw std::invalid_argument("run_once: k must be >= 1");
  if (n_max < 2) throw std::invalid_argument("run_once: n_max must be >= 2");
  BigNat P = cumulative_product(n_max, table);
  if (mpz_sizeinbase(P.get_mpz_t(), 2) <= 62) return detail::run_word(k, l, n_max, P.get_ui());
  return detail::run_big(k, l, n_max, P);
}

// Applies the step for n = 1 .. n_max - 1 from (l mod P, P). Returns the break
// report, or nullopt when the run completes.
inline std::optional<BreakReport> run_once(u64 k, u64 l, u64 n_max,
                                           const PrimeTable& table = default_prime_table()) {
  RunDetail r = run_once_detailed(k, l, n_max, table);
  if (!r.broke) return std::nullopt;
  return BreakReport{k, l, r.n_last, r.residue, r.modulus};
}

// Smallest n_max in [2, n_limit] whose run breaks. l in {0, 1} gives
// constant sequences and is reported Exceeded without a scan.
inline NkResult exact_N(u64 k, u64 l, u64 n_limit = kDefaultNLimit,
                        const PrimeTable& table = default_prime_table()) {
  if (k < 2) throw std::invalid_argument("exact_N: k must be >= 2");
  if (n_limit < 2) throw std::invalid_argument("exact_N: n_limit must be >= 2");
  NkResult res{k, l, NkResult::Status::Exceeded, n_limit};
  if (l == 0 || l == 1) return res;
  for (u64 n_max = 2; n_max <= n_limit; ++n_max) {
    if (auto brk = run_once(k, l, n_max, table)) {
      res.status = NkResult::Status::Exact;
      res.value = brk->n_break;
      return res;
    }
  }
  return res;
}

}  // namespace goebel
