#pragma once

// The reduced walk for k = (p-1)/2: start at l and move by
// (n/p)(value/p) while strictly between the absorbing barriers 0 and p.
// The walk value at n agrees with n * g_{(p-1)/2,l}(n) mod p, so the final
// value classifies l: 0 (Left), p (Right), anything else is a
// non-integrality witness (Middle).
//
// For p = 1 mod 4 the final values are non-decreasing along even l, which
// makes "Left" a prefix predicate and "Right" a suffix predicate over the
// even initial values; both boundaries are found by binary search.

#include "goebel/modarith.hpp"
#include "goebel/parallel.hpp"

#include <cstdio>
#include <string>

namespace goebel {

struct ReducedTrace {
  u32 p = 0;
  u32 l = 0;
  std::vector<u32> values;  // values[n - 1] is the walk at n, n = 1 .. p

  u32 at(u32 n) const { return values.at(n - 1); }
  u32 final_value() const { return values.back(); }
};

inline void check_reduced_args(const LegendreTable& chi, u32 l) {
  if (l >= chi.p()) throw DomainError("reduced walk: l must lie in [0, p-1]");
}

inline ReducedTrace reduced_trace(const LegendreTable& chi, u32 l) {
  check_reduced_args(chi, l);
  const u32 p = chi.p();
  ReducedTrace t{p, l, {}};
  t.values.resize(p);
  u32 v = l;
  t.values[0] = v;
  for (u32 n = 1; n < p; ++n) {
    if (v != 0 && v != p) v = static_cast<u32>(static_cast<int>(v) + chi[n] * chi[v]);
    t.values[n] = v;
  }
  return t;
}

inline ReducedTrace reduced_trace(u32 p, u32 l) { return reduced_trace(LegendreTable(p), l); }

// Final value only; no allocation.
inline u32 reduced_final(const LegendreTable& chi, u32 l) {
  check_reduced_args(chi, l);
  const u32 p = chi.p();
  u32 v = l;
  for (u32 n = 1; n < p && v != 0 && v != p; ++n)
    v = static_cast<u32>(static_cast<int>(v) + chi[n] * chi[v]);
  return v;
}

enum class LClass { Left, Middle, Right };

inline const char* to_string(LClass c) {
  switch (c) {
    case LClass::Left: return "Left";
    case LClass::Middle: return "Middle";
    case LClass::Right: return "Right";
  }
  return "?";
}

inline LClass classify_l(const LegendreTable& chi, u32 l) {
  u32 v = reduced_final(chi, l);
  if (v == 0) return LClass::Left;
  if (v == chi.p()) return LClass::Right;
  return LClass::Middle;
}

inline LClass classify_l(u32 p, u32 l) { return classify_l(LegendreTable(p), l); }

struct JpSummary {
  u32 p = 0;
  u32 l_left = 0;
  u32 l_right = 0;
  u32 count = 0;  // (l_right - l_left) / 2
  friend bool operator==(const JpSummary&, const JpSummary&) = default;
};

inline void check_jp_domain(u64 p) {
  if (p < 13 || p % 4 != 1 || !default_prime_table().is_prime(p))
    throw DomainError("compute_jp: p must be a prime with p = 1 mod 4 and p >= 13, got " +
                      std::to_string(p));
}

// Least index i in [lo, hi] with pred(i), given pred is false then true.
template <class Pred>
u32 first_true(u32 lo, u32 hi, Pred pred) {
  while (lo < hi) {
    u32 mid = lo + (hi - lo) / 2;
    if (pred(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

inline JpSummary compute_jp(const LegendreTable& chi) {
  const u32 p = chi.p();
  check_jp_domain(p);
  const u32 top = (p - 1) / 2;  // even l = 2i, i in [0, top]
  u32 i_left = first_true(0, top, [&](u32 i) { return classify_l(chi, 2 * i) != LClass::Left; });
  u32 i_right = first_true(0, top, [&](u32 i) { return classify_l(chi, 2 * i) == LClass::Right; });
  JpSummary s{p, 2 * i_left, 2 * i_right, 0};
  s.count = (s.l_right - s.l_left) / 2;
  return s;
}

inline JpSummary compute_jp(u32 p) {
  check_jp_domain(p);
  return compute_jp(LegendreTable(p));
}

inline std::vector<u32> jp_primes(u32 lo, u32 hi) {
  std::vector<u32> out;
  if (hi < 13) return out;
  auto collect = [&](const PrimeTable& table) {
    for (u64 p : table.primes_in(std::max<u32>(lo, 13), hi))
      if (p % 4 == 1) out.push_back(static_cast<u32>(p));
  };
  if (hi <= default_prime_table().limit())
    collect(default_prime_table());
  else
    collect(PrimeTable(hi));
  return out;
}

// Primes p = 1 mod 4 in [13, p_max] with 2 in J_p, i.e. l = 2 is Middle.
inline std::vector<u32> scan_two_in_jp(u32 p_max, unsigned threads = 1) {
  if (p_max < 13) throw std::invalid_argument("scan_two_in_jp: p_max must be >= 13");
  std::vector<u32> primes = jp_primes(13, p_max);
  auto hit = parallel_map(primes.size(), threads, [&](std::size_t i) {
    return classify_l(LegendreTable(primes[i]), 2) == LClass::Middle;
  });
  std::vector<u32> out;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (hit[i]) out.push_back(primes[i]);
  return out;
}

inline std::vector<JpSummary> jp_table(u32 p_lo, u32 p_hi, unsigned threads = 1) {
  std::vector<u32> primes = jp_primes(p_lo, p_hi);
  return parallel_map(primes.size(), threads,
                      [&](std::size_t i) { return compute_jp(LegendreTable(primes[i])); });
}

// count / p to six decimals, ties to even, computed in integers.
inline std::string format_ratio(u64 count, u64 p) {
  u128 scaled = static_cast<u128>(count) * 1'000'000;
  u64 q = static_cast<u64>(scaled / p);
  u64 r = static_cast<u64>(scaled % p);
  if (2 * r > p || (2 * r == p && q % 2 == 1)) ++q;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%llu.%06llu", static_cast<unsigned long long>(q / 1'000'000),
                static_cast<unsigned long long>(q % 1'000'000));
  return buf;
}

}  // namespace goebel
