#pragma once

// Congruence traces of the (k,l)-Goebel recurrence modulo a single prime p,
// per-prime tables of exponent classes k mod (p-1) that break integrality at
// p, range sieving of k, and (k,l) grid scans.
//
// Every divisor n < p is a unit modulo p, so g(1..p-1) always lies in Z_(p)
// and p*g(p) mod p decides whether g(p) does. The test depends on k only
// through k mod (p-1): for u != 0 Fermat gives u^k = u^{k mod (p-1)}, and the
// power term g*g^{k-1} is taken to be 0 whenever g = 0, including k = 0.

#include "goebel/modarith.hpp"
#include "goebel/parallel.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

namespace goebel {

// u^k in F_p with the product-form convention 0^0 = 0.
inline u64 power_term(u64 u, u64 k, u64 p) {
  if (u == 0) return 0;
  return powmod(u, k, p);
}

// p * g_{k,l}(p) mod p, iterating u = g(n) mod p for n = 1 .. p-1.
inline u64 prime_trace_mod_p(u64 k_res, u64 l_res, u64 p) {
  if (p < 3 || p % 2 == 0) throw DomainError("prime_trace_mod_p: p must be an odd prime");
  u64 u = l_res % p;
  for (u64 n = 1; n + 1 < p; ++n) {
    u64 prod = (mulmod(n, u, p) + power_term(u, k_res, p)) % p;
    u = mulmod(prod, invmod(n + 1, p), p);
  }
  return (mulmod(p - 1, u, p) + power_term(u, k_res, p)) % p;
}

// Table-driven traces for one prime: inverses and discrete logarithms make
// each step O(1). Used for bulk scans over all (k mod (p-1), l mod p).
class TraceKernel {
 public:
  explicit TraceKernel(u32 p) : p_(p), inv_(p, 0), log_(p, 0), exp_(p - 1, 0) {
    if (p < 3 || p % 2 == 0) throw DomainError("TraceKernel: p must be an odd prime");
    for (u32 n = 1; n < p; ++n) inv_[n] = static_cast<u32>(invmod(n, p));
    u32 root = primitive_root(p);
    u64 v = 1;
    for (u32 i = 0; i + 1 < p; ++i) {
      exp_[i] = static_cast<u32>(v);
      log_[v] = i;
      v = v * root % p;
    }
  }

  u32 p() const { return p_; }

  u32 pow(u32 u, u64 k) const {
    if (u == 0) return 0;
    return exp_[static_cast<u64>(log_[u]) * (k % (p_ - 1)) % (p_ - 1)];
  }

  u32 trace(u64 k_res, u32 l_res) const {
    const u64 p = p_;
    u64 u = l_res % p;
    for (u64 n = 1; n + 1 < p; ++n) {
      if (u == 0) return 0;
      u64 prod = (n * u + pow(static_cast<u32>(u), k_res)) % p;
      u = prod * inv_[n + 1] % p;
    }
    return static_cast<u32>(((p - 1) * u + pow(static_cast<u32>(u), k_res)) % p);
  }

 private:
  static u32 primitive_root(u32 p) {
    auto factors = factorize(p - 1);
    for (u32 g = 2; g < p; ++g) {
      bool ok = true;
      for (const auto& f : factors)
        if (powmod(g, (p - 1) / f.prime, p) == 1) {
          ok = false;
          break;
        }
      if (ok) return g;
    }
    return 1;  // p = 3 handled above: 2 is a root
  }

  u32 p_;
  std::vector<u32> inv_;
  std::vector<u32> log_;
  std::vector<u32> exp_;
};

struct BadResidueTable {
  u32 p = 0;
  u32 l = 0;             // l mod p
  std::vector<u32> bad;  // ascending residues a in [0, p-2]
  friend bool operator==(const BadResidueTable&, const BadResidueTable&) = default;
};

inline BadResidueTable bad_residues(const TraceKernel& kernel, u64 l) {
  BadResidueTable t{kernel.p(), static_cast<u32>(l % kernel.p()), {}};
  for (u32 a = 0; a + 1 < t.p; ++a)
    if (kernel.trace(a, t.l) != 0) t.bad.push_back(a);
  return t;
}

inline BadResidueTable bad_residues(u32 p, u64 l) { return bad_residues(TraceKernel(p), l); }

// Tables for every odd prime <= p_max, ascending.
inline std::vector<BadResidueTable> bad_residue_tables(u32 p_max, u64 l, unsigned threads = 1) {
  std::vector<u64> primes = default_prime_table().primes_in(3, p_max);
  return parallel_map(primes.size(), threads,
                      [&](std::size_t i) { return bad_residues(static_cast<u32>(primes[i]), l); });
}

struct SieveOutcome {
  u64 k_lo = 0;
  u64 k_hi = 0;
  u32 bound = 0;              // largest prime used
  u32 implied_bound = 0;      // max over sieved k of the first prime sieving it
  std::vector<u64> survivors;
};

// Marks k in [k_lo, k_hi] whose class k mod (p-1) is bad for some table prime.
// Tables are applied in ascending p.
inline SieveOutcome sieve_range(u64 k_lo, u64 k_hi, const std::vector<BadResidueTable>& tables) {
  if (k_lo < 2 || k_lo > k_hi) throw std::invalid_argument("sieve_range: need 2 <= k_lo <= k_hi");
  const u64 span = k_hi - k_lo + 1;
  std::vector<std::uint64_t> marked((span + 63) / 64, 0);
  SieveOutcome out{k_lo, k_hi, 0, 0, {}};
  std::vector<const BadResidueTable*> order;
  for (const auto& t : tables) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->p < b->p; });
  for (const BadResidueTable* t : order) {
    out.bound = std::max(out.bound, t->p);
    const u64 step = t->p - 1;
    bool fresh = false;
    for (u32 a : t->bad) {
      u64 first = k_lo + (a + step - k_lo % step) % step;
      for (u64 k = first; k <= k_hi; k += step) {
        u64 i = k - k_lo;
        std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (!(marked[i / 64] & bit)) {
          marked[i / 64] |= bit;
          fresh = true;
        }
      }
    }
    if (fresh) out.implied_bound = t->p;
  }
  for (u64 i = 0; i < span; ++i)
    if (!(marked[i / 64] >> (i % 64) & 1u)) out.survivors.push_back(k_lo + i);
  return out;
}

inline SieveOutcome sieve_range(u64 k_lo, u64 k_hi, u32 p_max, u64 l, unsigned threads = 1) {
  if (p_max < 3) throw std::invalid_argument("sieve_range: p_max must be >= 3");
  return sieve_range(k_lo, k_hi, bad_residue_tables(p_max, l, threads));
}

// First table prime (ascending) whose bad set contains k mod (p-1).
inline std::optional<u32> first_sieving_prime(u64 k, const std::vector<BadResidueTable>& tables) {
  std::optional<u32> best;
  for (const auto& t : tables) {
    if (best && t.p >= *best) continue;
    if (std::binary_search(t.bad.begin(), t.bad.end(), static_cast<u32>(k % (t.p - 1)))) best = t.p;
  }
  return best;
}

// (k, l) in [0, p-2] x [0, p-1] with p*g_{k,l}(p) != 0 mod p, sorted by (k, l).
inline std::vector<std::pair<u32, u32>> grid_scan(u32 p, unsigned threads = 1) {
  TraceKernel kernel(p);
  auto columns = parallel_map(p, threads, [&](std::size_t l) {
    std::vector<u32> ks;
    for (u32 k = 0; k + 1 < p; ++k)
      if (kernel.trace(k, static_cast<u32>(l)) != 0) ks.push_back(k);
    return ks;
  });
  std::vector<std::pair<u32, u32>> out;
  for (u32 l = 0; l < p; ++l)
    for (u32 k : columns[l]) out.emplace_back(k, l);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Sieve-table file: one line per prime, "p,l:a1;a2;...;an", ascending
// residues, LF-terminated ASCII.
// ---------------------------------------------------------------------------

inline void write_sieve_tables(std::ostream& os, const std::vector<BadResidueTable>& tables) {
  for (const auto& t : tables) {
    os << t.p << ',' << t.l << ':';
    for (std::size_t i = 0; i < t.bad.size(); ++i) {
      if (i) os << ';';
      os << t.bad[i];
    }
    os << '\n';
  }
}

inline BadResidueTable parse_sieve_table_line(const std::string& line) {
  auto comma = line.find(',');
  auto colon = line.find(':');
  if (comma == std::string::npos || colon == std::string::npos || colon < comma)
    throw std::runtime_error("malformed sieve-table line: " + line);
  BadResidueTable t;
  t.p = static_cast<u32>(std::stoul(line.substr(0, comma)));
  t.l = static_cast<u32>(std::stoul(line.substr(comma + 1, colon - comma - 1)));
  std::stringstream rest(line.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ';'))
    if (!item.empty()) t.bad.push_back(static_cast<u32>(std::stoul(item)));
  return t;
}

inline std::vector<BadResidueTable> read_sieve_tables(std::istream& is) {
  std::vector<BadResidueTable> out;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_sieve_table_line(line));
  }
  return out;
}

}  // namespace goebel
