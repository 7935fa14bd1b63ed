#pragma once

// Arithmetic billiards in the 45-degree rectangle R_{p,l} and the +-1
// sequences it pins down.
//
// With w = min(l+1, p-(l+1)) the rectangle is bounded by the lines
//   x + y = w (inner), x + y = p - w (outer), x - y = w, y - x = w.
// The path leaves (0, w) along +x, turns at every boundary lattice point and
// stops at (w, 0) after visiting the p - 2 other boundary lattice points.
// Reading the visits as (tau(1), sigma(1)), (tau(1), sigma(2)),
// (tau(2), sigma(2)), ... gives the permutations sigma and tau.
//
// a_{p,l} is the unique +-1 sequence on 1..p-1 with a(1) = 1, a(n) = a(p-n),
// a(n) = -a(l+1-n) (n <= l/2) and a(n) = a(l+1+n) (n <= p-l-2). Every
// boundary point (x, y) carries the constraint a(x) a(y) = psi(x, y).
//
// b_{l,s} is the unique +-1 sequence of period l+1 with b(1) = 1,
// b(n) = -b(l+1-n) for n != 0 mod l+1 and b(s-n) = b(s+1+n), defined when
// gcd(2s+1, l+1) = 1.

#include "goebel/modarith.hpp"
#include "goebel/parallel.hpp"
#include "goebel/reduced.hpp"

#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace goebel {

class InconsistentConstraints : public std::logic_error {
 public:
  InconsistentConstraints(const std::string& what) : std::logic_error(what) {}
};

struct LatticePoint {
  long long x = 0;
  long long y = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct BilliardPath {
  u32 p = 0;
  u32 l = 0;
  u32 w = 0;
  std::vector<LatticePoint> points;  // visit order, p - 2 entries
  std::vector<u32> sigma;            // sigma[j - 1] = sigma(j), j = 1 .. (p-1)/2
  std::vector<u32> tau;
};

inline void check_billiard_args(u32 p, u32 l) {
  if (p < 5 || p % 4 != 1 || !default_prime_table().is_prime(p))
    throw DomainError("billiards: p must be a prime with p = 1 mod 4");
  if (l % 2 != 0 || l + 3 > p)
    throw DomainError("billiards: l must be even with 0 <= l <= p-3");
}

inline u32 billiard_width(u32 p, u32 l) { return std::min(l + 1, p - (l + 1)); }

// Membership in L_{p,l}: boundary lattice points minus the corners (0, w), (w, 0).
inline bool on_billiard_boundary(u32 p, u32 l, LatticePoint q) {
  const long long w = billiard_width(p, l);
  const long long P = p;
  const long long s = q.x + q.y, d = q.x - q.y;
  if (s == w) return q.x >= 1 && q.x <= w - 1;
  if (s == P - w) return d >= -w && d <= w;
  if (d == w || d == -w) return s > w && s < P - w;
  return false;
}

inline BilliardPath billiard_path(u32 p, u32 l) {
  check_billiard_args(p, l);
  const long long w = billiard_width(p, l);
  const long long P = p;
  BilliardPath path{p, l, static_cast<u32>(w), {}, {}, {}};

  long long x = 0, y = w, dx = 1, dy = 0;
  const LatticePoint end{w, 0};
  const std::size_t expected = p - 2;
  while (true) {
    // Smallest positive travel distance to one of the four sides.
    long long best = -1;
    bool sum_line = false;
    auto consider = [&](long long target, long long current, long long rate, bool is_sum) {
      if (rate == 0) return;
      long long t = (target - current) / rate;
      if ((target - current) % rate != 0 || t <= 0) return;
      if (best < 0 || t < best) {
        best = t;
        sum_line = is_sum;
      }
    };
    consider(w, x + y, dx + dy, true);
    consider(P - w, x + y, dx + dy, true);
    consider(w, x - y, dx - dy, false);
    consider(-w, x - y, dx - dy, false);
    if (best < 0) throw InconsistentConstraints("billiard_path: path escaped the rectangle");
    x += best * dx;
    y += best * dy;
    if (LatticePoint{x, y} == end) break;
    path.points.push_back({x, y});
    if (path.points.size() > expected)
      throw InconsistentConstraints("billiard_path: path longer than p - 2 points");
    long long ndx, ndy;
    if (sum_line) {
      ndx = -dy;
      ndy = -dx;
    } else {
      ndx = dy;
      ndy = dx;
    }
    dx = ndx;
    dy = ndy;
  }
  if (path.points.size() != expected)
    throw InconsistentConstraints("billiard_path: expected p - 2 points");

  const u32 half = (p - 1) / 2;
  path.sigma.resize(half);
  path.tau.resize(half);
  for (u32 j = 1; j <= half; ++j) {
    const LatticePoint& q = path.points[2 * j - 2];
    path.tau[j - 1] = static_cast<u32>(q.x);
    path.sigma[j - 1] = static_cast<u32>(q.y);
  }
  return path;
}

inline int psi(u32 p, u32 l, LatticePoint q) {
  check_billiard_args(p, l);
  if (!on_billiard_boundary(p, l, q))
    throw DomainError("psi: point (" + std::to_string(q.x) + "," + std::to_string(q.y) +
                      ") is not in L_{p,l}");
  const bool inner = q.x + q.y == static_cast<long long>(billiard_width(p, l));
  const bool narrow = 2 * l + 5 <= p;  // l <= (p-5)/2
  int sign = inner ? -1 : 1;
  return narrow ? sign : -sign;
}

struct SignSequence {
  enum class Kind { A, B };
  Kind kind = Kind::A;
  u32 p = 0;  // kind A
  u32 l = 0;
  u32 s = 0;  // kind B
  std::vector<signed char> values;  // values[n - 1], n = 1 .. length

  std::size_t length() const { return values.size(); }

  // Kind B indices are taken modulo l + 1.
  int at(long long n) const {
    if (kind == Kind::B) {
      long long L = static_cast<long long>(values.size());
      long long r = ((n % L) + L) % L;
      return values[r == 0 ? L - 1 : r - 1];
    }
    return values.at(static_cast<std::size_t>(n - 1));
  }

  // "+-" string, one character per term.
  std::string signs() const {
    std::string out;
    for (auto v : values) out += v > 0 ? '+' : '-';
    return out;
  }
};

// The four defining conditions of a_{p,l}.
inline bool satisfies_a_conditions(u32 p, u32 l, const std::vector<signed char>& a) {
  if (a.size() != p - 1) return false;
  auto A = [&](u32 n) { return a[n - 1]; };
  if (A(1) != 1) return false;
  for (u32 n = 1; n <= (p - 1) / 2; ++n)
    if (A(n) != A(p - n)) return false;
  for (u32 n = 1; n <= l / 2; ++n)
    if (A(n) != -A(l + 1 - n)) return false;
  for (u32 n = 1; n + l + 2 <= p; ++n)
    if (A(n) != A(l + 1 + n)) return false;
  return true;
}

inline SignSequence construct_a(u32 p, u32 l) {
  check_billiard_args(p, l);
  SignSequence seq{SignSequence::Kind::A, p, l, 0, std::vector<signed char>(p - 1, 1)};
  if (l == 0) return seq;

  BilliardPath path = billiard_path(p, l);
  const u32 half = (p - 1) / 2;
  std::vector<signed char> a(half + 1, 0);
  a[path.sigma[0]] = 1;
  for (const LatticePoint& q : path.points) {
    auto x = static_cast<u32>(q.x), y = static_cast<u32>(q.y);
    int c = psi(p, l, q);
    if (a[x] == 0 && a[y] == 0)
      throw InconsistentConstraints("construct_a: path visited a point with no known end");
    if (a[x] == 0)
      a[x] = static_cast<signed char>(c * a[y]);
    else if (a[y] == 0)
      a[y] = static_cast<signed char>(c * a[x]);
  }
  for (u32 n = 1; n <= half; ++n)
    if (a[n] == 0) throw InconsistentConstraints("construct_a: index left undetermined");
  if (a[1] < 0)
    for (auto& v : a) v = static_cast<signed char>(-v);
  for (const LatticePoint& q : path.points)
    if (a[q.x] * a[q.y] != psi(p, l, q))
      throw InconsistentConstraints("construct_a: constraint violated at (" + std::to_string(q.x) +
                                    "," + std::to_string(q.y) + ")");
  for (u32 n = 1; n <= p - 1; ++n) seq.values[n - 1] = a[std::min(n, p - n)];
  if (!satisfies_a_conditions(p, l, seq.values))
    throw InconsistentConstraints("construct_a: result violates the defining conditions");
  return seq;
}

inline bool valid_b_args(u32 l, u32 s) {
  return l % 2 == 0 && s <= l && std::gcd(2 * s + 1, l + 1) == 1;
}

inline SignSequence construct_b(u32 l, u32 s) {
  if (!valid_b_args(l, s))
    throw DomainError("construct_b: need even l, 0 <= s <= l and gcd(2s+1, l+1) = 1");
  const long long L = l + 1;
  auto idx = [L](long long n) {
    long long r = ((n % L) + L) % L;
    return static_cast<u32>(r == 0 ? L : r);
  };
  // Signed relations b(u) = sign * b(v).
  std::vector<std::vector<std::pair<u32, int>>> adj(L + 1);
  auto relate = [&](u32 u, u32 v, int sign) {
    adj[u].push_back({v, sign});
    adj[v].push_back({u, sign});
  };
  for (long long n = 1; n <= l; ++n) relate(idx(n), idx(L - n), -1);
  for (long long n = 0; n < L; ++n) relate(idx(static_cast<long long>(s) - n), idx(s + 1 + n), 1);

  std::vector<signed char> b(L + 1, 0);
  b[1] = 1;
  std::queue<u32> work;
  work.push(1);
  while (!work.empty()) {
    u32 u = work.front();
    work.pop();
    for (auto [v, sign] : adj[u]) {
      auto want = static_cast<signed char>(sign * b[u]);
      if (b[v] == 0) {
        b[v] = want;
        work.push(v);
      } else if (b[v] != want) {
        throw InconsistentConstraints("construct_b: contradictory relations for l=" +
                                      std::to_string(l) + ", s=" + std::to_string(s));
      }
    }
  }
  SignSequence seq{SignSequence::Kind::B, 0, l, s, {}};
  for (long long n = 1; n <= L; ++n) {
    if (b[n] == 0)
      throw InconsistentConstraints("construct_b: relations leave a free sign");
    seq.values.push_back(b[n]);
  }
  return seq;
}

struct SymmetryReport {
  bool pass = true;
  std::string counterexample;  // empty on pass
};

// Sign flip against b_{l,l-s} exactly at multiples of l+1, and the three
// shift/reflection identities, over one period.
inline SymmetryReport check_b_symmetries(u32 l, u32 s) {
  SignSequence b = construct_b(l, s);
  SymmetryReport rep;
  if (l < 2) return rep;
  const long long L = l + 1;
  auto fail = [&](const std::string& what, long long n) {
    if (rep.pass) {
      rep.pass = false;
      rep.counterexample = what + " at n=" + std::to_string(n);
    }
  };
  auto divisible = [L](long long n) { return n % L == 0; };
  SignSequence mirror = construct_b(l, l - s);
  for (long long n = 0; n < L; ++n) {
    int expect = divisible(n) ? -mirror.at(n) : mirror.at(n);
    if (b.at(n) != expect) fail("flip against b_{l,l-s}", n);
  }
  const long long S = s;
  for (long long n = 0; n < L; ++n)
    if (!divisible(n) && !divisible(n + 2 * S + 1) && b.at(n) != -b.at(n + 2 * S + 1))
      fail("shift by 2s+1", n);
  if (2 * S < static_cast<long long>(l)) {
    const long long t = static_cast<long long>(l) / 2 - S;
    for (long long n = 0; n < L; ++n) {
      if (!divisible(n) && !divisible(n + 2 * t) && b.at(n) != -b.at(n + 2 * t)) fail("shift by 2t", n);
      if (!divisible(t - n) && !divisible(t + n) && b.at(t - n) != b.at(t + n)) fail("reflection about t", n);
    }
  }
  return rep;
}

inline bool a_equals_b_consistency(u32 p, u32 l) {
  SignSequence a = construct_a(p, l);
  u32 s = ((p - 1) / 2) % (l + 1);
  SignSequence b = construct_b(l, s);
  for (u32 n = 1; n <= p - 1; ++n)
    if (a.at(n) != b.at(n)) return false;
  return true;
}

// The two Legendre-pattern conditions whose joint truth for some even l is
// equivalent to an empty middle block.
inline std::pair<bool, bool> empty_iff_conditions(const LegendreTable& chi, u32 l) {
  const u32 p = chi.p();
  if (p % 4 != 1) throw DomainError("empty_iff_conditions: p must be 1 mod 4");
  if (l % 2 != 0 || l + 3 > p) throw DomainError("empty_iff_conditions: l must be even in [0, p-3]");
  bool cond1 = true;
  for (u32 n = 1; n <= l / 2 && cond1; ++n) cond1 = chi[n] == -chi[l + 1 - n];
  bool cond2 = true;
  for (u32 n = 1; n + l + 2 <= p && cond2; ++n) cond2 = chi[n] == chi[l + 1 + n];
  return {cond1, cond2};
}

inline std::pair<bool, bool> empty_iff_conditions(u32 p, u32 l) {
  return empty_iff_conditions(LegendreTable(p), l);
}

// Both an up-step and a down-step occur.
inline bool zigzag(const ReducedTrace& t) {
  bool up = false, down = false;
  for (std::size_t i = 0; i + 1 < t.values.size(); ++i) {
    long long step = static_cast<long long>(t.values[i + 1]) - t.values[i];
    up |= step == 1;
    down |= step == -1;
  }
  return up && down;
}

struct Witness {
  u32 p = 0;
  u32 l = 0;
  u32 m = 0;
};

struct MultiplicativityReport {
  u32 p = 0;
  std::vector<Witness> witnesses;       // one per even l in [2, p-3], smallest m
  std::vector<u32> missing;             // l without a witness
  std::vector<u32> legendre_matches;    // l in [0, p-3] with a_{p,l} equal to the Legendre sequence
  bool ok() const { return missing.empty() && legendre_matches.empty(); }
};

// Smallest m with 2m <= p-3 and a(2m) != a(2) a(m).
inline std::optional<u32> multiplicativity_witness(const SignSequence& a) {
  const u32 p = a.p;
  for (u32 m = 1; 2 * m + 3 <= p; ++m)
    if (a.at(2 * m) != a.at(2) * a.at(m)) return m;
  return std::nullopt;
}

inline MultiplicativityReport verify_multiplicativity(u32 p, unsigned threads = 1) {
  check_jp_domain(p);
  LegendreTable chi(p);
  struct PerL {
    std::optional<u32> m;
    bool legendre_match = false;
  };
  const u32 count = (p - 3) / 2 + 1;  // even l in [0, p-3]
  auto rows = parallel_map(count, threads, [&](std::size_t i) {
    u32 l = static_cast<u32>(2 * i);
    SignSequence a = construct_a(p, l);
    PerL r;
    if (l >= 2) r.m = multiplicativity_witness(a);
    bool same = true;
    for (u32 n = 1; n <= p - 1 && same; ++n) same = a.at(n) == chi[n];
    r.legendre_match = same;
    return r;
  });
  MultiplicativityReport rep{p, {}, {}, {}};
  for (u32 i = 0; i < count; ++i) {
    u32 l = 2 * i;
    if (rows[i].legendre_match) rep.legendre_matches.push_back(l);
    if (l < 2) continue;
    if (rows[i].m)
      rep.witnesses.push_back({p, l, *rows[i].m});
    else
      rep.missing.push_back(l);
  }
  return rep;
}

}  // namespace goebel
