#include "goebel/billiards.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace goebel;

namespace {

std::vector<u32> one_mod_four_primes(u32 lo, u32 hi) {
  std::vector<u32> out;
  for (u64 p : default_prime_table().primes_in(lo, hi))
    if (p % 4 == 1) out.push_back(static_cast<u32>(p));
  return out;
}

std::vector<signed char> parse_signs(const std::string& s) {
  std::vector<signed char> out;
  for (char c : s) out.push_back(c == '+' ? 1 : -1);
  return out;
}

// Every +-1 sequence on 1..p-1 meeting the four defining conditions.
std::vector<std::vector<signed char>> brute_force_a(u32 p, u32 l) {
  const u32 half = (p - 1) / 2;
  std::vector<std::vector<signed char>> found;
  for (u64 mask = 0; mask < (1ull << half); ++mask) {
    std::vector<signed char> a(p - 1);
    for (u32 n = 1; n <= p - 1; ++n) {
      u32 i = std::min(n, p - n) - 1;
      a[n - 1] = (mask >> i & 1u) ? -1 : 1;
    }
    if (satisfies_a_conditions(p, l, a)) found.push_back(a);
  }
  return found;
}

// Every period-(l+1) sequence with b(1) = 1 and the two defining relations.
std::vector<std::vector<signed char>> brute_force_b(u32 l, u32 s) {
  const long long L = l + 1;
  std::vector<std::vector<signed char>> found;
  for (u64 mask = 0; mask < (1ull << L); ++mask) {
    auto b = [&](long long n) {
      long long r = ((n % L) + L) % L;
      return (mask >> r & 1u) ? -1 : 1;
    };
    if (b(1) != 1) continue;
    bool ok = true;
    for (long long n = 1; n < L && ok; ++n) ok = b(n) == -b(L - n);
    for (long long n = 0; n < L && ok; ++n) ok = b(static_cast<long long>(s) - n) == b(s + 1 + n);
    if (!ok) continue;
    std::vector<signed char> one;
    for (long long n = 1; n <= L; ++n) one.push_back(static_cast<signed char>(b(n)));
    found.push_back(one);
  }
  return found;
}

}  // namespace

TEST(Billiards, WorkedExampleThirtySevenTwelve) {
  BilliardPath path = billiard_path(37, 12);
  std::vector<u32> sigma = {13, 2, 9, 17, 6, 5, 16, 10, 1, 12, 14, 3, 8, 18, 7, 4, 15, 11};
  EXPECT_EQ(path.sigma, sigma);
  SignSequence a = construct_a(37, 12);
  std::string half = a.signs().substr(0, 18);
  EXPECT_EQ(half, "++--++--++---++--+");
  EXPECT_EQ(a.length(), 36u);
}

TEST(Billiards, PathShape) {
  for (u32 p : one_mod_four_primes(5, 400))
    for (u32 l = 2; l + 3 <= p; l += 2) {
      BilliardPath path = billiard_path(p, l);
      const u32 w = billiard_width(p, l);
      const u32 half = (p - 1) / 2;
      ASSERT_EQ(path.points.size(), p - 2) << p << " " << l;
      // Corners are excluded; the path is symmetric about y = x.
      for (std::size_t i = 0; i < path.points.size(); ++i) {
        const auto& q = path.points[i];
        const auto& r = path.points[path.points.size() - 1 - i];
        EXPECT_EQ(q.x, r.y);
        EXPECT_EQ(q.y, r.x);
        EXPECT_FALSE(q == (LatticePoint{w, 0}) || q == (LatticePoint{0, w}));
      }
      std::set<std::pair<long long, long long>> seen;
      for (const auto& q : path.points) {
        EXPECT_TRUE(on_billiard_boundary(p, l, q));
        EXPECT_TRUE(seen.insert({q.x, q.y}).second) << "revisit at " << q.x << "," << q.y;
      }
      // sigma and tau are permutations tied by the reflection symmetry.
      std::vector<u32> s = path.sigma, t = path.tau;
      ASSERT_EQ(s.size(), half);
      std::sort(s.begin(), s.end());
      std::sort(t.begin(), t.end());
      for (u32 j = 0; j < half; ++j) {
        EXPECT_EQ(s[j], j + 1);
        EXPECT_EQ(t[j], j + 1);
      }
      for (u32 n = 1; n <= half; ++n) EXPECT_EQ(path.tau[(p + 1) / 2 - n - 1], path.sigma[n - 1]);
    }
}

TEST(Billiards, RejectsBadArguments) {
  EXPECT_THROW(billiard_path(7, 2), DomainError);
  EXPECT_THROW(billiard_path(13, 3), DomainError);
  EXPECT_THROW(billiard_path(13, 12), DomainError);
  EXPECT_THROW(construct_a(21, 2), DomainError);
}

TEST(SequenceA, UniqueByBruteForce) {
  for (u32 p : one_mod_four_primes(5, 45))
    for (u32 l = 0; l + 3 <= p; l += 2) {
      auto all = brute_force_a(p, l);
      ASSERT_EQ(all.size(), 1u) << p << " " << l;
      EXPECT_EQ(all[0], construct_a(p, l).values) << p << " " << l;
    }
}

TEST(SequenceA, ConditionsHoldForLargerPrimes) {
  for (u32 p : one_mod_four_primes(45, 1200))
    for (u32 l = 0; l + 3 <= p; l += 2) EXPECT_TRUE(satisfies_a_conditions(p, l, construct_a(p, l).values));
}

TEST(SequenceA, ZeroIsConstant) {
  for (u32 p : {13u, 101u}) EXPECT_EQ(construct_a(p, 0).signs(), std::string(p - 1, '+'));
}

TEST(SequenceB, GoldenValues) {
  EXPECT_EQ(construct_b(2, 0).values, parse_signs("+-+"));
  EXPECT_EQ(construct_b(8, 2).values, parse_signs("++++-----"));
}

TEST(SequenceB, UniqueByBruteForce) {
  for (u32 l = 0; l <= 16; l += 2)
    for (u32 s = 0; s <= l; ++s) {
      if (!valid_b_args(l, s)) {
        EXPECT_THROW(construct_b(l, s), DomainError);
        continue;
      }
      auto all = brute_force_b(l, s);
      ASSERT_EQ(all.size(), 1u) << l << " " << s;
      EXPECT_EQ(all[0], construct_b(l, s).values) << l << " " << s;
    }
}

TEST(SequenceB, PeriodicIndexing) {
  SignSequence b = construct_b(8, 2);
  for (long long n = -30; n <= 30; ++n) EXPECT_EQ(b.at(n), b.at(n + 9));
}

TEST(SequenceB, SymmetriesUpToSixty) {
  int checked = 0;
  for (u32 l = 2; l <= 60; l += 2)
    for (u32 s = 0; s <= l; ++s) {
      if (!valid_b_args(l, s)) continue;
      SymmetryReport r = check_b_symmetries(l, s);
      EXPECT_TRUE(r.pass) << l << " " << s << ": " << r.counterexample;
      ++checked;
    }
  EXPECT_GT(checked, 200);
}

TEST(SequenceB, AgreesWithA) {
  EXPECT_TRUE(a_equals_b_consistency(37, 12));
  EXPECT_TRUE(a_equals_b_consistency(13, 2));
  for (u32 p : one_mod_four_primes(5, 300))
    for (u32 l = 0; l + 3 <= p; l += 2) EXPECT_TRUE(a_equals_b_consistency(p, l)) << p << " " << l;
}

TEST(LegendreConditions, ExamplesAndBoundary) {
  EXPECT_EQ(empty_iff_conditions(13, 2), (std::pair<bool, bool>{true, false}));
  for (u32 p : {13u, 17u, 101u}) EXPECT_TRUE(empty_iff_conditions(p, 0).first);
  EXPECT_THROW(empty_iff_conditions(7, 2), DomainError);
  EXPECT_THROW(empty_iff_conditions(13, 3), DomainError);
}

// Each condition matches a non-zigzag walk ending at the matching barrier.
TEST(LegendreConditions, MatchZigzagCharacterization) {
  for (u32 p : one_mod_four_primes(5, 500)) {
    LegendreTable chi(p);
    for (u32 l = 0; l + 3 <= p; l += 2) {
      auto [c1, c2] = empty_iff_conditions(chi, l);
      ReducedTrace here = reduced_trace(chi, l);
      ReducedTrace next = reduced_trace(chi, l + 2);
      EXPECT_EQ(c1, !zigzag(here) && here.final_value() == 0) << p << " " << l;
      EXPECT_EQ(c2, !zigzag(next) && next.final_value() == p) << p << " " << l;
    }
  }
}

// An empty middle block occurs exactly when both conditions hold for some l.
TEST(LegendreConditions, EquivalentToEmptyMiddle) {
  for (u32 p : one_mod_four_primes(5, 3000)) {
    LegendreTable chi(p);
    bool both = false;
    for (u32 l = 0; l + 3 <= p; l += 2) {
      auto [c1, c2] = empty_iff_conditions(chi, l);
      both |= c1 && c2;
    }
    bool empty = true;
    for (u32 l = 0; l < p && empty; l += 2) empty = classify_l(chi, l) != LClass::Middle;
    EXPECT_EQ(both, empty) << p;
    if (p >= 13) EXPECT_FALSE(both) << p;
  }
}

TEST(Zigzag, Examples) {
  EXPECT_FALSE(zigzag(reduced_trace(13, 0)));
  EXPECT_TRUE(zigzag(reduced_trace(13, 4)));
}

TEST(Multiplicativity, WorkedExample) {
  SignSequence a = construct_a(37, 12);
  EXPECT_EQ(multiplicativity_witness(a), std::optional<u32>(2));
  EXPECT_NE(a.at(12), a.at(2) * a.at(6));  // m = 6 is a witness as well
  MultiplicativityReport r = verify_multiplicativity(37);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.witnesses.size(), 17u);
}

TEST(Multiplicativity, EveryEvenStartHasWitness) {
  for (u32 p : one_mod_four_primes(13, 1500)) {
    MultiplicativityReport r = verify_multiplicativity(p, 2);
    EXPECT_TRUE(r.missing.empty()) << p;
    EXPECT_TRUE(r.legendre_matches.empty()) << p;
    for (const auto& w : r.witnesses) {
      EXPECT_LE(2 * w.m + 3, p);
      SignSequence a = construct_a(p, w.l);
      EXPECT_NE(a.at(2 * w.m), a.at(2) * a.at(w.m));
      for (u32 m = 1; m < w.m; ++m) EXPECT_EQ(a.at(2 * m), a.at(2) * a.at(m));
    }
  }
}
