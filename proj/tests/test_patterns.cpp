#include <gtest/gtest.h>

#include "klpat/theorems.hpp"
#include "oracles.hpp"

using namespace klpat;

TEST(Patterns, ParseAndFormat) {
  EXPECT_EQ(parse_permutation("4231"), (Permutation{4, 2, 3, 1}));
  EXPECT_EQ(parse_permutation("10,2,3,4,5,6,7,8,9,1").size(), 10U);
  EXPECT_EQ(format_permutation(Permutation{10, 1, 2, 3, 4, 5, 6, 7, 8, 9}), "10,1,2,3,4,5,6,7,8,9");
  EXPECT_EQ(format_permutation(Permutation{3, 1, 2}), "312");
  for (const char* bad : {"", "1223", "2345", "12a", "1,,2", "0123"}) EXPECT_THROW(parse_permutation(bad), ParseError) << bad;
}

TEST(Patterns, OccurrencesInExample) {
  auto w = parse_permutation("4536172");
  auto occ = all_occurrences(w, parse_permutation("3412"));
  std::vector<std::vector<int>> expected = {{0, 1, 4, 6}, {0, 3, 4, 6}, {1, 3, 4, 6}, {2, 3, 4, 6}};
  EXPECT_EQ(occ, expected);
  EXPECT_EQ(find_pattern(w, parse_permutation("3412")), expected.front());
  EXPECT_FALSE(contains_pattern(w, parse_permutation("4321")));
  EXPECT_FALSE(is_rationally_smooth_typeA(w));
}

TEST(Patterns, AgreesWithBruteForce) {
  const auto patterns = oracle::all_perms(3);
  for (const auto& w : oracle::all_perms(6))
    for (const auto& v : patterns) {
      bool brute = false;
      for (std::uint32_t mask = 0; mask < 64 && !brute; ++mask) {
        if (std::popcount(mask) != 3) continue;
        std::vector<int> sub;
        for (int i = 0; i < 6; ++i)
          if ((mask >> i) & 1U) sub.push_back(w[static_cast<std::size_t>(i)]);
        brute = oracle::flatten(sub) == v;
      }
      ASSERT_EQ(contains_pattern(w, v), brute);
    }
}

TEST(Patterns, HexagonAvoidance) {
  EXPECT_TRUE(is_321_hexagon_avoiding(parse_permutation("2143")));
  EXPECT_FALSE(is_321_hexagon_avoiding(parse_permutation("1432")));
  // 56781234 itself is 321-avoiding but hexagon-containing.
  auto h = parse_permutation("56781234");
  EXPECT_FALSE(contains_pattern(h, Permutation{3, 2, 1}));
  EXPECT_FALSE(is_321_hexagon_avoiding(h));
  EXPECT_FALSE(is_321_hexagon_avoiding(parse_permutation("569781234")));
  for (const auto& p : hexagon_patterns()) EXPECT_FALSE(is_321_hexagon_avoiding(p));
}

TEST(Patterns, SmoothnessMatchesKLForSmallN) {
  WorkspaceRegistry reg;
  for (int n = 2; n <= 6; ++n) {
    auto& ws = reg.symmetric(n);
    for (ElementId w = 0; w < ws.group.size(); ++w) {
      auto p = ws.sys.to_signed_permutation(ws.group.element(w));
      ASSERT_EQ(is_rationally_smooth_typeA(p), ws.kl.kl_polynomial(0, w) == IntPolynomial::one()) << format_permutation(p);
    }
  }
}

TEST(Patterns, P2PatternsHaveLargeValue) {
  WorkspaceRegistry reg;
  auto& ws = reg.symmetric(6);
  for (const auto& v : p2_patterns()) {
    auto id = ws.group.id_of(ws.sys.from_signed_permutation(v));
    EXPECT_GT(ws.kl.kl_polynomial(0, id).at_one(), 2) << format_permutation(v);
  }
}

TEST(Patterns, ContainmentGivesMonotoneValues) {
  // If w contains v then P_{1,w}(1) >= P_{1,v}(1); exhaustive for S5 into S6.
  WorkspaceRegistry reg;
  auto& w6 = reg.symmetric(6);
  auto& w5 = reg.symmetric(5);
  std::vector<std::int64_t> small(w5.group.size());
  for (ElementId v = 0; v < w5.group.size(); ++v) small[v] = w5.kl.kl_polynomial(0, v).at_one();
  for (ElementId w = 0; w < w6.group.size(); ++w) {
    auto pw = w6.sys.to_signed_permutation(w6.group.element(w));
    const auto value = w6.kl.kl_polynomial(0, w).at_one();
    for (int drop = 0; drop < 6; ++drop) {
      std::vector<int> rest;
      for (int i = 0; i < 6; ++i)
        if (i != drop) rest.push_back(pw[static_cast<std::size_t>(i)]);
      auto v = w5.group.id_of(w5.sys.from_signed_permutation(oracle::flatten(rest)));
      ASSERT_GE(value, small[v]);
    }
  }
}

TEST(Patterns, PositionAndValueFlatteningAreInverse) {
  // Positions of w correspond to values of w^-1.
  for (const auto& w : oracle::all_perms(5)) {
    auto winv = oracle::inverse(w);
    for (std::uint32_t mask = 1; mask < 32; ++mask) {
      std::vector<int> sigma, by_position;
      for (int i = 0; i < 5; ++i)
        if ((mask >> i) & 1U) {
          sigma.push_back(i + 1);
          by_position.push_back(w[static_cast<std::size_t>(i)]);
        }
      ASSERT_EQ(oracle::inverse(flatten_classical(winv, sigma)), oracle::flatten(by_position));
    }
  }
}
