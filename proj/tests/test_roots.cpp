#include <gtest/gtest.h>

#include "klpat/group.hpp"
#include "oracles.hpp"

using namespace klpat;

namespace {

struct TypeCase {
  const char* name;
  std::size_t positive_roots;
};

// Standard counts |Φ+|: n(n+1)/2, n^2, n^2, n(n-1), 36, 63, 120, 24, 6.
const TypeCase kTypes[] = {{"A1", 1},  {"A2", 3},  {"A5", 15}, {"A8", 36}, {"B2", 4},  {"B3", 9},   {"B5", 25},
                           {"C3", 9},  {"C4", 16}, {"D2", 2},  {"D4", 12}, {"D5", 20}, {"E6", 36},  {"E7", 63},
                           {"E8", 120}, {"F4", 24}, {"G2", 6}};

}  // namespace

TEST(Roots, PositiveRootCounts) {
  for (const auto& t : kTypes) {
    CoxeterSystem sys = CoxeterSystem::parse(t.name);
    EXPECT_EQ(sys.num_positive_roots(), t.positive_roots) << t.name;
    EXPECT_EQ(sys.num_roots(), 2 * t.positive_roots) << t.name;
  }
}

TEST(Roots, SimpleRootsComeFirst) {
  for (const auto& t : kTypes) {
    CoxeterSystem sys = CoxeterSystem::parse(t.name);
    for (int i = 0; i < sys.rank(); ++i) {
      EXPECT_EQ(sys.height(static_cast<RootId>(i)), 1);
      EXPECT_EQ(sys.coords(static_cast<RootId>(i))[static_cast<std::size_t>(i)], 1);
    }
    for (std::size_t r = 0; r < sys.num_positive_roots(); ++r) {
      EXPECT_EQ(sys.negate(sys.negate(static_cast<RootId>(r))), r);
      EXPECT_FALSE(sys.is_positive(sys.negate(static_cast<RootId>(r))));
    }
  }
}

TEST(Cartan, MatchesHandWrittenTables) {
  // a_ij = 2(α_i, α_j)/(α_j, α_j)
  EXPECT_EQ(standard_cartan_matrix(Family::A, 3), (IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}));
  EXPECT_EQ(standard_cartan_matrix(Family::B, 2), (IntMatrix{{2, -2}, {-1, 2}}));
  EXPECT_EQ(standard_cartan_matrix(Family::C, 2), (IntMatrix{{2, -1}, {-2, 2}}));
  EXPECT_EQ(standard_cartan_matrix(Family::G, 2), (IntMatrix{{2, -1}, {-3, 2}}));
  EXPECT_EQ(standard_cartan_matrix(Family::F, 4),
            (IntMatrix{{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}}));
  EXPECT_EQ(standard_cartan_matrix(Family::D, 4),
            (IntMatrix{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}));
  // E6 in Bourbaki numbering: 1-3-4-5-6 with 2 attached to 4.
  IntMatrix e6(6, std::vector<int>(6, 0));
  for (int i = 0; i < 6; ++i) e6[i][i] = 2;
  for (auto [a, b] : {std::pair{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}}) e6[a][b] = e6[b][a] = -1;
  EXPECT_EQ(standard_cartan_matrix(Family::E, 6), e6);
}

TEST(Cartan, Validation) {
  EXPECT_THROW(CartanDatum::parse("A0"), ParseError);
  EXPECT_THROW(CartanDatum::parse("E9"), ParseError);
  EXPECT_THROW(CartanDatum::parse("G3"), ParseError);
  EXPECT_THROW(CartanDatum::parse("Q2"), ParseError);
  EXPECT_THROW(CartanDatum::parse("A"), ParseError);
  EXPECT_THROW(CartanDatum::from_matrix({{2, 1}, {1, 2}}), ParseError);
  EXPECT_THROW(CartanDatum::from_matrix({{2, -1}, {0, 2}}), ParseError);
  EXPECT_THROW(CartanDatum::from_matrix({{2, -2}, {-2, 2}}), ParseError);  // affine
  EXPECT_EQ(CartanDatum::parse("b3").name(), "B3");
  EXPECT_EQ(CartanDatum::from_matrix({{2, -1}, {-1, 2}}).name(), "X2");
}

TEST(Roots, ReflectionNegatesItsRootAndFixesTheHyperplane) {
  for (const char* t : {"A4", "B3", "C3", "D4", "G2", "F4"}) {
    CoxeterSystem sys = CoxeterSystem::parse(t);
    for (std::size_t b = 0; b < sys.num_positive_roots(); ++b) {
      const auto beta = static_cast<RootId>(b);
      EXPECT_EQ(sys.apply(sys.reflection(beta), beta), sys.negate(beta)) << t;
      for (std::size_t r = 0; r < sys.num_roots(); ++r) {
        const auto rr = static_cast<RootId>(r);
        if (sys.inner_product(sys.coords(beta), sys.coords(rr)) == 0)
          EXPECT_EQ(sys.apply(sys.reflection(beta), rr), rr) << t;
      }
      EXPECT_TRUE(sys.is_identity(sys.multiply(sys.reflection(beta), sys.reflection(beta))));
    }
  }
}

TEST(Roots, EquationOneExhaustive) {
  // r w > w  iff  α_r ∈ wΠ, with lengths from the BFS layers.
  for (const char* t : {"A3", "B3", "C3", "D4", "G2"}) {
    CoxeterSystem sys = CoxeterSystem::parse(t);
    EnumeratedGroup g(sys);
    for (ElementId id = 0; id < g.size(); ++id) {
      const auto& w = g.element(id);
      std::vector<bool> in_image(sys.num_roots(), false);
      for (std::size_t b = 0; b < sys.num_positive_roots(); ++b) in_image[sys.apply(w, static_cast<RootId>(b))] = true;
      for (std::size_t r = 0; r < sys.num_positive_roots(); ++r) {
        ElementId rw = g.id_of(sys.multiply(sys.reflection(static_cast<RootId>(r)), w));
        EXPECT_EQ(g.length(rw) > g.length(id), static_cast<bool>(in_image[r])) << t;
      }
    }
  }
}

TEST(Notation, SignedPermutationRoundTripAndLength) {
  for (const char* t : {"A3", "B3", "C3", "D4"}) {
    CoxeterSystem sys = CoxeterSystem::parse(t);
    EnumeratedGroup g(sys);
    for (ElementId id = 0; id < g.size(); ++id) {
      auto p = sys.to_signed_permutation(g.element(id));
      EXPECT_EQ(sys.from_signed_permutation(p), g.element(id));
      EXPECT_EQ(sys.parse_element(sys.format_element(g.element(id))), g.element(id));
      const int expected = t[0] == 'A' ? oracle::inversions(p) : oracle::signed_length(p, t[0]);
      EXPECT_EQ(g.length(id), expected) << t << " " << sys.format_element(g.element(id));
    }
  }
}

TEST(Notation, ParsingAndErrors) {
  CoxeterSystem a3 = CoxeterSystem::parse("A3");
  EXPECT_EQ(a3.format_element(a3.parse_element("s1 s2 s1")), "3214");
  EXPECT_EQ(a3.format_element(a3.parse_element("s1s3s2")), a3.format_element(a3.parse_element("s1 s3 s2")));
  EXPECT_EQ(a3.format_element(a3.parse_element("e")), "1234");
  EXPECT_EQ(a3.length(a3.parse_element("4231")), 5);
  EXPECT_THROW(a3.parse_element("4221"), ParseError);
  EXPECT_THROW(a3.parse_element("423"), ParseError);
  EXPECT_THROW(a3.parse_element("-4,2,1,3"), ParseError);
  EXPECT_THROW(a3.parse_element("s4"), ParseError);
  EXPECT_THROW(a3.parse_element("x1"), ParseError);

  CoxeterSystem b4 = CoxeterSystem::parse("B4");
  auto w = b4.parse_element("-4,2,1,-3");
  EXPECT_EQ(b4.format_element(w), "-4,2,1,-3");
  EXPECT_EQ(b4.length(w), oracle::signed_length({-4, 2, 1, -3}, 'B'));

  CoxeterSystem d4 = CoxeterSystem::parse("D4");
  EXPECT_THROW(d4.parse_element("-1,2,3,4"), ParseError);
  EXPECT_NO_THROW(d4.parse_element("-1,-2,3,4"));

  CoxeterSystem g2 = CoxeterSystem::parse("G2");
  EXPECT_EQ(g2.format_element(g2.parse_element("s2 s1")), "s2s1");
  EXPECT_EQ(g2.format_element(g2.identity()), "e");
  EXPECT_THROW(g2.parse_element("21"), ParseError);
}
