#include <gtest/gtest.h>

#include "klpat/theorems.hpp"
#include "oracles.hpp"

using namespace klpat;

namespace {

std::vector<std::string> names(const EnumeratedGroup& g, const std::vector<ElementId>& ids) {
  std::vector<std::string> out;
  for (auto id : ids) out.push_back(g.format(id));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(MaximalSet, WorkedExampleInS4) {
  Workspace ws(CartanDatum::parse("A3"));
  auto sub = parse_parabolic(ws.sys, "refl:1-3,2-4");
  CosetTable ct(ws.group, sub);
  const auto x = ws.group.parse("2143"), w = ws.group.parse("4231");
  EXPECT_EQ(names(ws.group, maximal_set(ct, x, w)), (std::vector<std::string>{"2341", "4123"}));
  auto r = main_bound(ws.kl, ct, x, w);
  EXPECT_EQ(r.lhs, 2);
  EXPECT_EQ(r.rhs, 2);
  EXPECT_TRUE(r.holds);
  // The element-level form agrees without touching the enumeration.
  auto e = main_bound_rhs(sub, ws.group.element(x), ws.group.element(w),
                          [&](const GroupElement& a, const GroupElement& b) {
                            return std::optional(ws.kl.kl_polynomial(ws.group.id_of(a), ws.group.id_of(b)));
                          });
  ASSERT_TRUE(e.rhs.has_value());
  EXPECT_EQ(*e.rhs, 2);
  EXPECT_EQ(e.maximal.size(), 2U);
}

TEST(MaximalSet, StructuralProperties) {
  for (const char* t : {"A3", "B3"}) {
    Workspace ws(CartanDatum::parse(t));
    const auto& g = ws.group;
    for (const auto& sub : enumerate_parabolics(g, false)) {
      CosetTable ct(g, sub);
      const auto& eg = sub.embedded_group();
      for (ElementId x = 0; x < g.size(); ++x)
        for (ElementId w = 0; w < g.size(); ++w) {
          if (!g.bruhat_leq(x, w)) continue;
          auto m = maximal_set(ct, x, w);
          ASSERT_FALSE(m.empty());
          if (ct.rep(x) == ct.rep(w) && standard_hypothesis(ct, x))
            ASSERT_EQ(m, std::vector<ElementId>{w}) << t << " " << sub.spec();
          if (x == w && sub.is_standard()) ASSERT_EQ(m, std::vector<ElementId>{w});
          for (ElementId a : m) {
            ASSERT_EQ(ct.rep(a), ct.rep(x));
            ASSERT_TRUE(g.bruhat_leq(a, w));
            for (ElementId b : m)
              if (a != b) ASSERT_FALSE(eg.bruhat_leq(ct.phi(a), ct.phi(b)));
          }
          // Every coset element below w sits under some maximal one.
          for (ElementId a : ct.coset(x)) {
            if (!g.bruhat_leq(a, w)) continue;
            ASSERT_TRUE(std::any_of(m.begin(), m.end(), [&](ElementId y) { return eg.bruhat_leq(ct.phi(a), ct.phi(y)); }));
          }
        }
    }
  }
}

TEST(MaximalSet, SameCosetNeedNotGiveSingleton) {
  // W' = <r23, r14>: both r23 and r14 lie in [1, r14] and are incomparable
  // under <=', so M(1, r14; W') has two elements although r14 is in W'.
  Workspace ws(CartanDatum::parse("A3"));
  auto sub = parse_parabolic(ws.sys, "refl:2-3,1-4");
  CosetTable ct(ws.group, sub);
  const auto w = ws.group.parse("4231");
  for (const char* x : {"1234", "4231"})
    EXPECT_EQ(names(ws.group, maximal_set(ct, ws.group.parse(x), w)), (std::vector<std::string>{"1324", "4231"}));
  EXPECT_TRUE(main_bound(ws.kl, ct, ws.group.parse("1234"), w).holds);
}

TEST(MaximalSet, CosetOrderIsWeakerThanBruhat) {
  Workspace ws(CartanDatum::parse("A3"));
  const auto& g = ws.group;
  bool strictly_weaker = false;
  for (const auto& sub : enumerate_parabolics(g, false)) {
    CosetTable ct(g, sub);
    for (const auto& [rep, members] : ct.cosets())
      for (ElementId a : members)
        for (ElementId b : members) {
          const bool le_x = sub.embedded_group().bruhat_leq(ct.phi(a), ct.phi(b));
          const bool le = g.bruhat_leq(a, b);
          if (le_x) ASSERT_TRUE(le);
          strictly_weaker = strictly_weaker || (le && !le_x);
        }
  }
  EXPECT_TRUE(strictly_weaker);
}

TEST(MainBound, ExhaustiveSmallRank) {
  for (const char* t : {"A3", "B3", "G2"}) {
    Workspace ws(CartanDatum::parse(t));
    for (const auto& sub : enumerate_parabolics(ws.group, false)) {
      CosetTable ct(ws.group, sub);
      for (ElementId x = 0; x < ws.group.size(); ++x)
        for (ElementId w = 0; w < ws.group.size(); ++w) {
          auto r = main_bound(ws.kl, ct, x, w);
          if (!r.x_leq_w) continue;
          ASSERT_TRUE(r.holds) << t << " " << sub.spec() << " " << ws.group.format(x) << " " << ws.group.format(w);
        }
    }
  }
}

TEST(MainBound, ProductSubgroupsFactor) {
  // For W' = S2 x S2 in S4 and S3 x S3 in S6 the primed polynomial of a
  // product is the product of the factors' polynomials.
  Workspace ws(CartanDatum::parse("A3"));
  auto sub = parse_parabolic(ws.sys, "positions:1,2;3,4");
  EXPECT_EQ(sub.order(), 4U);
  for (ElementId a = 0; a < sub.order(); ++a)
    for (ElementId b = 0; b < sub.order(); ++b)
      if (sub.embedded_group().bruhat_leq(a, b)) EXPECT_EQ(sub.embedded_kl().kl_polynomial(a, b), IntPolynomial::one());
  CoxeterSystem a5 = CoxeterSystem::parse("A5");
  auto s33 = parse_parabolic(a5, "positions:1,3,5;2,4,6");
  ASSERT_EQ(s33.order(), 36U);
  CoxeterSystem a2 = CoxeterSystem::parse("A2");
  EnumeratedGroup g2(a2);
  KLEngine k2(g2);
  const auto& eg = s33.embedded_group();
  for (ElementId a = 0; a < eg.size(); ++a)
    for (ElementId b = 0; b < eg.size(); ++b) {
      // Split each element into its two S3 factors via the flattened form.
      auto fa = s33.flattened(s33.element(a)).value();
      auto fb = s33.flattened(s33.element(b)).value();
      auto part = [](const std::string& s, int k) { return k == 0 ? s.substr(1, 3) : s.substr(5, 3); };
      auto p1 = k2.kl_polynomial(g2.parse(part(fa, 0)), g2.parse(part(fb, 0)));
      auto p2 = k2.kl_polynomial(g2.parse(part(fa, 1)), g2.parse(part(fb, 1)));
      ASSERT_EQ(s33.embedded_kl().kl_polynomial(a, b), p1 * p2) << fa << " " << fb;
    }
}

TEST(Coefficientwise, HoldsUnderHypothesisAndRejectsOtherwise) {
  Workspace ws(CartanDatum::parse("A3"));
  auto sub = parse_parabolic(ws.sys, "refl:1-3,2-4");
  CosetTable ct(ws.group, sub);
  // Some x has x^-1 W' x non-standard; the check must refuse it.
  bool refused = false;
  for (ElementId x = 0; x < ws.group.size(); ++x) {
    if (standard_hypothesis(ct, x)) {
      for (ElementId w = 0; w < ws.group.size(); ++w) EXPECT_TRUE(coefficientwise_bound(ws.kl, ct, x, w).holds);
    } else {
      EXPECT_THROW(coefficientwise_bound(ws.kl, ct, x, ws.group.longest()), HypothesisError);
      refused = true;
    }
  }
  EXPECT_TRUE(refused);
}

TEST(ParabolicEquality, StandardSubgroupCosets) {
  for (const char* t : {"A3", "B3", "D4"}) {
    Workspace ws(CartanDatum::parse(t));
    for (const auto& sub : enumerate_parabolics(ws.group, true)) {
      CosetTable ct(ws.group, sub);
      for (const auto& [rep, members] : ct.cosets())
        for (ElementId x : members)
          for (ElementId w : members) ASSERT_TRUE(parabolic_equality(ws.kl, ct, x, w).holds) << t << " " << sub.spec();
    }
  }
  Workspace ws(CartanDatum::parse("A3"));
  auto sub = parse_parabolic(ws.sys, "standard:s1");
  CosetTable ct(ws.group, sub);
  EXPECT_THROW(parabolic_equality(ws.kl, ct, ws.group.parse("1234"), ws.group.parse("1324")), HypothesisError);
}

TEST(Monotonicity, ExampleInS8) {
  Workspace ws(CartanDatum::parse("A7"));
  auto sub = parse_parabolic(ws.sys, "standard:s1,s2,s3,s5,s6,s7");
  const auto w = ws.sys.parse_element("48273561");
  auto u = sub.element(sub.phi_root(w).index);
  EXPECT_EQ(ws.sys.format_element(u), "42318756");
  EXPECT_EQ(ws.sys.format_element(sub.element(sub.phi_root(ws.sys.parse_element("25174683")).index)), "21435768");
  CosetTable ct(ws.group, sub);
  auto r = monotonicity_bound(ws.kl, ct, ws.group.id_of(w));
  EXPECT_TRUE(r.holds);
  EXPECT_GE(r.lhs, r.rhs);
}

TEST(BrentiSimion, FactorizationExamples) {
  WorkspaceRegistry reg;
  auto u = parse_permutation("21435"), v = parse_permutation("45312");
  auto r = brenti_simion(reg, parse_permutation("13245"), parse_permutation("53241"), 0);
  EXPECT_TRUE(r.holds);
  // Values 1,2 at the same positions.
  auto a = parse_permutation("31524"), b = parse_permutation("51423");
  ASSERT_TRUE(same_low_positions(a, b, 2));
  auto f = brenti_simion(reg, a, b, 2);
  EXPECT_TRUE(f.holds);
  EXPECT_EQ(value_window(a, 1, 2), (Permutation{1, 2}));
  EXPECT_EQ(value_window(b, 3, 5), (Permutation{3, 2, 1}));
  EXPECT_THROW(brenti_simion(reg, u, v, 1), HypothesisError);
}

TEST(BrentiSimion, ExhaustiveS5) {
  WorkspaceRegistry reg;
  const auto perms = oracle::all_perms(5);
  for (const auto& u : perms)
    for (const auto& v : perms)
      for (int i = 1; i < 5; ++i)
        if (same_low_positions(u, v, i)) ASSERT_TRUE(brenti_simion(reg, u, v, i).holds);
}
