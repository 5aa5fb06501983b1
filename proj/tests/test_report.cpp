#include <gtest/gtest.h>

#include "klpat/report.hpp"

using namespace klpat;

namespace {

Verdict sample() {
  Verdict v;
  v.theorem = "main-theorem";
  v.family = "A";
  v.rank = 3;
  v.subgroup = "refl:1-3,2-4";
  v.x = "1234";
  v.w = "3412";
  v.lhs = "2";
  v.rhs = "2";
  v.maximal_set = {"2341", "4123"};
  v.per_term = {{"2341", 1, 1}, {"4123", 1, 1}};
  return v;
}

}  // namespace

TEST(Report, TextLine) {
  EXPECT_EQ(render_text(sample()), "main-theorem A 3 refl:1-3,2-4 1234 3412 2 2 HOLDS");
  auto v = sample();
  v.holds = false;
  v.flags = {"vacuous"};
  EXPECT_EQ(render_text(v), "main-theorem A 3 refl:1-3,2-4 1234 3412 2 2 FAILS [vacuous]");
}

TEST(Report, JsonRoundTripIsByteIdentical) {
  auto v = sample();
  const auto text = render_json(v);
  EXPECT_EQ(text.substr(0, 28), R"({"schema":"klpat.verdict/1",)");
  EXPECT_NE(text.find(R"("lhs":2,"rhs":2)"), std::string::npos);
  auto back = parse_verdict_json(text);
  EXPECT_EQ(back, v);
  EXPECT_EQ(render_json(back), text);
  v.lhs = "1+2q";
  v.flags = {"a", "b"};
  EXPECT_EQ(render_json(parse_verdict_json(render_json(v))), render_json(v));
}

TEST(Report, JsonErrors) {
  EXPECT_THROW(parse_verdict_json("{"), ParseError);
  EXPECT_THROW(parse_verdict_json(R"({"schema":"other/1"})"), ParseError);
  auto j = to_json(sample());
  j.erase("holds");
  EXPECT_THROW(verdict_from_json(j), ParseError);
  j = to_json(sample());
  j["lhs"] = true;
  EXPECT_THROW(verdict_from_json(j), ParseError);
}

TEST(Report, CsvRows) {
  auto rows = render_csv(sample());
  EXPECT_EQ(rows,
            "main-theorem,A,3,\"refl:1-3,2-4\",1234,3412,2,2,true,,2341,1,1\n"
            "main-theorem,A,3,\"refl:1-3,2-4\",1234,3412,2,2,true,,4123,1,1");
  Verdict v;
  v.theorem = "smoothness";
  v.family = "A";
  v.rank = 2;
  v.lhs = "1";
  v.rhs = "1";
  v.flags = {"x", "y"};
  EXPECT_EQ(render_csv(v), "smoothness,A,2,-,-,-,1,1,true,x;y,,,");
  EXPECT_EQ(csv_field("a\"b"), "\"a\"\"b\"");
  const std::string header = csv_header();
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 12);
}

TEST(Report, Summaries) {
  Summary s{"conjecture-p2", "A5", 224, 0, 0, 124, 0.25};
  EXPECT_EQ(render_summary_text(s), "checked=224 failed=0 converse_candidates=124 elapsed=0.250s");
  Summary m{"main-theorem", "A3", 10, 1, 3, 0, 1.0};
  EXPECT_EQ(render_summary_text(m), "checked=10 failed=1 vacuous=3 elapsed=1.000s");
  EXPECT_EQ(render_summary_json(m),
            R"({"schema":"klpat.summary/1","suite":"main-theorem","type":"A3","checked":10,"failed":1,"vacuous":3,"converse_candidates":0,"elapsed":"1.000s"})");
}
