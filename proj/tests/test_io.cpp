#include <gtest/gtest.h>

#include "mcf/errors.hpp"
#include "mcf/io.hpp"

using namespace mcf;

TEST(Io, RealValueForms) {
  EXPECT_EQ(parse_real(Json("6/4")).rational(), BigRational(3, 2));
  EXPECT_EQ(parse_real(Json(7)).rational(), BigRational(7));
  EXPECT_EQ(parse_real(Json::parse(R"({"rational": "-1/3"})")).rational(), BigRational(-1, 3));
  RealValue d = parse_real(Json::parse(R"({"decimal": "1.2599210498948731647672106"})"));
  EXPECT_EQ(floor_exact(d), BigInt(1));
  EXPECT_THROW(parse_real(Json::parse(R"({"float": 1.5})")), InputError);
  EXPECT_THROW(parse_real(Json(1.5)), InputError);
}

TEST(Io, AlgebraicInputsShareOneField) {
  Json j = Json::parse(R"({"inputs": [
    {"algebraic": {"minpoly": ["-2", "0", "0", "1"], "lo": "1", "hi": "2"}},
    {"algebraic": {"minpoly": ["-2", "0", "0", "1"], "lo": "1", "hi": "2", "coords": ["0", "0", "1"]}}]})");
  std::vector<RealValue> x = parse_inputs(j);
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x[0].algebraic().field(), x[1].algebraic().field());
  EXPECT_EQ(x[0].algebraic() * x[0].algebraic(), x[1].algebraic());
  // A bare array is accepted as the input list.
  EXPECT_EQ(parse_inputs(Json::parse(R"(["1/2", "1/3"])")).size(), 2u);
  EXPECT_THROW(parse_inputs(Json::parse(R"({"inputs": []})")), InputError);
  // x^2 - 1 has rational roots.
  EXPECT_THROW(parse_real(Json::parse(R"({"algebraic": {"minpoly": ["-1", "0", "1"], "lo": "0", "hi": "2"}})")),
               InputError);
}

TEST(Io, PartialQuotientsRoundTrip) {
  Json j = Json::parse(R"({"m": 2, "sequences": [["0", "2", 5], ["0", "0", "1"]]})");
  PartialQuotients pq = parse_pq(j);
  EXPECT_EQ(pq.m, 2u);
  EXPECT_EQ(pq.at(0, 2), BigInt(5));
  Json back = pq_to_json(pq);
  EXPECT_EQ(back.dump(), R"({"m":2,"sequences":[["0","2","5"],["0","0","1"]]})");
  EXPECT_EQ(parse_pq(back), pq);
  EXPECT_THROW(parse_pq(Json::parse(R"({"m": 3, "sequences": [["1"], ["1"]]})")), InputError);
  EXPECT_THROW(parse_pq(Json::parse(R"({"sequences": [["1x"]]})")), InputError);
  EXPECT_THROW(parse_pq(Json::parse(R"({"m": 1})")), InputError);
}

TEST(Io, ScheduleAndRules) {
  auto s = parse_schedule(Json::parse(R"([{"n": "1", "r": 2, "lambda": "99999999999999999999"}])"));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].lambda, parse_int("99999999999999999999"));
  EXPECT_THROW(parse_schedule(Json::parse(R"([{"n": 1, "r": 2}])")), InputError);
  auto rules = parse_rules(Json::parse(R"(["random:5", "random:5"])"), 3);
  ASSERT_EQ(rules.size(), 2u);
  bool differ = false;
  for (std::size_t n = 0; n < 50; ++n) differ = differ || rules[0].at(n) != rules[1].at(n);
  EXPECT_TRUE(differ);
}

TEST(Io, CriterionReportLayoutIsFixed) {
  CriterionReport r;
  r.criterion = "liouville";
  r.depth = 3;
  r.hypotheses.push_back({"h", false, std::size_t{2}, 3, "detail"});
  r.witnesses.push_back({1, 0, "x"});
  r.notes.emplace_back("delta", "1");
  EXPECT_EQ(to_json(r).dump(),
            R"({"criterion":"liouville","depth":3,"hypotheses":[{"name":"h","holds":false,"checked":3,)"
            R"("first_violation":2,"detail":"detail"}],"witnesses":[{"index":1,"coordinate":0,"value":"x"}],)"
            R"("notes":{"delta":"1"},"verdict":"violated-at","violated_at":2})");
}

TEST(Io, AdmissibilityReportLists) {
  PartialQuotients pq(2, {{BigInt(0), BigInt(1)}, {BigInt(0), BigInt(2)}});
  Json j = to_json(check_admissible(pq));
  EXPECT_FALSE(j["admissible"].get<bool>());
  EXPECT_EQ(j["violations"][0]["index"].get<std::size_t>(), 1u);
}
