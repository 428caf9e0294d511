#include "catch2/catch_amalgamated.hpp"

#include "helpers.hpp"

using namespace duos;

namespace {

RhusrSet three_rule_set(const SequenceDatabase& db) {
  ItemStatsTable stats = compute_item_stats(db);
  RhusrSet rules;
  for (auto lhs : {std::vector<std::string>{"a", "c"}, {"b", "c"}, {"a", "b", "c"}}) {
    SequentialRule r = testutil::make_rule(db, lhs, {"g"});
    rules.push_back(RhusrEntry{r, measures(r, db, stats)});
  }
  sort_canonical(rules);
  return rules;
}

}  // namespace

TEST_CASE("deviation factor") {
  CHECK(deviation_factor(Fraction(1, 2), Fraction(1, 1), 4) == Fraction(1, 8));
  CHECK(deviation_factor(Fraction(3, 4), Fraction(1, 1), 3) == Fraction(1, 12));
  CHECK(deviation_factor(Fraction(1, 1), Fraction(1, 1), 2) == Fraction(0, 1));
  CHECK_THROWS_AS(deviation_factor(Fraction(1, 2), Fraction(1, 1), 0), std::invalid_argument);
}

TEST_CASE("scoring the running example") {
  SequenceDatabase db = testutil::load_running_example();
  RhusrSet rules = three_rule_set(db);

  OutlierParams params;  // v = 0.7, flagged sequences must contain a rule
  OutlierReport report = detect(db, rules, params, Fraction(1, 1));

  REQUIRE(report.deviations.size() == 3);
  for (const RuleDeviation& d : report.deviations) {
    CHECK(d.df == Fraction(1, 12));
    CHECK(d.df.to_decimal(4) == "0.0833");
  }

  REQUIRE(report.scores.size() == 4);
  for (uint32_t sid : {0u, 1u, 3u}) {
    const SequenceScore& sc = report.scores[sid];
    CHECK(sc.rule_count == 3);
    CHECK(sc.swf == Fraction(1, 1));
    CHECK(sc.deviation_sum == Fraction(1, 4));
    CHECK(sc.of == Fraction(3, 4));
    CHECK(sc.of.to_decimal(4) == "0.7500");
    CHECK(sc.is_outlier);
  }
  const SequenceScore& s3 = report.scores[2];
  CHECK(s3.rule_count == 0);
  CHECK(s3.swf == Fraction(0, 1));
  CHECK(s3.of == Fraction(1, 1));
  CHECK_FALSE(s3.is_outlier);  // no rule occurs in it
}

TEST_CASE("rule-free sequences flagged only in literal mode") {
  SequenceDatabase db = testutil::load_running_example();
  RhusrSet rules = three_rule_set(db);

  OutlierParams literal;
  literal.require_rule = false;
  OutlierReport report = detect(db, rules, literal, Fraction(1, 1));
  CHECK(report.scores[2].is_outlier);  // OF = 1 passes on its own

  OutlierParams strict;
  strict.v = Fraction(4, 5);
  OutlierReport high = detect(db, rules, strict, Fraction(1, 1));
  CHECK_FALSE(high.scores[0].is_outlier);  // 0.75 < 0.8
  CHECK_FALSE(high.scores[2].is_outlier);
  strict.require_rule = false;
  CHECK(detect(db, rules, strict, Fraction(1, 1)).scores[2].is_outlier);
}

TEST_CASE("empty rule set scores everything at one") {
  SequenceDatabase db = testutil::load_running_example();
  OutlierParams params;
  OutlierReport report = detect(db, RhusrSet{}, params, Fraction(1, 1));
  for (const SequenceScore& sc : report.scores) {
    CHECK(sc.swf == Fraction(0, 1));
    CHECK(sc.of == Fraction(1, 1));
    CHECK_FALSE(sc.is_outlier);
  }
  params.require_rule = false;
  for (const SequenceScore& sc : detect(db, RhusrSet{}, params, Fraction(1, 1)).scores)
    CHECK(sc.is_outlier);
}

TEST_CASE("scoring validation") {
  SequenceDatabase db = testutil::load_running_example();
  OutlierParams params;
  params.v = Fraction(3, 2);
  CHECK_THROWS_AS(detect(db, RhusrSet{}, params, Fraction(1, 1)), std::invalid_argument);
  params.v = Fraction(-1, 10);
  CHECK_THROWS_AS(detect(db, RhusrSet{}, params, Fraction(1, 1)), std::invalid_argument);

  SequenceDatabase empty;
  CHECK_THROWS_AS(detect(empty, RhusrSet{}, OutlierParams{}, Fraction(1, 1)),
                  std::invalid_argument);
}

TEST_CASE("scoring agrees with the direct evaluation") {
  SequenceDatabase fixture = testutil::load_running_example();
  RhusrSet rules = three_rule_set(fixture);
  for (auto v : {Fraction(0, 1), Fraction(7, 10), Fraction(1, 1)}) {
    OutlierParams params;
    params.v = v;
    CHECK(detect(fixture, rules, params, Fraction(1, 1)) ==
          oracle::detect(fixture, rules, params, Fraction(1, 1)));
  }

  for (uint64_t seed = 1; seed <= 15; ++seed) {
    SequenceDatabase db = generate_database(testutil::small_db_params(seed));
    for (const MiningParams& mp : testutil::param_grid(db)) {
      RhusrSet mined = mine(db, mp).rules;
      Fraction maxsup = mp.max_support.as_fraction(db.size());
      for (bool require : {true, false}) {
        OutlierParams op;
        op.require_rule = require;
        OutlierReport fast = detect(db, mined, op, maxsup);
        OutlierReport slow = oracle::detect(db, mined, op, maxsup);
        CHECK(fast == slow);
      }
    }
  }
}
