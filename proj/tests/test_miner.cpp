#include "catch2/catch_amalgamated.hpp"

#include "helpers.hpp"

using namespace duos;

TEST_CASE("support threshold parsing") {
  SupportThreshold f = SupportThreshold::parse("0.25");
  CHECK_FALSE(f.is_count);
  CHECK(f.fraction == Fraction(1, 4));
  CHECK(f.as_fraction(8) == Fraction(1, 4));

  SupportThreshold c = SupportThreshold::parse("2c");
  CHECK(c.is_count);
  CHECK(c.count == 2);
  CHECK(c.as_fraction(8) == Fraction(1, 4));

  CHECK_THROWS_AS(SupportThreshold::parse("c"), std::invalid_argument);
  CHECK_THROWS_AS(SupportThreshold::parse("2.5c"), std::invalid_argument);
  CHECK_THROWS_AS(SupportThreshold::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(SupportThreshold::parse(""), std::invalid_argument);
}

TEST_CASE("threshold resolution") {
  MiningParams p;
  p.min_support = SupportThreshold::from_fraction(Fraction(1, 4));
  ResolvedParams r = ResolvedParams::resolve(p, 4);
  CHECK(r.minsup_count == 1);

  p.min_support = SupportThreshold::from_fraction(Fraction(3, 10));
  CHECK(ResolvedParams::resolve(p, 4).minsup_count == 2);  // ceil(1.2)

  p.min_support = SupportThreshold::from_count(3);
  CHECK(ResolvedParams::resolve(p, 4).minsup_count == 3);

  p = MiningParams{};
  p.max_support = SupportThreshold::from_fraction(Fraction(3, 4));
  ResolvedParams strict = ResolvedParams::resolve(p, 4);
  CHECK(strict.support_below_ceiling(2));
  CHECK_FALSE(strict.support_below_ceiling(3));  // 3/4 < 3/4 fails
  p.maxsup_inclusive = true;
  ResolvedParams incl = ResolvedParams::resolve(p, 4);
  CHECK(incl.support_below_ceiling(3));
  CHECK_FALSE(incl.support_below_ceiling(4));

  p = MiningParams{};
  ResolvedParams def = ResolvedParams::resolve(p, 4);
  CHECK(def.support_reaches_floor(0));
  CHECK(def.support_below_ceiling(3));
  CHECK_FALSE(def.support_below_ceiling(4));  // default ceiling 1 is strict

  CHECK(def.confidence_reaches_floor(0, 4));  // floor 0
  p.min_confidence = Fraction(7, 10);
  ResolvedParams conf = ResolvedParams::resolve(p, 4);
  CHECK(conf.confidence_reaches_floor(3, 3));
  CHECK(conf.confidence_reaches_floor(3, 4));   // 0.75 >= 0.7
  CHECK_FALSE(conf.confidence_reaches_floor(2, 3));
  CHECK_FALSE(conf.confidence_reaches_floor(0, 0));
}

TEST_CASE("threshold validation errors") {
  MiningParams p;
  CHECK_THROWS_AS(ResolvedParams::resolve(p, 0), std::invalid_argument);

  p = MiningParams{};
  p.min_utility = -1;
  CHECK_THROWS_AS(ResolvedParams::resolve(p, 4), std::invalid_argument);

  p = MiningParams{};
  p.min_confidence = Fraction(3, 2);
  CHECK_THROWS_AS(ResolvedParams::resolve(p, 4), std::invalid_argument);

  p = MiningParams{};
  p.min_support = SupportThreshold::from_fraction(Fraction(5, 4));
  CHECK_THROWS_AS(ResolvedParams::resolve(p, 4), std::invalid_argument);

  p = MiningParams{};
  p.min_support = SupportThreshold::from_fraction(Fraction(1, 2));
  p.max_support = SupportThreshold::from_fraction(Fraction(1, 4));
  CHECK_THROWS_AS(ResolvedParams::resolve(p, 4), std::invalid_argument);

  p = MiningParams{};
  p.threads = 0;
  CHECK_THROWS_AS(ResolvedParams::resolve(p, 4), std::invalid_argument);
}

TEST_CASE("rule count matrix") {
  SequenceDatabase db = testutil::load_running_example();
  RuleCountMatrix rcm = build_rcm(db);
  ItemId a = testutil::item(db, "a"), b = testutil::item(db, "b"),
         c = testutil::item(db, "c"), d = testutil::item(db, "d"),
         e = testutil::item(db, "e"), f = testutil::item(db, "f"),
         g = testutil::item(db, "g");

  CHECK(rcm.count(a, b) == 2);
  CHECK(rcm.count(c, a) == 0);
  CHECK(rcm.count(a, g) == 3);
  CHECK(rcm.count(f, e) == 2);
  CHECK(rcm.count(g, e) == 1);
  CHECK(rcm.count(d, c) == 1);
  CHECK(rcm.nonzero_entries() == 20);
}

TEST_CASE("initial rule generation and filters") {
  SequenceDatabase db = testutil::load_running_example();

  MiningParams open;
  CHECK(generate_initial_rules(db, open).size() == 20);

  MiningParams util;
  util.min_utility = 41;
  CHECK(generate_initial_rules(db, util).size() == 12);

  MiningParams sup;
  sup.min_support = SupportThreshold::from_fraction(Fraction(1, 2));
  std::vector<SequentialRule> floor2 = generate_initial_rules(db, sup);
  CHECK(floor2.size() == 12);  // the eight single-sequence pairs drop out
  for (const SequentialRule& r : floor2) {
    ItemStatsTable stats = compute_item_stats(db);
    CHECK(measures(r, db, stats).support_count >= 2);
  }

  // with the seed filters toggled off everything comes back
  MiningParams off = util;
  off.disable_strategy(2);
  CHECK(generate_initial_rules(db, off).size() == 20);
}

TEST_CASE("item pruning by utility bound and support floor") {
  SequenceDatabase db = testutil::load_running_example();
  ItemStatsTable stats = compute_item_stats(db);

  MiningParams p;
  p.min_utility = 41;
  std::vector<bool> keep = prune_items_by_seu(stats, ResolvedParams::resolve(p, db.size()), true);
  CHECK_FALSE(keep[testutil::item(db, "d")]);  // whole-sequence bound 40 < 41
  for (const char* name : {"a", "b", "c", "e", "f", "g"})
    CHECK(keep[testutil::item(db, name)]);

  MiningParams q;
  q.min_support = SupportThreshold::from_count(4);
  std::vector<bool> keep4 = prune_items_by_seu(stats, ResolvedParams::resolve(q, db.size()), true);
  CHECK(keep4[testutil::item(db, "a")]);
  CHECK(keep4[testutil::item(db, "b")]);
  for (const char* name : {"c", "d", "e", "f", "g"})
    CHECK_FALSE(keep4[testutil::item(db, name)]);

  std::vector<bool> all = prune_items_by_seu(stats, ResolvedParams::resolve(p, db.size()), false);
  for (ItemId id = 0; id < db.alphabet_size(); ++id) CHECK(all[id]);
}

static MiningParams reference_params() {
  MiningParams p;
  p.min_utility = 41;
  p.min_confidence = Fraction(7, 10);
  p.min_support = SupportThreshold::from_fraction(Fraction(1, 4));
  p.max_support = SupportThreshold::from_fraction(Fraction(1, 1));
  return p;
}

TEST_CASE("mining the running example") {
  SequenceDatabase db = testutil::load_running_example();
  MiningResult res = mine(db, reference_params());

  REQUIRE(res.rules.size() == 4);
  CHECK(res.rules[0].rule == testutil::make_rule(db, {"a", "b", "c"}, {"g"}));
  CHECK(res.rules[0].measures.utility == 59);
  CHECK(res.rules[1].rule == testutil::make_rule(db, {"a", "c"}, {"g"}));
  CHECK(res.rules[1].measures.utility == 47);
  CHECK(res.rules[2].rule == testutil::make_rule(db, {"b", "c"}, {"g"}));
  CHECK(res.rules[2].measures.utility == 54);
  CHECK(res.rules[3].rule == testutil::make_rule(db, {"c"}, {"g"}));
  CHECK(res.rules[3].measures.utility == 42);

  for (const RhusrEntry& e : res.rules) {
    CHECK(e.measures.support_count == 3);
    CHECK(e.measures.support == Fraction(3, 4));
    CHECK(e.measures.confidence == Fraction(1, 1));
  }

  CHECK(res.telemetry.rules_found == 4);
  CHECK(res.telemetry.pruned_by_strategy[0] == 1);  // item d
  CHECK(res.telemetry.pruned_by_strategy[1] == 4);  // four weak seeds
  CHECK(res.telemetry.candidates_generated >= 16);
  CHECK(res.telemetry.tables_built >= 13);
}

TEST_CASE("support ceiling excludes and includes") {
  SequenceDatabase db = testutil::load_running_example();

  MiningParams p = reference_params();
  p.max_support = SupportThreshold::from_fraction(Fraction(3, 4));
  CHECK(mine(db, p).rules.empty());  // every qualifying rule sits at 3/4

  p.maxsup_inclusive = true;
  CHECK(mine(db, p).rules.size() == 4);

  MiningParams q = reference_params();
  q.max_support = SupportThreshold::from_fraction(Fraction(4, 5));
  CHECK(mine(db, q).rules.size() == 4);

  MiningParams floor4;
  floor4.min_support = SupportThreshold::from_count(4);
  CHECK(mine(db, floor4).rules.empty());  // nothing occurs in all four
}

TEST_CASE("mining agrees with exhaustive enumeration") {
  SequenceDatabase fixture = testutil::load_running_example();
  for (const MiningParams& p : testutil::param_grid(fixture)) {
    MiningResult res = mine(fixture, p);
    CHECK(res.rules == oracle::mine(fixture, p));
  }
  CHECK(mine(fixture, reference_params()).rules == oracle::mine(fixture, reference_params()));

  for (uint64_t seed = 1; seed <= 12; ++seed) {
    SequenceDatabase db = generate_database(testutil::small_db_params(seed));
    for (const MiningParams& p : testutil::param_grid(db)) {
      MiningResult res = mine(db, p);
      RhusrSet expected = oracle::mine(db, p);
      CHECK(res.rules == expected);
      CHECK(res.telemetry.rules_found == expected.size());
    }
  }
}

TEST_CASE("strategy toggles never change the result") {
  SequenceDatabase db = testutil::load_running_example();
  MiningParams base = reference_params();
  RhusrSet expected = mine(db, base).rules;

  std::vector<uint64_t> candidates(128);
  for (unsigned mask = 0; mask < 128; ++mask) {
    MiningParams p = base;
    for (int k = 0; k < 7; ++k) p.strategies[static_cast<size_t>(k)] = (mask >> k) & 1;
    MiningResult res = mine(db, p);
    CHECK(res.rules == expected);
    candidates[mask] = res.telemetry.candidates_generated;
  }

  // enabling any one strategy never generates more candidates
  for (unsigned mask = 0; mask < 128; ++mask)
    for (int k = 0; k < 7; ++k)
      if (!((mask >> k) & 1))
        CHECK(candidates[mask | (1u << k)] <= candidates[mask]);
}

TEST_CASE("per-strategy prune counters move") {
  SequenceDatabase db = testutil::load_running_example();
  MiningParams p = reference_params();
  MiningTelemetry tel = mine(db, p).telemetry;
  CHECK(tel.pruned_by_strategy[0] > 0);
  CHECK(tel.pruned_by_strategy[1] > 0);

  MiningParams off = p;
  for (int k = 1; k <= 7; ++k) off.disable_strategy(k);
  MiningTelemetry none = mine(db, off).telemetry;
  for (size_t k = 0; k < 7; ++k) CHECK(none.pruned_by_strategy[k] == 0);
  CHECK(none.candidates_generated >= tel.candidates_generated);
}

TEST_CASE("multi-threaded mining matches single-threaded") {
  SequenceDatabase fixture = testutil::load_running_example();
  MiningParams p = reference_params();
  RhusrSet expected = mine(fixture, p).rules;
  for (unsigned threads : {2u, 3u, 8u}) {
    MiningParams q = p;
    q.threads = threads;
    CHECK(mine(fixture, q).rules == expected);
  }

  GenParams gp;
  gp.items = 8;
  gp.sequences = 60;
  gp.seed = 42;
  SequenceDatabase big = generate_database(gp);
  MiningParams bp;
  bp.min_utility = testutil::total_utility(big) / 20;
  bp.min_confidence = Fraction(1, 2);
  bp.min_support = SupportThreshold::from_fraction(Fraction(1, 10));
  RhusrSet sole = mine(big, bp).rules;
  CHECK_FALSE(sole.empty());
  for (unsigned threads : {2u, 4u}) {
    MiningParams q = bp;
    q.threads = threads;
    CHECK(mine(big, q).rules == sole);
  }
}

TEST_CASE("mining rejects an empty database") {
  SequenceDatabase empty;
  CHECK_THROWS_AS(mine(empty, MiningParams{}), std::invalid_argument);
}
