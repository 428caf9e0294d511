#pragma once

// Shared fixtures for the test and acceptance binaries.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "duos/duos.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(DUOS_DATA_DIR) + "/" + name;
}

inline duos::SequenceDatabase load_running_example() {
  return duos::parse_database(read_file(data_path("running_example.db")),
                              read_file(data_path("running_example.profits")));
}

inline duos::ItemId item(const duos::SequenceDatabase& db, const std::string& name) {
  auto id = db.profits.id_of(name);
  if (!id) throw std::runtime_error("no such item: " + name);
  return *id;
}

inline duos::SequentialRule make_rule(const duos::SequenceDatabase& db,
                                      const std::vector<std::string>& lhs,
                                      const std::vector<std::string>& rhs) {
  std::vector<duos::ItemId> x, y;
  for (const auto& n : lhs) x.push_back(item(db, n));
  for (const auto& n : rhs) y.push_back(item(db, n));
  return duos::SequentialRule(std::move(x), std::move(y));
}

inline duos::Money total_utility(const duos::SequenceDatabase& db) {
  duos::Money t = 0;
  for (size_t sid = 0; sid < db.size(); ++sid) t += duos::sequence_utility(db, sid);
  return t;
}

// Small random databases: <= 8 sequences, <= 6 items, <= 5 itemsets/sequence.
inline duos::GenParams small_db_params(uint64_t seed) {
  duos::GenParams p;
  p.seed = seed;
  p.items = 3 + seed % 4;          // 3..6
  p.sequences = 2 + seed % 7;      // 2..8
  p.max_itemsets = 1 + seed % 5;   // 1..5
  p.max_itemset_size = 1 + seed % 3;
  return p;
}

// At least four mining-parameter settings spanning fraction/count thresholds,
// strict and inclusive ceilings, scaled to the database's total utility.
inline std::vector<duos::MiningParams> param_grid(const duos::SequenceDatabase& db) {
  using duos::Fraction;
  using duos::SupportThreshold;
  duos::Money t = total_utility(db);
  std::vector<duos::MiningParams> grid;

  duos::MiningParams p1;  // everything below the ceiling
  grid.push_back(p1);

  duos::MiningParams p2;
  p2.min_utility = t / 8;
  p2.min_support = SupportThreshold::from_fraction(Fraction(1, 4));
  p2.max_support = SupportThreshold::from_fraction(Fraction(3, 4));
  p2.min_confidence = Fraction(1, 2);
  grid.push_back(p2);

  duos::MiningParams p3;
  p3.min_utility = t / 16;
  p3.min_support = SupportThreshold::from_count(1);
  p3.max_support = SupportThreshold::from_fraction(Fraction(9, 10));
  p3.min_confidence = Fraction(7, 10);
  grid.push_back(p3);

  duos::MiningParams p4;
  p4.min_utility = t / 4;
  p4.min_support = SupportThreshold::from_fraction(Fraction(1, 10));
  p4.max_support = SupportThreshold::from_fraction(Fraction(3, 5));
  p4.maxsup_inclusive = true;
  p4.min_confidence = Fraction(3, 10);
  grid.push_back(p4);

  duos::MiningParams p5;
  p5.min_utility = t / 12;
  p5.min_support = SupportThreshold::from_fraction(Fraction(1, 5));
  p5.max_support = SupportThreshold::from_count(3);
  p5.min_confidence = Fraction(1, 4);
  grid.push_back(p5);

  return grid;
}

}  // namespace testutil
