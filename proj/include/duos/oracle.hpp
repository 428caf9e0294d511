#pragma once

// Brute-force reference implementations.  Everything here recomputes from
// first principles — occurrence by trying every cut point, measures by
// direct summation, the rule universe by exhaustive enumeration — so the
// mining and scoring code can be checked against an independent path.
// Intended for small inputs only (the enumeration guard refuses databases
// with more than 16 distinct items).

#include <stdexcept>
#include <vector>

#include "duos/database.hpp"
#include "duos/fraction.hpp"
#include "duos/miner.hpp"
#include "duos/outlier.hpp"
#include "duos/rules.hpp"

namespace duos {
namespace oracle {

// Occurrence by exhaustive cut search: some cut p splits the sequence so
// that X is in the prefix and Y in the suffix.
inline bool occurs(const SequentialRule& r, const QSequence& s) {
  size_t m = s.itemsets.size();
  for (size_t p = 1; p < m; ++p) {
    std::vector<char> prefix, suffix;
    auto mark = [](std::vector<char>& set, const QItemset& is) {
      for (const QItem& qi : is) {
        if (set.size() <= qi.item) set.resize(qi.item + 1, 0);
        set[qi.item] = 1;
      }
    };
    for (size_t i = 0; i < p; ++i) mark(prefix, s.itemsets[i]);
    for (size_t i = p; i < m; ++i) mark(suffix, s.itemsets[i]);
    auto covered = [](const std::vector<char>& set, const std::vector<ItemId>& items) {
      for (ItemId it : items)
        if (it >= set.size() || !set[it]) return false;
      return true;
    };
    if (covered(prefix, r.antecedent) && covered(suffix, r.consequent)) return true;
  }
  return false;
}

inline bool contains_items(const QSequence& s, const std::vector<ItemId>& items) {
  for (ItemId it : items) {
    bool found = false;
    for (const QItemset& is : s.itemsets)
      for (const QItem& qi : is)
        if (qi.item == it) { found = true; break; }
    if (!found) return false;
  }
  return true;
}

inline Money utility_in(const SequenceDatabase& db, const QSequence& s,
                        const std::vector<ItemId>& items) {
  Money total = 0;
  for (ItemId it : items)
    for (const QItemset& is : s.itemsets)
      for (const QItem& qi : is)
        if (qi.item == it) total += qi.quantity * db.profits.profit(it);
  return total;
}

inline RuleMeasures measures(const SequentialRule& r, const SequenceDatabase& db) {
  RuleMeasures m;
  m.sids = SidSet(db.size());
  size_t denom = 0;
  for (size_t sid = 0; sid < db.sequences.size(); ++sid) {
    const QSequence& s = db.sequences[sid];
    if (contains_items(s, r.antecedent)) ++denom;
    if (!occurs(r, s)) continue;
    m.sids.set(sid);
    m.support_count += 1;
    m.utility += utility_in(db, s, r.antecedent) + utility_in(db, s, r.consequent);
  }
  m.support = Fraction(m.support_count, static_cast<long long>(db.size()));
  m.confidence = denom == 0 ? Fraction(0, 1)
                            : Fraction(m.support_count, static_cast<long long>(denom));
  return m;
}

inline std::vector<ItemId> occurring_items(const SequenceDatabase& db) {
  std::vector<char> seen(db.alphabet_size(), 0);
  for (const QSequence& s : db.sequences)
    for (const QItemset& is : s.itemsets)
      for (const QItem& qi : is) seen[qi.item] = 1;
  std::vector<ItemId> items;
  for (ItemId id = 0; id < seen.size(); ++id)
    if (seen[id]) items.push_back(id);
  return items;
}

// Every occurring rule with |X| * |Y| <= size_cap, canonical order.
inline RhusrSet enumerate_rules(const SequenceDatabase& db, size_t size_cap) {
  std::vector<ItemId> items = occurring_items(db);
  if (items.size() > 16)
    throw std::invalid_argument("rule enumeration limited to 16 distinct items");

  RhusrSet out;
  std::vector<ItemId> x, y;
  auto walk = [&](auto&& self, size_t idx) -> void {
    if (idx == items.size()) {
      if (x.empty() || y.empty() || x.size() * y.size() > size_cap) return;
      SequentialRule r(x, y);
      RuleMeasures m = measures(r, db);
      if (m.support_count > 0) out.push_back(RhusrEntry{std::move(r), std::move(m)});
      return;
    }
    self(self, idx + 1);
    if (x.size() < size_cap) {
      x.push_back(items[idx]);
      self(self, idx + 1);
      x.pop_back();
    }
    if (y.size() < size_cap) {
      y.push_back(items[idx]);
      self(self, idx + 1);
      y.pop_back();
    }
  };
  walk(walk, 0);
  sort_canonical(out);
  return out;
}

// Ground truth for mine(): full enumeration filtered by the rule thresholds.
inline RhusrSet mine(const SequenceDatabase& db, const MiningParams& params) {
  if (db.size() == 0) throw std::invalid_argument("empty database");
  ResolvedParams rp = ResolvedParams::resolve(params, db.size());
  size_t item_count = occurring_items(db).size();
  RhusrSet all = enumerate_rules(db, item_count * item_count);
  RhusrSet out;
  for (RhusrEntry& e : all) {
    const RuleMeasures& m = e.measures;
    if (!rp.support_reaches_floor(m.support_count)) continue;
    if (!rp.support_below_ceiling(m.support_count)) continue;
    if (m.utility < rp.min_utility) continue;
    // The stored confidence fraction is already reduced, so re-derive the
    // denominator by direct containment counting.
    size_t denom = 0;
    for (const QSequence& s : db.sequences)
      if (contains_items(s, e.rule.antecedent)) ++denom;
    if (!rp.confidence_reaches_floor(m.support_count, denom)) continue;
    out.push_back(std::move(e));
  }
  sort_canonical(out);
  return out;
}

// Ground truth for detect(): the scoring formulas evaluated directly, with
// rule support recomputed from the database.
inline OutlierReport detect(const SequenceDatabase& db, const RhusrSet& rules,
                            const OutlierParams& params, const Fraction& maxsup) {
  if (params.v < Fraction(0, 1) || params.v > Fraction(1, 1))
    throw std::invalid_argument("v must lie in [0, 1]");
  if (db.size() == 0) throw std::invalid_argument("empty database");

  OutlierReport report;
  report.maxsup = maxsup;
  long long n_rules = static_cast<long long>(rules.size());
  for (const RhusrEntry& e : rules) {
    size_t cnt = 0;
    for (const QSequence& s : db.sequences)
      if (occurs(e.rule, s)) ++cnt;
    Fraction sup(static_cast<long long>(cnt), static_cast<long long>(db.size()));
    report.deviations.push_back(RuleDeviation{e.rule, (maxsup - sup) / Fraction(n_rules, 1)});
  }

  for (size_t sid = 0; sid < db.sequences.size(); ++sid) {
    SequenceScore sc;
    sc.sid = static_cast<uint32_t>(sid);
    sc.deviation_sum = Fraction(0, 1);
    for (size_t k = 0; k < rules.size(); ++k) {
      if (!occurs(rules[k].rule, db.sequences[sid])) continue;
      sc.rule_count += 1;
      sc.deviation_sum = sc.deviation_sum + report.deviations[k].df;
    }
    sc.swf = n_rules == 0 ? Fraction(0, 1) : Fraction(sc.rule_count, n_rules);
    sc.of = Fraction(1, 1) - sc.swf * sc.deviation_sum;
    sc.is_outlier = sc.of >= params.v && (!params.require_rule || sc.rule_count > 0);
    report.scores.push_back(std::move(sc));
  }
  return report;
}

}  // namespace oracle
}  // namespace duos
