#pragma once

// Sequential rules X => Y over a sequence database.  A rule occurs in a
// sequence when every antecedent item sits in a strictly earlier itemset
// than every consequent item; since items are unique per sequence this
// reduces to max-position(X) < min-position(Y).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "duos/database.hpp"
#include "duos/fraction.hpp"

namespace duos {

struct SequentialRule {
  std::vector<ItemId> antecedent;  // strictly ascending
  std::vector<ItemId> consequent;  // strictly ascending

  SequentialRule() = default;
  SequentialRule(std::vector<ItemId> x, std::vector<ItemId> y)
      : antecedent(std::move(x)), consequent(std::move(y)) {
    normalize(antecedent, "antecedent");
    normalize(consequent, "consequent");
    for (ItemId i : antecedent)
      if (std::binary_search(consequent.begin(), consequent.end(), i))
        throw std::invalid_argument("rule sides are not disjoint");
  }

  ItemId max_antecedent() const { return antecedent.back(); }
  ItemId max_consequent() const { return consequent.back(); }

  size_t size() const { return antecedent.size() + consequent.size(); }

  bool operator==(const SequentialRule&) const = default;

  // Canonical order: antecedent ids lexicographically, then consequent.
  bool operator<(const SequentialRule& o) const {
    if (antecedent != o.antecedent) return antecedent < o.antecedent;
    return consequent < o.consequent;
  }

private:
  static void normalize(std::vector<ItemId>& side, const char* which) {
    if (side.empty()) throw std::invalid_argument(std::string(which) + " is empty");
    std::sort(side.begin(), side.end());
    if (std::adjacent_find(side.begin(), side.end()) != side.end())
      throw std::invalid_argument(std::string(which) + " has duplicate items");
  }
};

inline std::string to_string(const SequentialRule& r, const ProfitTable& names) {
  std::string out = "{";
  for (size_t i = 0; i < r.antecedent.size(); ++i) {
    if (i) out += ',';
    out += names.name_of(r.antecedent[i]);
  }
  out += "} => {";
  for (size_t i = 0; i < r.consequent.size(); ++i) {
    if (i) out += ',';
    out += names.name_of(r.consequent[i]);
  }
  out += '}';
  return out;
}

struct Occurrence {
  uint32_t max_antecedent_pos = 0;  // last itemset holding an antecedent item
  uint32_t min_consequent_pos = 0;  // first itemset holding a consequent item
};

// The smallest witness cut sits right after max_antecedent_pos.
inline std::optional<Occurrence> occurs_in(const SequentialRule& r, const QSequence& s) {
  uint32_t max_x = 0;
  for (ItemId i : r.antecedent) {
    const ItemOcc* occ = s.find(i);
    if (!occ) return std::nullopt;
    max_x = std::max(max_x, occ->pos);
  }
  uint32_t min_y = UINT32_MAX;
  for (ItemId i : r.consequent) {
    const ItemOcc* occ = s.find(i);
    if (!occ) return std::nullopt;
    min_y = std::min(min_y, occ->pos);
  }
  if (max_x >= min_y) return std::nullopt;
  return Occurrence{max_x, min_y};
}

// u(r, S): utility of the rule's items in a supporting sequence.
inline Money rule_utility_in_seq(const SequentialRule& r, const QSequence& s) {
  Money total = 0;
  for (ItemId i : r.antecedent) total += s.find(i)->util;
  for (ItemId i : r.consequent) total += s.find(i)->util;
  return total;
}

// Sequences containing every item of the itemset (order-free), via bit AND.
inline SidSet sids_of_itemset(const std::vector<ItemId>& items, const ItemStatsTable& stats) {
  if (items.empty()) throw std::invalid_argument("empty itemset");
  SidSet acc = stats.of(items[0]).sids;
  for (size_t i = 1; i < items.size(); ++i) acc.intersect(stats.of(items[i]).sids);
  return acc;
}

struct RuleMeasures {
  uint32_t support_count = 0;
  Fraction support;     // support_count / |SD|
  Fraction confidence;  // support_count / |sids(X)|, 0 when the denominator is 0
  Money utility = 0;
  SidSet sids;

  bool operator==(const RuleMeasures& o) const {
    return support_count == o.support_count && support == o.support &&
           confidence == o.confidence && utility == o.utility && sids == o.sids;
  }
};

inline RuleMeasures measures(const SequentialRule& r, const SequenceDatabase& db,
                             const ItemStatsTable& stats) {
  RuleMeasures m;
  m.sids = SidSet(db.size());
  for (size_t sid = 0; sid < db.sequences.size(); ++sid) {
    if (!occurs_in(r, db.sequences[sid])) continue;
    m.sids.set(sid);
    m.support_count += 1;
    m.utility += rule_utility_in_seq(r, db.sequences[sid]);
  }
  m.support = Fraction(m.support_count, static_cast<long long>(db.size()));
  size_t denom = sids_of_itemset(r.antecedent, stats).count();
  m.confidence = denom == 0 ? Fraction(0, 1)
                            : Fraction(m.support_count, static_cast<long long>(denom));
  return m;
}

// Items that can extend the rule within one supporting sequence.  Only items
// above the growing side's max id are eligible, which makes every rule
// reachable along exactly one expansion path.
struct ExpansionSets {
  std::vector<ItemOcc> only_left;
  std::vector<ItemOcc> only_right;
  std::vector<ItemOcc> left_right;
};

inline ExpansionSets expansion_sets(const SequentialRule& r, const QSequence& s,
                                    const Occurrence& occ) {
  ExpansionSets sets;
  ItemId max_x = r.max_antecedent(), max_y = r.max_consequent();
  for (const ItemOcc& o : s.occs) {
    if (std::binary_search(r.antecedent.begin(), r.antecedent.end(), o.item) ||
        std::binary_search(r.consequent.begin(), r.consequent.end(), o.item))
      continue;
    bool left = o.pos < occ.min_consequent_pos && o.item > max_x;
    bool right = o.pos > occ.max_antecedent_pos && o.item > max_y;
    if (left && right) sets.left_right.push_back(o);
    else if (left) sets.only_left.push_back(o);
    else if (right) sets.only_right.push_back(o);
  }
  return sets;
}

}  // namespace duos
