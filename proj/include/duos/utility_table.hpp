#pragma once

// Utility tables: one row per supporting sequence of a rule, carrying the
// rule's utility in that sequence plus the utility available from items that
// could still extend it (split into left-only / right-only / both).  Row
// sums give upper bounds for every reachable expansion, and a table can be
// extended into a child rule's table without rescanning the database.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "duos/database.hpp"
#include "duos/rules.hpp"

namespace duos {

enum class ExpansionSide { left, right };

struct UtilityRow {
  uint32_t sid = 0;
  Money iutil = 0;
  Money lutil = 0;
  Money rutil = 0;
  Money lrutil = 0;
  uint32_t max_antecedent_pos = 0;
  uint32_t min_consequent_pos = 0;
  std::vector<ItemOcc> only_left;   // sorted by item id
  std::vector<ItemOcc> only_right;
  std::vector<ItemOcc> left_right;

  Money bound_all() const { return iutil + lutil + rutil + lrutil; }
  Money bound_left() const { return iutil + lutil + lrutil; }

  bool operator==(const UtilityRow&) const = default;
};

struct UtilityTable {
  SequentialRule rule;
  std::vector<UtilityRow> rows;  // ascending sid

  size_t support_count() const { return rows.size(); }

  Money utility() const {
    Money u = 0;
    for (const UtilityRow& r : rows) u += r.iutil;
    return u;
  }

  // Upper bound on u(r') for every rule reachable by further expansions.
  Money expansion_bound() const {
    Money u = 0;
    for (const UtilityRow& r : rows) u += r.bound_all();
    return u;
  }

  // Upper bound on u(r') for rules reachable by left expansions only.
  Money left_expansion_bound() const {
    Money u = 0;
    for (const UtilityRow& r : rows) u += r.bound_left();
    return u;
  }

  bool operator==(const UtilityTable&) const = default;
};

namespace detail {

inline void sort_cells(std::vector<ItemOcc>& cells) {
  std::sort(cells.begin(), cells.end(),
            [](const ItemOcc& a, const ItemOcc& b) { return a.item < b.item; });
}

inline UtilityRow make_row(const SequentialRule& r, const QSequence& s, uint32_t sid,
                           const Occurrence& occ) {
  UtilityRow row;
  row.sid = sid;
  row.iutil = rule_utility_in_seq(r, s);
  row.max_antecedent_pos = occ.max_antecedent_pos;
  row.min_consequent_pos = occ.min_consequent_pos;
  ExpansionSets sets = expansion_sets(r, s, occ);
  row.only_left = std::move(sets.only_left);
  row.only_right = std::move(sets.only_right);
  row.left_right = std::move(sets.left_right);
  sort_cells(row.only_left);
  sort_cells(row.only_right);
  sort_cells(row.left_right);
  for (const ItemOcc& c : row.only_left) row.lutil += c.util;
  for (const ItemOcc& c : row.only_right) row.rutil += c.util;
  for (const ItemOcc& c : row.left_right) row.lrutil += c.util;
  return row;
}

inline const ItemOcc* find_cell(const std::vector<ItemOcc>& cells, ItemId item) {
  auto it = std::lower_bound(cells.begin(), cells.end(), item,
                             [](const ItemOcc& c, ItemId v) { return c.item < v; });
  return (it != cells.end() && it->item == item) ? &*it : nullptr;
}

}  // namespace detail

inline UtilityTable build_utility_table(const SequentialRule& r, const SequenceDatabase& db) {
  UtilityTable table;
  table.rule = r;
  for (size_t sid = 0; sid < db.sequences.size(); ++sid) {
    const QSequence& s = db.sequences[sid];
    if (auto occ = occurs_in(r, s))
      table.rows.push_back(detail::make_row(r, s, static_cast<uint32_t>(sid), *occ));
  }
  return table;
}

// Same table, but only the given sequences are scanned (they must cover the
// rule's support; callers pass sids recorded during rule generation).
inline UtilityTable build_utility_table(const SequentialRule& r, const SequenceDatabase& db,
                                        const std::vector<uint32_t>& sids) {
  UtilityTable table;
  table.rule = r;
  for (uint32_t sid : sids) {
    const QSequence& s = db.sequences.at(sid);
    if (auto occ = occurs_in(r, s))
      table.rows.push_back(detail::make_row(r, s, sid, *occ));
  }
  return table;
}

inline SequentialRule extend_rule(const SequentialRule& r, ItemId item, ExpansionSide side) {
  std::vector<ItemId> x = r.antecedent, y = r.consequent;
  (side == ExpansionSide::left ? x : y).push_back(item);
  return SequentialRule(std::move(x), std::move(y));
}

// Derives UT(r') from UT(r) without touching the database: rows lacking the
// item on the grown side drop out, surviving rows fold the item's utility
// into iutil and reclassify the remaining extension items under the child
// rule's geometry.  Field-for-field identical to rebuilding from scratch.
inline UtilityTable extend_utility_table(const UtilityTable& parent, ItemId item,
                                         ExpansionSide side) {
  UtilityTable table;
  table.rule = extend_rule(parent.rule, item, side);
  ItemId max_x_item = table.rule.max_antecedent();
  ItemId max_y_item = table.rule.max_consequent();

  for (const UtilityRow& old : parent.rows) {
    const ItemOcc* cell = detail::find_cell(old.left_right, item);
    if (!cell)
      cell = detail::find_cell(side == ExpansionSide::left ? old.only_left : old.only_right, item);
    if (!cell) continue;

    UtilityRow row;
    row.sid = old.sid;
    row.iutil = old.iutil + cell->util;
    if (side == ExpansionSide::left) {
      row.max_antecedent_pos = std::max(old.max_antecedent_pos, cell->pos);
      row.min_consequent_pos = old.min_consequent_pos;
    } else {
      row.max_antecedent_pos = old.max_antecedent_pos;
      row.min_consequent_pos = std::min(old.min_consequent_pos, cell->pos);
    }

    auto reclassify = [&](const std::vector<ItemOcc>& cells) {
      for (const ItemOcc& c : cells) {
        if (c.item == item) continue;
        bool left = c.pos < row.min_consequent_pos && c.item > max_x_item;
        bool right = c.pos > row.max_antecedent_pos && c.item > max_y_item;
        if (left && right) { row.left_right.push_back(c); row.lrutil += c.util; }
        else if (left) { row.only_left.push_back(c); row.lutil += c.util; }
        else if (right) { row.only_right.push_back(c); row.rutil += c.util; }
      }
    };
    reclassify(old.only_left);
    reclassify(old.only_right);
    reclassify(old.left_right);
    detail::sort_cells(row.only_left);
    detail::sort_cells(row.only_right);
    detail::sort_cells(row.left_right);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace duos
