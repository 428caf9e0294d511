#pragma once

// Quantity-annotated sequence databases.
//
// Input format, one sequence per line:
//   a:1 b:2 -1 c:2 -1 f:3 -1 g:2 -1 e:1 -2
// Items are name:quantity pairs, "-1" separates itemsets, "-2" terminates the
// line, "#" starts a comment line.  The profit file holds "name profit" per
// line; item names are interned to dense ids in first-seen order of the
// profit file, so the id order doubles as the canonical item order.
//
// All utilities are exact integers; parsing checks for overflow once so the
// mining code can use plain arithmetic afterwards.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "duos/sidset.hpp"

namespace duos {

using ItemId = uint32_t;
using Money = long long;

class ParseError : public std::runtime_error {
public:
  ParseError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  size_t line() const { return line_; }

private:
  size_t line_;
};

namespace detail {
inline Money checked_add(Money a, Money b) {
  Money r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("utility overflow");
  return r;
}
inline Money checked_mul(Money a, Money b) {
  Money r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("utility overflow");
  return r;
}
}  // namespace detail

class ProfitTable {
public:
  ItemId intern(const std::string& name, Money profit) {
    if (ids_.count(name)) throw std::invalid_argument("duplicate profit entry: " + name);
    if (profit <= 0) throw std::invalid_argument("non-positive profit: " + name);
    ItemId id = static_cast<ItemId>(names_.size());
    ids_.emplace(name, id);
    names_.push_back(name);
    profits_.push_back(profit);
    return id;
  }

  std::optional<ItemId> id_of(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name_of(ItemId id) const { return names_.at(id); }
  Money profit(ItemId id) const { return profits_.at(id); }
  size_t size() const { return names_.size(); }

  bool operator==(const ProfitTable& o) const {
    return names_ == o.names_ && profits_ == o.profits_;
  }

private:
  std::vector<std::string> names_;
  std::vector<Money> profits_;
  std::unordered_map<std::string, ItemId> ids_;
};

struct QItem {
  ItemId item = 0;
  long long quantity = 0;
  bool operator==(const QItem&) const = default;
};

// One itemset: items strictly increasing by id.
using QItemset = std::vector<QItem>;

// Where an item sits inside a sequence; items are unique per sequence, so
// each id maps to exactly one (position, quantity, utility) triple.
struct ItemOcc {
  ItemId item = 0;
  uint32_t pos = 0;  // itemset index within the sequence
  Money util = 0;    // quantity * profit
  bool operator==(const ItemOcc&) const = default;
};

struct QSequence {
  std::vector<QItemset> itemsets;
  std::vector<ItemOcc> occs;  // sorted by item id; rebuilt by finalize()
  Money su = 0;               // total utility of the sequence

  bool empty() const { return itemsets.empty(); }

  size_t item_count() const { return occs.size(); }

  const ItemOcc* find(ItemId item) const {
    auto it = std::lower_bound(occs.begin(), occs.end(), item,
                               [](const ItemOcc& o, ItemId v) { return o.item < v; });
    return (it != occs.end() && it->item == item) ? &*it : nullptr;
  }

  void finalize(const ProfitTable& profits) {
    occs.clear();
    su = 0;
    for (uint32_t pos = 0; pos < itemsets.size(); ++pos) {
      for (const QItem& qi : itemsets[pos]) {
        Money u = detail::checked_mul(qi.quantity, profits.profit(qi.item));
        occs.push_back(ItemOcc{qi.item, pos, u});
        su = detail::checked_add(su, u);
      }
    }
    std::sort(occs.begin(), occs.end(),
              [](const ItemOcc& a, const ItemOcc& b) { return a.item < b.item; });
  }

  bool operator==(const QSequence& o) const { return itemsets == o.itemsets; }
};

struct SequenceDatabase {
  ProfitTable profits;
  std::vector<QSequence> sequences;

  size_t size() const { return sequences.size(); }
  size_t alphabet_size() const { return profits.size(); }

  // Distinct items actually occurring in some sequence.
  size_t occurring_item_count() const {
    std::vector<char> seen(profits.size(), 0);
    size_t n = 0;
    for (const QSequence& s : sequences)
      for (const ItemOcc& o : s.occs)
        if (!seen[o.item]) { seen[o.item] = 1; ++n; }
    return n;
  }

  bool operator==(const SequenceDatabase& o) const {
    return profits == o.profits && sequences == o.sequences;
  }
};

// u(i, S): quantity times profit, 0 when the item is absent.
inline Money item_utility(const SequenceDatabase& db, size_t sid, ItemId item) {
  const ItemOcc* occ = db.sequences.at(sid).find(item);
  return occ ? occ->util : 0;
}

// SU(S): utility of everything in the sequence.
inline Money sequence_utility(const SequenceDatabase& db, size_t sid) {
  return db.sequences.at(sid).su;
}

inline ProfitTable parse_profit_table(const std::string& text) {
  ProfitTable table;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name) || name[0] == '#') continue;
    long long profit;
    if (!(ls >> profit)) throw ParseError(line_no, "malformed profit entry");
    std::string extra;
    if (ls >> extra) throw ParseError(line_no, "trailing tokens in profit entry");
    try {
      table.intern(name, profit);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return table;
}

namespace detail {

inline QItem parse_qitem(const std::string& token, const ProfitTable& profits, size_t line_no) {
  size_t colon = token.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
    throw ParseError(line_no, "malformed item token '" + token + "'");
  std::string name = token.substr(0, colon);
  long long qty = 0;
  try {
    size_t used = 0;
    qty = std::stoll(token.substr(colon + 1), &used);
    if (used != token.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParseError(line_no, "malformed quantity in '" + token + "'");
  }
  if (qty <= 0) throw ParseError(line_no, "non-positive quantity in '" + token + "'");
  auto id = profits.id_of(name);
  if (!id) throw ParseError(line_no, "no profit entry for item '" + name + "'");
  return QItem{*id, qty};
}

}  // namespace detail

inline SequenceDatabase parse_database(const std::string& db_text, const std::string& profit_text) {
  SequenceDatabase db;
  db.profits = parse_profit_table(profit_text);

  std::istringstream in(db_text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token) || token[0] == '#') continue;

    QSequence seq;
    QItemset current;
    std::vector<char> seen(db.profits.size(), 0);
    bool terminated = false;
    do {
      if (terminated) throw ParseError(line_no, "tokens after sequence terminator");
      if (token == "-1" || token == "-2") {
        if (current.empty()) throw ParseError(line_no, "empty itemset");
        std::sort(current.begin(), current.end(),
                  [](const QItem& a, const QItem& b) { return a.item < b.item; });
        seq.itemsets.push_back(std::move(current));
        current.clear();
        if (token == "-2") terminated = true;
      } else {
        QItem qi = detail::parse_qitem(token, db.profits, line_no);
        if (seen[qi.item])
          throw ParseError(line_no, "duplicate item '" + db.profits.name_of(qi.item) + "' in sequence");
        seen[qi.item] = 1;
        current.push_back(qi);
      }
    } while (ls >> token);
    if (!terminated) throw ParseError(line_no, "missing sequence terminator");
    seq.finalize(db.profits);
    db.sequences.push_back(std::move(seq));
  }
  if (db.sequences.empty()) throw ParseError(line_no, "empty database");
  return db;
}

struct DatabaseText {
  std::string db_text;
  std::string profits_text;
};

inline DatabaseText write_database(const SequenceDatabase& db) {
  DatabaseText out;
  for (const QSequence& s : db.sequences) {
    std::string line;
    for (size_t i = 0; i < s.itemsets.size(); ++i) {
      if (i) line += " -1 ";
      const QItemset& is = s.itemsets[i];
      for (size_t j = 0; j < is.size(); ++j) {
        if (j) line += ' ';
        line += db.profits.name_of(is[j].item) + ':' + std::to_string(is[j].quantity);
      }
    }
    line += " -2\n";
    out.db_text += line;
  }
  for (ItemId id = 0; id < db.profits.size(); ++id)
    out.profits_text +=
        db.profits.name_of(id) + ' ' + std::to_string(db.profits.profit(id)) + '\n';
  return out;
}

struct ItemStats {
  Money seu = 0;              // sum of SU(s) over sequences containing the item
  uint32_t support_count = 0;
  SidSet sids;
};

struct ItemStatsTable {
  std::vector<ItemStats> by_id;    // indexed by ItemId, one slot per alphabet entry
  std::vector<ItemId> occurring;   // ids with support_count > 0, ascending

  const ItemStats& of(ItemId id) const { return by_id.at(id); }
};

inline ItemStatsTable compute_item_stats(const SequenceDatabase& db) {
  ItemStatsTable table;
  table.by_id.assign(db.alphabet_size(), ItemStats{});
  for (ItemStats& st : table.by_id) st.sids = SidSet(db.size());
  for (size_t sid = 0; sid < db.sequences.size(); ++sid) {
    const QSequence& s = db.sequences[sid];
    for (const ItemOcc& occ : s.occs) {
      ItemStats& st = table.by_id[occ.item];
      st.seu = detail::checked_add(st.seu, s.su);
      st.support_count += 1;
      st.sids.set(sid);
    }
  }
  for (ItemId id = 0; id < table.by_id.size(); ++id)
    if (table.by_id[id].support_count > 0) table.occurring.push_back(id);
  return table;
}

// Drops every item outside `keep`.  Sequence count is preserved: sequences
// left with no items stay as empty shells so sids keep their meaning.
inline SequenceDatabase project_database(const SequenceDatabase& db, const std::vector<bool>& keep) {
  if (keep.size() != db.alphabet_size())
    throw std::invalid_argument("keep mask size mismatch");
  SequenceDatabase out;
  out.profits = db.profits;
  out.sequences.reserve(db.sequences.size());
  for (const QSequence& s : db.sequences) {
    QSequence ps;
    for (const QItemset& is : s.itemsets) {
      QItemset kept;
      for (const QItem& qi : is)
        if (keep[qi.item]) kept.push_back(qi);
      if (!kept.empty()) ps.itemsets.push_back(std::move(kept));
    }
    ps.finalize(out.profits);
    out.sequences.push_back(std::move(ps));
  }
  return out;
}

}  // namespace duos
