#pragma once

// Mining of rare high-utility sequential rules.
//
// Search shape: every occurring 1*1 rule i => j seeds a pattern-growth tree;
// right expansions (consequent grows) may recurse right and left, left
// expansions (antecedent grows) recurse left only, and each expansion only
// adds items above the grown side's max id — so every rule is reached along
// exactly one path.  Pruning strategies (all individually toggleable, they
// change the work done but never the result):
//   1  drop items whose whole-sequence utility bound or support is too low
//   2  drop 1*1 seeds whose whole-sequence utility bound is too low
//   3  skip candidates below the support floor (support is anti-monotone)
//   4  veto left candidate i unless every j in Y has sup(i=>j) >= floor
//   5  veto right candidate i unless every j in X has sup(j=>i) >= floor
//   6  recurse right only while the table's full expansion bound holds
//   7  recurse left only while the table's left expansion bound holds

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "duos/database.hpp"
#include "duos/fraction.hpp"
#include "duos/rules.hpp"
#include "duos/utility_table.hpp"

namespace duos {

// Support thresholds come either as a fraction of |SD| ("0.25") or as an
// absolute sequence count ("2c").
struct SupportThreshold {
  bool is_count = false;
  Fraction fraction{0, 1};
  long long count = 0;

  static SupportThreshold from_fraction(Fraction f) { return {false, f, 0}; }
  static SupportThreshold from_count(long long c) { return {true, Fraction(0, 1), c}; }

  static SupportThreshold parse(const std::string& text) {
    if (!text.empty() && (text.back() == 'c' || text.back() == 'C')) {
      std::string digits = text.substr(0, text.size() - 1);
      if (digits.empty()) throw std::invalid_argument("bad support count: " + text);
      for (char ch : digits)
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad support count: " + text);
      return from_count(std::stoll(digits));
    }
    return from_fraction(Fraction::parse_decimal(text));
  }

  Fraction as_fraction(size_t db_size) const {
    return is_count ? Fraction(count, static_cast<long long>(db_size)) : fraction;
  }
};

struct MiningParams {
  Money min_utility = 0;
  Fraction min_confidence{0, 1};
  SupportThreshold min_support = SupportThreshold::from_fraction(Fraction(0, 1));
  SupportThreshold max_support = SupportThreshold::from_fraction(Fraction(1, 1));
  bool maxsup_inclusive = false;  // default: sup(r) < maxsup, strictly
  std::array<bool, 7> strategies{true, true, true, true, true, true, true};
  unsigned threads = 1;

  bool strategy(int k) const { return strategies.at(static_cast<size_t>(k - 1)); }

  MiningParams& disable_strategy(int k) {
    strategies.at(static_cast<size_t>(k - 1)) = false;
    return *this;
  }
};

// Thresholds pinned against a concrete database size; all comparisons are
// exact integer cross-multiplications.
struct ResolvedParams {
  size_t db_size = 0;
  Money min_utility = 0;
  Fraction min_confidence{0, 1};
  long long minsup_count = 0;
  Fraction maxsup{1, 1};
  bool maxsup_inclusive = false;

  static ResolvedParams resolve(const MiningParams& p, size_t db_size) {
    if (db_size == 0) throw std::invalid_argument("empty database");
    if (p.min_utility < 0) throw std::invalid_argument("min_utility must be >= 0");
    if (p.min_confidence < Fraction(0, 1) || p.min_confidence > Fraction(1, 1))
      throw std::invalid_argument("min_confidence must lie in [0, 1]");
    if (p.threads < 1) throw std::invalid_argument("threads must be >= 1");
    Fraction minsup_f = p.min_support.as_fraction(db_size);
    Fraction maxsup_f = p.max_support.as_fraction(db_size);
    if (minsup_f < Fraction(0, 1) || (!p.min_support.is_count && minsup_f > Fraction(1, 1)))
      throw std::invalid_argument("min_support must lie in [0, 1]");
    if (maxsup_f < Fraction(0, 1) || (!p.max_support.is_count && maxsup_f > Fraction(1, 1)))
      throw std::invalid_argument("max_support must lie in [0, 1]");
    if (maxsup_f < minsup_f) throw std::invalid_argument("max_support below min_support");

    ResolvedParams r;
    r.db_size = db_size;
    r.min_utility = p.min_utility;
    r.min_confidence = p.min_confidence;
    if (p.min_support.is_count) {
      r.minsup_count = p.min_support.count;
    } else {
      // ceil(num * n / den), the smallest count reaching the fraction
      long long num = minsup_f.num(), den = minsup_f.den();
      r.minsup_count = (num * static_cast<long long>(db_size) + den - 1) / den;
    }
    r.maxsup = maxsup_f;
    r.maxsup_inclusive = p.maxsup_inclusive;
    return r;
  }

  bool support_reaches_floor(size_t count) const {
    return static_cast<long long>(count) >= minsup_count;
  }

  bool support_below_ceiling(size_t count) const {
    __int128 lhs = static_cast<__int128>(count) * maxsup.den();
    __int128 rhs = static_cast<__int128>(maxsup.num()) * static_cast<long long>(db_size);
    return maxsup_inclusive ? lhs <= rhs : lhs < rhs;
  }

  bool confidence_reaches_floor(size_t count, size_t antecedent_sids) const {
    if (antecedent_sids == 0) return false;
    __int128 lhs = static_cast<__int128>(count) * min_confidence.den();
    __int128 rhs = static_cast<__int128>(min_confidence.num()) * antecedent_sids;
    return lhs >= rhs;
  }
};

// Support counts of all occurring 1*1 rules: entry (i, j) = sup(i => j).
class RuleCountMatrix {
public:
  void add(ItemId i, ItemId j, uint32_t delta = 1) { counts_[key(i, j)] += delta; }

  uint32_t count(ItemId i, ItemId j) const {
    auto it = counts_.find(key(i, j));
    return it == counts_.end() ? 0 : it->second;
  }

  size_t nonzero_entries() const { return counts_.size(); }

private:
  static uint64_t key(ItemId i, ItemId j) { return (uint64_t{i} << 32) | j; }
  std::unordered_map<uint64_t, uint32_t> counts_;
};

struct MiningTelemetry {
  uint64_t rules_found = 0;
  uint64_t candidates_generated = 0;
  uint64_t tables_built = 0;
  std::array<uint64_t, 7> pruned_by_strategy{};
  uint64_t runtime_ms = 0;
  uint64_t peak_mem_bytes = 0;

  void absorb(const MiningTelemetry& o) {
    rules_found += o.rules_found;
    candidates_generated += o.candidates_generated;
    tables_built += o.tables_built;
    for (size_t i = 0; i < 7; ++i) pruned_by_strategy[i] += o.pruned_by_strategy[i];
  }
};

struct RhusrEntry {
  SequentialRule rule;
  RuleMeasures measures;

  bool operator==(const RhusrEntry& o) const {
    return rule == o.rule && measures == o.measures;
  }
};

using RhusrSet = std::vector<RhusrEntry>;

inline void sort_canonical(RhusrSet& rules) {
  std::sort(rules.begin(), rules.end(),
            [](const RhusrEntry& a, const RhusrEntry& b) { return a.rule < b.rule; });
}

// Test instrumentation: observe every utility table the search constructs,
// together with the database it was built against.  Only safe with
// threads == 1 unless the callback locks.
struct MiningHooks {
  std::function<void(const UtilityTable&, const SequenceDatabase&)> on_table;
};

struct MiningResult {
  RhusrSet rules;
  MiningTelemetry telemetry;
};

// Items surviving strategy 1; with the strategy disabled everything stays.
inline std::vector<bool> prune_items_by_seu(const ItemStatsTable& stats,
                                            const ResolvedParams& rp, bool enabled) {
  std::vector<bool> keep(stats.by_id.size(), true);
  if (!enabled) return keep;
  for (ItemId id = 0; id < stats.by_id.size(); ++id) {
    const ItemStats& st = stats.by_id[id];
    if (st.seu < rp.min_utility || !rp.support_reaches_floor(st.support_count))
      keep[id] = false;
  }
  return keep;
}

namespace detail {

struct InitialRule {
  ItemId lhs = 0, rhs = 0;
  Money seu = 0;
  std::vector<uint32_t> sids;
};

// One database scan yields every occurring 1*1 rule with its sids and SEU,
// which doubles as the rule count matrix.
inline std::vector<InitialRule> scan_initial_rules(const SequenceDatabase& db,
                                                   RuleCountMatrix& rcm) {
  std::unordered_map<uint64_t, InitialRule> found;
  for (size_t sid = 0; sid < db.sequences.size(); ++sid) {
    const QSequence& s = db.sequences[sid];
    for (const ItemOcc& a : s.occs) {
      for (const ItemOcc& b : s.occs) {
        if (a.pos >= b.pos) continue;
        uint64_t key = (uint64_t{a.item} << 32) | b.item;
        InitialRule& r = found[key];
        if (r.sids.empty()) { r.lhs = a.item; r.rhs = b.item; }
        r.seu += s.su;
        r.sids.push_back(static_cast<uint32_t>(sid));
      }
    }
  }
  std::vector<InitialRule> out;
  out.reserve(found.size());
  for (auto& [key, r] : found) {
    rcm.add(r.lhs, r.rhs, static_cast<uint32_t>(r.sids.size()));
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const InitialRule& a, const InitialRule& b) {
    return a.lhs != b.lhs ? a.lhs < b.lhs : a.rhs < b.rhs;
  });
  return out;
}

struct SearchCtx {
  const SequenceDatabase& db;
  const ItemStatsTable& stats;
  const ResolvedParams& rp;
  const MiningParams& mp;
  const RuleCountMatrix& rcm;
  const MiningHooks* hooks;
  std::mutex* hook_mutex;
  RhusrSet* out;
  MiningTelemetry* tel;

  void observe(const UtilityTable& t) const {
    if (hooks && hooks->on_table) {
      std::lock_guard<std::mutex> lock(*hook_mutex);
      hooks->on_table(t, db);
    }
  }
};

inline void record_if_qualified(SearchCtx& ctx, const UtilityTable& t, size_t antecedent_sids) {
  size_t cnt = t.support_count();
  if (!ctx.rp.support_reaches_floor(cnt) || !ctx.rp.support_below_ceiling(cnt)) return;
  Money u = t.utility();
  if (u < ctx.rp.min_utility) return;
  if (!ctx.rp.confidence_reaches_floor(cnt, antecedent_sids)) return;

  RhusrEntry e;
  e.rule = t.rule;
  e.measures.support_count = static_cast<uint32_t>(cnt);
  e.measures.support = Fraction(static_cast<long long>(cnt), static_cast<long long>(ctx.rp.db_size));
  e.measures.confidence = Fraction(static_cast<long long>(cnt), static_cast<long long>(antecedent_sids));
  e.measures.utility = u;
  e.measures.sids = SidSet(ctx.rp.db_size);
  for (const UtilityRow& row : t.rows) e.measures.sids.set(row.sid);
  ctx.out->push_back(std::move(e));
  ctx.tel->rules_found += 1;
}

inline std::vector<ItemId> collect_candidates(const UtilityTable& t, ExpansionSide side) {
  std::vector<ItemId> items;
  for (const UtilityRow& row : t.rows) {
    for (const ItemOcc& c : row.left_right) items.push_back(c.item);
    const auto& own = side == ExpansionSide::left ? row.only_left : row.only_right;
    for (const ItemOcc& c : own) items.push_back(c.item);
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

inline void left_expansion(SearchCtx& ctx, const UtilityTable& t, const SidSet& antecedent_sids);

inline void right_expansion(SearchCtx& ctx, const UtilityTable& t, const SidSet& antecedent_sids,
                            size_t antecedent_sid_count) {
  for (ItemId cand : collect_candidates(t, ExpansionSide::right)) {
    if (ctx.mp.strategy(5)) {
      bool veto = false;
      for (ItemId j : t.rule.antecedent)
        if (!ctx.rp.support_reaches_floor(ctx.rcm.count(j, cand))) { veto = true; break; }
      if (veto) { ctx.tel->pruned_by_strategy[4] += 1; continue; }
    }
    ctx.tel->candidates_generated += 1;
    UtilityTable child = extend_utility_table(t, cand, ExpansionSide::right);
    ctx.tel->tables_built += 1;
    ctx.observe(child);
    if (ctx.mp.strategy(3) && !ctx.rp.support_reaches_floor(child.support_count())) {
      ctx.tel->pruned_by_strategy[2] += 1;
      continue;
    }
    record_if_qualified(ctx, child, antecedent_sid_count);
    if (!ctx.mp.strategy(6) || child.expansion_bound() >= ctx.rp.min_utility)
      right_expansion(ctx, child, antecedent_sids, antecedent_sid_count);
    else
      ctx.tel->pruned_by_strategy[5] += 1;
    if (!ctx.mp.strategy(7) || child.left_expansion_bound() >= ctx.rp.min_utility)
      left_expansion(ctx, child, antecedent_sids);
    else
      ctx.tel->pruned_by_strategy[6] += 1;
  }
}

inline void left_expansion(SearchCtx& ctx, const UtilityTable& t, const SidSet& antecedent_sids) {
  for (ItemId cand : collect_candidates(t, ExpansionSide::left)) {
    if (ctx.mp.strategy(4)) {
      bool veto = false;
      for (ItemId j : t.rule.consequent)
        if (!ctx.rp.support_reaches_floor(ctx.rcm.count(cand, j))) { veto = true; break; }
      if (veto) { ctx.tel->pruned_by_strategy[3] += 1; continue; }
    }
    ctx.tel->candidates_generated += 1;
    UtilityTable child = extend_utility_table(t, cand, ExpansionSide::left);
    ctx.tel->tables_built += 1;
    ctx.observe(child);
    if (ctx.mp.strategy(3) && !ctx.rp.support_reaches_floor(child.support_count())) {
      ctx.tel->pruned_by_strategy[2] += 1;
      continue;
    }
    SidSet child_sids = antecedent_sids & ctx.stats.of(cand).sids;
    size_t denom = child_sids.count();
    record_if_qualified(ctx, child, denom);
    if (!ctx.mp.strategy(7) || child.left_expansion_bound() >= ctx.rp.min_utility)
      left_expansion(ctx, child, child_sids);
    else
      ctx.tel->pruned_by_strategy[6] += 1;
  }
}

// Explore the subtree rooted at one surviving 1*1 rule.
inline void explore_seed(SearchCtx& ctx, const InitialRule& seed) {
  SequentialRule rule({seed.lhs}, {seed.rhs});
  UtilityTable table = build_utility_table(rule, ctx.db, seed.sids);
  ctx.tel->tables_built += 1;
  ctx.observe(table);

  const SidSet& antecedent_sids = ctx.stats.of(seed.lhs).sids;
  size_t denom = antecedent_sids.count();
  record_if_qualified(ctx, table, denom);
  if (!ctx.mp.strategy(6) || table.expansion_bound() >= ctx.rp.min_utility)
    right_expansion(ctx, table, antecedent_sids, denom);
  else
    ctx.tel->pruned_by_strategy[5] += 1;
  if (!ctx.mp.strategy(7) || table.left_expansion_bound() >= ctx.rp.min_utility)
    left_expansion(ctx, table, antecedent_sids);
  else
    ctx.tel->pruned_by_strategy[6] += 1;
}

inline uint64_t peak_memory_bytes() {
  // VmHWM from /proc/self/status, in kB.
  FILE* f = std::fopen("/proc/self/status", "r");
  if (!f) return 0;
  char line[256];
  uint64_t kb = 0;
  while (std::fgets(line, sizeof line, f))
    if (std::sscanf(line, "VmHWM: %lu kB", &kb) == 1) break;
  std::fclose(f);
  return kb * 1024;
}

}  // namespace detail

inline MiningResult mine(const SequenceDatabase& db, const MiningParams& params,
                         const MiningHooks* hooks = nullptr) {
  auto started = std::chrono::steady_clock::now();
  if (db.size() == 0) throw std::invalid_argument("empty database");
  ResolvedParams rp = ResolvedParams::resolve(params, db.size());

  MiningResult result;
  MiningTelemetry& tel = result.telemetry;

  ItemStatsTable full_stats = compute_item_stats(db);
  std::vector<bool> keep = prune_items_by_seu(full_stats, rp, params.strategy(1));
  size_t kept = 0;
  for (ItemId id : full_stats.occurring)
    if (keep[id]) ++kept;
  tel.pruned_by_strategy[0] = full_stats.occurring.size() - kept;

  SequenceDatabase projected;
  const SequenceDatabase* work = &db;
  if (params.strategy(1)) {
    projected = project_database(db, keep);
    work = &projected;
  }
  ItemStatsTable stats = compute_item_stats(*work);

  RuleCountMatrix rcm;
  std::vector<detail::InitialRule> initial = detail::scan_initial_rules(*work, rcm);
  tel.candidates_generated += initial.size();

  std::vector<const detail::InitialRule*> seeds;
  for (const detail::InitialRule& r : initial) {
    if (params.strategy(2) && r.seu < rp.min_utility) {
      tel.pruned_by_strategy[1] += 1;
      continue;
    }
    if (params.strategy(3) && !rp.support_reaches_floor(r.sids.size())) {
      tel.pruned_by_strategy[2] += 1;
      continue;
    }
    seeds.push_back(&r);
  }

  std::mutex hook_mutex;
  unsigned threads = std::min<unsigned>(params.threads, std::max<size_t>(seeds.size(), 1));
  if (threads <= 1) {
    detail::SearchCtx ctx{*work, stats, rp, params, rcm, hooks, &hook_mutex, &result.rules, &tel};
    for (const detail::InitialRule* seed : seeds) detail::explore_seed(ctx, *seed);
  } else {
    std::vector<RhusrSet> outs(threads);
    std::vector<MiningTelemetry> tels(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        detail::SearchCtx ctx{*work, stats, rp, params, rcm, hooks, &hook_mutex, &outs[t], &tels[t]};
        for (size_t k = t; k < seeds.size(); k += threads) detail::explore_seed(ctx, *seeds[k]);
      });
    }
    for (std::thread& th : pool) th.join();
    for (unsigned t = 0; t < threads; ++t) {
      tel.absorb(tels[t]);
      for (RhusrEntry& e : outs[t]) result.rules.push_back(std::move(e));
    }
  }
  sort_canonical(result.rules);

  tel.runtime_ms = static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                             std::chrono::steady_clock::now() - started)
                                             .count());
  tel.peak_mem_bytes = detail::peak_memory_bytes();
  return result;
}

// The 1*1 seed layer on its own (all occurring rules i => j filtered by the
// utility-bound and support-floor gates); mainly a test surface.
inline std::vector<SequentialRule> generate_initial_rules(const SequenceDatabase& db,
                                                          const MiningParams& params) {
  ResolvedParams rp = ResolvedParams::resolve(params, db.size());
  RuleCountMatrix rcm;
  std::vector<SequentialRule> out;
  for (const detail::InitialRule& r : detail::scan_initial_rules(db, rcm)) {
    if (params.strategy(2) && r.seu < rp.min_utility) continue;
    if (params.strategy(3) && !rp.support_reaches_floor(r.sids.size())) continue;
    out.push_back(SequentialRule({r.lhs}, {r.rhs}));
  }
  return out;
}

inline RuleCountMatrix build_rcm(const SequenceDatabase& db) {
  RuleCountMatrix rcm;
  detail::scan_initial_rules(db, rcm);
  return rcm;
}

}  // namespace duos
