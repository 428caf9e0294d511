#pragma once

// Utility-aware outlier scoring.  Each mined rule gets a deviation factor
// DF(r) = (maxsup - sup(r)) / |rules|; each sequence is scored by the rules
// it contains: SWF(s) = S(s)/|rules|, OF(s) = 1 - SWF(s) * sum of DF over
// contained rules.  High OF means the sequence follows few / weak rules.
// All scores are exact rationals; rendering rounds to 4 decimal places.

#include <stdexcept>
#include <vector>

#include "duos/database.hpp"
#include "duos/fraction.hpp"
#include "duos/miner.hpp"
#include "duos/rules.hpp"

namespace duos {

struct OutlierParams {
  Fraction v{7, 10};        // flag threshold on OF(s)
  bool require_rule = true; // only sequences containing at least one rule can be flagged
};

inline Fraction deviation_factor(const Fraction& rule_support, const Fraction& maxsup,
                                 size_t rule_count) {
  if (rule_count == 0) throw std::invalid_argument("deviation factor over empty rule set");
  return (maxsup - rule_support) / Fraction(static_cast<long long>(rule_count), 1);
}

struct RuleDeviation {
  SequentialRule rule;
  Fraction df;

  bool operator==(const RuleDeviation&) const = default;
};

struct SequenceScore {
  uint32_t sid = 0;
  uint32_t rule_count = 0;   // S(s): rules occurring in the sequence
  Fraction deviation_sum;    // A(s): sum of DF over those rules
  Fraction swf;
  Fraction of;
  bool is_outlier = false;

  bool operator==(const SequenceScore&) const = default;
};

struct OutlierReport {
  Fraction maxsup;
  std::vector<RuleDeviation> deviations;  // one per rule, rule order preserved
  std::vector<SequenceScore> scores;      // one per sequence, sid ascending

  bool operator==(const OutlierReport&) const = default;
};

inline OutlierReport detect(const SequenceDatabase& db, const RhusrSet& rules,
                            const OutlierParams& params, const Fraction& maxsup) {
  if (params.v < Fraction(0, 1) || params.v > Fraction(1, 1))
    throw std::invalid_argument("v must lie in [0, 1]");
  if (db.size() == 0) throw std::invalid_argument("empty database");

  OutlierReport report;
  report.maxsup = maxsup;
  size_t n_rules = rules.size();
  for (const RhusrEntry& e : rules)
    report.deviations.push_back(
        RuleDeviation{e.rule, deviation_factor(e.measures.support, maxsup, n_rules)});

  for (size_t sid = 0; sid < db.sequences.size(); ++sid) {
    SequenceScore sc;
    sc.sid = static_cast<uint32_t>(sid);
    sc.deviation_sum = Fraction(0, 1);
    for (size_t k = 0; k < rules.size(); ++k) {
      if (!occurs_in(rules[k].rule, db.sequences[sid])) continue;
      sc.rule_count += 1;
      sc.deviation_sum = sc.deviation_sum + report.deviations[k].df;
    }
    sc.swf = n_rules == 0 ? Fraction(0, 1)
                          : Fraction(sc.rule_count, static_cast<long long>(n_rules));
    sc.of = Fraction(1, 1) - sc.swf * sc.deviation_sum;
    sc.is_outlier = sc.of >= params.v && (!params.require_rule || sc.rule_count > 0);
    report.scores.push_back(std::move(sc));
  }
  return report;
}

}  // namespace duos
