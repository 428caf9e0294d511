#pragma once

// On-disk formats: rule files (JSON lines), outlier reports (TSV and JSON),
// telemetry (JSON lines) and benchmark rows (CSV).  Writers render decimals
// from exact fractions with fixed width, so identical inputs always produce
// byte-identical files.  Rule files are read back with the vendored JSON
// parser; measures are recomputed from the database rather than trusted.

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "duos/database.hpp"
#include "duos/miner.hpp"
#include "duos/outlier.hpp"
#include "duos/rules.hpp"

namespace duos {

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

namespace detail {
inline std::string name_array(const std::vector<ItemId>& items, const ProfitTable& names) {
  std::string out = "[";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += '"' + json_escape(names.name_of(items[i])) + '"';
  }
  return out + "]";
}
}  // namespace detail

inline std::string rules_to_jsonl(const RhusrSet& rules, const ProfitTable& names) {
  std::string out;
  for (const RhusrEntry& e : rules) {
    out += "{\"antecedent\":" + detail::name_array(e.rule.antecedent, names);
    out += ",\"consequent\":" + detail::name_array(e.rule.consequent, names);
    out += ",\"support\":" + e.measures.support.to_decimal(4);
    out += ",\"support_count\":" + std::to_string(e.measures.support_count);
    out += ",\"confidence\":" + e.measures.confidence.to_decimal(4);
    out += ",\"utility\":" + std::to_string(e.measures.utility);
    out += "}\n";
  }
  return out;
}

// Reads rule itemsets from a JSONL rule file and recomputes their measures
// against the given database.
inline RhusrSet rules_from_jsonl(const std::string& text, const SequenceDatabase& db) {
  ItemStatsTable stats = compute_item_stats(db);
  RhusrSet out;
  size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, std::string("bad rule json: ") + e.what());
    }
    auto side = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_array() || j[key].empty())
        throw ParseError(line_no, std::string("missing or empty ") + key);
      std::vector<ItemId> items;
      for (const auto& v : j[key]) {
        if (!v.is_string()) throw ParseError(line_no, std::string("non-string item in ") + key);
        auto id = db.profits.id_of(v.get<std::string>());
        if (!id) throw ParseError(line_no, "unknown item '" + v.get<std::string>() + "'");
        items.push_back(*id);
      }
      return items;
    };
    SequentialRule rule;
    try {
      rule = SequentialRule(side("antecedent"), side("consequent"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    RuleMeasures m = measures(rule, db, stats);
    out.push_back(RhusrEntry{std::move(rule), std::move(m)});
  }
  return out;
}

inline std::string report_to_tsv(const OutlierReport& report) {
  std::string out = "sid\trule_count\tswf\tof\toutlier\n";
  for (const SequenceScore& sc : report.scores) {
    out += std::to_string(sc.sid) + '\t' + std::to_string(sc.rule_count) + '\t' +
           sc.swf.to_decimal(4) + '\t' + sc.of.to_decimal(4) + '\t' +
           (sc.is_outlier ? "1" : "0") + '\n';
  }
  return out;
}

inline std::string report_to_json(const OutlierReport& report, const ProfitTable& names) {
  std::string out = "{\n";
  out += "  \"maxsup\": " + report.maxsup.to_decimal(4) + ",\n";
  out += "  \"rule_count\": " + std::to_string(report.deviations.size()) + ",\n";
  out += "  \"rules\": [\n";
  for (size_t i = 0; i < report.deviations.size(); ++i) {
    const RuleDeviation& d = report.deviations[i];
    out += "    {\"antecedent\":" + detail::name_array(d.rule.antecedent, names) +
           ",\"consequent\":" + detail::name_array(d.rule.consequent, names) +
           ",\"df\":" + d.df.to_decimal(4) + "}";
    out += i + 1 < report.deviations.size() ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"sequences\": [\n";
  for (size_t i = 0; i < report.scores.size(); ++i) {
    const SequenceScore& sc = report.scores[i];
    out += "    {\"sid\":" + std::to_string(sc.sid) +
           ",\"rule_count\":" + std::to_string(sc.rule_count) +
           ",\"swf\":" + sc.swf.to_decimal(4) + ",\"of\":" + sc.of.to_decimal(4) +
           ",\"outlier\":" + (sc.is_outlier ? "true" : "false") + "}";
    out += i + 1 < report.scores.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline std::string telemetry_to_jsonl(const MiningTelemetry& tel) {
  std::string out = "{\"rules_found\":" + std::to_string(tel.rules_found);
  out += ",\"candidates_generated\":" + std::to_string(tel.candidates_generated);
  out += ",\"tables_built\":" + std::to_string(tel.tables_built);
  out += ",\"pruned_by_strategy\":[";
  for (size_t i = 0; i < 7; ++i) {
    if (i) out += ',';
    out += std::to_string(tel.pruned_by_strategy[i]);
  }
  out += "],\"runtime_ms\":" + std::to_string(tel.runtime_ms);
  out += ",\"peak_mem_bytes\":" + std::to_string(tel.peak_mem_bytes);
  out += "}\n";
  return out;
}

}  // namespace duos
