// Command-line front end: mine / detect / run / gen / oracle / bench.
// Exit codes: 0 success, 1 input parse or I/O error, 2 invalid parameters.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "duos/duos.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw duos::ParseError(0, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw duos::ParseError(0, "cannot write " + path);
  out << content;
}

struct MineFlags {
  std::string db, profits, out, telemetry;
  long long minutil = 0;
  std::string minconf = "0", minsup = "0", maxsup = "1";
  bool maxsup_inclusive = false;
  std::vector<int> disabled;
  unsigned threads = 1;
};

void add_mine_flags(CLI::App* cmd, MineFlags& f, bool with_out = true) {
  cmd->add_option("--db", f.db, "sequence database file")->required();
  cmd->add_option("--profits", f.profits, "item profit file")->required();
  cmd->add_option("--minutil", f.minutil, "minimum rule utility");
  cmd->add_option("--minconf", f.minconf, "minimum confidence, e.g. 0.7");
  cmd->add_option("--minsup", f.minsup, "support floor: fraction (0.25) or count (2c)");
  cmd->add_option("--maxsup", f.maxsup, "support ceiling: fraction or count; strict by default");
  cmd->add_flag("--maxsup-inclusive", f.maxsup_inclusive, "treat the ceiling as <= instead of <");
  cmd->add_option("--disable-strategy", f.disabled, "disable pruning strategy k (1..7), repeatable")
      ->check(CLI::Range(1, 7));
  cmd->add_option("--threads", f.threads, "worker threads (1 = fully sequential)");
  cmd->add_option("--telemetry", f.telemetry, "append mining counters to this JSONL file");
  if (with_out) cmd->add_option("--out", f.out, "rule output file (JSON lines)")->required();
}

duos::MiningParams build_params(const MineFlags& f) {
  duos::MiningParams p;
  p.min_utility = f.minutil;
  p.min_confidence = duos::Fraction::parse_decimal(f.minconf);
  p.min_support = duos::SupportThreshold::parse(f.minsup);
  p.max_support = duos::SupportThreshold::parse(f.maxsup);
  p.maxsup_inclusive = f.maxsup_inclusive;
  for (int k : f.disabled) p.disable_strategy(k);
  p.threads = f.threads;
  return p;
}

struct DetectFlags {
  std::string db, profits, rules, out, json;
  std::string v = "0.7", maxsup = "1";
  bool literal_alg1 = false;
};

void add_detect_flags(CLI::App* cmd, DetectFlags& f, bool with_rules = true) {
  if (with_rules) {
    cmd->add_option("--db", f.db, "sequence database file")->required();
    cmd->add_option("--profits", f.profits, "item profit file")->required();
    cmd->add_option("--rules", f.rules, "rule file produced by mine")->required();
  }
  cmd->add_option("--v", f.v, "outlier threshold on OF(s), in [0,1]");
  if (with_rules)
    cmd->add_option("--maxsup", f.maxsup, "support ceiling used when the rules were mined");
  cmd->add_flag("--literal-alg1", f.literal_alg1,
                "score rule-free sequences as outliers too (OF = 1)");
  if (with_rules) {
    // the fused subcommand names its report file --report-out instead
    cmd->add_option("--out", f.out, "TSV report file (default: stdout)");
    cmd->add_option("--json", f.json, "also write a JSON report with per-rule deviations");
  }
}

void emit_report(const duos::OutlierReport& report, const duos::SequenceDatabase& db,
                 const DetectFlags& f) {
  std::string tsv = duos::report_to_tsv(report);
  if (f.out.empty())
    std::cout << tsv;
  else
    spill(f.out, tsv);
  if (!f.json.empty()) spill(f.json, duos::report_to_json(report, db.profits));
}

int run_all(CLI::App& app, MineFlags& mf, DetectFlags& df, duos::GenParams& gp,
            std::string& gen_prefix, std::string& sweep, std::string& report_out) {
  if (app.got_subcommand("mine") || app.got_subcommand("oracle")) {
    bool use_oracle = app.got_subcommand("oracle");
    duos::SequenceDatabase db = duos::parse_database(slurp(mf.db), slurp(mf.profits));
    duos::MiningParams params = build_params(mf);
    if (use_oracle) {
      duos::RhusrSet rules = duos::oracle::mine(db, params);
      spill(mf.out, duos::rules_to_jsonl(rules, db.profits));
    } else {
      duos::MiningResult result = duos::mine(db, params);
      spill(mf.out, duos::rules_to_jsonl(result.rules, db.profits));
      if (!mf.telemetry.empty()) {
        std::ofstream t(mf.telemetry, std::ios::app);
        if (!t) throw duos::ParseError(0, "cannot write " + mf.telemetry);
        t << duos::telemetry_to_jsonl(result.telemetry);
      }
    }
    return 0;
  }

  if (app.got_subcommand("detect")) {
    duos::SequenceDatabase db = duos::parse_database(slurp(df.db), slurp(df.profits));
    duos::RhusrSet rules = duos::rules_from_jsonl(slurp(df.rules), db);
    duos::OutlierParams op;
    op.v = duos::Fraction::parse_decimal(df.v);
    op.require_rule = !df.literal_alg1;
    duos::Fraction maxsup = duos::SupportThreshold::parse(df.maxsup).as_fraction(db.size());
    emit_report(duos::detect(db, rules, op, maxsup), db, df);
    return 0;
  }

  if (app.got_subcommand("run")) {
    duos::SequenceDatabase db = duos::parse_database(slurp(mf.db), slurp(mf.profits));
    duos::MiningParams params = build_params(mf);
    duos::MiningResult result = duos::mine(db, params);
    spill(mf.out, duos::rules_to_jsonl(result.rules, db.profits));
    if (!mf.telemetry.empty()) {
      std::ofstream t(mf.telemetry, std::ios::app);
      if (!t) throw duos::ParseError(0, "cannot write " + mf.telemetry);
      t << duos::telemetry_to_jsonl(result.telemetry);
    }
    duos::OutlierParams op;
    op.v = duos::Fraction::parse_decimal(df.v);
    op.require_rule = !df.literal_alg1;
    duos::Fraction maxsup = duos::SupportThreshold::parse(mf.maxsup).as_fraction(db.size());
    DetectFlags out_flags = df;
    out_flags.out = report_out;
    emit_report(duos::detect(db, result.rules, op, maxsup), db, out_flags);
    return 0;
  }

  if (app.got_subcommand("gen")) {
    duos::SequenceDatabase db = duos::generate_database(gp);
    duos::DatabaseText text = duos::write_database(db);
    spill(gen_prefix + ".db", text.db_text);
    spill(gen_prefix + ".profits", text.profits_text);
    return 0;
  }

  if (app.got_subcommand("bench")) {
    duos::SequenceDatabase db = duos::parse_database(slurp(mf.db), slurp(mf.profits));
    std::vector<long long> minutils;
    std::stringstream ss(sweep);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) minutils.push_back(std::stoll(tok));
    if (minutils.empty()) throw std::invalid_argument("--sweep needs at least one minutil value");

    std::string csv = "minutil,profile,rules,candidates,runtime_ms,peak_mem_bytes\n";
    struct Profile { const char* name; int disable; };
    for (long long mu : minutils) {
      for (Profile prof : {Profile{"full", 0}, Profile{"no-s1", 1}, Profile{"no-s2", 2}}) {
        duos::MiningParams params = build_params(mf);
        params.min_utility = mu;
        if (prof.disable) params.disable_strategy(prof.disable);
        duos::MiningResult r = duos::mine(db, params);
        csv += std::to_string(mu);
        csv += ',';
        csv += prof.name;
        csv += ',' + std::to_string(r.telemetry.rules_found) + ',' +
               std::to_string(r.telemetry.candidates_generated) + ',' +
               std::to_string(r.telemetry.runtime_ms) + ',' +
               std::to_string(r.telemetry.peak_mem_bytes) + '\n';
      }
    }
    if (mf.out.empty())
      std::cout << csv;
    else
      spill(mf.out, csv);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rare high-utility sequential rule mining and outlier detection"};
  app.require_subcommand(1);

  MineFlags mine_flags;
  DetectFlags detect_flags;
  duos::GenParams gen_params;
  std::string gen_prefix, sweep, report_out;

  CLI::App* mine_cmd = app.add_subcommand("mine", "mine rare high-utility sequential rules");
  add_mine_flags(mine_cmd, mine_flags);

  CLI::App* detect_cmd = app.add_subcommand("detect", "score sequences against a rule file");
  add_detect_flags(detect_cmd, detect_flags);

  CLI::App* run_cmd = app.add_subcommand("run", "mine and score in one pass");
  add_mine_flags(run_cmd, mine_flags);
  add_detect_flags(run_cmd, detect_flags, false);
  run_cmd->add_option("--report-out", report_out, "TSV report file (default: stdout)");

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a deterministic synthetic database");
  gen_cmd->add_option("--items", gen_params.items, "alphabet size")->required();
  gen_cmd->add_option("--seqs", gen_params.sequences, "number of sequences")->required();
  gen_cmd->add_option("--seed", gen_params.seed, "PRNG seed")->required();
  gen_cmd->add_option("--max-itemsets", gen_params.max_itemsets, "itemsets per sequence cap");
  gen_cmd->add_option("--max-itemset-size", gen_params.max_itemset_size, "items per itemset cap");
  gen_cmd->add_option("--out-prefix", gen_prefix, "writes PREFIX.db and PREFIX.profits")->required();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "mine by exhaustive enumeration (small inputs)");
  add_mine_flags(oracle_cmd, mine_flags);

  CLI::App* bench_cmd = app.add_subcommand("bench", "sweep minutil across strategy profiles");
  bench_cmd->add_option("--db", mine_flags.db, "sequence database file")->required();
  bench_cmd->add_option("--profits", mine_flags.profits, "item profit file")->required();
  bench_cmd->add_option("--sweep", sweep, "comma-separated minutil values")->required();
  bench_cmd->add_option("--minconf", mine_flags.minconf, "minimum confidence");
  bench_cmd->add_option("--minsup", mine_flags.minsup, "support floor");
  bench_cmd->add_option("--maxsup", mine_flags.maxsup, "support ceiling");
  bench_cmd->add_flag("--maxsup-inclusive", mine_flags.maxsup_inclusive, "ceiling as <=");
  bench_cmd->add_option("--threads", mine_flags.threads, "worker threads");
  bench_cmd->add_option("--out", mine_flags.out, "CSV output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run_all(app, mine_flags, detect_flags, gen_params, gen_prefix, sweep, report_out);
  } catch (const duos::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
