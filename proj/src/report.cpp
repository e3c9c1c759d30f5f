#include "deltakit/report.hpp"

#include <chrono>
#include <cstdio>

#include "deltakit/recompression.hpp"

namespace deltakit {

nlohmann::ordered_json profile_json(const SubstringComplexityProfile& p, bool include_d) {
  nlohmann::ordered_json j;
  j["n"] = p.n;
  j["sigma"] = p.sigma;
  j["delta_num"] = p.delta_num;
  j["delta_den"] = p.delta_den;
  if (include_d) j["d"] = p.d;
  return j;
}

nlohmann::ordered_json grammar_stats_json(const GrammarStats& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["size"] = s.size;
  j["symbols"] = s.symbols;
  j["depth"] = s.depth;
  j["rounds"] = s.rounds;
  j["run_rules"] = s.run_rules;
  j["pair_rules"] = s.pair_rules;
  j["terminals"] = s.terminals;
  return j;
}

nlohmann::ordered_json block_tree_stats_json(const BlockTreeStats& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["tau"] = s.tau;
  j["s"] = s.s;
  j["leaf_len"] = s.leaf_len;
  j["padded_len"] = s.padded_len;
  j["total_blocks"] = s.total_blocks;
  j["max_marked"] = s.max_marked;
  j["space_words"] = s.space_words;
  auto& levels = j["levels"] = nlohmann::ordered_json::array();
  for (const LevelStats& l : s.levels) {
    levels.push_back({{"block_len", l.block_len}, {"marked", l.marked}, {"unmarked", l.unmarked}, {"leaves", l.leaves}});
  }
  return j;
}

nlohmann::ordered_json family_sidecar_json(const families::FamilySpec& spec, const Text& text) {
  const Ratio d = delta(text);
  nlohmann::ordered_json j;
  j["family"] = families::kind_name(spec.kind);
  j["n"] = text.size();
  j["measured_delta_num"] = d.num;
  j["measured_delta_den"] = d.den;
  nlohmann::ordered_json params;
  if (spec.delta_target) params["delta"] = *spec.delta_target;
  if (spec.kind == families::Kind::Sr) params["m"] = spec.m;
  if (spec.choices) {
    params["choices"] = *spec.choices;
  } else {
    params["seed"] = spec.seed;
  }
  j["params"] = params;
  return j;
}

BenchRow bench_text(const std::string& family, const Text& text, std::uint64_t seed, bool timing) {
  const auto t0 = std::chrono::steady_clock::now();
  BenchRow row;
  row.family = family;
  row.n = text.size();
  row.seed = seed;
  row.delta = delta(text);
  row.z = lz_factorize(text).z();
  const GrammarBuild built = build_grammar_once(text, seed);
  row.grammar_size = grammar_size(built.grammar);
  row.rounds = built.grammar.rounds();
  BlockTreeOptions bo;
  bo.s = std::max<std::uint64_t>(1, row.delta.ceil());
  row.bt_total_blocks = build_block_tree(text, bo).stats().total_blocks;
  if (timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return row;
}

BenchRow bench_row(families::Kind kind, std::uint64_t n, std::uint64_t seed, std::optional<std::uint64_t> delta_target,
                   bool timing) {
  families::FamilySpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.seed = seed;
  spec.delta_target = delta_target;
  return bench_text(std::string(families::kind_name(kind)), families::generate(spec), seed, timing);
}

std::string bench_csv_header() { return "family,n,delta,z,grammar_size,bt_total_blocks,rounds,wall_ms,seed"; }

std::string bench_csv_line(const BenchRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%llu,%.6f,%llu,%llu,%llu,%u,%.3f,%llu", r.family.c_str(),
                static_cast<unsigned long long>(r.n), r.delta.value(), static_cast<unsigned long long>(r.z),
                static_cast<unsigned long long>(r.grammar_size), static_cast<unsigned long long>(r.bt_total_blocks),
                r.rounds, r.wall_ms, static_cast<unsigned long long>(r.seed));
  return buf;
}

}  // namespace deltakit
