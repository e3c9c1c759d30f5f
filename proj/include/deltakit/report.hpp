#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "deltakit/block_tree.hpp"
#include "deltakit/families.hpp"
#include "deltakit/measures.hpp"
#include "deltakit/rlslp.hpp"

namespace deltakit {

nlohmann::ordered_json profile_json(const SubstringComplexityProfile& p, bool include_d);
nlohmann::ordered_json grammar_stats_json(const GrammarStats& s);
nlohmann::ordered_json block_tree_stats_json(const BlockTreeStats& s);
nlohmann::ordered_json family_sidecar_json(const families::FamilySpec& spec, const Text& text);

struct BenchRow {
  std::string family;
  std::uint64_t n = 0;
  Ratio delta;
  std::uint64_t z = 0;
  std::uint64_t grammar_size = 0;
  std::uint64_t bt_total_blocks = 0;
  std::uint32_t rounds = 0;
  double wall_ms = 0;
  std::uint64_t seed = 0;
};

/// Generates the family text, measures it, builds a grammar and a block tree.
/// delta_target is used by the composite families only.
BenchRow bench_row(families::Kind kind, std::uint64_t n, std::uint64_t seed,
                   std::optional<std::uint64_t> delta_target = std::nullopt, bool timing = true);
/// Same measurements on a given text.
BenchRow bench_text(const std::string& family, const Text& text, std::uint64_t seed, bool timing = true);

std::string bench_csv_header();
std::string bench_csv_line(const BenchRow& row);

}  // namespace deltakit
