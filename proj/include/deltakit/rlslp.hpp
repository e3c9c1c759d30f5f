#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deltakit/symbol_table.hpp"
#include "deltakit/text.hpp"

namespace deltakit {

/// Run-length straight-line program: a symbol table plus a start symbol.
class Rlslp {
 public:
  Rlslp() = default;
  Rlslp(SymbolTable table, SymbolId start, std::uint64_t sigma, std::uint32_t rounds = 0);

  const SymbolTable& table() const noexcept { return table_; }
  SymbolId start() const noexcept { return start_; }
  std::uint64_t length() const noexcept { return table_.expansion_length(start_); }
  std::uint64_t sigma() const noexcept { return sigma_; }
  /// Number of recompression rounds that produced the grammar (0 if unknown).
  std::uint32_t rounds() const noexcept { return rounds_; }

  friend bool operator==(const Rlslp&, const Rlslp&) = default;

 private:
  SymbolTable table_;
  SymbolId start_ = 0;
  std::uint64_t sigma_ = 0;
  std::uint32_t rounds_ = 0;
};

Text expand(const Rlslp& g);
/// Expansion of an arbitrary symbol of the table.
Text expand_symbol(const Rlslp& g, SymbolId id);

/// S[i], 0-based. Length-guided descent from the start symbol.
Symbol access(const Rlslp& g, std::uint64_t i);

/// S[pos, pos + len).
Text extract(const Rlslp& g, std::uint64_t pos, std::uint64_t len);

/// Counts 1 per terminal and 2 per pair or run rule.
std::uint64_t grammar_size(const Rlslp& g);

/// Longest start-to-terminal chain; a run rule counts as one edge.
std::uint32_t grammar_depth(const Rlslp& g);

struct GrammarStats {
  std::uint64_t n = 0;
  std::uint64_t size = 0;
  std::uint64_t symbols = 0;
  std::uint32_t depth = 0;
  std::uint32_t rounds = 0;
  std::uint64_t terminals = 0;
  std::uint64_t pair_rules = 0;
  std::uint64_t run_rules = 0;
};
GrammarStats grammar_stats(const Rlslp& g);

/// Drops symbols unreachable from the start, renumbering in topological order.
Rlslp prune(const Rlslp& g);

struct VerifyOptions {
  std::uint64_t period_cap = 100000;  // materialize run expansions up to this length
};

struct VerificationReport {
  bool lengths_ok = true;
  bool structure_ok = true;
  std::uint64_t run_rules_checked = 0;
  std::uint64_t run_rules_skipped = 0;
  std::uint64_t period_violations = 0;
  std::optional<bool> reference_match;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks length bookkeeping, topological order and reachability, the
/// period law per(exp(A)) == |exp(B)| for every run rule A -> B^t, and
/// optionally equality with a reference text. Failures are reported.
VerificationReport verify(const Rlslp& g, const Text* reference = nullptr,
                          const VerifyOptions& options = {});

/// Binary format: magic "RLSLP1", varints n, sigma, symbol count, start id,
/// then per symbol a tag byte T/P/R with varint payload, then an optional
/// trailer 'M' + varint rounds.
std::vector<std::uint8_t> serialize(const Rlslp& g);
Rlslp deserialize_rlslp(std::span<const std::uint8_t> bytes);

}  // namespace deltakit
