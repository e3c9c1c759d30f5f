#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "deltakit/text.hpp"

namespace deltakit {

using SymbolId = std::uint32_t;

enum class RuleKind : std::uint8_t { Terminal, Pair, Run };

/// One grammar symbol. Terminal: `left` is the terminal value. Pair:
/// children `left`, `right`. Run: base `left`, exponent `right` (>= 2).
struct Rule {
  RuleKind kind = RuleKind::Terminal;
  std::uint32_t left = 0;
  std::uint64_t right = 0;

  static Rule terminal(Symbol c) { return {RuleKind::Terminal, c, 0}; }
  static Rule pair(SymbolId a, SymbolId b) { return {RuleKind::Pair, a, b}; }
  static Rule run(SymbolId base, std::uint64_t exponent) { return {RuleKind::Run, base, exponent}; }

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Append-only table of distinct symbols in topological order, each with
/// its expansion length.
class SymbolTable {
 public:
  /// Returns the id of the rule, creating it if absent. Children of new rules
  /// must already exist; run exponents must be >= 2.
  SymbolId intern(const Rule& rule);
  std::optional<SymbolId> find(const Rule& rule) const;

  SymbolId terminal(Symbol c) { return intern(Rule::terminal(c)); }
  SymbolId pair(SymbolId a, SymbolId b) { return intern(Rule::pair(a, b)); }
  SymbolId run(SymbolId base, std::uint64_t exponent) { return intern(Rule::run(base, exponent)); }

  const Rule& rule(SymbolId id) const { return rules_[id]; }
  std::uint64_t expansion_length(SymbolId id) const { return lengths_[id]; }
  std::size_t size() const noexcept { return rules_.size(); }
  const std::vector<Rule>& rules() const noexcept { return rules_; }

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) { return a.rules_ == b.rules_; }

 private:
  struct RuleHash {
    std::size_t operator()(const Rule& r) const noexcept;
  };

  std::vector<Rule> rules_;
  std::vector<std::uint64_t> lengths_;
  std::unordered_map<Rule, SymbolId, RuleHash> index_;
};

}  // namespace deltakit
