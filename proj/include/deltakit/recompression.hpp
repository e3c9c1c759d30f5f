#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "deltakit/measures.hpp"
#include "deltakit/rlslp.hpp"
#include "deltakit/symbol_table.hpp"
#include "deltakit/text.hpp"
#include "deltakit/threshold.hpp"

namespace deltakit {

/// Default budget constant c0 of B(n, delta) = c0 * ceil(delta) * (log2(n / ceil(delta)) + 2).
/// Fitted by tools/calibrate_budget; see README.
inline constexpr double kDefaultBudgetConstant = 2.0;

enum class RoundKind : std::uint8_t { Input, RunLength, Pair };

struct RoundRecord {
  std::uint32_t k = 0;
  RoundKind kind = RoundKind::Input;
  std::uint32_t threshold_m = 0;              // ceil(k/2) - 1
  std::uint64_t floor_ell = 0;                // floor((8/7)^m); ThresholdSchedule::kUnbounded past n
  std::optional<std::uint64_t> partition_seed;
  std::uint64_t length = 0;                   // |S_k|
  std::vector<SymbolId> string;               // S_k, kept only in trace-retention mode
};

struct RecompressionTrace {
  std::vector<RoundRecord> rounds;  // rounds[k] describes S_k, starting with S_0
  std::uint64_t final_len = 0;
  std::uint64_t work = 0;           // sum of |S_k| over all rounds
  bool retained = false;
};

struct RecompressionOptions {
  bool retain_trace = false;
  std::uint64_t work_limit = 0;  // abort once sum |S_k| exceeds this; 0 = unlimited
};

struct GrammarBuild {
  Rlslp grammar;
  RecompressionTrace trace;
};

enum class Side : std::uint8_t { Left, Right, Excluded };

/// Restricted run-length encoding: maximal runs A^m (m >= 2) of a symbol
/// whose expansion passes the round-k threshold collapse to Run(A, m).
std::vector<SymbolId> rle_restricted(std::span<const SymbolId> seq, std::uint32_t round_k,
                                     SymbolTable& table, ThresholdSchedule& thresholds);

/// Restricted pair compression: every adjacent (Left, Right) pair collapses
/// to Pair(A, B), scanning left to right.
std::vector<SymbolId> pc_restricted(std::span<const SymbolId> seq, SymbolTable& table,
                                    const std::function<Side(SymbolId)>& partition);

/// Seed of the random Left/Right partition at even round k.
std::uint64_t partition_seed(std::uint64_t seed, std::uint32_t round_k);
/// One fair bit per symbol id, keyed by the round's partition seed.
bool partition_bit(std::uint64_t round_seed, SymbolId id);

/// Hard cap on the number of rounds: 8 * log_{8/7}(n) + 16.
std::uint32_t round_cap(std::uint64_t n);

/// One run of restricted recompression starting from S_0 = text until |S_h| = 1.
GrammarBuild build_grammar_once(const Text& text, std::uint64_t seed,
                                const RecompressionOptions& options = {});
/// Same, but returns nullopt when the work limit is exceeded.
std::optional<GrammarBuild> try_build_grammar_once(const Text& text, std::uint64_t seed,
                                                   const RecompressionOptions& options);

/// 1 + 4n / l_{k+1}: the bound on the expected |S_k|.
double expected_length_bound(std::uint64_t n, std::uint32_t k);
/// Sum over rounds 0..round_cap(n) of min(n, expected_length_bound(n, k)).
double expected_work_bound(std::uint64_t n);

/// B(n, delta) = c0 * ceil(delta) * (log2(n / ceil(delta)) + 2).
double expected_size_bound(std::uint64_t n, Ratio delta, double c0);

struct BuildOptions {
  std::optional<std::uint64_t> size_budget;  // symbol count; default 4 * B(n, delta)
  bool unlimited_size = false;               // disables the size check entirely
  std::uint32_t attempt_cap = 8;
  double budget_constant = kDefaultBudgetConstant;
  double time_factor = 4.0;   // work limit = time_factor * expected_work_bound(n); 0 disables
};

struct BuildOutcome {
  Rlslp grammar;
  std::uint32_t attempts = 0;   // 1 = first attempt accepted
  std::uint64_t seed_used = 0;
  std::uint64_t size_budget = 0;
};

/// Seed of attempt i (attempt 0 uses the caller's seed).
std::uint64_t attempt_seed(std::uint64_t seed, std::uint32_t attempt);

/// Retries build_grammar_once with derived seeds until a grammar within the
/// size budget (and work limit) appears. Throws BudgetExceeded when the
/// attempt cap runs out.
BuildOutcome build_grammar(const Text& text, std::uint64_t seed, const BuildOptions& options = {});

}  // namespace deltakit
