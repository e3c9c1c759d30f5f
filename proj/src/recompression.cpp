#include "deltakit/recompression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "deltakit/error.hpp"

namespace deltakit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr SymbolId kPlaceholder = std::numeric_limits<SymbolId>::max();

// New blocks of one round, keyed by their (id, id) or (id, exponent) code.
// Codes are sorted and deduplicated before the symbols are interned, so ids
// are assigned in code order.
struct PendingBlocks {
  std::vector<std::size_t> out_pos;
  std::vector<std::uint64_t> codes;

  void add(std::size_t pos, std::uint64_t code) {
    out_pos.push_back(pos);
    codes.push_back(code);
  }

  template <typename MakeRule>
  void resolve(std::vector<SymbolId>& out, SymbolTable& table, MakeRule make_rule) {
    if (codes.empty()) return;
    std::vector<std::uint64_t> distinct = codes;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<SymbolId> ids(distinct.size());
    for (std::size_t i = 0; i < distinct.size(); ++i) ids[i] = table.intern(make_rule(distinct[i]));
    for (std::size_t b = 0; b < codes.size(); ++b) {
      const auto it = std::lower_bound(distinct.begin(), distinct.end(), codes[b]);
      out[out_pos[b]] = ids[static_cast<std::size_t>(it - distinct.begin())];
    }
  }
};

constexpr std::uint64_t pack(std::uint64_t hi, std::uint64_t lo) { return hi << 32 | lo; }

}  // namespace

std::vector<SymbolId> rle_restricted(std::span<const SymbolId> seq, std::uint32_t round_k,
                                     SymbolTable& table, ThresholdSchedule& thresholds) {
  std::vector<SymbolId> out;
  out.reserve(seq.size());
  PendingBlocks pending;
  std::size_t j = 0;
  while (j < seq.size()) {
    const SymbolId x = seq[j];
    std::size_t m = 1;
    if (j + 1 < seq.size() && seq[j + 1] == x && thresholds.passes(table.expansion_length(x), round_k)) {
      while (j + m < seq.size() && seq[j + m] == x) ++m;
    }
    if (m >= 2) {
      out.push_back(kPlaceholder);
      pending.add(out.size() - 1, pack(x, m));
    } else {
      out.push_back(x);
    }
    j += m;
  }
  pending.resolve(out, table, [](std::uint64_t code) {
    return Rule::run(static_cast<SymbolId>(code >> 32), code & 0xffffffffULL);
  });
  return out;
}

std::vector<SymbolId> pc_restricted(std::span<const SymbolId> seq, SymbolTable& table,
                                    const std::function<Side(SymbolId)>& partition) {
  std::vector<SymbolId> out;
  out.reserve(seq.size());
  PendingBlocks pending;
  std::size_t j = 0;
  while (j < seq.size()) {
    if (j + 1 < seq.size() && partition(seq[j]) == Side::Left && partition(seq[j + 1]) == Side::Right) {
      out.push_back(kPlaceholder);
      pending.add(out.size() - 1, pack(seq[j], seq[j + 1]));
      j += 2;
    } else {
      out.push_back(seq[j]);
      ++j;
    }
  }
  pending.resolve(out, table, [](std::uint64_t code) {
    return Rule::pair(static_cast<SymbolId>(code >> 32), static_cast<SymbolId>(code & 0xffffffffULL));
  });
  return out;
}

std::uint64_t partition_seed(std::uint64_t seed, std::uint32_t round_k) {
  return splitmix64(seed ^ splitmix64(0x5a17ULL + round_k));
}

bool partition_bit(std::uint64_t round_seed, SymbolId id) {
  return (splitmix64(round_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(id) + 1)) >> 63) != 0;
}

std::uint32_t round_cap(std::uint64_t n) {
  const double rounds = 8.0 * std::log(static_cast<double>(std::max<std::uint64_t>(n, 1))) /
                            std::log(8.0 / 7.0) + 16.0;
  return static_cast<std::uint32_t>(std::ceil(rounds));
}

std::optional<GrammarBuild> try_build_grammar_once(const Text& text, std::uint64_t seed,
                                                   const RecompressionOptions& options) {
  require_nonempty(text, "build_grammar_once");
  const std::uint64_t n = text.size();
  if (n >= (1ULL << 31)) throw InvalidInput("build_grammar_once: text too long");

  SymbolTable table;
  // S_0: terminals get ids in increasing symbol order.
  std::vector<Symbol> alphabet(text.begin(), text.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  for (Symbol c : alphabet) table.terminal(c);
  std::vector<SymbolId> current(n);
  for (std::size_t i = 0; i < n; ++i) {
    current[i] = static_cast<SymbolId>(std::lower_bound(alphabet.begin(), alphabet.end(), text[i]) -
                                       alphabet.begin());
  }

  ThresholdSchedule thresholds(n);
  RecompressionTrace trace;
  trace.retained = options.retain_trace;
  auto record = [&](std::uint32_t k, RoundKind kind, std::optional<std::uint64_t> pseed) {
    RoundRecord r;
    r.k = k;
    r.kind = kind;
    r.threshold_m = threshold_exponent(k);
    r.floor_ell = thresholds.floor_ell(k);
    r.partition_seed = pseed;
    r.length = current.size();
    if (options.retain_trace) r.string = current;
    trace.rounds.push_back(std::move(r));
    trace.work += current.size();
  };
  record(0, RoundKind::Input, std::nullopt);

  const std::uint32_t cap = round_cap(n);
  std::uint32_t k = 0;
  while (current.size() > 1) {
    if (options.work_limit != 0 && trace.work > options.work_limit) return std::nullopt;
    ++k;
    if (k > cap) {
      throw InternalError("restricted recompression exceeded " + std::to_string(cap) + " rounds");
    }
    if (k % 2 == 1) {
      current = rle_restricted(current, k, table, thresholds);
      record(k, RoundKind::RunLength, std::nullopt);
    } else {
      const std::uint64_t ps = partition_seed(seed, k);
      const std::uint64_t ell = thresholds.floor_ell(k);
      auto side = [&](SymbolId id) {
        if (table.expansion_length(id) > ell) return Side::Excluded;
        return partition_bit(ps, id) ? Side::Left : Side::Right;
      };
      current = pc_restricted(current, table, side);
      record(k, RoundKind::Pair, ps);
    }
  }
  if (options.work_limit != 0 && trace.work > options.work_limit) return std::nullopt;

  trace.final_len = current.size();
  const std::uint64_t sigma = alphabet.size();
  GrammarBuild out{Rlslp(std::move(table), current[0], sigma, k), std::move(trace)};
  return out;
}

GrammarBuild build_grammar_once(const Text& text, std::uint64_t seed, const RecompressionOptions& options) {
  RecompressionOptions o = options;
  o.work_limit = 0;
  return *try_build_grammar_once(text, seed, o);
}

double expected_length_bound(std::uint64_t n, std::uint32_t k) {
  const double ell = std::pow(8.0 / 7.0, static_cast<double>(threshold_exponent(k + 1)));
  return 1.0 + 4.0 * static_cast<double>(n) / ell;
}

double expected_work_bound(std::uint64_t n) {
  double total = 0;
  const std::uint32_t cap = round_cap(n);
  for (std::uint32_t k = 0; k <= cap; ++k) {
    total += std::min(static_cast<double>(n), expected_length_bound(n, k));
  }
  return total;
}

double expected_size_bound(std::uint64_t n, Ratio delta, double c0) {
  const double d = static_cast<double>(std::max<std::uint64_t>(delta.ceil(), 1));
  return c0 * d * (std::log2(static_cast<double>(n) / d) + 2.0);
}

std::uint64_t attempt_seed(std::uint64_t seed, std::uint32_t attempt) {
  if (attempt == 0) return seed;
  return splitmix64(seed ^ (0xd1b54a32d192ed03ULL * attempt));
}

BuildOutcome build_grammar(const Text& text, std::uint64_t seed, const BuildOptions& options) {
  require_nonempty(text, "build_grammar");
  if (options.attempt_cap == 0) throw InvalidInput("build_grammar: attempt_cap must be >= 1");

  std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
  if (!options.unlimited_size) {
    if (options.size_budget) {
      budget = *options.size_budget;
    } else {
      budget = static_cast<std::uint64_t>(
          std::ceil(4.0 * expected_size_bound(text.size(), delta(text), options.budget_constant)));
    }
  }

  RecompressionOptions ro;
  if (options.time_factor > 0) {
    ro.work_limit = static_cast<std::uint64_t>(std::ceil(options.time_factor * expected_work_bound(text.size())));
  }

  for (std::uint32_t a = 0; a < options.attempt_cap; ++a) {
    const std::uint64_t s = attempt_seed(seed, a);
    auto built = try_build_grammar_once(text, s, ro);
    if (!built) continue;
    if (built->grammar.table().size() > budget) continue;
    return BuildOutcome{std::move(built->grammar), a + 1, s, budget};
  }
  throw BudgetExceeded("build_grammar: no attempt within budget " + std::to_string(budget) + " after " +
                       std::to_string(options.attempt_cap) + " attempts");
}

}  // namespace deltakit
