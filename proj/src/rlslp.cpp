#include "deltakit/rlslp.hpp"

#include <algorithm>

#include "deltakit/error.hpp"
#include "deltakit/measures.hpp"

namespace deltakit {

Rlslp::Rlslp(SymbolTable table, SymbolId start, std::uint64_t sigma, std::uint32_t rounds)
    : table_(std::move(table)), start_(start), sigma_(sigma), rounds_(rounds) {
  if (table_.size() == 0 || start_ >= table_.size()) throw InvalidInput("start symbol not in table");
}

namespace {

void emit(const SymbolTable& t, SymbolId id, std::uint64_t from, std::uint64_t to,
          std::vector<Symbol>& out) {
  if (from >= to) return;
  const Rule& r = t.rule(id);
  switch (r.kind) {
    case RuleKind::Terminal:
      out.push_back(r.left);
      return;
    case RuleKind::Pair: {
      const std::uint64_t ll = t.expansion_length(r.left);
      if (from < ll) emit(t, r.left, from, std::min(to, ll), out);
      if (to > ll) emit(t, static_cast<SymbolId>(r.right), from > ll ? from - ll : 0, to - ll, out);
      return;
    }
    case RuleKind::Run: {
      const std::uint64_t bl = t.expansion_length(r.left);
      std::uint64_t rep = from / bl;
      const std::uint64_t last = (to - 1) / bl;
      // partial first copy
      if (from % bl != 0 || rep == last) {
        emit(t, r.left, from - rep * bl, std::min(to - rep * bl, bl), out);
        ++rep;
      }
      if (rep > last) return;
      // whole copies: materialize once, then replicate
      std::uint64_t whole_end = (to % bl == 0) ? last + 1 : last;
      if (rep < whole_end) {
        const std::size_t base_at = out.size();
        emit(t, r.left, 0, bl, out);
        for (std::uint64_t c = rep + 1; c < whole_end; ++c) {
          const std::size_t at = out.size();
          out.resize(at + bl);
          std::copy_n(out.begin() + static_cast<std::ptrdiff_t>(base_at), bl,
                      out.begin() + static_cast<std::ptrdiff_t>(at));
        }
      }
      if (whole_end == last) emit(t, r.left, 0, to - last * bl, out);
      return;
    }
  }
}

}  // namespace

Text expand_symbol(const Rlslp& g, SymbolId id) {
  std::vector<Symbol> out;
  out.reserve(g.table().expansion_length(id));
  emit(g.table(), id, 0, g.table().expansion_length(id), out);
  return Text(std::move(out));
}

Text expand(const Rlslp& g) { return expand_symbol(g, g.start()); }

Symbol access(const Rlslp& g, std::uint64_t i) {
  if (i >= g.length()) throw InvalidInput("access: position out of range");
  const SymbolTable& t = g.table();
  SymbolId id = g.start();
  for (;;) {
    const Rule& r = t.rule(id);
    switch (r.kind) {
      case RuleKind::Terminal:
        return r.left;
      case RuleKind::Pair: {
        const std::uint64_t ll = t.expansion_length(r.left);
        if (i < ll) {
          id = r.left;
        } else {
          i -= ll;
          id = static_cast<SymbolId>(r.right);
        }
        break;
      }
      case RuleKind::Run:
        i %= t.expansion_length(r.left);
        id = r.left;
        break;
    }
  }
}

Text extract(const Rlslp& g, std::uint64_t pos, std::uint64_t len) {
  if (pos > g.length() || len > g.length() - pos) throw InvalidInput("extract: range out of bounds");
  std::vector<Symbol> out;
  out.reserve(len);
  emit(g.table(), g.start(), pos, pos + len, out);
  return Text(std::move(out));
}

std::uint64_t grammar_size(const Rlslp& g) {
  std::uint64_t size = 0;
  for (const Rule& r : g.table().rules()) size += r.kind == RuleKind::Terminal ? 1 : 2;
  return size;
}

std::uint32_t grammar_depth(const Rlslp& g) {
  const auto& rules = g.table().rules();
  std::vector<std::uint32_t> depth(rules.size(), 0);
  for (std::size_t id = 0; id < rules.size(); ++id) {
    const Rule& r = rules[id];
    if (r.kind == RuleKind::Pair) {
      depth[id] = 1 + std::max(depth[r.left], depth[r.right]);
    } else if (r.kind == RuleKind::Run) {
      depth[id] = 1 + depth[r.left];
    }
  }
  return depth[g.start()];
}

GrammarStats grammar_stats(const Rlslp& g) {
  GrammarStats s;
  s.n = g.length();
  s.size = grammar_size(g);
  s.symbols = g.table().size();
  s.depth = grammar_depth(g);
  s.rounds = g.rounds();
  for (const Rule& r : g.table().rules()) {
    switch (r.kind) {
      case RuleKind::Terminal: ++s.terminals; break;
      case RuleKind::Pair: ++s.pair_rules; break;
      case RuleKind::Run: ++s.run_rules; break;
    }
  }
  return s;
}

namespace {

std::vector<bool> reachable_set(const Rlslp& g) {
  const auto& rules = g.table().rules();
  std::vector<bool> live(rules.size(), false);
  live[g.start()] = true;
  // Children precede parents, so a single descending sweep suffices.
  for (std::size_t id = rules.size(); id-- > 0;) {
    if (!live[id]) continue;
    const Rule& r = rules[id];
    if (r.kind == RuleKind::Pair) {
      live[r.left] = true;
      live[r.right] = true;
    } else if (r.kind == RuleKind::Run) {
      live[r.left] = true;
    }
  }
  return live;
}

}  // namespace

Rlslp prune(const Rlslp& g) {
  const auto live = reachable_set(g);
  const auto& rules = g.table().rules();
  std::vector<SymbolId> remap(rules.size(), 0);
  SymbolTable out;
  for (std::size_t id = 0; id < rules.size(); ++id) {
    if (!live[id]) continue;
    Rule r = rules[id];
    if (r.kind == RuleKind::Pair) {
      r.left = remap[r.left];
      r.right = remap[r.right];
    } else if (r.kind == RuleKind::Run) {
      r.left = remap[r.left];
    }
    remap[id] = out.intern(r);
  }
  return Rlslp(std::move(out), remap[g.start()], g.sigma(), g.rounds());
}

VerificationReport verify(const Rlslp& g, const Text* reference, const VerifyOptions& options) {
  VerificationReport rep;
  const SymbolTable& t = g.table();
  const auto& rules = t.rules();

  std::vector<std::uint64_t> len(rules.size(), 0);
  for (std::size_t id = 0; id < rules.size(); ++id) {
    const Rule& r = rules[id];
    auto bad = [&](const std::string& msg) {
      rep.structure_ok = false;
      rep.violations.push_back("symbol " + std::to_string(id) + ": " + msg);
    };
    switch (r.kind) {
      case RuleKind::Terminal:
        len[id] = 1;
        break;
      case RuleKind::Pair:
        if (r.left >= id || r.right >= id) {
          bad("pair child does not precede it");
          continue;
        }
        len[id] = len[r.left] + len[r.right];
        break;
      case RuleKind::Run:
        if (r.left >= id) {
          bad("run base does not precede it");
          continue;
        }
        if (r.right < 2) bad("run exponent below 2");
        len[id] = len[r.left] * r.right;
        break;
    }
    if (len[id] != t.expansion_length(static_cast<SymbolId>(id))) {
      rep.lengths_ok = false;
      rep.violations.push_back("symbol " + std::to_string(id) + ": stored expansion length " +
                               std::to_string(t.expansion_length(static_cast<SymbolId>(id))) +
                               " != recomputed " + std::to_string(len[id]));
    }
  }

  if (rep.structure_ok) {
    const auto live = reachable_set(g);
    const auto dead = static_cast<std::size_t>(std::count(live.begin(), live.end(), false));
    if (dead > 0) {
      rep.structure_ok = false;
      rep.violations.push_back(std::to_string(dead) + " symbols unreachable from the start");
    }

    for (std::size_t id = 0; id < rules.size(); ++id) {
      const Rule& r = rules[id];
      if (r.kind != RuleKind::Run) continue;
      if (len[id] > options.period_cap) {
        ++rep.run_rules_skipped;
        continue;
      }
      ++rep.run_rules_checked;
      const Text e = expand_symbol(g, static_cast<SymbolId>(id));
      const std::uint64_t per = smallest_period(e);
      if (per != len[r.left]) {
        ++rep.period_violations;
        rep.violations.push_back("run symbol " + std::to_string(id) + ": per(exp) = " +
                                 std::to_string(per) + " but base length = " +
                                 std::to_string(len[r.left]));
      }
    }
  }

  if (reference != nullptr) {
    const bool match = rep.structure_ok && len[g.start()] == reference->size() && expand(g) == *reference;
    rep.reference_match = match;
    if (!match) rep.violations.push_back("expansion differs from the reference text");
  }
  return rep;
}

}  // namespace deltakit
