#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "deltakit/error.hpp"
#include "deltakit/families.hpp"
#include "deltakit/measures.hpp"
#include "deltakit/recompression.hpp"
#include "deltakit/rlslp.hpp"

using namespace deltakit;

namespace {

struct Seq {
  SymbolTable table;
  SymbolId a, b, c, d;
  Seq() {
    a = table.terminal('a');
    b = table.terminal('b');
    c = table.terminal('c');
    d = table.terminal('d');
  }
};

}  // namespace

TEST(Rle, SingleRunCollapses) {
  Seq s;
  ThresholdSchedule th(10);
  const std::vector<SymbolId> in = {s.a, s.a, s.a};
  const auto out = rle_restricted(in, 1, s.table, th);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(s.table.rule(out[0]), Rule::run(s.a, 3));
  EXPECT_EQ(s.table.expansion_length(out[0]), 3u);
}

TEST(Rle, NoAdjacentEqualsUnchanged) {
  Seq s;
  ThresholdSchedule th(10);
  const std::vector<SymbolId> in = {s.a, s.b, s.a};
  EXPECT_EQ(rle_restricted(in, 1, s.table, th), in);
}

TEST(Rle, FailingThresholdKeepsRun) {
  Seq s;
  ThresholdSchedule th(100);
  const SymbolId ab = s.table.pair(s.a, s.b);  // length 2 fails l_1 = 1
  const std::vector<SymbolId> in = {ab, ab, s.b, s.b, s.b};
  const auto out = rle_restricted(in, 1, s.table, th);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], ab);
  EXPECT_EQ(out[1], ab);
  EXPECT_EQ(s.table.rule(out[2]), Rule::run(s.b, 3));
}

TEST(Pc, Examples) {
  Seq s;
  auto part = [&](std::vector<std::pair<SymbolId, Side>> sides) {
    return [sides](SymbolId id) {
      for (auto [x, side] : sides) {
        if (x == id) return side;
      }
      return Side::Excluded;
    };
  };
  const std::vector<SymbolId> ab = {s.a, s.b};
  auto out = pc_restricted(ab, s.table, part({{s.a, Side::Left}, {s.b, Side::Right}}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(s.table.rule(out[0]), Rule::pair(s.a, s.b));

  EXPECT_EQ(pc_restricted(ab, s.table, part({{s.a, Side::Right}, {s.b, Side::Right}})), ab);

  const std::vector<SymbolId> abcd = {s.a, s.b, s.c, s.d};
  out = pc_restricted(abcd, s.table, part({{s.a, Side::Left}, {s.b, Side::Right}, {s.c, Side::Left}, {s.d, Side::Right}}));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(s.table.rule(out[0]), Rule::pair(s.a, s.b));
  EXPECT_EQ(s.table.rule(out[1]), Rule::pair(s.c, s.d));
}

TEST(Pc, ExcludedNeverPairs) {
  Seq s;
  const std::vector<SymbolId> in = {s.a, s.b, s.a, s.b};
  const auto out = pc_restricted(in, s.table, [&](SymbolId id) { return id == s.a ? Side::Left : Side::Excluded; });
  EXPECT_EQ(out, in);
}

TEST(Partition, DeterministicAndBalanced) {
  EXPECT_EQ(partition_seed(5, 2), partition_seed(5, 2));
  EXPECT_NE(partition_seed(5, 2), partition_seed(5, 4));
  EXPECT_NE(partition_seed(5, 2), partition_seed(6, 2));
  const auto rs = partition_seed(11, 2);
  int ones = 0;
  for (SymbolId id = 0; id < 10000; ++id) ones += partition_bit(rs, id) ? 1 : 0;
  EXPECT_NEAR(ones, 5000, 300);
}

TEST(BuildOnce, SingleSymbol) {
  RecompressionOptions o;
  o.retain_trace = true;
  const auto b = build_grammar_once(Text::from_string("a"), 1, o);
  EXPECT_EQ(b.grammar.table().size(), 1u);
  EXPECT_EQ(b.grammar.table().rule(b.grammar.start()), Rule::terminal('a'));
  ASSERT_EQ(b.trace.rounds.size(), 1u);
  EXPECT_EQ(b.trace.rounds[0].length, 1u);
  EXPECT_EQ(b.trace.final_len, 1u);
}

TEST(BuildOnce, UnaryTextUsesRuns) {
  const Text t = Text::from_string(std::string(1024, 'a'));
  const auto g = build_grammar_once(t, 3).grammar;
  EXPECT_EQ(expand(g), t);
  std::uint64_t runs = 0;
  for (const Rule& r : g.table().rules()) runs += r.kind == RuleKind::Run ? 1 : 0;
  EXPECT_GE(runs, 1u);
  EXPECT_LE(g.table().size(), 40u);
}

TEST(BuildOnce, DeterministicPerSeed) {
  const Text t = corpus::random_text(5000, 3, 4);
  const auto x = build_grammar_once(t, 9).grammar;
  const auto y = build_grammar_once(t, 9).grammar;
  EXPECT_EQ(x, y);
}

TEST(BuildOnce, TraceMetadata) {
  RecompressionOptions o;
  o.retain_trace = true;
  const Text t = corpus::random_text(300, 2, 5);
  const auto b = build_grammar_once(t, 17, o);
  const auto& rounds = b.trace.rounds;
  ASSERT_GE(rounds.size(), 2u);
  EXPECT_EQ(rounds[0].kind, RoundKind::Input);
  EXPECT_EQ(rounds[0].length, t.size());
  std::uint64_t work = 0;
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    EXPECT_EQ(rounds[k].k, k);
    work += rounds[k].length;
    if (k == 0) continue;
    EXPECT_EQ(rounds[k].kind, k % 2 == 1 ? RoundKind::RunLength : RoundKind::Pair);
    EXPECT_EQ(rounds[k].partition_seed.has_value(), k % 2 == 0);
    EXPECT_EQ(rounds[k].threshold_m, threshold_exponent(static_cast<std::uint32_t>(k)));
    EXPECT_LE(rounds[k].length, rounds[k - 1].length);
  }
  EXPECT_EQ(rounds.back().length, 1u);
  EXPECT_EQ(b.trace.work, work);
  EXPECT_EQ(b.grammar.rounds() + 1, rounds.size());
}

TEST(BuildOnce, TraceStringsExpandToText) {
  RecompressionOptions o;
  o.retain_trace = true;
  const Text t = families::gen_S(200);
  const auto b = build_grammar_once(t, 2, o);
  for (const auto& r : b.trace.rounds) {
    std::vector<Symbol> out;
    for (SymbolId id : r.string) {
      const Text e = expand_symbol(b.grammar, id);
      out.insert(out.end(), e.begin(), e.end());
    }
    EXPECT_EQ(Text(out), t) << "round " << r.k;
  }
}

TEST(BuildOnce, EmptyTextRejected) { EXPECT_THROW(build_grammar_once(Text{}, 1), InvalidInput); }

TEST(BuildOnce, WorkLimitAborts) {
  const Text t = corpus::random_text(2000, 2, 1);
  RecompressionOptions o;
  o.work_limit = 2500;  // S_0 alone is 2000
  EXPECT_FALSE(try_build_grammar_once(t, 1, o).has_value());
  o.work_limit = 0;
  EXPECT_TRUE(try_build_grammar_once(t, 1, o).has_value());
}

TEST(Bounds, Formulas) {
  EXPECT_DOUBLE_EQ(expected_length_bound(1000, 1), 1 + 4000.0);
  EXPECT_NEAR(expected_length_bound(1000, 4), 1 + 4000.0 / std::pow(8.0 / 7.0, 2), 1e-9);  // l_5 = (8/7)^2
  EXPECT_DOUBLE_EQ(expected_size_bound(1024, Ratio{2, 1}, 1.0), 2 * (9.0 + 2));
  EXPECT_DOUBLE_EQ(expected_size_bound(1024, Ratio{3, 2}, 2.0), 2 * 2 * (9.0 + 2));
  EXPECT_GE(expected_work_bound(1000), 1000.0);
  EXPECT_EQ(round_cap(1), 16u);
  EXPECT_EQ(round_cap(1000), static_cast<std::uint32_t>(std::ceil(8 * std::log(1000.0) / std::log(8.0 / 7.0) + 16)));
}

TEST(Retry, UnlimitedMatchesSingleRun) {
  const Text t = corpus::random_text(3000, 4, 6);
  BuildOptions o;
  o.unlimited_size = true;
  o.time_factor = 0;
  const auto r = build_grammar(t, 21, o);
  EXPECT_EQ(r.attempts, 1u);
  EXPECT_EQ(r.seed_used, 21u);
  EXPECT_EQ(r.grammar, build_grammar_once(t, 21).grammar);
}

TEST(Retry, AttemptSeeds) {
  EXPECT_EQ(attempt_seed(77, 0), 77u);
  EXPECT_NE(attempt_seed(77, 1), 77u);
  EXPECT_NE(attempt_seed(77, 1), attempt_seed(77, 2));
}

TEST(Retry, TinyBudgetExhaustsAttempts) {
  const Text t = corpus::random_text(2000, 2, 3);
  BuildOptions o;
  o.size_budget = 3;
  o.attempt_cap = 4;
  EXPECT_THROW(build_grammar(t, 1, o), BudgetExceeded);
}

TEST(Retry, DefaultBudgetRecorded) {
  const Text t = families::gen_S(4096);
  const auto r = build_grammar(t, 5);
  EXPECT_EQ(r.size_budget,
            static_cast<std::uint64_t>(std::ceil(4 * expected_size_bound(t.size(), delta(t), kDefaultBudgetConstant))));
  EXPECT_LE(r.grammar.table().size(), r.size_budget);
  EXPECT_EQ(expand(r.grammar), t);
}

TEST(Retry, MostSeedsWithinFourTimesMean) {
  const Text t = corpus::random_text(100000, 2, 12);
  std::vector<double> sizes;
  for (std::uint64_t s = 0; s < 20; ++s) sizes.push_back(static_cast<double>(build_grammar_once(t, s).grammar.table().size()));
  double mean = 0;
  for (double x : sizes) mean += x;
  mean /= sizes.size();
  int within = 0;
  for (double x : sizes) within += x <= 4 * mean ? 1 : 0;
  EXPECT_GE(within, 10);
}

TEST(Scaling, SFamilySizeGrowsWithLogN) {
  const auto g = build_grammar_once(families::gen_S(1 << 16), 1).grammar;
  EXPECT_LE(grammar_size(g), 10u * 16u);
}
