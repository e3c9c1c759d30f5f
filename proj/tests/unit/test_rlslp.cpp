#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "deltakit/error.hpp"
#include "deltakit/families.hpp"
#include "deltakit/recompression.hpp"
#include "deltakit/rlslp.hpp"
#include "deltakit/varint.hpp"

using namespace deltakit;

namespace {

Rlslp unary_run(std::uint64_t t) {
  SymbolTable table;
  const SymbolId a = table.terminal('a');
  const SymbolId r = table.run(a, t);
  return Rlslp(std::move(table), r, 1);
}

Rlslp built(const Text& t, std::uint64_t seed = 1) { return build_grammar_once(t, seed).grammar; }

}  // namespace

TEST(Expand, HandBuilt) {
  SymbolTable table;
  const SymbolId a = table.terminal('a');
  EXPECT_EQ(expand(Rlslp(table, a, 1)).to_string(), "a");
  EXPECT_EQ(expand(unary_run(4)).to_string(), "aaaa");
}

TEST(Expand, RoundTripS8) {
  const Text t = Text::from_string("bbabaaab");
  EXPECT_EQ(expand(built(t)), t);
}

TEST(Access, Examples) {
  const auto g = built(Text::from_string("aaaa"));
  EXPECT_EQ(access(g, 3), Symbol('a'));
  EXPECT_EQ(access(built(families::gen_S(16)), 7), Symbol('b'));
  EXPECT_THROW(access(g, 4), InvalidInput);
}

TEST(Access, MatchesArrayOnRandomText) {
  const Text t = corpus::random_text(100000, 3, 2);
  const auto g = built(t);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t p = rng() % t.size();
    ASSERT_EQ(access(g, p), t[p]);
  }
}

TEST(Extract, Examples) {
  const Text s32 = families::gen_S(32);
  const auto g = built(s32);
  EXPECT_EQ(extract(g, 14, 4).to_string(), "abaa");
  EXPECT_EQ(extract(g, 0, 32), s32);
  EXPECT_TRUE(extract(g, 5, 0).empty());
  EXPECT_THROW(extract(g, 30, 3), InvalidInput);
}

TEST(Extract, RandomRanges) {
  const Text t = corpus::random_text(5000, 2, 4);
  const auto g = built(t, 8);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t a = rng() % t.size(), l = rng() % (t.size() - a + 1);
    ASSERT_EQ(extract(g, a, l), t.slice(a, l));
  }
}

TEST(Size, Examples) {
  SymbolTable table;
  const SymbolId a = table.terminal('a');
  EXPECT_EQ(grammar_size(Rlslp(table, a, 1)), 1u);
  EXPECT_EQ(grammar_size(unary_run(1000)), 3u);
}

TEST(Stats, CountsAndDepth) {
  SymbolTable table;
  const SymbolId a = table.terminal('a');
  const SymbolId b = table.terminal('b');
  const SymbolId ab = table.pair(a, b);
  const SymbolId r = table.run(ab, 3);
  const SymbolId top = table.pair(r, a);
  const Rlslp g(std::move(table), top, 2);
  const auto st = grammar_stats(g);
  EXPECT_EQ(st.n, 7u);
  EXPECT_EQ(st.symbols, 5u);
  EXPECT_EQ(st.terminals, 2u);
  EXPECT_EQ(st.pair_rules, 2u);
  EXPECT_EQ(st.run_rules, 1u);
  EXPECT_EQ(st.size, 2u + 2 * 3);
  EXPECT_EQ(st.depth, 3u);
  EXPECT_EQ(expand(g).to_string(), "abababa");
}

TEST(Prune, DropsUnreachable) {
  SymbolTable table;
  const SymbolId a = table.terminal('a');
  const SymbolId b = table.terminal('b');
  table.pair(b, b);
  const SymbolId aa = table.run(a, 2);
  const Rlslp g(std::move(table), aa, 2);
  const Rlslp p = prune(g);
  EXPECT_EQ(p.table().size(), 2u);
  EXPECT_EQ(expand(p), expand(g));
}

TEST(Verify, UnaryRunIsValid) {
  const auto rep = verify(unary_run(4));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.run_rules_checked, 1u);
  EXPECT_EQ(rep.period_violations, 0u);
}

TEST(Verify, PeriodViolationReported) {
  // Run(ab ab, 2): exp = abababab has period 2, not |exp(B)| = 4.
  SymbolTable table;
  const SymbolId a = table.terminal('a');
  const SymbolId b = table.terminal('b');
  const SymbolId ab = table.pair(a, b);
  const SymbolId abab = table.pair(ab, ab);
  const SymbolId r = table.run(abab, 2);
  const auto rep = verify(Rlslp(std::move(table), r, 2));
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.period_violations, 1u);
}

TEST(Verify, ReferenceMismatch) {
  const auto g = built(Text::from_string("abcab"));
  const Text good = Text::from_string("abcab");
  const Text bad = Text::from_string("abcaa");
  EXPECT_EQ(verify(g, &good).reference_match, true);
  const auto rep = verify(g, &bad);
  EXPECT_EQ(rep.reference_match, false);
  EXPECT_FALSE(rep.ok());
}

TEST(Verify, SkipsLongRunsPastCap) {
  const auto g = unary_run(1000);
  VerifyOptions o;
  o.period_cap = 10;
  const auto rep = verify(g, nullptr, o);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.run_rules_skipped, 1u);
}

TEST(Verify, RecompressionGrammarsHaveNoViolations) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const Text t = corpus::random_text(1 + rng() % 3000, 1 + rng() % 3, rng());
    VerifyOptions o;
    o.period_cap = t.size();
    const auto rep = verify(built(t, rng()), &t, o);
    ASSERT_TRUE(rep.ok()) << rep.violations.front();
    ASSERT_EQ(rep.run_rules_skipped, 0u);
  }
}

TEST(Serialize, RoundTrip) {
  for (const auto& f : corpus::family_fixtures()) {
    const auto g = built(f.text, 4);
    const auto back = deserialize_rlslp(serialize(g));
    EXPECT_EQ(back, g) << f.name;
    EXPECT_EQ(expand(back), f.text) << f.name;
  }
}

TEST(Serialize, HandWrittenUnaryFile) {
  std::vector<std::uint8_t> bytes;
  io::put_bytes(bytes, "RLSLP1");
  for (std::uint64_t v : {4, 1, 2, 1}) io::put_varint(bytes, v);
  bytes.push_back('T');
  io::put_varint(bytes, 'a');
  bytes.push_back('R');
  io::put_varint(bytes, 0);
  io::put_varint(bytes, 4);
  EXPECT_EQ(expand(deserialize_rlslp(bytes)).to_string(), "aaaa");
}

TEST(Serialize, TruncatedStreamsRejected) {
  const auto bytes = serialize(built(corpus::random_text(300, 3, 7)));
  for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
    std::span<const std::uint8_t> prefix(bytes.data(), cut);
    bool threw = false;
    try {
      deserialize_rlslp(prefix);
    } catch (const ParseError&) {
      threw = true;
    }
    // A cut exactly before the 'M' trailer is a valid file with rounds = 0.
    if (!threw) {
      EXPECT_EQ(bytes[cut], 'M') << "cut " << cut;
    }
  }
}

TEST(Serialize, MalformedRejected) {
  auto bytes = serialize(unary_run(4));
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(deserialize_rlslp(bad_magic), ParseError);

  auto bad_length = bytes;
  bad_length[6] = 5;
  EXPECT_THROW(deserialize_rlslp(bad_length), ParseError);

  auto trailing = bytes;
  trailing.push_back('Z');
  EXPECT_THROW(deserialize_rlslp(trailing), ParseError);

  std::vector<std::uint8_t> forward;
  io::put_bytes(forward, "RLSLP1");
  for (std::uint64_t v : {2, 1, 2, 1}) io::put_varint(forward, v);
  forward.push_back('R');
  io::put_varint(forward, 1);
  io::put_varint(forward, 2);
  EXPECT_THROW(deserialize_rlslp(forward), ParseError);
}
