#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "deltakit/block_tree.hpp"
#include "deltakit/error.hpp"
#include "deltakit/families.hpp"
#include "deltakit/fingerprint.hpp"
#include "deltakit/measures.hpp"

using namespace deltakit;

namespace {

Text distinct16() {
  std::vector<Symbol> s(16);
  for (Symbol i = 0; i < 16; ++i) s[i] = 'A' + i;
  return Text(s);
}

Text abab(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += i % 2 ? 'b' : 'a';
  return Text::from_string(s);
}

void expect_all_access(const BlockTree& bt, const Text& t) {
  for (std::uint64_t i = 0; i < t.size(); ++i) ASSERT_EQ(bt.access(i), t[i]) << "i = " << i;
}

}  // namespace

TEST(Fingerprint, GroupAxioms) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> res(0, kMersenne61 - 1), unit(1, kMersenne61 - 1);
  using G = FingerprintGroup;
  for (int i = 0; i < 2000; ++i) {
    const Fingerprint x{res(rng), unit(rng)}, y{res(rng), unit(rng)}, z{res(rng), unit(rng)};
    ASSERT_EQ(G::op(G::op(x, y), z), G::op(x, G::op(y, z)));
    ASSERT_EQ(G::op(x, G::identity()), x);
    ASSERT_EQ(G::op(x, G::inverse(x)), G::identity());
  }
}

TEST(Fingerprint, FoldIsConcatenation) {
  const FingerprintGroup g(12345);
  const Text t = corpus::random_text(200, 5, 2);
  const PrefixFingerprints pf(g, t.symbols());
  for (std::size_t p = 0; p <= t.size(); p += 7) {
    for (std::size_t l = 0; p + l <= t.size(); l += 13) {
      ASSERT_EQ(pf.range(p, l), g.fold(t.symbols().subspan(p, l)));
      const std::size_t h = l / 2;
      ASSERT_EQ(FingerprintGroup::op(pf.range(p, h), pf.range(p + h, l - h)), pf.range(p, l));
    }
  }
}

TEST(Fingerprint, BaseRange) {
  EXPECT_THROW(FingerprintGroup(1), InvalidInput);
  EXPECT_THROW(FingerprintGroup(kMersenne61 - 1), InvalidInput);
  const auto g = FingerprintGroup::from_seed(4);
  EXPECT_GE(g.base(), 2u);
  EXPECT_LE(g.base(), kMersenne61 - 2);
  EXPECT_EQ(g.base(), FingerprintGroup::from_seed(4).base());
  EXPECT_NE(g.base(), FingerprintGroup::from_seed(5).base());
}

TEST(BlockTree, AllDistinctAllMarked) {
  const Text t = distinct16();
  const BlockTree bt = build_block_tree(t, 2, 2, 1);
  for (const auto& l : bt.stats().levels) EXPECT_EQ(l.unmarked, 0u);
  expect_all_access(bt, t);
}

TEST(BlockTree, PeriodicTextPointsIntoPrefix) {
  const Text t = abab(256);
  const BlockTree bt = build_block_tree(t, 2, 4, 1);
  expect_all_access(bt, t);
  for (std::size_t k = 0; k < bt.levels().size(); ++k) {
    const Level& lv = bt.levels()[k];
    for (const Block& b : lv.blocks) {
      // Only blocks in the first two top-level block lengths can be leftmost.
      if (b.number * lv.block_len >= 2 * bt.levels()[0].block_len) {
        EXPECT_NE(b.kind, BlockKind::Marked) << k;
      }
      if (b.kind == BlockKind::Unmarked) {
        EXPECT_LT(lv.blocks[b.a].number, b.number);
      }
    }
  }
  EXPECT_EQ(count_pointer_mismatches(bt, t), 0u);
}

TEST(BlockTree, SAccess) {
  const Text t = families::gen_S(1024);
  const BlockTree bt = build_block_tree(t);
  EXPECT_EQ(bt.access(511), Symbol('b'));
  EXPECT_EQ(bt.access(0), t[0]);
  EXPECT_EQ(bt.s(), 2u);
  expect_all_access(bt, t);
}

TEST(BlockTree, SMarkedBound) {
  const Text t = families::gen_S(1 << 16);
  BlockTreeOptions o;
  o.s = 2;
  const BlockTree bt = build_block_tree(t, o);
  for (const auto& l : bt.stats().levels) EXPECT_LE(l.marked, 12u);
}

TEST(BlockTree, RandomBinaryTotalBlocks) {
  const Text t = corpus::random_text(100000, 2, 3);
  const BlockTree bt = build_block_tree(t);
  const auto st = bt.stats();
  const double d = delta(t).value();
  const double shape = static_cast<double>(st.s) + d * static_cast<double>(st.tau * st.levels.size());
  EXPECT_LE(static_cast<double>(st.total_blocks), 4.0 * shape);
  EXPECT_LE(st.max_marked, 4 * delta(t).ceil() + 4);
}

TEST(BlockTree, ParameterSweepAccessAndExtract) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 60; ++i) {
    const Text t = corpus::random_text(1 + rng() % 700, 1 + rng() % 4, rng());
    const std::uint64_t tau = 2 + rng() % 3, s = 1 + rng() % 5, leaf = 1 + rng() % 4;
    const BlockTree bt = build_block_tree(t, tau, s, leaf);
    EXPECT_EQ(bt.padded_len() % bt.s(), 0u);
    EXPECT_GE(bt.padded_len(), t.size());
    expect_all_access(bt, t);
    EXPECT_EQ(count_pointer_mismatches(bt, t), 0u);
    const std::uint64_t a = rng() % t.size(), l = rng() % (t.size() - a + 1);
    EXPECT_EQ(bt.extract(a, l), t.slice(a, l));
    EXPECT_EQ(bt.extract(0, t.size()), t);
  }
}

TEST(BlockTree, LeafLevelHasLeafLength) {
  const Text t = corpus::random_text(1000, 3, 5);
  const BlockTree bt = build_block_tree(t, 2, 3, 4);
  EXPECT_EQ(bt.levels().back().block_len, 4u);
  for (const Block& b : bt.levels().back().blocks) EXPECT_NE(b.kind, BlockKind::Marked);
}

TEST(BlockTree, DefaultLeafLength) {
  EXPECT_EQ(default_leaf_len(1, 1, 2, 1), 1u);
  EXPECT_EQ(default_leaf_len(1024, 2, 2, 2), 10u);
  EXPECT_EQ(default_leaf_len(1000, 26, 2, 1), 2u);
  BlockTreeOptions o;
  o.fingerprint_leaves = true;
  EXPECT_EQ(build_block_tree(families::gen_S(1024), o).leaf_len(), 1u);
}

TEST(BlockTree, InvalidParameters) {
  const Text t = Text::from_string("abc");
  EXPECT_THROW(build_block_tree(t, 1, 1, 1), InvalidInput);
  EXPECT_THROW(build_block_tree(t, 2, 0, 1), InvalidInput);
  EXPECT_THROW(build_block_tree(t, 2, 1, 0), InvalidInput);
  EXPECT_THROW(build_block_tree(Text{}, 2, 1, 1), InvalidInput);
  const BlockTree bt = build_block_tree(t, 2, 1, 1);
  EXPECT_THROW(bt.access(3), InvalidInput);
  EXPECT_THROW(bt.fingerprint(2, 2), InvalidInput);
}

TEST(BlockTreeFingerprint, PrefixEndpoints) {
  const Text t = families::gen_S(300);
  const BlockTree bt = build_block_tree(t);
  const auto g = bt.group();
  EXPECT_EQ(bt.fingerprint_prefix(0), FingerprintGroup::identity());
  EXPECT_EQ(bt.fingerprint_prefix(t.size()), g.fold(t.symbols()));
  EXPECT_EQ(bt.fingerprint(0, t.size()), bt.fingerprint_prefix(t.size()));
  EXPECT_EQ(bt.fingerprint(17, 0), FingerprintGroup::identity());
}

TEST(BlockTreeFingerprint, ExhaustiveOnSmallTexts) {
  std::vector<Text> texts;
  for (unsigned n = 1; n <= 7; ++n) {
    for (const Text& t : corpus::all_binary(n)) texts.push_back(t);
  }
  for (const auto& f : corpus::family_fixtures()) {
    if (f.text.size() <= 40) texts.push_back(f.text);
  }
  for (const Text& t : texts) {
    for (std::uint64_t tau : {2, 3}) {
      for (std::uint64_t s : {1, 2, 3}) {
        for (std::uint64_t leaf : {1, 2}) {
          const BlockTree bt = build_block_tree(t, tau, s, leaf, FingerprintGroup(977));
          const auto g = bt.group();
          for (std::uint64_t p = 0; p <= t.size(); ++p) {
            for (std::uint64_t l = 0; p + l <= t.size(); ++l) {
              ASSERT_EQ(bt.fingerprint(p, l), g.fold(t.symbols().subspan(p, l)))
                  << t.to_string() << " tau " << tau << " s " << s << " leaf " << leaf << " [" << p << "," << p + l << ")";
            }
          }
        }
      }
    }
  }
}

TEST(BlockTreeFingerprint, RandomRangesVsLinearFold) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const Text t = corpus::random_text(20000, 3, seed);
    BlockTreeOptions o;
    o.fingerprint_seed = seed;
    const BlockTree bt = build_block_tree(t, o);
    const PrefixFingerprints pf(bt.group(), t.symbols());
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 10000; ++i) {
      const std::uint64_t p = rng() % (t.size() + 1), l = rng() % (t.size() - p + 1);
      ASSERT_EQ(bt.fingerprint(p, l), pf.range(p, l));
    }
  }
}

TEST(BlockTreeFingerprint, DisabledThrows) {
  BlockTreeOptions o;
  o.fingerprints = false;
  const BlockTree bt = build_block_tree(families::gen_S(64), o);
  EXPECT_FALSE(bt.fingerprints().has_value());
  EXPECT_THROW(bt.fingerprint_prefix(3), InvalidInput);
  EXPECT_EQ(bt.access(3), Symbol('b'));
}

TEST(BlockTreeSerialize, RoundTrip) {
  for (const auto& f : corpus::family_fixtures()) {
    for (bool fp : {true, false}) {
      BlockTreeOptions o;
      o.fingerprints = fp;
      const BlockTree bt = build_block_tree(f.text, o);
      const BlockTree back = deserialize_block_tree(serialize(bt));
      EXPECT_EQ(back, bt) << f.name;
      expect_all_access(back, f.text);
    }
  }
}

TEST(BlockTreeSerialize, EveryTruncationRejected) {
  const BlockTree bt = build_block_tree(families::gen_S(200));
  const auto bytes = serialize(bt);
  for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
    bool threw = false;
    try {
      deserialize_block_tree(std::span<const std::uint8_t>(bytes.data(), cut));
    } catch (const ParseError&) {
      threw = true;
    }
    // Dropping the whole fingerprint section leaves a valid plain tree.
    if (!threw) {
      EXPECT_EQ(bytes[cut], 'F') << "cut " << cut;
    }
  }
}

TEST(BlockTreeSerialize, CorruptionRejected) {
  const BlockTree bt = build_block_tree(families::gen_S(100), 2, 2, 2);
  auto bytes = serialize(bt);
  auto bad_magic = bytes;
  bad_magic[1] = 'X';
  EXPECT_THROW(deserialize_block_tree(bad_magic), ParseError);
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(deserialize_block_tree(trailing), ParseError);
  // Flipping any single record tag must not yield a silently wrong tree.
  std::size_t rejected = 0, tags = 0;
  for (std::size_t i = 6; i < bytes.size(); ++i) {
    if (bytes[i] != 'M' && bytes[i] != 'U' && bytes[i] != 'L') continue;
    ++tags;
    auto copy = bytes;
    copy[i] = 'Q';
    try {
      deserialize_block_tree(copy);
    } catch (const ParseError&) {
      ++rejected;
    }
  }
  EXPECT_GT(tags, 0u);
  EXPECT_EQ(rejected, tags);
}
