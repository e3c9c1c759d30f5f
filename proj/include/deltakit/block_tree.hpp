#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "deltakit/fingerprint.hpp"
#include "deltakit/text.hpp"

namespace deltakit {

enum class BlockKind : std::uint8_t { Marked, Unmarked, Leaf };

/// One block of a level. Its text range is [number * block_len, ...),
/// truncated at n.
///   Marked:   a = index of the first child in the next level, b = child count
///   Unmarked: a = index of the target block B' in this level, b = offset in B'
///   Leaf:     a = offset of the payload in the leaf buffer, b = payload length
struct Block {
  BlockKind kind = BlockKind::Leaf;
  std::uint64_t number = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend bool operator==(const Block&, const Block&) = default;
};

struct Level {
  std::uint64_t block_len = 0;
  std::vector<Block> blocks;  // sorted by number

  friend bool operator==(const Level&, const Level&) = default;
};

/// Fingerprint payload. Vectors are indexed like the level's blocks.
struct FingerprintAnnotations {
  std::uint64_t base = 0;
  std::vector<std::vector<Fingerprint>> block;      // phi(B)
  std::vector<std::vector<Fingerprint>> sibling;    // phi of earlier siblings under the same parent
  std::vector<std::vector<Fingerprint>> suffix;     // unmarked only: phi(B'[offset..end))
  std::vector<Fingerprint> top_prefix;              // phi of the first j top-level blocks

  friend bool operator==(const FingerprintAnnotations&, const FingerprintAnnotations&) = default;
};

struct LevelStats {
  std::uint64_t block_len = 0;
  std::uint64_t marked = 0;
  std::uint64_t unmarked = 0;
  std::uint64_t leaves = 0;
};

struct BlockTreeStats {
  std::uint64_t n = 0;
  std::uint64_t tau = 0;
  std::uint64_t s = 0;
  std::uint64_t leaf_len = 0;
  std::uint64_t padded_len = 0;
  std::vector<LevelStats> levels;
  std::uint64_t total_blocks = 0;
  std::uint64_t max_marked = 0;
  std::uint64_t space_words = 0;
};

struct BlockTreeOptions {
  std::uint64_t tau = 2;
  std::uint64_t s = 0;         // 0: ceil(delta)
  std::uint64_t leaf_len = 0;  // 0: max(1, floor(log_sigma padded_len)), or 1 with fingerprint_leaves
  bool fingerprint_leaves = false;
  bool fingerprints = true;
  std::uint64_t fingerprint_seed = kDefaultFingerprintSeed;
  std::optional<std::uint64_t> fingerprint_base;  // overrides the seed
};

/// Block tree over a text: the top level splits the padded text into s
/// blocks of length leaf_len * tau^t; every level below holds the tau
/// children of each marked block; unmarked blocks point to the leftmost
/// occurrence of their content. Positions are 0-based.
class BlockTree {
 public:
  BlockTree(std::uint64_t n, std::uint64_t tau, std::uint64_t s, std::uint64_t leaf_len,
            std::vector<Level> levels, std::vector<Symbol> leaf_text,
            std::optional<FingerprintAnnotations> fingerprints);

  std::uint64_t size() const noexcept { return n_; }
  std::uint64_t tau() const noexcept { return tau_; }
  std::uint64_t s() const noexcept { return s_; }
  std::uint64_t leaf_len() const noexcept { return leaf_len_; }
  std::uint64_t padded_len() const noexcept { return padded_len_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  const std::vector<Symbol>& leaf_text() const noexcept { return leaf_text_; }
  const std::optional<FingerprintAnnotations>& fingerprints() const noexcept { return fp_; }

  /// Length of block `idx` of `level`, accounting for truncation at n.
  std::uint64_t block_length(std::size_t level, std::size_t idx) const noexcept;

  Symbol access(std::uint64_t i) const;
  Text extract(std::uint64_t pos, std::uint64_t len) const;

  /// phi(text[0..i)), 0 <= i <= n.
  Fingerprint fingerprint_prefix(std::uint64_t i) const;
  /// phi(text[pos..pos+len)).
  Fingerprint fingerprint(std::uint64_t pos, std::uint64_t len) const;
  FingerprintGroup group() const;

  BlockTreeStats stats() const;

  friend bool operator==(const BlockTree&, const BlockTree&) = default;

 private:
  void validate() const;
  void extract_block(std::size_t level, std::size_t idx, std::uint64_t from, std::uint64_t to,
                     std::vector<Symbol>& out) const;
  const FingerprintAnnotations& require_fingerprints() const;

  std::uint64_t n_ = 0;
  std::uint64_t tau_ = 2;
  std::uint64_t s_ = 1;
  std::uint64_t leaf_len_ = 1;
  std::uint64_t padded_len_ = 0;
  std::vector<Level> levels_;
  std::vector<Symbol> leaf_text_;
  std::optional<FingerprintAnnotations> fp_;
};

/// Explicit build with fixed parameters; tau >= 2, s >= 1, leaf_len >= 1.
BlockTree build_block_tree(const Text& text, std::uint64_t tau, std::uint64_t s, std::uint64_t leaf_len,
                           std::optional<FingerprintGroup> group = std::nullopt);
/// Build with defaults resolved from the text (s = ceil(delta), leaf_len from sigma).
BlockTree build_block_tree(const Text& text, const BlockTreeOptions& options = {});

/// leaf_len default for a text: max(1, floor(log_sigma(s * tau^t))) with the
/// smallest t such that s * tau^t >= n (sigma < 2 counts as 2).
std::uint64_t default_leaf_len(std::uint64_t n, std::uint64_t sigma, std::uint64_t tau, std::uint64_t s);

/// Every unmarked pointer re-expanded against the text; returns the number of mismatches.
std::uint64_t count_pointer_mismatches(const BlockTree& bt, const Text& text);

std::vector<std::uint8_t> serialize(const BlockTree& bt);
BlockTree deserialize_block_tree(std::span<const std::uint8_t> bytes);

}  // namespace deltakit
