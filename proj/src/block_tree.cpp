#include "deltakit/block_tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "deltakit/error.hpp"
#include "deltakit/measures.hpp"

namespace deltakit {

namespace {

bool same_content(std::span<const Symbol> t, std::uint64_t p, std::uint64_t q, std::uint64_t len) {
  return std::equal(t.begin() + static_cast<std::ptrdiff_t>(p), t.begin() + static_cast<std::ptrdiff_t>(p + len),
                    t.begin() + static_cast<std::ptrdiff_t>(q));
}

// Leftmost occurrence of every window text[p, p + len) for p in `positions`.
// Rolling Karp-Rabin dictionary over all windows of that length, every hit
// confirmed by direct comparison.
std::vector<std::uint64_t> leftmost_occurrences(std::span<const Symbol> text, const PrefixFingerprints& pf,
                                                std::uint64_t len, std::span<const std::uint64_t> positions) {
  struct Group {
    std::uint64_t rep;
    std::uint64_t found;
    bool resolved;
  };
  std::vector<Group> groups;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_hash;
  by_hash.reserve(positions.size() * 2);
  std::vector<std::uint32_t> group_of(positions.size());
  std::uint64_t scan_end = 0;

  for (std::size_t i = 0; i < positions.size(); ++i) {
    const std::uint64_t p = positions[i];
    auto& bucket = by_hash[pf.range(p, len).value];
    std::uint32_t g = UINT32_MAX;
    for (std::uint32_t cand : bucket) {
      if (same_content(text, groups[cand].rep, p, len)) {
        g = cand;
        break;
      }
    }
    if (g == UINT32_MAX) {
      g = static_cast<std::uint32_t>(groups.size());
      groups.push_back({p, 0, false});
      bucket.push_back(g);
      scan_end = std::max(scan_end, p);
    }
    group_of[i] = g;
  }

  std::size_t unresolved = groups.size();
  for (std::uint64_t q = 0; q <= scan_end && unresolved > 0; ++q) {
    const auto it = by_hash.find(pf.range(q, len).value);
    if (it == by_hash.end()) continue;
    for (std::uint32_t g : it->second) {
      Group& grp = groups[g];
      if (grp.resolved || !same_content(text, grp.rep, q, len)) continue;
      grp.found = q;
      grp.resolved = true;
      --unresolved;
    }
  }
  if (unresolved != 0) throw InternalError("block tree: leftmost occurrence search failed");

  std::vector<std::uint64_t> out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) out[i] = groups[group_of[i]].found;
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw InvalidInput("block tree: parameters overflow");
  return a * b;
}

std::uint64_t top_block_len(std::uint64_t n, std::uint64_t tau, std::uint64_t s, std::uint64_t leaf_len) {
  std::uint64_t len = leaf_len;
  while (checked_mul(s, len) < n) len = checked_mul(len, tau);
  return len;
}

}  // namespace

std::uint64_t default_leaf_len(std::uint64_t n, std::uint64_t sigma, std::uint64_t tau, std::uint64_t s) {
  const std::uint64_t padded = checked_mul(s, top_block_len(n, tau, s, 1));
  const double base = static_cast<double>(std::max<std::uint64_t>(sigma, 2));
  const double v = std::floor(std::log(static_cast<double>(padded)) / std::log(base) + 1e-9);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(v));
}

BlockTree build_block_tree(const Text& text, std::uint64_t tau, std::uint64_t s, std::uint64_t leaf_len,
                           std::optional<FingerprintGroup> group) {
  require_nonempty(text, "build_block_tree");
  if (tau < 2) throw InvalidInput("block tree: tau must be >= 2");
  if (s < 1) throw InvalidInput("block tree: s must be >= 1");
  if (leaf_len < 1) throw InvalidInput("block tree: leaf_len must be >= 1");

  const std::uint64_t n = text.size();
  const auto t = text.symbols();
  const std::uint64_t top_len = top_block_len(n, tau, s, leaf_len);
  const FingerprintGroup hash_group = group ? *group : FingerprintGroup::from_seed(kDefaultFingerprintSeed);
  const PrefixFingerprints pf(hash_group, t);

  std::vector<Level> levels;
  std::vector<Symbol> leaf_text;
  std::optional<FingerprintAnnotations> fp;
  if (group) {
    fp.emplace();
    fp->base = group->base();
  }

  std::vector<std::uint64_t> numbers;
  for (std::uint64_t j = 0; j * top_len < n; ++j) numbers.push_back(j);

  for (std::uint64_t len = top_len;; len /= tau) {
    Level level;
    level.block_len = len;
    const std::size_t count = numbers.size();
    auto pos_of = [&](std::size_t i) { return numbers[i] * len; };
    auto len_of = [&](std::size_t i) { return std::min(len, n - pos_of(i)); };

    level.blocks.resize(count);
    std::vector<std::uint64_t> next;
    if (len <= leaf_len) {
      for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t l = len_of(i);
        level.blocks[i] = {BlockKind::Leaf, numbers[i], leaf_text.size(), l};
        leaf_text.insert(leaf_text.end(), t.begin() + static_cast<std::ptrdiff_t>(pos_of(i)),
                         t.begin() + static_cast<std::ptrdiff_t>(pos_of(i) + l));
      }
    } else {
      std::vector<bool> marked(count, false);

      // Pairs of text-adjacent blocks, split by whether the right block is full.
      std::vector<std::size_t> full_pairs;
      std::vector<std::uint64_t> full_pair_pos;
      std::optional<std::size_t> short_pair;
      for (std::size_t i = 0; i + 1 < count; ++i) {
        if (numbers[i + 1] != numbers[i] + 1) continue;
        if (len_of(i + 1) == len) {
          full_pairs.push_back(i);
          full_pair_pos.push_back(pos_of(i));
        } else {
          short_pair = i;
        }
      }
      const auto pair_hits = leftmost_occurrences(t, pf, 2 * len, full_pair_pos);
      for (std::size_t j = 0; j < full_pairs.size(); ++j) {
        if (pair_hits[j] == full_pair_pos[j]) marked[full_pairs[j]] = marked[full_pairs[j] + 1] = true;
      }
      if (short_pair) {
        const std::uint64_t p = pos_of(*short_pair);
        const std::uint64_t hit = leftmost_occurrences(t, pf, n - p, std::span(&p, 1))[0];
        if (hit == p) marked[*short_pair] = marked[*short_pair + 1] = true;
      }

      // Single blocks: the self rule plus the pointer source for unmarked ones.
      std::vector<std::size_t> full_blocks;
      std::vector<std::uint64_t> full_block_pos;
      for (std::size_t i = 0; i < count; ++i) {
        if (len_of(i) == len) {
          full_blocks.push_back(i);
          full_block_pos.push_back(pos_of(i));
        } else {
          marked[i] = true;  // truncated trailing block
        }
      }
      const auto block_hits = leftmost_occurrences(t, pf, len, full_block_pos);
      std::vector<std::uint64_t> source(count, 0);
      for (std::size_t j = 0; j < full_blocks.size(); ++j) {
        source[full_blocks[j]] = block_hits[j];
        if (block_hits[j] == full_block_pos[j]) marked[full_blocks[j]] = true;
      }

      const std::uint64_t child_len = len / tau;
      for (std::size_t i = 0; i < count; ++i) {
        if (marked[i]) {
          const std::uint64_t first = next.size();
          for (std::uint64_t c = 0; c < tau; ++c) {
            const std::uint64_t num = numbers[i] * tau + c;
            if (num * child_len < n) next.push_back(num);
          }
          level.blocks[i] = {BlockKind::Marked, numbers[i], first, next.size() - first};
          continue;
        }
        const std::uint64_t q = source[i];
        const auto it = std::lower_bound(numbers.begin(), numbers.end(), q / len);
        const auto target = static_cast<std::size_t>(it - numbers.begin());
        const std::uint64_t off = q % len;
        const bool found = it != numbers.end() && *it == q / len;
        if (!found || !marked[target] ||
            (off + len > len_of(target) && (target + 1 >= count || numbers[target + 1] != numbers[target] + 1 || !marked[target + 1]))) {
          throw InternalError("block tree: pointer target of block " + std::to_string(numbers[i]) +
                              " is not a marked block");
        }
        level.blocks[i] = {BlockKind::Unmarked, numbers[i], target, off};
      }
    }

    if (fp) {
      std::vector<Fingerprint> block(count), sibling, suffix(count);
      for (std::size_t i = 0; i < count; ++i) {
        block[i] = pf.range(pos_of(i), len_of(i));
        const Block& b = level.blocks[i];
        if (b.kind == BlockKind::Unmarked) {
          const std::uint64_t tpos = level.blocks[b.a].number * len;
          const std::uint64_t tlen = std::min(len, n - tpos);
          suffix[i] = pf.range(tpos + b.b, tlen - b.b);
        }
      }
      if (levels.empty()) {
        for (std::size_t j = 0; j <= count; ++j) fp->top_prefix.push_back(pf.range(0, std::min(j * len, n)));
      } else {
        sibling.resize(count);
        const std::uint64_t parent_len = len * tau;
        for (std::size_t i = 0; i < count; ++i) {
          const std::uint64_t parent_pos = level.blocks[i].number / tau * parent_len;
          sibling[i] = pf.range(parent_pos, pos_of(i) - parent_pos);
        }
      }
      fp->block.push_back(std::move(block));
      fp->sibling.push_back(std::move(sibling));
      fp->suffix.push_back(std::move(suffix));
    }

    levels.push_back(std::move(level));
    if (len <= leaf_len) break;
    numbers = std::move(next);
  }

  return BlockTree(n, tau, s, leaf_len, std::move(levels), std::move(leaf_text), std::move(fp));
}

BlockTree build_block_tree(const Text& text, const BlockTreeOptions& options) {
  require_nonempty(text, "build_block_tree");
  const std::uint64_t s = options.s != 0 ? options.s : std::max<std::uint64_t>(1, delta(text).ceil());
  std::uint64_t leaf_len = options.leaf_len;
  if (options.fingerprint_leaves) leaf_len = 1;
  if (leaf_len == 0) leaf_len = default_leaf_len(text.size(), text.alphabet_size(), options.tau, s);
  std::optional<FingerprintGroup> group;
  if (options.fingerprints) {
    group = options.fingerprint_base ? FingerprintGroup(*options.fingerprint_base)
                                     : FingerprintGroup::from_seed(options.fingerprint_seed);
  }
  return build_block_tree(text, options.tau, s, leaf_len, group);
}

BlockTree::BlockTree(std::uint64_t n, std::uint64_t tau, std::uint64_t s, std::uint64_t leaf_len,
                     std::vector<Level> levels, std::vector<Symbol> leaf_text,
                     std::optional<FingerprintAnnotations> fingerprints)
    : n_(n), tau_(tau), s_(s), leaf_len_(leaf_len), levels_(std::move(levels)),
      leaf_text_(std::move(leaf_text)), fp_(std::move(fingerprints)) {
  if (n_ == 0 || tau_ < 2 || s_ < 1 || leaf_len_ < 1) throw InvalidInput("block tree: bad parameters");
  padded_len_ = s_ * top_block_len(n_, tau_, s_, leaf_len_);
  validate();
}

std::uint64_t BlockTree::block_length(std::size_t level, std::size_t idx) const noexcept {
  const Level& lv = levels_[level];
  return std::min(lv.block_len, n_ - lv.blocks[idx].number * lv.block_len);
}

void BlockTree::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidInput("block tree: " + msg); };
  const std::uint64_t top_len = padded_len_ / s_;
  if (levels_.empty()) fail("no levels");

  std::uint64_t expected_len = top_len;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const Level& lv = levels_[k];
    const bool last = k + 1 == levels_.size();
    if (lv.block_len != expected_len) fail("level " + std::to_string(k) + " has the wrong block length");
    if (last != (lv.block_len <= leaf_len_)) fail("leaf level misplaced");
    if (k == 0 && lv.blocks.size() != (n_ + top_len - 1) / top_len) fail("top level block count");
    std::uint64_t children = 0;
    for (std::size_t i = 0; i < lv.blocks.size(); ++i) {
      const Block& b = lv.blocks[i];
      if (b.number * lv.block_len >= n_) fail("block beyond the text");
      if (k == 0 && b.number != i) fail("top level numbering");
      if (i > 0 && b.number <= lv.blocks[i - 1].number) fail("blocks out of order");
      const std::uint64_t l = block_length(k, i);
      switch (b.kind) {
        case BlockKind::Leaf:
          if (!last) fail("leaf above the leaf level");
          if (b.b != l || b.a > leaf_text_.size() || leaf_text_.size() - b.a < l) fail("leaf payload");
          break;
        case BlockKind::Marked: {
          if (last) fail("marked block at the leaf level");
          const Level& below = levels_[k + 1];
          if (b.a != children) fail("child ranges not contiguous");
          const std::uint64_t child_len = lv.block_len / tau_;
          std::uint64_t expect = 0;
          for (std::uint64_t c = 0; c < tau_; ++c) {
            if ((b.number * tau_ + c) * child_len < n_) ++expect;
          }
          if (b.b != expect || b.a + b.b > below.blocks.size()) fail("child count");
          for (std::uint64_t c = 0; c < b.b; ++c) {
            if (below.blocks[b.a + c].number != b.number * tau_ + c) fail("child numbering");
          }
          children += b.b;
          break;
        }
        case BlockKind::Unmarked: {
          if (last) fail("pointer at the leaf level");
          if (b.a >= lv.blocks.size() || lv.blocks[b.a].kind != BlockKind::Marked) fail("pointer target not marked");
          if (b.b >= block_length(k, b.a)) fail("pointer offset");
          const std::uint64_t tpos = lv.blocks[b.a].number * lv.block_len + b.b;
          if (tpos >= b.number * lv.block_len) fail("pointer does not point left");
          if (b.b + l > block_length(k, b.a)) {
            const std::size_t nx = b.a + 1;
            if (nx >= lv.blocks.size() || lv.blocks[nx].number != lv.blocks[b.a].number + 1 ||
                lv.blocks[nx].kind != BlockKind::Marked || b.b + l > block_length(k, b.a) + block_length(k, nx)) {
              fail("pointer spills into a missing block");
            }
          }
          break;
        }
      }
    }
    if (!last && children != levels_[k + 1].blocks.size()) fail("orphan blocks");
    expected_len /= tau_;
  }

  if (fp_) {
    if (fp_->base < 2 || fp_->base > kMersenne61 - 2) fail("fingerprint base");
    if (fp_->block.size() != levels_.size() || fp_->sibling.size() != levels_.size() ||
        fp_->suffix.size() != levels_.size() || fp_->top_prefix.size() != levels_[0].blocks.size() + 1) {
      fail("fingerprint annotation shape");
    }
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      const std::size_t c = levels_[k].blocks.size();
      if (fp_->block[k].size() != c || fp_->suffix[k].size() != c || fp_->sibling[k].size() != (k == 0 ? 0 : c)) {
        fail("fingerprint annotation shape");
      }
    }
  }
}

Symbol BlockTree::access(std::uint64_t i) const {
  if (i >= n_) throw InvalidInput("bt_access: position out of range");
  std::size_t k = 0;
  std::size_t idx = i / levels_[0].block_len;
  std::uint64_t off = i % levels_[0].block_len;
  for (;;) {
    const Block& b = levels_[k].blocks[idx];
    switch (b.kind) {
      case BlockKind::Leaf:
        return leaf_text_[b.a + off];
      case BlockKind::Marked: {
        const std::uint64_t child_len = levels_[k + 1].block_len;
        idx = b.a + off / child_len;
        off %= child_len;
        ++k;
        break;
      }
      case BlockKind::Unmarked: {
        off += b.b;
        idx = b.a;
        const std::uint64_t tl = block_length(k, idx);
        if (off >= tl) {
          off -= tl;
          ++idx;
        }
        break;
      }
    }
  }
}

void BlockTree::extract_block(std::size_t k, std::size_t idx, std::uint64_t from, std::uint64_t to,
                              std::vector<Symbol>& out) const {
  if (from >= to) return;
  const Block& b = levels_[k].blocks[idx];
  switch (b.kind) {
    case BlockKind::Leaf:
      out.insert(out.end(), leaf_text_.begin() + static_cast<std::ptrdiff_t>(b.a + from),
                 leaf_text_.begin() + static_cast<std::ptrdiff_t>(b.a + to));
      return;
    case BlockKind::Marked: {
      const std::uint64_t cl = levels_[k + 1].block_len;
      for (std::uint64_t c = from / cl; c * cl < to; ++c) {
        const std::uint64_t lo = std::max(from, c * cl) - c * cl;
        const std::uint64_t hi = std::min(to, (c + 1) * cl) - c * cl;
        extract_block(k + 1, b.a + c, lo, hi, out);
      }
      return;
    }
    case BlockKind::Unmarked: {
      const std::uint64_t tl = block_length(k, b.a);
      const std::uint64_t lo = from + b.b;
      const std::uint64_t hi = to + b.b;
      extract_block(k, b.a, std::min(lo, tl), std::min(hi, tl), out);
      if (hi > tl) extract_block(k, b.a + 1, lo > tl ? lo - tl : 0, hi - tl, out);
      return;
    }
  }
}

Text BlockTree::extract(std::uint64_t pos, std::uint64_t len) const {
  if (pos > n_ || len > n_ - pos) throw InvalidInput("bt_extract: range out of bounds");
  std::vector<Symbol> out;
  out.reserve(len);
  const std::uint64_t top = levels_[0].block_len;
  const std::uint64_t end = pos + len;
  for (std::uint64_t j = pos / top; j * top < end; ++j) {
    extract_block(0, j, std::max(pos, j * top) - j * top, std::min(end, (j + 1) * top) - j * top, out);
  }
  return Text(std::move(out));
}

const FingerprintAnnotations& BlockTree::require_fingerprints() const {
  if (!fp_) throw InvalidInput("block tree was built without fingerprints");
  return *fp_;
}

FingerprintGroup BlockTree::group() const { return FingerprintGroup(require_fingerprints().base); }

Fingerprint BlockTree::fingerprint_prefix(std::uint64_t i) const {
  const FingerprintAnnotations& fp = require_fingerprints();
  if (i > n_) throw InvalidInput("bt_fingerprint_prefix: position out of range");
  if (i == n_) return fp.top_prefix.back();
  const std::uint64_t top = levels_[0].block_len;
  Fingerprint acc = fp.top_prefix[i / top];
  std::uint64_t l = i % top;
  std::size_t k = 0;
  std::size_t idx = i / top;
  // Invariant: acc = phi(text before block idx) and 0 < l < its length.
  while (l > 0) {
    const Block& b = levels_[k].blocks[idx];
    switch (b.kind) {
      case BlockKind::Leaf: {
        const FingerprintGroup g(fp.base);
        acc = FingerprintGroup::op(
            acc, g.fold(std::span<const Symbol>(leaf_text_).subspan(b.a, l)));
        return acc;
      }
      case BlockKind::Marked: {
        const std::uint64_t cl = levels_[k + 1].block_len;
        idx = b.a + l / cl;
        l %= cl;
        ++k;
        acc = FingerprintGroup::op(acc, fp.sibling[k][idx]);
        break;
      }
      case BlockKind::Unmarked: {
        const Fingerprint& suf = fp.suffix[k][idx];
        const std::uint64_t rest = block_length(k, b.a) - b.b;
        if (l >= rest) {
          acc = FingerprintGroup::op(acc, suf);
          l -= rest;
          idx = b.a + 1;
        } else {
          // phi(B'[off..off+l)) = (suf o phi(B')^-1) o phi(B'[0..off+l))
          acc = FingerprintGroup::op(acc, FingerprintGroup::op(suf, FingerprintGroup::inverse(fp.block[k][b.a])));
          l += b.b;
          idx = b.a;
        }
        break;
      }
    }
  }
  return acc;
}

Fingerprint BlockTree::fingerprint(std::uint64_t pos, std::uint64_t len) const {
  if (pos > n_ || len > n_ - pos) throw InvalidInput("bt_fingerprint: range out of bounds");
  if (len == 0) {
    require_fingerprints();
    return FingerprintGroup::identity();
  }
  return FingerprintGroup::op(FingerprintGroup::inverse(fingerprint_prefix(pos)), fingerprint_prefix(pos + len));
}

BlockTreeStats BlockTree::stats() const {
  BlockTreeStats st;
  st.n = n_;
  st.tau = tau_;
  st.s = s_;
  st.leaf_len = leaf_len_;
  st.padded_len = padded_len_;
  for (const Level& lv : levels_) {
    LevelStats ls;
    ls.block_len = lv.block_len;
    for (const Block& b : lv.blocks) {
      switch (b.kind) {
        case BlockKind::Marked: ++ls.marked; break;
        case BlockKind::Unmarked: ++ls.unmarked; break;
        case BlockKind::Leaf: ++ls.leaves; break;
      }
    }
    st.total_blocks += lv.blocks.size();
    st.max_marked = std::max(st.max_marked, ls.marked);
    st.levels.push_back(ls);
  }
  // Three words per block plus the packed leaf symbols.
  st.space_words = 3 * st.total_blocks + (leaf_text_.size() * sizeof(Symbol) + 7) / 8;
  if (fp_) {
    std::uint64_t ann = fp_->top_prefix.size();
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      ann += fp_->block[k].size() + fp_->sibling[k].size() + st.levels[k].unmarked;
    }
    st.space_words += 2 * ann;
  }
  return st;
}

std::uint64_t count_pointer_mismatches(const BlockTree& bt, const Text& text) {
  if (text.size() != bt.size()) throw InvalidInput("count_pointer_mismatches: length mismatch");
  std::uint64_t bad = 0;
  for (std::size_t k = 0; k < bt.levels().size(); ++k) {
    const Level& lv = bt.levels()[k];
    for (std::size_t i = 0; i < lv.blocks.size(); ++i) {
      const Block& b = lv.blocks[i];
      if (b.kind != BlockKind::Unmarked) continue;
      const std::uint64_t len = bt.block_length(k, i);
      const std::uint64_t src = lv.blocks[b.a].number * lv.block_len + b.b;
      if (!same_content(text.symbols(), b.number * lv.block_len, src, len)) ++bad;
    }
  }
  return bad;
}

}  // namespace deltakit
