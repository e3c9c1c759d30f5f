#include <string>

#include "deltakit/block_tree.hpp"
#include "deltakit/error.hpp"
#include "deltakit/varint.hpp"

namespace deltakit {

namespace {

constexpr std::string_view kMagic = "BTREE1";

void put_fp(std::vector<std::uint8_t>& out, const Fingerprint& f) {
  io::put_varint(out, f.value);
  io::put_varint(out, f.shift);
}

Fingerprint get_fp(io::Reader& in) {
  Fingerprint f;
  f.value = in.varint_at_most(kMersenne61 - 1, "fingerprint value");
  f.shift = in.varint_at_most(kMersenne61 - 1, "fingerprint shift");
  return f;
}

std::vector<Fingerprint> get_fps(io::Reader& in, std::size_t count) {
  std::vector<Fingerprint> v(count);
  for (auto& f : v) f = get_fp(in);
  return v;
}

}  // namespace

std::vector<std::uint8_t> serialize(const BlockTree& bt) {
  std::vector<std::uint8_t> out;
  io::put_bytes(out, kMagic);
  io::put_varint(out, bt.size());
  io::put_varint(out, bt.tau());
  io::put_varint(out, bt.s());
  io::put_varint(out, bt.leaf_len());
  io::put_varint(out, bt.levels().size());
  for (const Level& lv : bt.levels()) {
    io::put_varint(out, lv.block_len);
    io::put_varint(out, lv.blocks.size());
    for (const Block& b : lv.blocks) {
      switch (b.kind) {
        case BlockKind::Marked:
          out.push_back('M');
          io::put_varint(out, b.number);
          io::put_varint(out, b.a);
          io::put_varint(out, b.b);
          break;
        case BlockKind::Unmarked:
          out.push_back('U');
          io::put_varint(out, b.number);
          io::put_varint(out, b.a);
          io::put_varint(out, b.b);
          break;
        case BlockKind::Leaf:
          out.push_back('L');
          io::put_varint(out, b.number);
          io::put_varint(out, b.b);
          for (std::uint64_t i = 0; i < b.b; ++i) io::put_varint(out, bt.leaf_text()[b.a + i]);
          break;
      }
    }
  }
  if (const auto& fp = bt.fingerprints()) {
    out.push_back('F');
    io::put_varint(out, fp->base);
    for (const auto& f : fp->top_prefix) put_fp(out, f);
    for (std::size_t k = 0; k < bt.levels().size(); ++k) {
      const Level& lv = bt.levels()[k];
      for (std::size_t i = 0; i < lv.blocks.size(); ++i) {
        put_fp(out, fp->block[k][i]);
        if (k > 0) put_fp(out, fp->sibling[k][i]);
        if (lv.blocks[i].kind == BlockKind::Unmarked) put_fp(out, fp->suffix[k][i]);
      }
    }
  }
  return out;
}

BlockTree deserialize_block_tree(std::span<const std::uint8_t> bytes) {
  io::Reader in(bytes);
  in.expect(kMagic);
  const std::uint64_t n = in.varint();
  const std::uint64_t tau = in.varint();
  const std::uint64_t s = in.varint();
  const std::uint64_t leaf_len = in.varint();
  const std::uint64_t level_count = in.varint_at_most(bytes.size(), "level count");

  std::vector<Level> levels(level_count);
  std::vector<Symbol> leaf_text;
  for (Level& lv : levels) {
    lv.block_len = in.varint();
    const std::uint64_t count = in.varint_at_most(bytes.size(), "block count");
    lv.blocks.resize(count);
    for (Block& b : lv.blocks) {
      const std::size_t at = in.offset();
      const std::uint8_t tag = in.byte();
      b.number = in.varint();
      switch (tag) {
        case 'M':
          b.kind = BlockKind::Marked;
          b.a = in.varint();
          b.b = in.varint();
          break;
        case 'U':
          b.kind = BlockKind::Unmarked;
          b.a = in.varint();
          b.b = in.varint();
          break;
        case 'L': {
          b.kind = BlockKind::Leaf;
          b.a = leaf_text.size();
          b.b = in.varint_at_most(bytes.size(), "leaf length");
          for (std::uint64_t i = 0; i < b.b; ++i) {
            leaf_text.push_back(static_cast<Symbol>(in.varint_at_most(UINT32_MAX, "leaf symbol")));
          }
          break;
        }
        default:
          throw ParseError("unknown block tag", at);
      }
    }
  }

  std::optional<FingerprintAnnotations> fp;
  if (!in.at_end()) {
    const std::size_t at = in.offset();
    if (in.byte() != 'F') throw ParseError("unexpected trailing data", at);
    if (levels.empty()) throw ParseError("fingerprints without levels", at);
    fp.emplace();
    fp->base = in.varint_at_most(kMersenne61 - 2, "fingerprint base");
    fp->top_prefix = get_fps(in, levels[0].blocks.size() + 1);
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const auto& blocks = levels[k].blocks;
      std::vector<Fingerprint> block(blocks.size()), sibling(k > 0 ? blocks.size() : 0), suffix(blocks.size());
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        block[i] = get_fp(in);
        if (k > 0) sibling[i] = get_fp(in);
        if (blocks[i].kind == BlockKind::Unmarked) suffix[i] = get_fp(in);
      }
      fp->block.push_back(std::move(block));
      fp->sibling.push_back(std::move(sibling));
      fp->suffix.push_back(std::move(suffix));
    }
    if (!in.at_end()) throw ParseError("unexpected trailing data", in.offset());
  }

  try {
    return BlockTree(n, tau, s, leaf_len, std::move(levels), std::move(leaf_text), std::move(fp));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), bytes.size());
  }
}

}  // namespace deltakit
