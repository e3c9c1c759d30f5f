#include <string>

#include "deltakit/error.hpp"
#include "deltakit/rlslp.hpp"
#include "deltakit/varint.hpp"

namespace deltakit {

namespace {
constexpr std::string_view kMagic = "RLSLP1";
}

std::vector<std::uint8_t> serialize(const Rlslp& g) {
  std::vector<std::uint8_t> out;
  io::put_bytes(out, kMagic);
  io::put_varint(out, g.length());
  io::put_varint(out, g.sigma());
  io::put_varint(out, g.table().size());
  io::put_varint(out, g.start());
  for (const Rule& r : g.table().rules()) {
    switch (r.kind) {
      case RuleKind::Terminal:
        out.push_back('T');
        io::put_varint(out, r.left);
        break;
      case RuleKind::Pair:
        out.push_back('P');
        io::put_varint(out, r.left);
        io::put_varint(out, r.right);
        break;
      case RuleKind::Run:
        out.push_back('R');
        io::put_varint(out, r.left);
        io::put_varint(out, r.right);
        break;
    }
  }
  if (g.rounds() > 0) {
    out.push_back('M');
    io::put_varint(out, g.rounds());
  }
  return out;
}

Rlslp deserialize_rlslp(std::span<const std::uint8_t> bytes) {
  io::Reader in(bytes);
  in.expect(kMagic);
  const std::uint64_t n = in.varint();
  const std::uint64_t sigma = in.varint();
  const std::size_t count_at = in.offset();
  const std::uint64_t count = in.varint();
  if (count == 0 || count > bytes.size()) throw ParseError("implausible symbol count", count_at);
  const std::size_t start_at = in.offset();
  const std::uint64_t start = in.varint_at_most(count - 1, "start id");

  SymbolTable table;
  for (std::uint64_t id = 0; id < count; ++id) {
    const std::size_t at = in.offset();
    const std::uint8_t tag = in.byte();
    Rule r;
    switch (tag) {
      case 'T':
        r = Rule::terminal(static_cast<Symbol>(in.varint_at_most(UINT32_MAX, "terminal")));
        break;
      case 'P': {
        const auto a = in.varint_at_most(id == 0 ? 0 : id - 1, "pair child");
        const auto b = in.varint_at_most(id == 0 ? 0 : id - 1, "pair child");
        if (id == 0) throw ParseError("pair rule without children", at);
        r = Rule::pair(static_cast<SymbolId>(a), static_cast<SymbolId>(b));
        break;
      }
      case 'R': {
        const auto base = in.varint_at_most(id == 0 ? 0 : id - 1, "run base");
        const std::size_t exp_at = in.offset();
        const auto e = in.varint();
        if (id == 0) throw ParseError("run rule without base", at);
        if (e < 2) throw ParseError("run exponent below 2", exp_at);
        r = Rule::run(static_cast<SymbolId>(base), e);
        break;
      }
      default:
        throw ParseError("unknown record tag", at);
    }
    if (table.find(r)) throw ParseError("duplicate symbol record", at);
    table.intern(r);
  }

  std::uint32_t rounds = 0;
  if (!in.at_end()) {
    const std::size_t at = in.offset();
    if (in.byte() != 'M') throw ParseError("unexpected trailing data", at);
    rounds = static_cast<std::uint32_t>(in.varint_at_most(UINT32_MAX, "round count"));
    if (!in.at_end()) throw ParseError("unexpected trailing data", in.offset());
  }

  Rlslp g(std::move(table), static_cast<SymbolId>(start), sigma, rounds);
  if (g.length() != n) throw ParseError("declared length does not match the start symbol", start_at);
  return g;
}

}  // namespace deltakit
