#include "deltakit/symbol_table.hpp"

#include <string>

#include "deltakit/error.hpp"

namespace deltakit {

std::size_t SymbolTable::RuleHash::operator()(const Rule& r) const noexcept {
  std::uint64_t h = (static_cast<std::uint64_t>(r.left) << 2) ^ static_cast<std::uint64_t>(r.kind);
  h ^= r.right * 0x9e3779b97f4a7c15ULL;
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 32;
  return static_cast<std::size_t>(h);
}

std::optional<SymbolId> SymbolTable::find(const Rule& rule) const {
  auto it = index_.find(rule);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymbolId SymbolTable::intern(const Rule& rule) {
  if (auto it = index_.find(rule); it != index_.end()) return it->second;

  std::uint64_t len = 1;
  switch (rule.kind) {
    case RuleKind::Terminal:
      break;
    case RuleKind::Pair:
      if (rule.left >= rules_.size() || rule.right >= rules_.size()) {
        throw InvalidInput("pair rule references an undefined symbol");
      }
      len = lengths_[rule.left] + lengths_[rule.right];
      break;
    case RuleKind::Run:
      if (rule.left >= rules_.size()) throw InvalidInput("run rule references an undefined symbol");
      if (rule.right < 2) throw InvalidInput("run rule exponent must be >= 2");
      len = lengths_[rule.left] * rule.right;
      break;
  }
  if (rules_.size() >= UINT32_MAX) throw InvalidInput("symbol table full");
  const auto id = static_cast<SymbolId>(rules_.size());
  rules_.push_back(rule);
  lengths_.push_back(len);
  index_.emplace(rule, id);
  return id;
}

}  // namespace deltakit
