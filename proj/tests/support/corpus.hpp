#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "deltakit/families.hpp"
#include "deltakit/fingerprint.hpp"
#include "deltakit/text.hpp"

namespace corpus {

using deltakit::Symbol;
using deltakit::Text;

inline Text random_text(std::uint64_t n, std::uint32_t sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, sigma - 1);
  std::vector<Symbol> s(n);
  for (auto& c : s) c = 'a' + dist(rng);
  return Text(std::move(s));
}

/// Every string of length n over {a, b}, in counting order.
inline std::vector<Text> all_binary(unsigned n) {
  std::vector<Text> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Symbol> s(n);
    for (unsigned i = 0; i < n; ++i) s[i] = (mask >> i & 1) ? 'b' : 'a';
    out.emplace_back(std::move(s));
  }
  return out;
}

struct Named {
  std::string name;
  Text text;
};

/// A fixed set of family strings of small and medium length.
inline std::vector<Named> family_fixtures() {
  namespace f = deltakit::families;
  std::vector<Named> out;
  for (std::uint64_t n : {1, 2, 3, 5, 8, 12, 15, 16, 100, 1024, 4096}) out.push_back({"S_" + std::to_string(n), f::gen_S(n)});
  for (std::uint64_t n : {1, 2, 3, 4, 15, 64, 1000, 4096}) {
    out.push_back({"Sp_" + std::to_string(n), f::gen_Sp_seeded(n, 11 * n + 1)});
  }
  for (std::uint64_t n : {8, 15, 100, 1000}) out.push_back({"Sr_" + std::to_string(n), f::gen_Sr_seeded(n, 3, n)});
  const std::pair<std::uint64_t, std::uint64_t> gamma[] = {{7, 2}, {15, 5}, {12, 4}, {100, 8}, {1000, 20}, {4, 3}};
  for (auto [n, d] : gamma) {
    out.push_back({"gamma_" + std::to_string(n) + "_" + std::to_string(d), f::gen_composite_gamma(n, d)});
  }
  const std::pair<std::uint64_t, std::uint64_t> entropy[] = {{31, 5}, {15, 3}, {200, 11}};
  for (auto [n, d] : entropy) {
    out.push_back({"entropy_" + std::to_string(n) + "_" + std::to_string(d), f::gen_composite_entropy(n, d, n + d)});
  }
  const std::pair<std::uint64_t, std::uint64_t> sr[] = {{23, 5}, {14, 4}, {200, 8}};
  for (auto [n, d] : sr) {
    out.push_back({"srcomp_" + std::to_string(n) + "_" + std::to_string(d), f::gen_composite_Sr_seeded(n, d, n)});
  }
  const std::vector<std::uint64_t> pi3 = {2, 3, 1};
  out.push_back({"perm_4_3", f::gen_perm_tail(4, 3, pi3)});
  std::vector<std::uint64_t> pi16(16);
  for (std::uint64_t i = 0; i < 16; ++i) pi16[i] = 16 - i;
  out.push_back({"perm_20_16", f::gen_perm_tail(20, 16, pi16)});
  return out;
}

/// phi(text[0..i)) for every i by folding the group operation symbol by symbol.
inline std::vector<deltakit::Fingerprint> linear_prefix_folds(const deltakit::FingerprintGroup& g, const Text& t) {
  std::vector<deltakit::Fingerprint> p(t.size() + 1);
  for (std::size_t i = 0; i < t.size(); ++i) p[i + 1] = deltakit::FingerprintGroup::op(p[i], g.of_symbol(t[i]));
  return p;
}

}  // namespace corpus
