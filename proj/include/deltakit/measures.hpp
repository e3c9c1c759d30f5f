#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "deltakit/text.hpp"

namespace deltakit {

/// Exact rational num/den.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  /// Smallest integer >= num/den.
  std::uint64_t ceil() const noexcept { return (num + den - 1) / den; }

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// Distinct-substring counts d_1..d_n and the maximizing ratio d_k / k.
struct SubstringComplexityProfile {
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  std::vector<std::uint64_t> d;  // d[k - 1] is the number of distinct length-k substrings
  std::uint64_t delta_num = 0;   // d_k at the smallest maximizing k
  std::uint64_t delta_den = 1;   // that k

  std::uint64_t count(std::uint64_t k) const { return d.at(k - 1); }
  Ratio delta() const noexcept { return {delta_num, delta_den}; }
  double delta_real() const noexcept { return delta().value(); }
};

/// d_k for every k via suffix array + LCP histogram, then the maximizing ratio.
SubstringComplexityProfile substring_complexity(const Text& text);

/// delta as an exact ratio (d_k, k) with the smallest maximizing k.
Ratio delta(const Text& text);

struct LzPhrase {
  std::uint64_t start = 0;
  std::uint64_t length = 0;
  std::optional<std::uint64_t> source;  // earlier start; absent for a fresh symbol
  Symbol literal = 0;                   // the fresh symbol when source is absent

  friend bool operator==(const LzPhrase&, const LzPhrase&) = default;
};

struct LzParse {
  std::vector<LzPhrase> phrases;
  std::uint64_t z() const noexcept { return phrases.size(); }
};

/// Greedy self-referential LZ77 (no appended literal).
LzParse lz_factorize(const Text& text);

/// Rebuilds the text a parse describes. Sources may overlap their phrase.
Text lz_decode(const LzParse& parse);

/// 4 * (delta * log2(n / delta) + delta): the upper bound on z.
double lz_upper_bound(std::uint64_t n, Ratio delta);

/// Smallest p >= 1 with text[p..n) == text[0..n-p). Border array, O(n).
std::uint64_t smallest_period(std::span<const Symbol> text);
inline std::uint64_t smallest_period(const Text& text) { return smallest_period(text.symbols()); }

}  // namespace deltakit
