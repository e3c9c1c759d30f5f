#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deltakit/text.hpp"

namespace deltakit::families {

// Generators of the lower-bound string families. Positions in choice
// vectors are 1-based, as in the definitions of the families.

inline constexpr Symbol kA = 'a';
inline constexpr Symbol kB = 'b';

/// b at every power-of-two position (1-based), a elsewhere.
Text gen_S(std::uint64_t n);

/// Windows (lo, hi), 1-based and inclusive, of the b's numbered j = 2, 3, ...
/// clamped to n; empty windows are dropped.
std::vector<std::pair<std::uint64_t, std::uint64_t>> sp_windows(std::uint64_t n);
/// b at position 1 and at choices[j - 2] for the jth b.
Text gen_Sp(std::uint64_t n, std::span<const std::uint64_t> choices);
Text gen_Sp_seeded(std::uint64_t n, std::uint64_t seed);
/// log2 of the number of strings spanned by the full (unclamped) windows.
double sp_log2_cardinality(std::uint64_t n);

/// 1 + floor(log2 n): the number of b's in gen_S(n).
std::uint64_t sr_color_count(std::uint64_t n);
/// gen_S(n) with the jth b replaced by b_{colors[j]}; b_r = 'a' + r, colors in [1..m].
Text gen_Sr(std::uint64_t n, std::uint64_t m, std::span<const std::uint64_t> colors);
Text gen_Sr_seeded(std::uint64_t n, std::uint64_t m, std::uint64_t seed);
double sr_log2_cardinality(std::uint64_t n, std::uint64_t m);

/// Composite of m = floor((delta+1)/3) relabeled S strings joined by fresh
/// delimiters, with (delta+1) mod 3 trailing delimiters. Output delta equals
/// delta_target; delta_target >= ceil(3n/4) uses gen_perm_tail instead.
Text gen_composite_gamma(std::uint64_t n, std::uint64_t delta_target);
/// As gen_composite_gamma with seeded gen_Sp parts.
Text gen_composite_entropy(std::uint64_t n, std::uint64_t delta_target, std::uint64_t seed);

/// Part lengths n_i of the composite skeleton (also the gamma lower bound inputs).
std::vector<std::uint64_t> composite_part_lengths(std::uint64_t n, std::uint64_t delta_target);

/// Composite of recolored S strings over a shared {a, b_1..b_m}, a tail
/// a^{2m} whose end is overwritten by fresh delimiters until delta reaches
/// 3m - 1, then (delta+1) mod 3 trailing delimiters. colors lists the colors
/// of all b slots, part by part.
Text gen_composite_Sr(std::uint64_t n, std::uint64_t delta_target, std::span<const std::uint64_t> colors);
Text gen_composite_Sr_seeded(std::uint64_t n, std::uint64_t delta_target, std::uint64_t seed);
/// Number of b slots gen_composite_Sr expects colors for.
std::uint64_t composite_Sr_slots(std::uint64_t n, std::uint64_t delta_target);

/// $_{pi(1)} ... $_{pi(delta)} followed by $_{pi(delta)}^{n - delta}; pi is a
/// permutation of [1..delta] and $_i = 'a' + i - 1.
Text gen_perm_tail(std::uint64_t n, std::uint64_t delta_target, std::span<const std::uint64_t> pi);

enum class Kind { S, Sp, Sr, CompositeGamma, CompositeEntropy, CompositeSr, PermTail };

Kind parse_kind(std::string_view name);
std::string_view kind_name(Kind kind);

struct FamilySpec {
  Kind kind = Kind::S;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> delta_target;
  std::uint64_t m = 2;                               // colors for Sr
  std::optional<std::vector<std::uint64_t>> choices; // Sp positions, Sr colors, or PermTail permutation
  std::uint64_t seed = 0;
};

Text generate(const FamilySpec& spec);

}  // namespace deltakit::families
