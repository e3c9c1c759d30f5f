#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "deltakit/text.hpp"

namespace deltakit {

/// Maps symbols to dense ranks [0..sigma) preserving order. Returns sigma.
std::size_t rank_reduce(std::span<const Symbol> symbols, std::vector<std::int32_t>& ranks);

/// Suffix array by induced sorting (SA-IS), O(n) time.
std::vector<std::int32_t> suffix_array(const Text& text);
std::vector<std::int32_t> suffix_array(std::span<const std::int32_t> ranks, std::int32_t upper);

/// Kasai et al. LCP: lcp[i] = lcp(SA[i-1], SA[i]) for i >= 1, lcp[0] = 0.
std::vector<std::int32_t> lcp_array(const Text& text, std::span<const std::int32_t> sa);

/// Reference suffix array by comparison sort; O(n^2 log n) worst case.
std::vector<std::int32_t> naive_suffix_array(const Text& text);

}  // namespace deltakit
