#pragma once

#include <cstdint>
#include <vector>

#include "deltakit/text.hpp"

namespace deltakit {

// Brute-force references. Each one has a hard size guard and raises
// OracleLimitExceeded beyond it.

inline constexpr std::size_t kDistinctCountLimit = 5000;
inline constexpr std::size_t kAttractorCheckLimit = 2000;
inline constexpr std::size_t kAttractorSearchLimit = 16;

/// d_k by hashing every length-k window.
std::uint64_t brute_distinct_count(const Text& text, std::uint64_t k);

/// True iff every distinct substring has an occurrence spanning one of the
/// given 0-based positions.
bool is_attractor(const Text& text, const std::vector<std::uint64_t>& positions);

struct AttractorResult {
  std::uint64_t gamma = 0;
  std::vector<std::uint64_t> witness;  // 0-based, increasing
};

/// Minimum attractor by subset enumeration in increasing cardinality.
AttractorResult brute_smallest_attractor(const Text& text);

}  // namespace deltakit
