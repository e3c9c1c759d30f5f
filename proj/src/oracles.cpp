#include "deltakit/oracles.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "deltakit/error.hpp"

namespace deltakit {

namespace {

std::u32string window(const Text& text, std::size_t pos, std::size_t len) {
  std::u32string w(len, U'\0');
  for (std::size_t t = 0; t < len; ++t) w[t] = static_cast<char32_t>(text[pos + t]);
  return w;
}

// One entry per distinct substring: the occurrence start positions.
std::vector<std::vector<std::size_t>> substring_classes(const Text& text, std::size_t len) {
  std::unordered_map<std::u32string, std::size_t> ids;
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i + len <= text.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(window(text, i, len), classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  return classes;
}

}  // namespace

std::uint64_t brute_distinct_count(const Text& text, std::uint64_t k) {
  if (text.size() > kDistinctCountLimit) {
    throw OracleLimitExceeded("brute_distinct_count: n > " + std::to_string(kDistinctCountLimit));
  }
  if (k == 0) throw InvalidInput("brute_distinct_count: k must be >= 1");
  if (k > text.size()) return 0;
  std::unordered_set<std::u32string> seen;
  for (std::size_t i = 0; i + k <= text.size(); ++i) seen.insert(window(text, i, k));
  return seen.size();
}

bool is_attractor(const Text& text, const std::vector<std::uint64_t>& positions) {
  const std::size_t n = text.size();
  if (n > kAttractorCheckLimit) {
    throw OracleLimitExceeded("is_attractor: n > " + std::to_string(kAttractorCheckLimit));
  }
  std::vector<std::size_t> covered_prefix(n + 1, 0);
  std::vector<bool> marked(n, false);
  for (auto p : positions) {
    if (p >= n) throw InvalidInput("is_attractor: position out of range");
    marked[p] = true;
  }
  for (std::size_t i = 0; i < n; ++i) covered_prefix[i + 1] = covered_prefix[i] + marked[i];

  for (std::size_t len = 1; len <= n; ++len) {
    for (const auto& occ : substring_classes(text, len)) {
      const bool hit = std::any_of(occ.begin(), occ.end(), [&](std::size_t i) {
        return covered_prefix[i + len] > covered_prefix[i];
      });
      if (!hit) return false;
    }
  }
  return true;
}

AttractorResult brute_smallest_attractor(const Text& text) {
  const std::size_t n = text.size();
  if (n > kAttractorSearchLimit) {
    throw OracleLimitExceeded("brute_smallest_attractor: n > " +
                              std::to_string(kAttractorSearchLimit));
  }
  require_nonempty(text, "brute_smallest_attractor");

  // Each distinct substring becomes the list of position masks of its occurrences.
  std::vector<std::vector<std::uint32_t>> requirements;
  for (std::size_t len = 1; len <= n; ++len) {
    for (const auto& occ : substring_classes(text, len)) {
      std::vector<std::uint32_t> masks;
      for (std::size_t i : occ) masks.push_back(((1u << len) - 1u) << i);
      requirements.push_back(std::move(masks));
    }
  }
  // Most constrained first so that failing subsets are rejected early.
  std::sort(requirements.begin(), requirements.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });

  auto satisfies = [&](std::uint32_t subset) {
    for (const auto& masks : requirements) {
      bool hit = false;
      for (auto m : masks) {
        if (m & subset) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    return true;
  };

  const std::uint32_t limit = 1u << n;
  for (std::size_t card = 1; card <= n; ++card) {
    // Gosper's hack over all card-element subsets in increasing order.
    std::uint32_t subset = (1u << card) - 1u;
    while (subset < limit) {
      if (satisfies(subset)) {
        AttractorResult r;
        r.gamma = card;
        for (std::size_t i = 0; i < n; ++i) {
          if (subset >> i & 1u) r.witness.push_back(i);
        }
        return r;
      }
      const std::uint32_t c = subset & (~subset + 1u);
      const std::uint32_t r = subset + c;
      subset = (((r ^ subset) >> 2) / c) | r;
    }
  }
  throw InternalError("brute_smallest_attractor: the full position set must be an attractor");
}

}  // namespace deltakit
