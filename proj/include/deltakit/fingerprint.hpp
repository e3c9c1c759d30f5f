#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "deltakit/text.hpp"

namespace deltakit {

// Karp-Rabin fingerprints over Z_p with p = 2^61 - 1, as a group on
// (value, r^len) pairs.

inline constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;
inline constexpr std::uint64_t kDefaultFingerprintSeed = 0x6b617270ULL;

inline std::uint64_t mod61(unsigned __int128 x) noexcept {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kMersenne61) + static_cast<std::uint64_t>(x >> 61);
  lo = (lo & kMersenne61) + (lo >> 61);
  return lo >= kMersenne61 ? lo - kMersenne61 : lo;
}
inline std::uint64_t mul61(std::uint64_t a, std::uint64_t b) noexcept {
  return mod61(static_cast<unsigned __int128>(a) * b);
}
inline std::uint64_t add61(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t s = a + b;
  return s >= kMersenne61 ? s - kMersenne61 : s;
}
inline std::uint64_t sub61(std::uint64_t a, std::uint64_t b) noexcept {
  return a >= b ? a - b : a + kMersenne61 - b;
}
std::uint64_t pow61(std::uint64_t base, std::uint64_t exp) noexcept;

struct Fingerprint {
  std::uint64_t value = 0;
  std::uint64_t shift = 1;  // r^len

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

class FingerprintGroup {
 public:
  /// base must lie in [2, p - 2].
  explicit FingerprintGroup(std::uint64_t base);
  /// Base drawn uniformly from [2, p - 2] by a generator seeded with `seed`.
  static FingerprintGroup from_seed(std::uint64_t seed);

  std::uint64_t base() const noexcept { return base_; }

  static Fingerprint identity() noexcept { return {}; }
  static Fingerprint op(const Fingerprint& x, const Fingerprint& y) noexcept {
    return {add61(mul61(x.value, y.shift), y.value), mul61(x.shift, y.shift)};
  }
  static Fingerprint inverse(const Fingerprint& x) noexcept;

  Fingerprint of_symbol(Symbol c) const noexcept { return {c % kMersenne61, base_}; }
  /// Left-to-right fold of of_symbol over the sequence.
  Fingerprint fold(std::span<const Symbol> s) const noexcept;

 private:
  std::uint64_t base_;
};

/// phi(S[0..i)) for every i, giving O(1) fingerprints of any range.
class PrefixFingerprints {
 public:
  PrefixFingerprints(const FingerprintGroup& group, std::span<const Symbol> text);

  Fingerprint range(std::size_t pos, std::size_t len) const noexcept {
    return {sub61(prefix_[pos + len], mul61(prefix_[pos], power_[len])), power_[len]};
  }
  std::uint64_t power(std::size_t len) const noexcept { return power_[len]; }
  std::size_t size() const noexcept { return prefix_.size() - 1; }

 private:
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> power_;
};

}  // namespace deltakit
