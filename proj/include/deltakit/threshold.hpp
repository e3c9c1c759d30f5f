#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace deltakit {

/// Exponent m = ceil(k/2) - 1 of the round-k length threshold (8/7)^m.
constexpr std::uint32_t threshold_exponent(std::uint32_t round_k) noexcept {
  return round_k == 0 ? 0 : (round_k + 1) / 2 - 1;
}

/// len <= (8/7)^(ceil(k/2)-1), decided exactly as len * 7^m <= 8^m.
bool threshold_test(std::uint64_t len, std::uint32_t round_k);

/// floor((8/7)^m), saturated to `cap` once it exceeds it.
std::uint64_t threshold_floor(std::uint32_t exponent, std::uint64_t cap);

/// Per-round integer thresholds for texts of length <= n. Since lengths are
/// integers, len <= (8/7)^m iff len <= floor((8/7)^m); once the floor
/// exceeds n every symbol passes.
class ThresholdSchedule {
 public:
  static constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

  explicit ThresholdSchedule(std::uint64_t n) : n_(n) {}

  /// floor(l_k), or kUnbounded when it exceeds n.
  std::uint64_t floor_ell(std::uint32_t round_k);
  bool passes(std::uint64_t len, std::uint32_t round_k) { return len <= floor_ell(round_k); }

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> by_exponent_;
};

}  // namespace deltakit
