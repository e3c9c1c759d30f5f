#include "deltakit/threshold.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace deltakit {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int power(unsigned base, std::uint32_t exponent) {
  mp::cpp_int r = 1;
  for (std::uint32_t i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace

bool threshold_test(std::uint64_t len, std::uint32_t round_k) {
  const std::uint32_t m = threshold_exponent(round_k);
  return mp::cpp_int(len) * power(7, m) <= power(8, m);
}

std::uint64_t threshold_floor(std::uint32_t exponent, std::uint64_t cap) {
  const mp::cpp_int q = power(8, exponent) / power(7, exponent);
  if (q > cap) return cap;
  return static_cast<std::uint64_t>(q);
}

std::uint64_t ThresholdSchedule::floor_ell(std::uint32_t round_k) {
  const std::uint32_t m = threshold_exponent(round_k);
  while (by_exponent_.size() <= m) {
    const auto e = static_cast<std::uint32_t>(by_exponent_.size());
    if (!by_exponent_.empty() && by_exponent_.back() == kUnbounded) {
      by_exponent_.push_back(kUnbounded);
      continue;
    }
    const std::uint64_t f = threshold_floor(e, n_ + 1);
    by_exponent_.push_back(f > n_ ? kUnbounded : f);
  }
  return by_exponent_[m];
}

}  // namespace deltakit
