#include "deltakit/fingerprint.hpp"

#include <random>

#include "deltakit/error.hpp"

namespace deltakit {

std::uint64_t pow61(std::uint64_t base, std::uint64_t exp) noexcept {
  std::uint64_t result = 1;
  base %= kMersenne61;
  while (exp > 0) {
    if (exp & 1) result = mul61(result, base);
    base = mul61(base, base);
    exp >>= 1;
  }
  return result;
}

FingerprintGroup::FingerprintGroup(std::uint64_t base) : base_(base) {
  if (base < 2 || base > kMersenne61 - 2) throw InvalidInput("fingerprint base must lie in [2, p-2]");
}

FingerprintGroup FingerprintGroup::from_seed(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, kMersenne61 - 2);
  return FingerprintGroup(dist(rng));
}

Fingerprint FingerprintGroup::inverse(const Fingerprint& x) noexcept {
  // (v, e) o (-v e^-1, e^-1) = (v e^-1 - v e^-1, 1)
  const std::uint64_t e_inv = pow61(x.shift, kMersenne61 - 2);
  return {sub61(0, mul61(x.value, e_inv)), e_inv};
}

Fingerprint FingerprintGroup::fold(std::span<const Symbol> s) const noexcept {
  Fingerprint acc;
  for (Symbol c : s) acc = op(acc, of_symbol(c));
  return acc;
}

PrefixFingerprints::PrefixFingerprints(const FingerprintGroup& group, std::span<const Symbol> text)
    : prefix_(text.size() + 1, 0), power_(text.size() + 1, 1) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    prefix_[i + 1] = add61(mul61(prefix_[i], group.base()), text[i] % kMersenne61);
    power_[i + 1] = mul61(power_[i], group.base());
  }
}

}  // namespace deltakit
