#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deltakit/error.hpp"

namespace deltakit::io {

// Little-endian base-128 varints (LEB128) shared by the on-disk formats.

inline void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_bytes(std::vector<std::uint8_t>& out, std::string_view s) {
  out.insert(out.end(), s.begin(), s.end());
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ == bytes_.size(); }

  std::uint8_t byte() {
    if (pos_ >= bytes_.size()) throw ParseError("unexpected end of stream", pos_);
    return bytes_[pos_++];
  }

  std::uint64_t varint() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      if (pos_ >= bytes_.size()) throw ParseError("truncated varint", start);
      const std::uint8_t b = bytes_[pos_++];
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw ParseError("varint longer than 64 bits", start);
  }

  /// Varint that must not exceed `max`.
  std::uint64_t varint_at_most(std::uint64_t max, const char* what) {
    const std::size_t start = pos_;
    const std::uint64_t v = varint();
    if (v > max) throw ParseError(std::string(what) + " out of range", start);
    return v;
  }

  void expect(std::string_view magic) {
    for (char c : magic) {
      const std::size_t at = pos_;
      if (byte() != static_cast<std::uint8_t>(c)) throw ParseError("bad magic", at);
    }
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace deltakit::io
