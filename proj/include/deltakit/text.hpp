#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deltakit {

using Symbol = std::uint32_t;

/// Immutable sequence of integer symbols.
///
/// Symbols are arbitrary 32-bit values; every algorithm that needs a dense
/// alphabet rank-reduces them first, so the effective alphabet is always
/// [0..sigma) with sigma <= n.
class Text {
 public:
  Text() = default;
  explicit Text(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  static Text from_string(std::string_view s);
  static Text from_bytes(std::span<const std::uint8_t> bytes);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  /// Number of distinct symbols present.
  std::size_t alphabet_size() const;
  Symbol max_symbol() const;

  /// Substring [pos, pos + len), clamped to the text.
  Text slice(std::size_t pos, std::size_t len) const;

  /// Byte rendering; symbols above 255 raise InvalidInput.
  std::string to_string() const;

  friend bool operator==(const Text&, const Text&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Throws InvalidInput when the text is empty; used by every measure.
void require_nonempty(const Text& text, const char* what);

/// Reads a text file. symbol_width 1: one symbol per byte; 4: little-endian u32.
Text read_text_file(const std::filesystem::path& path, int symbol_width = 1);
void write_text_file(const std::filesystem::path& path, const Text& text, int symbol_width);

/// 1 if every symbol fits in a byte, otherwise 4.
int natural_symbol_width(const Text& text);

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace deltakit
