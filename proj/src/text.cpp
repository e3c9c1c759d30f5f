#include "deltakit/text.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "deltakit/error.hpp"

namespace deltakit {

Text Text::from_string(std::string_view s) {
  std::vector<Symbol> v;
  v.reserve(s.size());
  for (char c : s) v.push_back(static_cast<unsigned char>(c));
  return Text(std::move(v));
}

Text Text::from_bytes(std::span<const std::uint8_t> bytes) {
  return Text(std::vector<Symbol>(bytes.begin(), bytes.end()));
}

std::size_t Text::alphabet_size() const {
  std::vector<Symbol> sorted = symbols_;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

Symbol Text::max_symbol() const {
  return symbols_.empty() ? 0 : *std::max_element(symbols_.begin(), symbols_.end());
}

Text Text::slice(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, symbols_.size());
  len = std::min(len, symbols_.size() - pos);
  return Text(std::vector<Symbol>(symbols_.begin() + pos, symbols_.begin() + pos + len));
}

std::string Text::to_string() const {
  std::string s;
  s.reserve(symbols_.size());
  for (Symbol c : symbols_) {
    if (c > 255) throw InvalidInput("symbol " + std::to_string(c) + " does not fit in a byte");
    s.push_back(static_cast<char>(c));
  }
  return s;
}

void require_nonempty(const Text& text, const char* what) {
  if (text.empty()) throw InvalidInput(std::string(what) + ": empty text");
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_binary_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InvalidInput("write failed for " + path.string());
}

Text read_text_file(const std::filesystem::path& path, int symbol_width) {
  auto bytes = read_binary_file(path);
  if (symbol_width == 1) return Text::from_bytes(bytes);
  if (symbol_width != 4) throw InvalidInput("symbol width must be 1 or 4");
  if (bytes.size() % 4 != 0) throw InvalidInput(path.string() + ": length is not a multiple of 4");
  std::vector<Symbol> v(bytes.size() / 4);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = Symbol(bytes[4 * i]) | Symbol(bytes[4 * i + 1]) << 8 | Symbol(bytes[4 * i + 2]) << 16 |
           Symbol(bytes[4 * i + 3]) << 24;
  }
  return Text(std::move(v));
}

void write_text_file(const std::filesystem::path& path, const Text& text, int symbol_width) {
  std::vector<std::uint8_t> bytes;
  if (symbol_width == 1) {
    auto s = text.to_string();
    bytes.assign(s.begin(), s.end());
  } else if (symbol_width == 4) {
    bytes.reserve(text.size() * 4);
    for (Symbol c : text) {
      for (int b = 0; b < 4; ++b) bytes.push_back(static_cast<std::uint8_t>(c >> (8 * b)));
    }
  } else {
    throw InvalidInput("symbol width must be 1 or 4");
  }
  write_binary_file(path, bytes);
}

int natural_symbol_width(const Text& text) { return text.max_symbol() <= 255 ? 1 : 4; }

}  // namespace deltakit
