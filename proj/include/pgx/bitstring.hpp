#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pgx {

// Ordered bit sequence; the unit all advice is measured and shipped in.
// File form is ASCII '0'/'1' with an optional trailing newline.
class BitString {
public:
  BitString() = default;
  explicit BitString(std::vector<bool> bits) : bits_(std::move(bits)) {}

  static BitString from_ascii(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }

  void push_back(bool b) { bits_.push_back(b); }
  void append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  }
  // big-endian fixed-width field
  void append_uint(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) bits_.push_back(value >> i & 1);
  }

  BitString prefix(std::size_t count) const {
    return BitString(std::vector<bool>(bits_.begin(), bits_.begin() + count));
  }

  std::string to_ascii() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

private:
  std::vector<bool> bits_;
};

inline BitString BitString::from_ascii(std::string_view text) {
  std::vector<bool> bits;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '0' || ch == '1') {
      bits.push_back(ch == '1');
    } else if (ch == '\n' && i + 1 == text.size()) {
      break;
    } else {
      throw std::runtime_error("advice text: unexpected character at offset " +
                               std::to_string(i));
    }
  }
  return BitString(std::move(bits));
}

// Cursor over a BitString for decoding fixed-width fields.
class BitReader {
public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}

  std::size_t remaining() const { return bits_.size() - pos_; }

  bool read_bit() {
    if (pos_ >= bits_.size()) throw std::out_of_range("bit string exhausted");
    return bits_[pos_++];
  }

  std::uint64_t read_uint(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = v << 1 | (read_bit() ? 1u : 0u);
    return v;
  }

private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

}  // namespace pgx
