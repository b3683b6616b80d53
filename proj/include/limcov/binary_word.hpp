#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "limcov/error.hpp"

namespace limcov {

/// A finite binary word of length at most 64, naming the cylinder [w] of all
/// infinite sequences with prefix w. Bits are stored left-aligned so that
/// integer order on `bits()` followed by length gives lexicographic order with
/// every prefix sorting before its extensions.
class BinaryWord {
 public:
  static constexpr unsigned max_length = 64;

  constexpr BinaryWord() = default;

  /// Word of `length` bits taken from the low end of `value`, most significant
  /// of those first. BinaryWord::from_index(2, 0b01) is "01".
  static constexpr BinaryWord from_index(unsigned length, std::uint64_t value) {
    BinaryWord w;
    w.length_ = length;
    w.bits_ = length == 0 ? 0 : value << (max_length - length);
    return w;
  }

  static std::optional<BinaryWord> from_string(std::string_view text) {
    if (text == "e") return BinaryWord{};
    if (text.empty() || text.size() > max_length) return std::nullopt;
    BinaryWord w;
    for (char c : text) {
      if (c != '0' && c != '1') return std::nullopt;
      w = w.child(c == '1');
    }
    return w;
  }

  static BinaryWord parse(std::string_view text) {
    auto w = from_string(text);
    if (!w) throw InputError("malformed binary word '" + std::string(text) + "'");
    return *w;
  }

  constexpr unsigned length() const { return length_; }
  constexpr bool is_root() const { return length_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  /// The word read as an unsigned integer; inverse of from_index.
  constexpr std::uint64_t index() const {
    return length_ == 0 ? 0 : bits_ >> (max_length - length_);
  }

  constexpr bool bit(unsigned position) const {
    return (bits_ >> (max_length - 1 - position)) & 1U;
  }

  constexpr BinaryWord child(bool one) const {
    if (length_ >= max_length) throw InputError("binary word longer than 64 bits");
    BinaryWord w = *this;
    ++w.length_;
    if (one) w.bits_ |= std::uint64_t{1} << (max_length - w.length_);
    return w;
  }

  constexpr BinaryWord parent() const { return prefix(length_ == 0 ? 0 : length_ - 1); }

  constexpr BinaryWord prefix(unsigned length) const {
    BinaryWord w;
    w.length_ = length < length_ ? length : length_;
    w.bits_ = bits_ & mask(w.length_);
    return w;
  }

  constexpr BinaryWord sibling() const {
    BinaryWord w = *this;
    w.bits_ ^= std::uint64_t{1} << (max_length - length_);
    return w;
  }

  constexpr bool is_prefix_of(const BinaryWord& other) const {
    return length_ <= other.length_ && (other.bits_ & mask(length_)) == bits_;
  }

  constexpr bool comparable(const BinaryWord& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }

  std::string to_string() const {
    if (length_ == 0) return "e";
    std::string s(length_, '0');
    for (unsigned i = 0; i < length_; ++i)
      if (bit(i)) s[i] = '1';
    return s;
  }

  /// Lexicographic, prefixes first.
  friend constexpr std::strong_ordering operator<=>(const BinaryWord& a,
                                                    const BinaryWord& b) {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    return a.length_ <=> b.length_;
  }
  friend constexpr bool operator==(const BinaryWord&, const BinaryWord&) = default;

 private:
  static constexpr std::uint64_t mask(unsigned length) {
    return length == 0 ? 0 : ~std::uint64_t{0} << (max_length - length);
  }

  std::uint64_t bits_ = 0;
  unsigned length_ = 0;
};

/// Shorter words first, then lexicographic: e, 0, 1, 00, 01, ...
struct LengthLexLess {
  constexpr bool operator()(const BinaryWord& a, const BinaryWord& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.bits() < b.bits();
  }
};

/// Calls `fn` on every word of length <= depth in length-lex order.
template <typename Fn>
void for_each_word_up_to(unsigned depth, Fn&& fn) {
  for (unsigned len = 0; len <= depth; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v)
      fn(BinaryWord::from_index(len, v));
}

}  // namespace limcov

template <>
struct std::hash<limcov::BinaryWord> {
  std::size_t operator()(const limcov::BinaryWord& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.bits() ^ (std::uint64_t{w.length()} * 0x9e3779b97f4a7c15ULL));
  }
};
