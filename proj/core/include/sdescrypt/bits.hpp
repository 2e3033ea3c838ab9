#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "sdescrypt/error.hpp"

namespace sdescrypt {

/// Variable-width bit string of at most 32 bits. Bit 1 is the leftmost
/// (most significant) position, matching how SDES tables are written.
class BitString {
 public:
  constexpr BitString() = default;
  constexpr BitString(std::uint32_t value, int width)
      : value_(width >= 32 ? value : value & ((1U << width) - 1U)), width_(width) {}

  /// Parses a string of '0'/'1' characters, leftmost character is bit 1.
  static BitString parse(std::string_view text);

  constexpr std::uint32_t value() const { return value_; }
  constexpr int width() const { return width_; }

  /// 1-based access; position 1 is the most significant bit.
  constexpr int bit(int position) const {
    return static_cast<int>((value_ >> (width_ - position)) & 1U);
  }

  /// The first `count` bits (leftmost).
  constexpr BitString head(int count) const {
    return {value_ >> (width_ - count), count};
  }
  /// The last `count` bits (rightmost).
  constexpr BitString tail(int count) const { return {value_, count}; }

  constexpr BitString rotate_left(int amount) const {
    amount %= width_;
    if (amount == 0) return *this;
    return {(value_ << amount) | (value_ >> (width_ - amount)), width_};
  }

  std::string to_string() const;

  friend constexpr BitString concat(BitString left, BitString right) {
    return {(left.value_ << right.width_) | right.value_, left.width_ + right.width_};
  }
  friend constexpr BitString operator^(BitString a, BitString b) {
    return {a.value_ ^ b.value_, a.width_};
  }
  friend constexpr bool operator==(BitString, BitString) = default;

 private:
  std::uint32_t value_ = 0;
  int width_ = 0;
};

/// Fixed-width bit value with a domain tag, so a key cannot be passed where a
/// block is expected.
template <int Width, class Tag>
class FixedBits {
  static_assert(Width > 0 && Width <= 16);

 public:
  using value_type = std::uint16_t;
  static constexpr int kWidth = Width;
  static constexpr unsigned kCount = 1U << Width;

  constexpr FixedBits() = default;

  /// Throws ValidationError if `value` does not fit in Width bits.
  static FixedBits from_value(unsigned value) {
    if (value >= kCount) {
      throw ValidationError("value " + std::to_string(value) + " does not fit in " +
                            std::to_string(Width) + " bits");
    }
    return FixedBits(static_cast<value_type>(value));
  }

  /// Masks to Width bits; for internal composition where the width is known.
  static constexpr FixedBits wrap(unsigned value) {
    return FixedBits(static_cast<value_type>(value & (kCount - 1U)));
  }

  static FixedBits from_bits(BitString bits) {
    if (bits.width() != Width) {
      throw ConfigError("expected " + std::to_string(Width) + " bits, got " +
                        std::to_string(bits.width()));
    }
    return wrap(bits.value());
  }

  /// Exactly Width characters from {0,1}; leftmost character is bit 1.
  static FixedBits parse(std::string_view text) {
    if (text.size() != static_cast<std::size_t>(Width)) {
      throw ValidationError("expected exactly " + std::to_string(Width) +
                            " characters from {0,1}, got '" + std::string(text) + "'");
    }
    return from_bits(BitString::parse(text));
  }

  constexpr value_type value() const { return value_; }
  constexpr BitString bits() const { return {value_, Width}; }
  constexpr int bit(int position) const { return bits().bit(position); }

  constexpr FixedBits flipped(int position) const {
    return wrap(value_ ^ (1U << (Width - position)));
  }
  constexpr FixedBits complement() const { return wrap(~static_cast<unsigned>(value_)); }

  std::string to_string() const { return bits().to_string(); }

  friend constexpr auto operator<=>(FixedBits, FixedBits) = default;

 private:
  constexpr explicit FixedBits(value_type value) : value_(value) {}
  value_type value_ = 0;
};

struct KeyTag {};
struct SubKeyTag {};
struct BlockTag {};
struct NibbleTag {};

using Key10 = FixedBits<10, KeyTag>;
using SubKey8 = FixedBits<8, SubKeyTag>;
using Block8 = FixedBits<8, BlockTag>;
using Nibble = FixedBits<4, NibbleTag>;

/// Number of positions where the two keys agree (0..10).
constexpr int bits_matched(Key10 a, Key10 b) {
  return Key10::kWidth - std::popcount(static_cast<unsigned>(a.value() ^ b.value()));
}

}  // namespace sdescrypt
