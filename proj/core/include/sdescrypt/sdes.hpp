#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdescrypt/bits.hpp"

namespace sdescrypt {

/// A bit permutation/selection table. Entries are 1-based source positions;
/// the output width is the table length. E/P and P8 select rather than permute
/// and may repeat or drop positions.
struct PermSpec {
  std::span<const int> table;
};

/// 4x4 grid of 2-bit outputs, indexed [row][column].
using SBox = std::array<std::array<std::uint8_t, 4>, 4>;

namespace tables {

inline constexpr std::array<int, 10> kP10{3, 5, 2, 7, 4, 10, 1, 9, 8, 6};
inline constexpr std::array<int, 8> kP8{6, 3, 7, 4, 8, 5, 10, 9};
inline constexpr std::array<int, 8> kIP{2, 6, 3, 1, 4, 8, 5, 7};
inline constexpr std::array<int, 8> kIPInverse{4, 1, 3, 5, 7, 2, 8, 6};
inline constexpr std::array<int, 8> kExpansion{4, 1, 2, 3, 2, 3, 4, 1};
inline constexpr std::array<int, 4> kP4{2, 4, 3, 1};

inline constexpr SBox kS0{{{1, 0, 3, 2}, {3, 2, 1, 0}, {0, 2, 1, 3}, {3, 1, 3, 2}}};
inline constexpr SBox kS1{{{0, 1, 2, 3}, {2, 0, 1, 3}, {3, 0, 1, 0}, {2, 1, 0, 3}}};

}  // namespace tables

inline constexpr PermSpec kP10{tables::kP10};
inline constexpr PermSpec kP8{tables::kP8};
inline constexpr PermSpec kIP{tables::kIP};
inline constexpr PermSpec kIPInverse{tables::kIPInverse};
inline constexpr PermSpec kExpansion{tables::kExpansion};
inline constexpr PermSpec kP4{tables::kP4};

/// output[i] = input[table[i]], 1-based. Throws ConfigError if the table names
/// a position outside [1, input.width()].
BitString permute(PermSpec spec, BitString input);

/// Circular left-shift amounts applied to each 5-bit half during the key
/// schedule: `first` before K1, then `second` more before K2.
struct ShiftSchedule {
  int first = 1;
  int second = 2;
};

struct SubKeys {
  SubKey8 k1;
  SubKey8 k2;
};

SubKeys key_schedule(Key10 key, ShiftSchedule shifts = {});

/// S-box lookup: row from input bits 1 and 4, column from bits 2 and 3.
BitString sbox_lookup(const SBox& box, BitString four_bits);

/// The mixing function f(R, SK) = P4(S0(l) || S1(r)) with (l, r) = E/P(R) xor SK.
Nibble mix(Nibble right, SubKey8 subkey);

/// fK(L, R) = (L xor f(R, SK), R).
Block8 fk(Block8 block, SubKey8 subkey);

/// SW: swaps the left and right nibbles.
Block8 switch_halves(Block8 block);

Block8 encrypt_block(Block8 plain, Key10 key);
Block8 decrypt_block(Block8 cipher, Key10 key);

/// Per-byte (ECB) transform; output length equals input length.
std::vector<std::uint8_t> encrypt_text(std::span<const std::uint8_t> plain, Key10 key);
std::vector<std::uint8_t> decrypt_text(std::span<const std::uint8_t> cipher, Key10 key);

/// Lower-case hex, bytes separated by single spaces.
std::string hex_dump(std::span<const std::uint8_t> bytes);

/// Precomputed decryption tables for all 1024 keys (256 KiB). Built once on
/// first use; immutable and safe to share across threads afterwards.
class Codebook {
 public:
  static const Codebook& instance();

  std::span<const std::uint8_t, 256> decryption(Key10 key) const {
    return std::span<const std::uint8_t, 256>(decrypt_.data() + key.value() * 256U, 256);
  }

 private:
  Codebook();
  std::vector<std::uint8_t> decrypt_;
};

}  // namespace sdescrypt
