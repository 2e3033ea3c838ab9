#include "sdescrypt/sdes.hpp"

#include <fmt/format.h>

namespace sdescrypt {

BitString BitString::parse(std::string_view text) {
  if (text.empty() || text.size() > 32) {
    throw ValidationError(fmt::format("bit string must have 1..32 characters, got {}", text.size()));
  }
  std::uint32_t value = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ValidationError(fmt::format("bit string '{}' contains a character other than 0/1", text));
    }
    value = (value << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return {value, static_cast<int>(text.size())};
}

std::string BitString::to_string() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int i = 1; i <= width_; ++i) {
    if (bit(i)) out[static_cast<std::size_t>(i - 1)] = '1';
  }
  return out;
}

BitString permute(PermSpec spec, BitString input) {
  std::uint32_t out = 0;
  for (int source : spec.table) {
    if (source < 1 || source > input.width()) {
      throw ConfigError(fmt::format("permutation entry {} outside input width {}", source,
                                    input.width()));
    }
    out = (out << 1) | static_cast<std::uint32_t>(input.bit(source));
  }
  return {out, static_cast<int>(spec.table.size())};
}

SubKeys key_schedule(Key10 key, ShiftSchedule shifts) {
  const BitString p10 = permute(kP10, key.bits());
  BitString left = p10.head(5).rotate_left(shifts.first);
  BitString right = p10.tail(5).rotate_left(shifts.first);
  const SubKey8 k1 = SubKey8::from_bits(permute(kP8, concat(left, right)));
  left = left.rotate_left(shifts.second);
  right = right.rotate_left(shifts.second);
  const SubKey8 k2 = SubKey8::from_bits(permute(kP8, concat(left, right)));
  return {k1, k2};
}

BitString sbox_lookup(const SBox& box, BitString four_bits) {
  const int row = four_bits.bit(1) * 2 + four_bits.bit(4);
  const int column = four_bits.bit(2) * 2 + four_bits.bit(3);
  return {box[static_cast<std::size_t>(row)][static_cast<std::size_t>(column)], 2};
}

Nibble mix(Nibble right, SubKey8 subkey) {
  const BitString mixed = permute(kExpansion, right.bits()) ^ subkey.bits();
  const BitString substituted = concat(sbox_lookup(tables::kS0, mixed.head(4)),
                                       sbox_lookup(tables::kS1, mixed.tail(4)));
  return Nibble::from_bits(permute(kP4, substituted));
}

Block8 fk(Block8 block, SubKey8 subkey) {
  const BitString bits = block.bits();
  const Nibble left = Nibble::from_bits(bits.head(4));
  const Nibble right = Nibble::from_bits(bits.tail(4));
  const unsigned new_left = left.value() ^ mix(right, subkey).value();
  return Block8::wrap((new_left << 4) | right.value());
}

Block8 switch_halves(Block8 block) {
  const unsigned v = block.value();
  return Block8::wrap(((v & 0x0FU) << 4) | (v >> 4));
}

namespace {

Block8 apply(PermSpec spec, Block8 block) { return Block8::from_bits(permute(spec, block.bits())); }

Block8 run_rounds(Block8 input, SubKey8 first, SubKey8 second) {
  Block8 b = apply(kIP, input);
  b = fk(b, first);
  b = switch_halves(b);
  b = fk(b, second);
  return apply(kIPInverse, b);
}

}  // namespace

Block8 encrypt_block(Block8 plain, Key10 key) {
  const SubKeys keys = key_schedule(key);
  return run_rounds(plain, keys.k1, keys.k2);
}

Block8 decrypt_block(Block8 cipher, Key10 key) {
  const SubKeys keys = key_schedule(key);
  return run_rounds(cipher, keys.k2, keys.k1);
}

namespace {

std::vector<std::uint8_t> transform_text(std::span<const std::uint8_t> in, SubKey8 first,
                                         SubKey8 second) {
  std::array<std::uint8_t, 256> table{};
  for (unsigned v = 0; v < 256; ++v) {
    table[v] = static_cast<std::uint8_t>(run_rounds(Block8::wrap(v), first, second).value());
  }
  std::vector<std::uint8_t> out;
  out.reserve(in.size());
  for (std::uint8_t byte : in) out.push_back(table[byte]);
  return out;
}

}  // namespace

std::vector<std::uint8_t> encrypt_text(std::span<const std::uint8_t> plain, Key10 key) {
  const SubKeys keys = key_schedule(key);
  return transform_text(plain, keys.k1, keys.k2);
}

std::vector<std::uint8_t> decrypt_text(std::span<const std::uint8_t> cipher, Key10 key) {
  const SubKeys keys = key_schedule(key);
  return transform_text(cipher, keys.k2, keys.k1);
}

std::string hex_dump(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 3);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i != 0) out.push_back(' ');
    out += fmt::format("{:02x}", bytes[i]);
  }
  return out;
}

Codebook::Codebook() : decrypt_(Key10::kCount * 256U) {
  for (unsigned k = 0; k < Key10::kCount; ++k) {
    const SubKeys keys = key_schedule(Key10::wrap(k));
    for (unsigned v = 0; v < 256; ++v) {
      decrypt_[k * 256U + v] =
          static_cast<std::uint8_t>(run_rounds(Block8::wrap(v), keys.k2, keys.k1).value());
    }
  }
}

const Codebook& Codebook::instance() {
  static const Codebook book;
  return book;
}

}  // namespace sdescrypt
