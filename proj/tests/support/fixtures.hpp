#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sdescrypt/cost.hpp"
#include "sdescrypt/experiment.hpp"
#include "sdescrypt/ngram.hpp"
#include "sdescrypt/random.hpp"
#include "sdescrypt/sdes.hpp"

namespace sdescrypt::testing {

inline std::filesystem::path data_dir() { return SDESCRYPT_TEST_DATA_DIR; }

inline const std::vector<std::uint8_t>& corpus() {
  static const std::vector<std::uint8_t> bytes = read_file_bytes(data_dir() / "english_corpus.txt");
  return bytes;
}

/// Bigram reference built from the bundled corpus.
inline const LanguageStats& bigram_reference() {
  static const LanguageStats stats = ingest_weighted(corpus(), CostWeights{});
  return stats;
}

struct Sample {
  std::vector<std::uint8_t> plain;
  std::vector<std::uint8_t> cipher;
  Key10 key;
};

/// A seeded corpus excerpt encrypted under a seeded uniform key.
inline Sample make_sample(std::uint64_t seed, std::size_t length) {
  Rng rng(seed);
  Sample s;
  s.plain = generate_message(corpus(), length, rng);
  s.key = Key10::wrap(static_cast<unsigned>(uniform_below(rng, Key10::kCount)));
  s.cipher = encrypt_text(s.plain, s.key);
  return s;
}

}  // namespace sdescrypt::testing
