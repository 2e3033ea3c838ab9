#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sdescrypt/bits.hpp"
#include "sdescrypt/cost.hpp"

namespace sdescrypt {

struct RankedKey {
  Key10 key;
  double cost = 0.0;
};

struct OracleResult {
  Key10 best_key;
  double best_cost = 0.0;
  /// All 1024 keys sorted by (cost, key value).
  std::vector<RankedKey> ranking;

  /// 1-based position of `key` in the ranking.
  std::size_t rank_of(Key10 key) const;
  std::uint64_t evaluations() const { return ranking.size(); }
};

/// Scores every key. Ties are broken by the numerically smaller key.
OracleResult brute_force(const KeyScorer& scorer);
OracleResult brute_force(std::span<const std::uint8_t> ciphertext, const LanguageStats& reference,
                         const CostWeights& w);

}  // namespace sdescrypt
