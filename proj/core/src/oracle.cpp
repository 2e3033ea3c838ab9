#include "sdescrypt/oracle.hpp"

#include <algorithm>

#include "sdescrypt/error.hpp"

namespace sdescrypt {

std::size_t OracleResult::rank_of(Key10 key) const {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i].key == key) return i + 1;
  }
  throw ValidationError("key " + key.to_string() + " is not in the ranking");
}

OracleResult brute_force(const KeyScorer& scorer) {
  OracleResult result;
  result.ranking.reserve(Key10::kCount);
  for (unsigned k = 0; k < Key10::kCount; ++k) {
    const Key10 key = Key10::wrap(k);
    result.ranking.push_back({key, scorer(key)});
  }
  std::stable_sort(result.ranking.begin(), result.ranking.end(),
                   [](const RankedKey& a, const RankedKey& b) { return a.cost < b.cost; });
  result.best_key = result.ranking.front().key;
  result.best_cost = result.ranking.front().cost;
  return result;
}

OracleResult brute_force(std::span<const std::uint8_t> ciphertext, const LanguageStats& reference,
                         const CostWeights& w) {
  return brute_force(KeyScorer(ciphertext, reference, w));
}

}  // namespace sdescrypt
