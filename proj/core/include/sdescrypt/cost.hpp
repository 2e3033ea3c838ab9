#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sdescrypt/bits.hpp"
#include "sdescrypt/ngram.hpp"

namespace sdescrypt {

/// Weights of the unigram, bigram and trigram terms. Valid weights are
/// non-negative and sum to 1 (within 1e-9).
struct CostWeights {
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 0.0;

  /// Throws ValidationError unless the weights are valid.
  void validate() const;

  double weight(int order) const { return order == 1 ? alpha : order == 2 ? beta : gamma; }

  friend bool operator==(const CostWeights&, const CostWeights&) = default;
};

/// Unigram/bigram/trigram tables for one text; any order may be absent.
struct LanguageStats {
  std::optional<NGramTable> unigram;
  std::optional<NGramTable> bigram;
  std::optional<NGramTable> trigram;

  const std::optional<NGramTable>& at(int order) const;
  std::optional<NGramTable>& at(int order);

  /// Stores `table` in the slot for its order.
  void put(NGramTable table);
};

/// Sum over all n-grams of |a - b|, capped at 2; absent cells count as 0. Orders must match.
double l1_distance(const NGramTable& a, const NGramTable& b);
double l1_distance(std::span<const double> a, std::span<const double> b);

/// alpha*L1(unigrams) + beta*L1(bigrams) + gamma*L1(trigrams) without checking
/// that the weights sum to one. Orders with zero weight are skipped, so their
/// tables may be absent.
double weighted_cost(const LanguageStats& reference, const LanguageStats& observed,
                     const CostWeights& w);

/// weighted_cost after validating `w`. Lower is better; 0 <= result <= 2.
double cost(const LanguageStats& reference, const LanguageStats& observed, const CostWeights& w);

/// Observed statistics for every order that carries weight in `w`.
LanguageStats observe_weighted(std::span<const std::uint8_t> text, const CostWeights& w);

/// Reference statistics for every order that carries weight in `w`.
LanguageStats ingest_weighted(std::span<const std::uint8_t> corpus, const CostWeights& w);

/// Straight-line scoring: decrypt, observe, compare. Throws ValidationError
/// for an empty ciphertext or invalid weights.
double score_key(Key10 candidate, std::span<const std::uint8_t> ciphertext,
                 const LanguageStats& reference, const CostWeights& w);

/// Scores candidate keys against one fixed ciphertext. Decrypts through the
/// shared Codebook and counts windows in place; the result equals score_key
/// bit-for-bit. Immutable after construction, so concurrent calls are safe.
class KeyScorer {
 public:
  KeyScorer(std::span<const std::uint8_t> ciphertext, LanguageStats reference, CostWeights w);

  double operator()(Key10 candidate) const;

  std::span<const std::uint8_t> ciphertext() const { return ciphertext_; }
  const LanguageStats& reference() const { return reference_; }
  const CostWeights& weights() const { return weights_; }

 private:
  std::vector<std::uint8_t> ciphertext_;
  LanguageStats reference_;
  CostWeights weights_;
};

}  // namespace sdescrypt
