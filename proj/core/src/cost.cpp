#include "sdescrypt/cost.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "sdescrypt/error.hpp"
#include "sdescrypt/sdes.hpp"

namespace sdescrypt {

namespace {

// L1 distance between two probability distributions never exceeds 2.
constexpr double kMaxDistance = 2.0;

}  // namespace

void CostWeights::validate() const {
  for (double v : {alpha, beta, gamma}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(fmt::format("cost weights must be finite and >= 0, got ({}, {}, {})",
                                        alpha, beta, gamma));
    }
  }
  if (std::abs(alpha + beta + gamma - 1.0) > 1e-9) {
    throw ValidationError(
        fmt::format("cost weights must sum to 1, got {} + {} + {}", alpha, beta, gamma));
  }
}

const std::optional<NGramTable>& LanguageStats::at(int order) const {
  switch (order) {
    case 1: return unigram;
    case 2: return bigram;
    case 3: return trigram;
    default: throw ValidationError(fmt::format("n-gram order must be 1, 2 or 3, got {}", order));
  }
}

std::optional<NGramTable>& LanguageStats::at(int order) {
  return const_cast<std::optional<NGramTable>&>(std::as_const(*this).at(order));
}

void LanguageStats::put(NGramTable table) {
  const int order = table.order();
  at(order) = std::move(table);
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("n-gram tables have different orders");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  // Rounding can push the sum for two disjoint distributions a few ulps past 2.
  return std::min(sum, kMaxDistance);
}

double l1_distance(const NGramTable& a, const NGramTable& b) {
  if (a.order() != b.order()) throw ValidationError("n-gram tables have different orders");
  return l1_distance(a.dense(), b.dense());
}

double weighted_cost(const LanguageStats& reference, const LanguageStats& observed,
                     const CostWeights& w) {
  double total = 0.0;
  for (int order = 1; order <= NGramTable::kMaxOrder; ++order) {
    const double weight = w.weight(order);
    if (weight == 0.0) continue;
    const auto& ref = reference.at(order);
    const auto& obs = observed.at(order);
    if (!ref || !obs) {
      throw ValidationError(
          fmt::format("order-{} term has weight {} but its statistics are missing", order, weight));
    }
    total += weight * l1_distance(*ref, *obs);
  }
  return total;
}

double cost(const LanguageStats& reference, const LanguageStats& observed, const CostWeights& w) {
  w.validate();
  return std::min(weighted_cost(reference, observed, w), kMaxDistance);
}

LanguageStats observe_weighted(std::span<const std::uint8_t> text, const CostWeights& w) {
  LanguageStats stats;
  for (int order = 1; order <= NGramTable::kMaxOrder; ++order) {
    if (w.weight(order) != 0.0) stats.put(observe(text, order));
  }
  return stats;
}

LanguageStats ingest_weighted(std::span<const std::uint8_t> corpus, const CostWeights& w) {
  LanguageStats stats;
  for (int order = 1; order <= NGramTable::kMaxOrder; ++order) {
    if (w.weight(order) != 0.0) stats.put(ingest_corpus(corpus, order));
  }
  return stats;
}

double score_key(Key10 candidate, std::span<const std::uint8_t> ciphertext,
                 const LanguageStats& reference, const CostWeights& w) {
  if (ciphertext.empty()) throw ValidationError("ciphertext must not be empty");
  w.validate();
  const std::vector<std::uint8_t> plain = decrypt_text(ciphertext, candidate);
  return std::min(weighted_cost(reference, observe_weighted(plain, w), w), kMaxDistance);
}

KeyScorer::KeyScorer(std::span<const std::uint8_t> ciphertext, LanguageStats reference,
                     CostWeights w)
    : ciphertext_(ciphertext.begin(), ciphertext.end()),
      reference_(std::move(reference)),
      weights_(w) {
  if (ciphertext_.empty()) throw ValidationError("ciphertext must not be empty");
  weights_.validate();
  for (int order = 1; order <= NGramTable::kMaxOrder; ++order) {
    if (weights_.weight(order) != 0.0 && !reference_.at(order)) {
      throw ValidationError(
          fmt::format("order-{} term has weight but no reference table was supplied", order));
    }
  }
  Codebook::instance();
}

double KeyScorer::operator()(Key10 candidate) const {
  const auto table = Codebook::instance().decryption(candidate);

  // Letter indices of the decryption; -1 marks bytes outside the alphabet.
  std::array<std::int8_t, 256> letter_of{};
  for (std::size_t v = 0; v < 256; ++v) {
    letter_of[v] = static_cast<std::int8_t>(Alphabet::index_of(table[v]));
  }
  thread_local std::vector<std::uint8_t> letters;
  letters.clear();
  for (std::uint8_t byte : ciphertext_) {
    const int letter = letter_of[byte];
    if (letter >= 0) letters.push_back(static_cast<std::uint8_t>(letter));
  }

  thread_local std::vector<std::uint32_t> counts;
  thread_local std::vector<double> observed;
  double total = 0.0;
  for (int order = 1; order <= NGramTable::kMaxOrder; ++order) {
    const double weight = weights_.weight(order);
    if (weight == 0.0) continue;
    const std::size_t cells = cell_count(order);
    counts.assign(cells, 0);
    const std::size_t n = static_cast<std::size_t>(order);
    std::uint64_t windows = 0;
    for (std::size_t end = n; end <= letters.size(); ++end) {
      std::size_t index = 0;
      for (std::size_t i = end - n; i < end; ++i) index = index * Alphabet::kSize + letters[i];
      ++counts[index];
      ++windows;
    }
    observed.assign(cells, 0.0);
    if (windows != 0) {
      const double denom = static_cast<double>(windows);
      for (std::size_t i = 0; i < cells; ++i) observed[i] = static_cast<double>(counts[i]) / denom;
    }
    total += weight * l1_distance(reference_.at(order)->dense(), observed);
  }
  return std::min(total, kMaxDistance);
}

}  // namespace sdescrypt
