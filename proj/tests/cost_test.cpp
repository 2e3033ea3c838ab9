#include "sdescrypt/cost.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "sdescrypt/error.hpp"
#include "sdescrypt/sdes.hpp"
#include "support/fixtures.hpp"

namespace sdescrypt {
namespace {

using Rows = std::vector<std::pair<std::string, double>>;

LanguageStats bigrams(const Rows& rows) {
  LanguageStats s;
  s.put(NGramTable::from_entries(2, rows));
  return s;
}

LanguageStats unigrams(const Rows& rows) {
  LanguageStats s;
  s.put(NGramTable::from_entries(1, rows));
  return s;
}

// Random distribution over a few n-grams of the given order.
NGramTable random_table(Rng& rng, int order) {
  std::vector<std::uint64_t> counts(cell_count(order), 0);
  const int draws = 1 + static_cast<int>(uniform_below(rng, 60));
  for (int i = 0; i < draws; ++i) ++counts[uniform_below(rng, std::min<std::size_t>(counts.size(), 40))];
  return NGramTable::from_counts(order, counts);
}

LanguageStats random_stats(Rng& rng) {
  LanguageStats s;
  for (int order = 1; order <= 3; ++order) s.put(random_table(rng, order));
  return s;
}

CostWeights random_weights(Rng& rng) {
  const double a = uniform_unit(rng), b = uniform_unit(rng) * (1.0 - a);
  return {a, b, 1.0 - a - b};
}

TEST(CostWeights, DefaultIsBigramOnly) {
  const CostWeights w;
  EXPECT_EQ(w.alpha, 0.0);
  EXPECT_EQ(w.beta, 1.0);
  EXPECT_EQ(w.gamma, 0.0);
  EXPECT_NO_THROW(w.validate());
}

TEST(CostWeights, ValidationRejectsBadSums) {
  EXPECT_THROW((CostWeights{0.5, 0.5, 0.5}.validate()), ValidationError);
  EXPECT_THROW((CostWeights{-0.5, 1.5, 0.0}.validate()), ValidationError);
  EXPECT_NO_THROW((CostWeights{0.2, 0.3, 0.5}.validate()));
}

TEST(Cost, IdenticalTablesCostZero) {
  const LanguageStats t = bigrams({{"AB", 0.6}, {"BA", 0.4}});
  EXPECT_EQ(cost(t, t, CostWeights{}), 0.0);
}

TEST(Cost, DisjointUnigrams) {
  EXPECT_EQ(cost(unigrams({{"A", 1.0}}), unigrams({{"B", 1.0}}), {1, 0, 0}), 2.0);
}

TEST(Cost, HandSummedBigramExample) {
  // |0.6-0.5| + |0.4-0| + |0-0.5| over the key union {AB, BA, BB} is 0.1 + 0.4 + 0.5.
  const double c = cost(bigrams({{"AB", 0.6}, {"BA", 0.4}}), bigrams({{"AB", 0.5}, {"BB", 0.5}}),
                        {0, 1, 0});
  EXPECT_NEAR(c, 0.1 + 0.4 + 0.5, 1e-12);
  EXPECT_NEAR(c, 1.0, 1e-12);
}

TEST(Cost, InvalidWeightsRejected) {
  const LanguageStats t = bigrams({{"AB", 1.0}});
  EXPECT_THROW(cost(t, t, {0.0, 0.9, 0.0}), ValidationError);
}

TEST(Cost, MissingTableForWeightedOrderRejected) {
  const LanguageStats t = bigrams({{"AB", 1.0}});
  EXPECT_THROW(cost(t, t, {0.5, 0.5, 0.0}), ValidationError);
  // Zero-weight orders may be absent.
  EXPECT_NO_THROW(cost(t, t, {0.0, 1.0, 0.0}));
}

TEST(Cost, EmptyObservationCostsFullReferenceMass) {
  LanguageStats empty;
  empty.put(NGramTable(2));
  const LanguageStats ref = bigrams({{"AB", 0.6}, {"BA", 0.4}});
  EXPECT_NEAR(cost(ref, empty, {}), 1.0, 1e-15);
}

TEST(CostProperties, MetricAndBounds) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const LanguageStats a = random_stats(rng), b = random_stats(rng), c = random_stats(rng);
    const CostWeights w = random_weights(rng);
    ASSERT_EQ(cost(a, a, w), 0.0);
    const double ab = cost(a, b, w);
    ASSERT_EQ(ab, cost(b, a, w));
    ASSERT_GE(ab, 0.0);
    ASSERT_LE(ab, 2.0 + 1e-12);
    for (int order = 1; order <= 3; ++order) {
      const double xy = l1_distance(*a.at(order), *b.at(order));
      const double yz = l1_distance(*b.at(order), *c.at(order));
      const double xz = l1_distance(*a.at(order), *c.at(order));
      ASSERT_LE(xz, xy + yz + 1e-12);
    }
  }
}

TEST(CostProperties, DoublingBetaDoublesBigramTerm) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const LanguageStats a = random_stats(rng), b = random_stats(rng);
    const double once = weighted_cost(a, b, {0, 1, 0});
    ASSERT_EQ(weighted_cost(a, b, {0, 2, 0}), 2.0 * once);
  }
}

TEST(CostProperties, TrigramPathIsExercised) {
  const auto& text = testing::corpus();
  const std::span<const std::uint8_t> head(text.data(), 5000);
  const std::span<const std::uint8_t> tail(text.data() + text.size() - 5000, 5000);
  const CostWeights tri{0, 0, 1};
  const double c = cost(ingest_weighted(head, tri), observe_weighted(tail, tri), tri);
  EXPECT_GT(c, 0.0);
  EXPECT_LT(c, 2.0);
}

TEST(ScoreKey, TrueKeyRecoversExcerptCost) {
  const auto sample = testing::make_sample(11, 600);
  const auto& ref = testing::bigram_reference();
  const double expected = cost(ref, observe_weighted(sample.plain, {}), {});
  EXPECT_EQ(score_key(sample.key, sample.cipher, ref, {}), expected);
  EXPECT_GT(expected, 0.0);
}

TEST(ScoreKey, IsDeterministic) {
  const auto sample = testing::make_sample(12, 300);
  const auto& ref = testing::bigram_reference();
  for (unsigned k : {0U, 513U, 1023U}) {
    EXPECT_EQ(score_key(Key10::wrap(k), sample.cipher, ref, {}),
              score_key(Key10::wrap(k), sample.cipher, ref, {}));
  }
}

TEST(ScoreKey, EmptyCiphertextRejected) {
  EXPECT_THROW(score_key(Key10::wrap(1), {}, testing::bigram_reference(), {}), ValidationError);
  EXPECT_THROW(KeyScorer({}, testing::bigram_reference(), {}), ValidationError);
}

TEST(KeyScorer, AgreesWithStraightLineScoringBitForBit) {
  const auto sample = testing::make_sample(13, 400);
  const CostWeights mixed{0.2, 0.5, 0.3};
  const LanguageStats ref = ingest_weighted(testing::corpus(), mixed);
  const KeyScorer fast(sample.cipher, ref, mixed);
  const KeyScorer bigram_only(sample.cipher, testing::bigram_reference(), {});
  for (unsigned k = 0; k < Key10::kCount; ++k) {
    const Key10 key = Key10::wrap(k);
    ASSERT_EQ(fast(key), score_key(key, sample.cipher, ref, mixed)) << k;
    ASSERT_EQ(bigram_only(key), score_key(key, sample.cipher, testing::bigram_reference(), {})) << k;
  }
}

TEST(ScoreKey, TrueKeyInBottomDecileOfExhaustiveScan) {
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    const auto sample = testing::make_sample(seed, 1000);
    const KeyScorer scorer(sample.cipher, testing::bigram_reference(), {});
    const double truth = scorer(sample.key);
    int better = 0;
    for (unsigned k = 0; k < Key10::kCount; ++k) {
      if (scorer(Key10::wrap(k)) < truth) ++better;
    }
    EXPECT_LT(better, 103) << "seed " << seed;
  }
}

}  // namespace
}  // namespace sdescrypt
