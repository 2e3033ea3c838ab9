#include "sdescrypt/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support/fixtures.hpp"

namespace sdescrypt {
namespace {

TEST(BruteForce, RanksEveryKeyOnce) {
  const auto sample = testing::make_sample(41, 300);
  const OracleResult r = brute_force(sample.cipher, testing::bigram_reference(), {});
  ASSERT_EQ(r.ranking.size(), 1024U);
  EXPECT_EQ(r.evaluations(), 1024U);
  std::set<Key10> keys;
  for (const RankedKey& rk : r.ranking) keys.insert(rk.key);
  EXPECT_EQ(keys.size(), 1024U);
  EXPECT_EQ(r.ranking.front().key, r.best_key);
  EXPECT_EQ(r.ranking.front().cost, r.best_cost);
}

TEST(BruteForce, SortedByCostThenKey) {
  const auto sample = testing::make_sample(42, 100);
  const OracleResult r = brute_force(sample.cipher, testing::bigram_reference(), {});
  for (std::size_t i = 1; i < r.ranking.size(); ++i) {
    const RankedKey& a = r.ranking[i - 1];
    const RankedKey& b = r.ranking[i];
    ASSERT_TRUE(a.cost < b.cost || (a.cost == b.cost && a.key < b.key)) << i;
  }
  for (std::size_t i = 0; i < r.ranking.size(); i += 97) {
    EXPECT_EQ(r.rank_of(r.ranking[i].key), i + 1);
  }
}

TEST(BruteForce, TiesGoToSmallerKey) {
  // A repeated digit decrypts to a repeated byte. Every key that yields a
  // non-letter observes nothing and costs exactly the reference mass, 1.
  const std::vector<std::uint8_t> plain(64, '7');
  const auto cipher = encrypt_text(plain, Key10::wrap(300));
  const OracleResult r = brute_force(cipher, testing::bigram_reference(), {});
  unsigned smallest = Key10::kCount;
  std::size_t tied = 0;
  for (unsigned k = 0; k < Key10::kCount; ++k) {
    if (Alphabet::index_of(decrypt_block(Block8::wrap(cipher[0]), Key10::wrap(k)).value()) < 0) {
      smallest = std::min(smallest, k);
      ++tied;
    }
  }
  ASSERT_GT(tied, 1U);
  EXPECT_NEAR(r.best_cost, 1.0, 1e-12);
  EXPECT_EQ(r.best_key, Key10::wrap(smallest));
  EXPECT_EQ(r.ranking[tied - 1].cost, r.best_cost);
  EXPECT_GT(r.ranking[tied].cost, r.best_cost);
}

TEST(BruteForce, TrueKeyInTopFivePercentOnLongText) {
  for (std::uint64_t seed = 43; seed < 48; ++seed) {
    const auto sample = testing::make_sample(seed, 1000);
    const OracleResult r = brute_force(sample.cipher, testing::bigram_reference(), {});
    EXPECT_LE(r.rank_of(sample.key), 51U) << seed;
  }
}

}  // namespace
}  // namespace sdescrypt
