#include "sdescrypt/ngram.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sdescrypt/error.hpp"
#include "sdescrypt/random.hpp"
#include "support/fixtures.hpp"

namespace sdescrypt {
namespace {

TEST(Alphabet, CaseInsensitiveLettersOnly) {
  EXPECT_EQ(Alphabet::index_of('A'), 0);
  EXPECT_EQ(Alphabet::index_of('z'), 25);
  EXPECT_EQ(Alphabet::index_of(' '), -1);
  EXPECT_EQ(Alphabet::index_of(0xC4), -1);
  EXPECT_EQ(Alphabet::symbol(2), 'C');
}

TEST(Ingest, SingleSymbolCorpus) {
  const NGramTable t = ingest_corpus("AAAA", 1);
  EXPECT_DOUBLE_EQ(t.frequency("A"), 1.0);
  EXPECT_EQ(t.entries().size(), 1U);
}

TEST(Ingest, ThreeBigramWindows) {
  const NGramTable t = ingest_corpus("ABAB", 2);
  EXPECT_DOUBLE_EQ(t.frequency("AB"), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.frequency("BA"), 1.0 / 3.0);
  EXPECT_EQ(t.frequency("BB"), 0.0);
}

TEST(Ingest, WindowsBridgeExcludedBytes) {
  // Letters after filtering: ABAB.
  EXPECT_EQ(ingest_corpus("a-B, a\nb!", 2), ingest_corpus("ABAB", 2));
}

TEST(Ingest, NoLettersIsEmptyCorpusError) {
  EXPECT_THROW(ingest_corpus("1234 ,.;", 1), EmptyCorpusError);
  EXPECT_THROW(ingest_corpus("A", 2), EmptyCorpusError);
  EXPECT_THROW(ingest_corpus("", 1), EmptyCorpusError);
}

TEST(Ingest, RejectsBadOrder) {
  EXPECT_THROW(ingest_corpus("ABC", 0), ValidationError);
  EXPECT_THROW(ingest_corpus("ABC", 4), ValidationError);
}

TEST(Ingest, BundledCorpusRanksThAboveQz) {
  const NGramTable t = ingest_corpus(testing::corpus(), 2);
  EXPECT_GT(t.frequency("TH"), t.frequency("QZ"));
  EXPECT_GT(t.frequency("HE"), 0.02);
  EXPECT_NEAR(t.total(), 1.0, 1e-9);
}

TEST(Observe, NoLettersGivesEmptyTable) {
  const NGramTable t = observe("12 34", 2);
  EXPECT_TRUE(t.empty());
  EXPECT_EQ(t.total(), 0.0);
}

TEST(Observe, MatchesIngestOnLetterText) {
  EXPECT_EQ(observe("the cat sat", 3), ingest_corpus("the cat sat", 3));
}

TEST(NGramTable, FrequenciesSumToOneProperty) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::string text(2 + uniform_below(rng, 300), ' ');
    for (char& c : text) c = static_cast<char>(uniform_below(rng, 128));
    for (int order = 1; order <= 3; ++order) {
      const NGramTable t = observe(text, order);
      for (double f : t.dense()) ASSERT_GE(f, 0.0);
      if (!t.empty()) ASSERT_NEAR(t.total(), 1.0, 1e-9);
    }
  }
}

TEST(NGramTable, FromEntriesValidates) {
  using Rows = std::vector<std::pair<std::string, double>>;
  EXPECT_THROW(NGramTable::from_entries(2, Rows{{"A", 1.0}}), ValidationError);
  EXPECT_THROW(NGramTable::from_entries(2, Rows{{"ab", 1.0}}), ValidationError);
  EXPECT_THROW(NGramTable::from_entries(2, Rows{{"AB", -0.1}}), ValidationError);
  EXPECT_THROW(NGramTable::from_entries(2, Rows{{"AB", 0.5}, {"AB", 0.5}}), ValidationError);
  const NGramTable t = NGramTable::from_entries(2, Rows{{"AB", 0.6}, {"BA", 0.4}});
  EXPECT_EQ(t.frequency("ab"), 0.6);
}

TEST(Tsv, SingleRowFormat) {
  std::ostringstream out;
  write_tsv(out, ingest_corpus("AAAA", 1));
  EXPECT_EQ(out.str(), "A\t1.000000\n");
}

TEST(Tsv, RoundTripIsExact) {
  for (int order = 1; order <= 3; ++order) {
    const NGramTable t = ingest_corpus(testing::corpus(), order);
    std::stringstream buffer;
    write_tsv(buffer, t);
    const NGramTable back = read_tsv(buffer);
    ASSERT_EQ(back, t) << "order " << order;
  }
}

TEST(Tsv, RejectsMalformedInput) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_tsv(in);
  };
  EXPECT_THROW(parse(""), ValidationError);
  EXPECT_THROW(parse("A 1.0\n"), ValidationError);
  EXPECT_THROW(parse("A\t0.5\nAB\t0.5\n"), ValidationError);
  EXPECT_THROW(parse("A\t0.5\nB\t0.4\n"), ValidationError);
  EXPECT_THROW(parse("A\tx\n"), ValidationError);
  EXPECT_THROW(parse("a\t1.0\n"), ValidationError);
  EXPECT_NO_THROW(parse("A\t0.5\r\nB\t0.5000001\n"));
}

TEST(Tsv, ShippedTablesMatchCorpus) {
  const char* names[] = {"english_unigrams.tsv", "english_bigrams.tsv", "english_trigrams.tsv"};
  for (int order = 1; order <= 3; ++order) {
    const NGramTable shipped = load_tsv(testing::data_dir() / names[order - 1]);
    EXPECT_EQ(shipped, ingest_corpus(testing::corpus(), order)) << names[order - 1];
  }
}

TEST(Tsv, MissingFileIsIoError) {
  EXPECT_THROW(load_tsv("/nonexistent/table.tsv"), IoError);
}

}  // namespace
}  // namespace sdescrypt
