#include <benchmark/benchmark.h>

#include <filesystem>

#include "sdescrypt/cost.hpp"
#include "sdescrypt/experiment.hpp"
#include "sdescrypt/genetic.hpp"
#include "sdescrypt/memetic.hpp"
#include "sdescrypt/ngram.hpp"
#include "sdescrypt/oracle.hpp"
#include "sdescrypt/sdes.hpp"

namespace {

using namespace sdescrypt;

const std::vector<std::uint8_t>& corpus() {
  static const auto bytes =
      read_file_bytes(std::filesystem::path(SDESCRYPT_BENCH_DATA_DIR) / "english_corpus.txt");
  return bytes;
}

const LanguageStats& reference() {
  static const LanguageStats stats = ingest_weighted(corpus(), {});
  return stats;
}

std::vector<std::uint8_t> ciphertext(std::size_t length) {
  Rng rng(length);
  return encrypt_text(generate_message(corpus(), length, rng), Key10::parse("1010000010"));
}

void BM_EncryptBlock(benchmark::State& state) {
  unsigned i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(encrypt_block(Block8::wrap(i), Key10::wrap(i * 7)));
    ++i;
  }
}
BENCHMARK(BM_EncryptBlock);

void BM_ScoreKey(benchmark::State& state) {
  const auto cipher = ciphertext(static_cast<std::size_t>(state.range(0)));
  unsigned k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(score_key(Key10::wrap(k++), cipher, reference(), {}));
}
BENCHMARK(BM_ScoreKey)->Arg(100)->Arg(1000);

void BM_KeyScorer(benchmark::State& state) {
  const KeyScorer scorer(ciphertext(static_cast<std::size_t>(state.range(0))), reference(), {});
  unsigned k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(scorer(Key10::wrap(k++)));
}
BENCHMARK(BM_KeyScorer)->Arg(100)->Arg(1000);

void BM_BruteForce(benchmark::State& state) {
  const KeyScorer scorer(ciphertext(static_cast<std::size_t>(state.range(0))), reference(), {});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(scorer).best_key);
}
BENCHMARK(BM_BruteForce)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RunGa(benchmark::State& state) {
  const KeyScorer scorer(ciphertext(1000), reference(), {});
  std::uint64_t seed = 1;
  for (auto _ : state) {
    GaParams p = default_ga_params();
    p.rng_seed = seed++;
    benchmark::DoNotOptimize(run_ga(scorer, p).best_key);
  }
}
BENCHMARK(BM_RunGa)->Unit(benchmark::kMillisecond);

void BM_RunMa(benchmark::State& state) {
  const KeyScorer scorer(ciphertext(1000), reference(), {});
  std::uint64_t seed = 1;
  for (auto _ : state) {
    MaParams p = default_ma_params();
    p.ga.rng_seed = seed++;
    benchmark::DoNotOptimize(run_ma(scorer, p).best_key);
  }
}
BENCHMARK(BM_RunMa)->Unit(benchmark::kMillisecond);

}  // namespace
