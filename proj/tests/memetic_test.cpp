#include "sdescrypt/memetic.hpp"

#include <gtest/gtest.h>

#include "sdescrypt/error.hpp"
#include "sdescrypt/oracle.hpp"
#include "support/fixtures.hpp"

namespace sdescrypt {
namespace {

struct Fixture {
  testing::Sample sample;
  KeyScorer scorer;
  OracleResult oracle;

  explicit Fixture(std::uint64_t seed, std::size_t length)
      : sample(testing::make_sample(seed, length)),
        scorer(sample.cipher, testing::bigram_reference(), {}),
        oracle(brute_force(scorer)) {}
};

const Fixture& shared() {
  static const Fixture f(31, 400);
  return f;
}

TEST(MaParams, DefaultsAndValidation) {
  const MaParams p;
  EXPECT_EQ(p.ga.pop_size, 10U);
  EXPECT_EQ(p.ga.max_gen, 200U);
  EXPECT_EQ(p.ga.cross_rate, 0.5);
  EXPECT_EQ(p.ga.mutate_rate, 0.5);
  EXPECT_EQ(p.ls_max_steps, 10U);
  EXPECT_TRUE(p.ls_on_init);
  EXPECT_TRUE(p.ls_on_offspring);
  EXPECT_NO_THROW(p.validate());
  MaParams bad;
  bad.ga.mutate_rate = 2.0;
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(LocalStrategy, NameRoundTrip) {
  EXPECT_EQ(parse_local_strategy(to_string(LocalStrategy::kBestImprovement)),
            LocalStrategy::kBestImprovement);
  EXPECT_THROW(parse_local_strategy("first"), ValidationError);
}

TEST(HillClimb, GlobalMinimumIsFixedPoint) {
  const Fixture& f = shared();
  EXPECT_EQ(hill_climb(f.oracle.best_key, f.scorer), f.oracle.best_key);
  EXPECT_TRUE(is_local_optimum(f.oracle.best_key, f.scorer));
}

TEST(HillClimb, NeverWorseAndEndsAtLocalOptimum) {
  const Fixture& f = shared();
  for (unsigned k = 0; k < Key10::kCount; k += 7) {
    const Key10 start = Key10::wrap(k);
    const Key10 end = hill_climb(start, f.scorer);
    ASSERT_LE(f.scorer(end), f.scorer(start));
    ASSERT_TRUE(is_local_optimum(end, f.scorer)) << k;
    ASSERT_EQ(hill_climb(end, f.scorer), end);
  }
}

TEST(HillClimb, StepBoundAndEvaluationCount) {
  const Fixture& f = shared();
  Evaluator eval(f.scorer);
  const Individual start = eval.evaluate(f.oracle.best_key.complement());
  Evaluator counted(f.scorer);
  const ClimbResult one = hill_climb(start, counted, 1);
  EXPECT_LE(one.moves, 1U);
  EXPECT_EQ(counted.evaluations(), 10U);
  EXPECT_LE(one.end.cost, start.cost);
  EXPECT_EQ(one.end.cost, f.scorer(one.end.chromosome));

  Evaluator zero_eval(f.scorer);
  const ClimbResult none = hill_climb(start, zero_eval, 0);
  EXPECT_EQ(none.end, start);
  EXPECT_EQ(zero_eval.evaluations(), 0U);

  Evaluator full(f.scorer);
  const ClimbResult all = hill_climb(start, full, kUnboundedSteps);
  // One scan per move plus the final scan that finds no improvement.
  EXPECT_EQ(full.evaluations(), 10U * (all.moves + 1));
}

TEST(RunMa, UnboundedClimbLeavesEveryIndividualLocallyOptimal) {
  const Fixture& f = shared();
  MaParams p;
  p.ga.max_gen = 5;
  p.ls_max_steps = kUnboundedSteps;
  std::size_t generations = 0;
  RunOptions opts;
  opts.on_generation = [&](std::size_t, std::span<const Individual> pop) {
    ++generations;
    for (const Individual& ind : pop) {
      ASSERT_TRUE(is_local_optimum(ind.chromosome, f.scorer));
      ASSERT_EQ(ind.cost, f.scorer(ind.chromosome));
    }
  };
  run_ma(f.scorer, p, opts);
  EXPECT_EQ(generations, 5U);
}

TEST(RunMa, InitialBestNoWorseThanPlainGa) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Fixture& f = shared();
    MaParams p;
    p.ga.max_gen = 1;
    p.ga.rng_seed = seed;
    const AttackResult ma = run_ma(f.scorer, p);
    const AttackResult ga = run_ga(f.scorer, p.ga);
    EXPECT_LE(ma.best_cost, ga.best_cost) << seed;
  }
}

TEST(RunMa, EvaluationsIncludeNeighbourScans) {
  const Fixture& f = shared();
  MaParams p;
  p.ga.max_gen = 4;
  const AttackResult r = run_ma(f.scorer, p);
  EXPECT_GT(r.evaluations, p.ga.pop_size * p.ga.max_gen);

  MaParams off = p;
  off.ls_on_init = false;
  off.ls_on_offspring = false;
  EXPECT_EQ(run_ma(f.scorer, off).evaluations, p.ga.pop_size * p.ga.max_gen);
}

TEST(RunMa, SameSeedSameResult) {
  const Fixture& f = shared();
  MaParams p;
  p.ga.max_gen = 30;
  p.ga.rng_seed = 99;
  const RunOptions opts{.measure_time = false};
  const AttackResult a = run_ma(f.scorer, p, opts);
  const AttackResult b = run_ma(f.scorer, p, opts);
  EXPECT_EQ(a.best_key, b.best_key);
  EXPECT_EQ(a.best_cost, b.best_cost);
  EXPECT_EQ(a.evaluations, b.evaluations);
  EXPECT_EQ(a.generations_run, b.generations_run);
}

TEST(RunMa, ReachesOracleMinimumOnLongText) {
  const Fixture f(32, 1000);
  RunOptions opts;
  opts.target_cost = f.oracle.best_cost;
  const AttackResult r = run_ma(f.scorer, MaParams{}, opts);
  EXPECT_EQ(r.best_cost, f.oracle.best_cost);
  EXPECT_EQ(r.best_key, f.oracle.best_key);
}

}  // namespace
}  // namespace sdescrypt
