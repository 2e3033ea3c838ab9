#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sdescrypt/bits.hpp"
#include "sdescrypt/cost.hpp"
#include "sdescrypt/random.hpp"

namespace sdescrypt {

enum class Selection {
  /// Two uniform draws with replacement; the lower cost wins, the first draw on ties.
  kTournament2,
};

enum class Initialization {
  /// pop_size keys drawn uniformly (duplicates allowed).
  kUniform,
  /// Keys 0, 1, 2, ... in order, wrapping at 1024. With pop_size 1024 the
  /// first generation is the whole key space.
  kEnumerate,
};

std::string_view to_string(Selection s);
Selection parse_selection(std::string_view text);

struct GaParams {
  std::size_t pop_size = 100;
  std::size_t max_gen = 200;
  double cross_rate = 0.95;
  double mutate_rate = 0.05;
  Selection selection = Selection::kTournament2;
  std::uint64_t rng_seed = 1;
  bool elitism = true;
  Initialization initialization = Initialization::kUniform;

  /// Throws ValidationError: pop_size >= 2, max_gen >= 1, rates in [0, 1].
  void validate() const;
};

struct Individual {
  Key10 chromosome;
  double cost = 0.0;

  friend bool operator==(const Individual&, const Individual&) = default;
};

struct AttackResult {
  Key10 best_key;
  double best_cost = 0.0;
  std::size_t generations_run = 0;
  std::uint64_t evaluations = 0;
  double elapsed_seconds = 0.0;
  /// Set when RunOptions::true_key is known.
  std::optional<int> bits_matched;
};

struct RunOptions {
  /// Stop as soon as the best cost is <= this (e.g. the exhaustive minimum).
  std::optional<double> target_cost;
  /// Ground truth for AttackResult::bits_matched.
  std::optional<Key10> true_key;
  /// Called after every generation is evaluated (and improved, for memetic runs).
  std::function<void(std::size_t generation, std::span<const Individual>)> on_generation;
  /// When false the elapsed time is reported as 0, which keeps results byte-stable.
  bool measure_time = true;
};

/// Counts every cost evaluation made through it. One per run; not shared.
class Evaluator {
 public:
  explicit Evaluator(const KeyScorer& scorer) : scorer_(&scorer) {}

  double operator()(Key10 key) {
    ++evaluations_;
    return (*scorer_)(key);
  }
  Individual evaluate(Key10 key) { return {key, (*this)(key)}; }

  std::uint64_t evaluations() const { return evaluations_; }

 private:
  const KeyScorer* scorer_;
  std::uint64_t evaluations_ = 0;
};

std::vector<Key10> init_population(const GaParams& params, Rng& rng);

/// Index of the tournament winner among `population`.
std::size_t tournament_select(std::span<const Individual> population, Rng& rng);

std::pair<Individual, Individual> select_parents(std::span<const Individual> population, Rng& rng);

/// mate1 bits [1..cut] followed by mate2 bits [cut+1..10]; cut in 1..9.
Key10 crossover_at(Key10 mate1, Key10 mate2, int cut);
/// Single-point crossover with the cut drawn uniformly from 1..9.
Key10 crossover(Key10 mate1, Key10 mate2, Rng& rng);

/// Flips each bit independently with probability `rate`.
Key10 mutate(Key10 child, double rate, Rng& rng);

/// Every 10-bit string is a valid key, so repair is the identity.
constexpr Key10 repair(Key10 child) { return child; }

/// Optional per-individual improvement step used by the memetic variant.
using Improver = std::function<Individual(const Individual&, Evaluator&)>;

struct EvolutionHooks {
  Improver improve_initial;
  Improver improve_offspring;
};

/// Generational loop shared by the GA and MA: evaluate, keep one elite, fill
/// the rest with select / crossover (else clone mate1) / mutate / repair
/// children. Returns the best individual ever evaluated; ties go to the
/// numerically smaller key.
AttackResult evolve(const KeyScorer& scorer, const GaParams& params, const RunOptions& options,
                    const EvolutionHooks& hooks);

AttackResult run_ga(const KeyScorer& scorer, const GaParams& params,
                    const RunOptions& options = {});

}  // namespace sdescrypt
