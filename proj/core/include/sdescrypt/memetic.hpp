#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>

#include "sdescrypt/genetic.hpp"

namespace sdescrypt {

enum class LocalStrategy {
  /// Scan all 10 one-bit neighbours and move to the strictly cheapest one.
  kBestImprovement,
};

std::string_view to_string(LocalStrategy s);
LocalStrategy parse_local_strategy(std::string_view text);

/// Pass as ls_max_steps to climb until a local optimum is reached.
inline constexpr std::size_t kUnboundedSteps = std::numeric_limits<std::size_t>::max();

struct MaParams {
  GaParams ga{.pop_size = 10, .max_gen = 200, .cross_rate = 0.5, .mutate_rate = 0.5};
  /// Upper bound on moves per climb; 10 is the key-space diameter.
  std::size_t ls_max_steps = 10;
  LocalStrategy ls_strategy = LocalStrategy::kBestImprovement;
  bool ls_on_init = true;
  bool ls_on_offspring = true;

  void validate() const;
};

struct ClimbResult {
  Individual end;
  std::size_t moves = 0;
};

/// Best-improvement descent over the Hamming-1 neighbourhood from `start`,
/// whose cost must already be known. Neighbour evaluations go through
/// `evaluator`. Ties between equally good neighbours go to the lower bit
/// position. The returned cost never exceeds start.cost.
ClimbResult hill_climb(const Individual& start, Evaluator& evaluator, std::size_t max_steps);

/// Convenience form: evaluates `start` and climbs from it.
Key10 hill_climb(Key10 start, const KeyScorer& scorer, std::size_t max_steps = kUnboundedSteps);

/// True if no single-bit flip of `key` has strictly lower cost.
bool is_local_optimum(Key10 key, const KeyScorer& scorer);

/// The GA loop of run_ga with hill climbing applied to the initial population
/// and to every offspring after mutation (each hook can be switched off).
/// Improved chromosomes replace the originals. AttackResult::evaluations
/// includes neighbour evaluations.
AttackResult run_ma(const KeyScorer& scorer, const MaParams& params,
                    const RunOptions& options = {});

}  // namespace sdescrypt
