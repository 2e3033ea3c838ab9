#include "sdescrypt/memetic.hpp"

#include <fmt/format.h>

#include "sdescrypt/error.hpp"

namespace sdescrypt {

std::string_view to_string(LocalStrategy s) {
  switch (s) {
    case LocalStrategy::kBestImprovement: return "best-improvement";
  }
  return "unknown";
}

LocalStrategy parse_local_strategy(std::string_view text) {
  if (text == "best-improvement" || text == "best") return LocalStrategy::kBestImprovement;
  throw ValidationError(fmt::format("unknown local search strategy '{}'", text));
}

void MaParams::validate() const {
  ga.validate();
  if (ls_max_steps < 1) {
    throw ValidationError(fmt::format("ls_max_steps must be >= 1, got {}", ls_max_steps));
  }
}

ClimbResult hill_climb(const Individual& start, Evaluator& evaluator, std::size_t max_steps) {
  ClimbResult result{start, 0};
  while (result.moves < max_steps) {
    Individual best_neighbour{};
    bool found = false;
    for (int position = 1; position <= Key10::kWidth; ++position) {
      const Key10 neighbour = result.end.chromosome.flipped(position);
      const double c = evaluator(neighbour);
      if (!found || c < best_neighbour.cost) {
        best_neighbour = {neighbour, c};
        found = true;
      }
    }
    if (!(best_neighbour.cost < result.end.cost)) break;
    result.end = best_neighbour;
    ++result.moves;
  }
  return result;
}

Key10 hill_climb(Key10 start, const KeyScorer& scorer, std::size_t max_steps) {
  Evaluator evaluator(scorer);
  return hill_climb(evaluator.evaluate(start), evaluator, max_steps).end.chromosome;
}

bool is_local_optimum(Key10 key, const KeyScorer& scorer) {
  const double here = scorer(key);
  for (int position = 1; position <= Key10::kWidth; ++position) {
    if (scorer(key.flipped(position)) < here) return false;
  }
  return true;
}

AttackResult run_ma(const KeyScorer& scorer, const MaParams& params, const RunOptions& options) {
  params.validate();
  const std::size_t steps = params.ls_max_steps;
  Improver climb = [steps](const Individual& ind, Evaluator& evaluator) {
    return hill_climb(ind, evaluator, steps).end;
  };
  EvolutionHooks hooks;
  if (params.ls_on_init) hooks.improve_initial = climb;
  if (params.ls_on_offspring) hooks.improve_offspring = climb;
  return evolve(scorer, params.ga, options, hooks);
}

}  // namespace sdescrypt
