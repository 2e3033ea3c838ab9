#include "sdescrypt/genetic.hpp"

#include <fmt/format.h>

#include <chrono>

#include "sdescrypt/error.hpp"

namespace sdescrypt {

std::string_view to_string(Selection s) {
  switch (s) {
    case Selection::kTournament2: return "tournament2";
  }
  return "unknown";
}

Selection parse_selection(std::string_view text) {
  if (text == "tournament2" || text == "tournament") return Selection::kTournament2;
  throw ValidationError(fmt::format("unknown selection strategy '{}'", text));
}

void GaParams::validate() const {
  if (pop_size < 2) throw ValidationError(fmt::format("pop_size must be >= 2, got {}", pop_size));
  if (max_gen < 1) throw ValidationError(fmt::format("max_gen must be >= 1, got {}", max_gen));
  if (!(cross_rate >= 0.0 && cross_rate <= 1.0)) {
    throw ValidationError(fmt::format("cross_rate must be in [0, 1], got {}", cross_rate));
  }
  if (!(mutate_rate >= 0.0 && mutate_rate <= 1.0)) {
    throw ValidationError(fmt::format("mutate_rate must be in [0, 1], got {}", mutate_rate));
  }
}

std::vector<Key10> init_population(const GaParams& params, Rng& rng) {
  std::vector<Key10> keys;
  keys.reserve(params.pop_size);
  for (std::size_t i = 0; i < params.pop_size; ++i) {
    if (params.initialization == Initialization::kEnumerate) {
      keys.push_back(Key10::wrap(static_cast<unsigned>(i % Key10::kCount)));
    } else {
      keys.push_back(Key10::wrap(static_cast<unsigned>(uniform_below(rng, Key10::kCount))));
    }
  }
  return keys;
}

std::size_t tournament_select(std::span<const Individual> population, Rng& rng) {
  const std::size_t first = uniform_below(rng, population.size());
  const std::size_t second = uniform_below(rng, population.size());
  return population[second].cost < population[first].cost ? second : first;
}

std::pair<Individual, Individual> select_parents(std::span<const Individual> population, Rng& rng) {
  const std::size_t mate1 = tournament_select(population, rng);
  const std::size_t mate2 = tournament_select(population, rng);
  return {population[mate1], population[mate2]};
}

Key10 crossover_at(Key10 mate1, Key10 mate2, int cut) {
  if (cut < 1 || cut >= Key10::kWidth) {
    throw ValidationError(fmt::format("crossover cut must be in 1..9, got {}", cut));
  }
  const unsigned tail_mask = (1U << (Key10::kWidth - cut)) - 1U;
  return Key10::wrap((mate1.value() & ~tail_mask) | (mate2.value() & tail_mask));
}

Key10 crossover(Key10 mate1, Key10 mate2, Rng& rng) {
  const int cut = 1 + static_cast<int>(uniform_below(rng, Key10::kWidth - 1));
  return crossover_at(mate1, mate2, cut);
}

Key10 mutate(Key10 child, double rate, Rng& rng) {
  for (int position = 1; position <= Key10::kWidth; ++position) {
    if (uniform_unit(rng) < rate) child = child.flipped(position);
  }
  return child;
}

namespace {

bool better(const Individual& a, const Individual& b) {
  return a.cost < b.cost || (a.cost == b.cost && a.chromosome < b.chromosome);
}

}  // namespace

AttackResult evolve(const KeyScorer& scorer, const GaParams& params, const RunOptions& options,
                    const EvolutionHooks& hooks) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  Rng rng(params.rng_seed);
  Evaluator evaluator(scorer);

  std::vector<Individual> population;
  population.reserve(params.pop_size);
  for (Key10 key : init_population(params, rng)) population.push_back(evaluator.evaluate(key));
  if (hooks.improve_initial) {
    for (Individual& ind : population) ind = hooks.improve_initial(ind, evaluator);
  }

  Individual best = population.front();
  auto absorb = [&](std::span<const Individual> generation) {
    for (const Individual& ind : generation) {
      if (better(ind, best)) best = ind;
    }
  };
  auto reached_target = [&] { return options.target_cost && best.cost <= *options.target_cost; };

  absorb(population);
  std::size_t generations = 1;
  if (options.on_generation) options.on_generation(0, population);

  std::vector<Key10> next;
  next.reserve(params.pop_size);
  while (generations < params.max_gen && !reached_target()) {
    next.clear();
    if (params.elitism) {
      const Individual* elite = &population.front();
      for (const Individual& ind : population) {
        if (better(ind, *elite)) elite = &ind;
      }
      next.push_back(elite->chromosome);
    }
    const std::size_t first_child = next.size();
    while (next.size() < params.pop_size) {
      const auto [mate1, mate2] = select_parents(population, rng);
      Key10 child = mate1.chromosome;
      if (uniform_unit(rng) < params.cross_rate) {
        child = crossover(mate1.chromosome, mate2.chromosome, rng);
      }
      child = mutate(child, params.mutate_rate, rng);
      next.push_back(repair(child));
    }

    population.clear();
    for (Key10 key : next) population.push_back(evaluator.evaluate(key));
    if (hooks.improve_offspring) {
      for (std::size_t i = first_child; i < population.size(); ++i) {
        population[i] = hooks.improve_offspring(population[i], evaluator);
      }
    }
    absorb(population);
    if (options.on_generation) options.on_generation(generations, population);
    ++generations;
  }

  AttackResult result;
  result.best_key = best.chromosome;
  result.best_cost = best.cost;
  result.generations_run = generations;
  result.evaluations = evaluator.evaluations();
  if (options.measure_time) {
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  if (options.true_key) result.bits_matched = bits_matched(best.chromosome, *options.true_key);
  return result;
}

AttackResult run_ga(const KeyScorer& scorer, const GaParams& params, const RunOptions& options) {
  return evolve(scorer, params, options, {});
}

}  // namespace sdescrypt
