#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdescrypt/cost.hpp"
#include "sdescrypt/genetic.hpp"
#include "sdescrypt/memetic.hpp"
#include "sdescrypt/random.hpp"

namespace sdescrypt {

enum class Algorithm { kGa, kMa };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view text);

/// Default GA configuration: population 100,
/// crossover 0.95, mutation 0.05.
GaParams default_ga_params();
/// Default MA configuration: population 10,
/// crossover and mutation both 0.5.
MaParams default_ma_params();

struct ExperimentSpec {
  std::vector<std::size_t> ciphertext_lengths{100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
  std::size_t messages_per_point = 10;
  std::size_t runs_per_message = 10;
  std::vector<Algorithm> algorithms{Algorithm::kGa, Algorithm::kMa};
  GaParams ga = default_ga_params();
  MaParams ma = default_ma_params();
  CostWeights weights;
  std::uint64_t master_seed = 1;
  /// Stop each run once it reaches the exhaustive minimum cost for its message.
  bool stop_at_oracle = true;
  /// When false all time columns are 0 and the output is byte-reproducible.
  bool measure_time = true;

  void validate() const;
};

/// One message of the protocol; shared by every algorithm at that length.
struct MessageRecord {
  std::size_t cipher_len = 0;
  std::size_t message = 0;
  std::uint64_t seed = 0;
  Key10 true_key;
  Key10 oracle_key;
  double oracle_cost = 0.0;
  int oracle_bits = 0;
  std::size_t true_key_rank = 0;
};

struct RunRecord {
  Algorithm algorithm = Algorithm::kGa;
  std::size_t cipher_len = 0;
  std::size_t message = 0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  Key10 true_key;
  AttackResult result;
};

struct DataPoint {
  Algorithm algorithm = Algorithm::kGa;
  std::size_t cipher_len = 0;
  double mean_bits = 0.0;
  double std_bits = 0.0;
  double mean_time_s = 0.0;
  double std_time_s = 0.0;
  double mean_evals = 0.0;
  double oracle_mean_bits = 0.0;
};

struct ExperimentResult {
  std::vector<DataPoint> points;
  std::vector<MessageRecord> messages;
  std::vector<RunRecord> runs;
};

struct Summary {
  double mean = 0.0;
  /// Population standard deviation (divides by n).
  double stddev = 0.0;
};

Summary summarize(std::span<const double> values);

/// Seed of message `message` at length `cipher_len`.
std::uint64_t message_seed(std::uint64_t master, std::size_t cipher_len, std::size_t message);
/// Seed of attack run `run` on that message for `algorithm`.
std::uint64_t run_seed(std::uint64_t master, Algorithm algorithm, std::size_t cipher_len,
                       std::size_t message, std::size_t run);

/// A contiguous excerpt of exactly `length` bytes starting at a uniformly drawn
/// offset. Throws ValidationError unless corpus.size() > length.
std::vector<std::uint8_t> generate_message(std::span<const std::uint8_t> corpus, std::size_t length,
                                           Rng& rng);

/// Runs the protocol. For each length: messages_per_point messages, each
/// encrypted under a fresh uniform key; runs_per_message attacks per message
/// and algorithm; the lowest-cost run of each message feeds the data point.
/// Work is spread over `jobs` threads; the result does not depend on `jobs`.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::span<const std::uint8_t> corpus,
                                const LanguageStats& reference, std::size_t jobs = 1);

inline constexpr std::string_view kResultsHeader =
    "algorithm,cipher_len,mean_bits,std_bits,mean_time_s,std_time_s,mean_evals,oracle_mean_bits";

void write_results(std::ostream& out, std::span<const DataPoint> points);
void write_results(std::span<const DataPoint> points, const std::filesystem::path& path);

/// One JSON object per attack run.
void write_run_log(std::ostream& out, std::span<const RunRecord> runs);
void write_run_log(std::span<const RunRecord> runs, const std::filesystem::path& path);

/// Flat `key=value` configuration; keys mirror the bench command's flags.
/// Blank lines and lines starting with '#' are ignored.
ExperimentSpec parse_experiment_config(std::istream& in, ExperimentSpec base = {});
ExperimentSpec load_experiment_config(const std::filesystem::path& path, ExperimentSpec base = {});
std::string format_experiment_config(const ExperimentSpec& spec);

}  // namespace sdescrypt
