#include "sdescrypt/experiment.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "sdescrypt/error.hpp"
#include "sdescrypt/oracle.hpp"
#include "sdescrypt/sdes.hpp"

namespace sdescrypt {

namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kMessageStream = 1;
constexpr std::uint64_t kRunStream = 2;

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
  if (jobs == 0) jobs = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string_view to_string(Algorithm a) { return a == Algorithm::kGa ? "GA" : "MA"; }

Algorithm parse_algorithm(std::string_view text) {
  if (text == "ga" || text == "GA") return Algorithm::kGa;
  if (text == "ma" || text == "MA") return Algorithm::kMa;
  throw ValidationError(fmt::format("unknown algorithm '{}', expected ga or ma", text));
}

GaParams default_ga_params() {
  return GaParams{.pop_size = 100, .max_gen = 200, .cross_rate = 0.95, .mutate_rate = 0.05};
}

MaParams default_ma_params() { return MaParams{}; }

void ExperimentSpec::validate() const {
  if (ciphertext_lengths.empty()) throw ValidationError("at least one ciphertext length is required");
  for (std::size_t len : ciphertext_lengths) {
    if (len < 2) throw ValidationError(fmt::format("ciphertext length must be >= 2, got {}", len));
  }
  if (messages_per_point < 1) throw ValidationError("messages per point must be >= 1");
  if (runs_per_message < 1) throw ValidationError("runs per message must be >= 1");
  if (algorithms.empty()) throw ValidationError("at least one algorithm is required");
  ga.validate();
  ma.validate();
  weights.validate();
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double squares = 0.0;
  for (double v : values) squares += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(squares / static_cast<double>(values.size()));
  return s;
}

std::uint64_t message_seed(std::uint64_t master, std::size_t cipher_len, std::size_t message) {
  return derive_seed(master, {kMessageStream, cipher_len, message});
}

std::uint64_t run_seed(std::uint64_t master, Algorithm algorithm, std::size_t cipher_len,
                       std::size_t message, std::size_t run) {
  return derive_seed(master,
                     {kRunStream, static_cast<std::uint64_t>(algorithm), cipher_len, message, run});
}

std::vector<std::uint8_t> generate_message(std::span<const std::uint8_t> corpus, std::size_t length,
                                           Rng& rng) {
  if (corpus.size() <= length) {
    throw ValidationError(fmt::format("corpus of {} bytes is too short for a {}-byte message",
                                      corpus.size(), length));
  }
  const std::size_t offset = uniform_below(rng, corpus.size() - length + 1);
  return {corpus.begin() + static_cast<std::ptrdiff_t>(offset),
          corpus.begin() + static_cast<std::ptrdiff_t>(offset + length)};
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::span<const std::uint8_t> corpus,
                                const LanguageStats& reference, std::size_t jobs) {
  spec.validate();
  const std::size_t lengths = spec.ciphertext_lengths.size();
  const std::size_t messages = spec.messages_per_point;
  const std::size_t runs = spec.runs_per_message;
  const std::size_t algos = spec.algorithms.size();

  // Phase 1: messages, ciphertexts and the exhaustive oracle, one task per message.
  struct Prepared {
    MessageRecord record;
    std::vector<std::uint8_t> ciphertext;
  };
  std::vector<Prepared> prepared(lengths * messages);
  parallel_for(prepared.size(), jobs, [&](std::size_t task) {
    const std::size_t len = spec.ciphertext_lengths[task / messages];
    const std::size_t msg = task % messages;
    Prepared& p = prepared[task];
    p.record.cipher_len = len;
    p.record.message = msg;
    p.record.seed = message_seed(spec.master_seed, len, msg);
    Rng rng(p.record.seed);
    const std::vector<std::uint8_t> plain = generate_message(corpus, len, rng);
    p.record.true_key = Key10::wrap(static_cast<unsigned>(uniform_below(rng, Key10::kCount)));
    p.ciphertext = encrypt_text(plain, p.record.true_key);
    const OracleResult oracle = brute_force(KeyScorer(p.ciphertext, reference, spec.weights));
    p.record.oracle_key = oracle.best_key;
    p.record.oracle_cost = oracle.best_cost;
    p.record.oracle_bits = bits_matched(oracle.best_key, p.record.true_key);
    p.record.true_key_rank = oracle.rank_of(p.record.true_key);
  });

  // Phase 2: attack runs, ordered (algorithm, length, message, run).
  std::vector<RunRecord> records(algos * lengths * messages * runs);
  parallel_for(records.size(), jobs, [&](std::size_t task) {
    const std::size_t run = task % runs;
    const std::size_t msg_task = (task / runs) % (lengths * messages);
    const Algorithm algorithm = spec.algorithms[task / (runs * lengths * messages)];
    const Prepared& p = prepared[msg_task];

    RunRecord& r = records[task];
    r.algorithm = algorithm;
    r.cipher_len = p.record.cipher_len;
    r.message = p.record.message;
    r.run = run;
    r.seed = run_seed(spec.master_seed, algorithm, r.cipher_len, r.message, run);
    r.true_key = p.record.true_key;

    const KeyScorer scorer(p.ciphertext, reference, spec.weights);
    RunOptions options;
    options.true_key = p.record.true_key;
    options.measure_time = spec.measure_time;
    if (spec.stop_at_oracle) options.target_cost = p.record.oracle_cost;
    if (algorithm == Algorithm::kGa) {
      GaParams params = spec.ga;
      params.rng_seed = r.seed;
      r.result = run_ga(scorer, params, options);
    } else {
      MaParams params = spec.ma;
      params.ga.rng_seed = r.seed;
      r.result = run_ma(scorer, params, options);
    }
  });

  // Reduction in fixed order.
  ExperimentResult out;
  out.messages.reserve(prepared.size());
  for (const Prepared& p : prepared) out.messages.push_back(p.record);
  for (std::size_t a = 0; a < algos; ++a) {
    for (std::size_t l = 0; l < lengths; ++l) {
      std::vector<double> bits, times, evals, oracle_bits;
      for (std::size_t m = 0; m < messages; ++m) {
        const std::size_t base = ((a * lengths + l) * messages + m) * runs;
        const RunRecord* best = &records[base];
        for (std::size_t r = 1; r < runs; ++r) {
          if (records[base + r].result.best_cost < best->result.best_cost) best = &records[base + r];
        }
        bits.push_back(static_cast<double>(best->result.bits_matched.value_or(0)));
        times.push_back(best->result.elapsed_seconds);
        evals.push_back(static_cast<double>(best->result.evaluations));
        oracle_bits.push_back(static_cast<double>(prepared[l * messages + m].record.oracle_bits));
      }
      DataPoint point;
      point.algorithm = spec.algorithms[a];
      point.cipher_len = spec.ciphertext_lengths[l];
      const Summary b = summarize(bits);
      const Summary t = summarize(times);
      point.mean_bits = b.mean;
      point.std_bits = b.stddev;
      point.mean_time_s = t.mean;
      point.std_time_s = t.stddev;
      point.mean_evals = summarize(evals).mean;
      point.oracle_mean_bits = summarize(oracle_bits).mean;
      out.points.push_back(point);
    }
  }
  out.runs = std::move(records);
  return out;
}

void write_results(std::ostream& out, std::span<const DataPoint> points) {
  out << kResultsHeader << '\n';
  for (const DataPoint& p : points) {
    out << fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.2f},{:.6f}\n", to_string(p.algorithm),
                       p.cipher_len, p.mean_bits, p.std_bits, p.mean_time_s, p.std_time_s,
                       p.mean_evals, p.oracle_mean_bits);
  }
}

void write_results(std::span<const DataPoint> points, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  write_results(out, points);
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

void write_run_log(std::ostream& out, std::span<const RunRecord> runs) {
  for (const RunRecord& r : runs) {
    nlohmann::ordered_json j;
    j["algorithm"] = to_string(r.algorithm);
    j["cipher_len"] = r.cipher_len;
    j["message"] = r.message;
    j["run"] = r.run;
    j["seed"] = r.seed;
    j["key"] = r.true_key.to_string();
    j["best_key"] = r.result.best_key.to_string();
    j["cost"] = r.result.best_cost;
    j["bits"] = r.result.bits_matched.value_or(0);
    j["generations"] = r.result.generations_run;
    j["evaluations"] = r.result.evaluations;
    j["elapsed"] = r.result.elapsed_seconds;
    out << j.dump() << '\n';
  }
}

void write_run_log(std::span<const RunRecord> runs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  write_run_log(out, runs);
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace sdescrypt
