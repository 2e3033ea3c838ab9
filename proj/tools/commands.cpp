#include "commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "sdescrypt/cost.hpp"
#include "sdescrypt/error.hpp"
#include "sdescrypt/experiment.hpp"
#include "sdescrypt/genetic.hpp"
#include "sdescrypt/memetic.hpp"
#include "sdescrypt/ngram.hpp"
#include "sdescrypt/oracle.hpp"
#include "sdescrypt/sdes.hpp"

#ifndef SDESCRYPT_DEFAULT_DATA_DIR
#define SDESCRYPT_DEFAULT_DATA_DIR "."
#endif

namespace sdescrypt::cli {

namespace fs = std::filesystem;

namespace {

fs::path data_dir() {
  if (const char* env = std::getenv("SDESCRYPT_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  std::error_code ec;
  const fs::path installed = fs::read_symlink("/proc/self/exe", ec).parent_path().parent_path() / "share" / "sdescrypt";
  if (!ec && fs::exists(installed / "english_corpus.txt", ec)) return installed;
  return SDESCRYPT_DEFAULT_DATA_DIR;
}

std::string default_corpus() { return (data_dir() / "english_corpus.txt").string(); }
std::string default_bigrams() { return (data_dir() / "english_bigrams.tsv").string(); }

Key10 parse_key(const std::string& text) {
  const bool well_formed =
      text.size() == 10 && std::all_of(text.begin(), text.end(), [](char c) { return c == '0' || c == '1'; });
  if (!well_formed) {
    throw ValidationError(fmt::format(
        "--key must be a 10-bit key: exactly 10 characters from {{0,1}} (e.g. 1010000010), got '{}'",
        text));
  }
  return Key10::parse(text);
}

CostWeights parse_weights(const std::string& text) {
  CostWeights w;
  double* slots[] = {&w.alpha, &w.beta, &w.gamma};
  std::string_view rest = text;
  for (int i = 0; i < 3; ++i) {
    const auto comma = rest.find(',');
    if ((i < 2) == (comma == std::string_view::npos)) {
      throw ValidationError(fmt::format("--weights expects alpha,beta,gamma, got '{}'", text));
    }
    const std::string_view part = rest.substr(0, comma);
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), *slots[i]);
    if (ec != std::errc() || end != part.data() + part.size()) {
      throw ValidationError(fmt::format("--weights: cannot parse '{}'", part));
    }
    if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
  }
  w.validate();
  return w;
}

LanguageStats load_reference(const std::vector<std::string>& paths, const CostWeights& w) {
  LanguageStats stats;
  for (const auto& path : paths) stats.put(load_tsv(path));
  for (int order = 1; order <= NGramTable::kMaxOrder; ++order) {
    if (w.weight(order) != 0.0 && !stats.at(order)) {
      throw ValidationError(
          fmt::format("weights need an order-{} table; pass it with --stats", order));
    }
  }
  return stats;
}

std::vector<std::uint8_t> read_ciphertext(const std::string& path) {
  std::vector<std::uint8_t> bytes = read_file_bytes(path);
  if (bytes.empty()) throw ValidationError(fmt::format("ciphertext file '{}' is empty", path));
  return bytes;
}

bool parse_switch(const std::string& name, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ValidationError(fmt::format("{} expects on or off, got '{}'", name, value));
}

// Shared by attack and oracle.
struct ScoringOptions {
  std::string cipher;
  std::vector<std::string> stats{default_bigrams()};
  std::string weights = "0,1,0";
  std::string true_key;
};

void add_scoring_options(CLI::App* cmd, ScoringOptions& o) {
  cmd->add_option("--cipher", o.cipher, "Ciphertext file (raw bytes)")->required();
  cmd->add_option("--stats", o.stats, "Reference n-gram TSV; repeat for several orders")
      ->capture_default_str();
  cmd->add_option("--weights", o.weights, "Cost weights alpha,beta,gamma (uni,bi,tri-gram)")
      ->capture_default_str();
  cmd->add_option("--true-key", o.true_key, "Known key, reported as bits matched / oracle rank");
}

void print_result(std::ostream& out, std::string_view algorithm, const AttackResult& r) {
  out << fmt::format("algorithm={}\n", algorithm);
  out << fmt::format("best_key={}\n", r.best_key.to_string());
  out << fmt::format("best_cost={:.12f}\n", r.best_cost);
  out << fmt::format("generations={}\n", r.generations_run);
  out << fmt::format("evaluations={}\n", r.evaluations);
  out << fmt::format("elapsed_s={:.6f}\n", r.elapsed_seconds);
  if (r.bits_matched) out << fmt::format("bits_matched={}\n", *r.bits_matched);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SDES cipher workbench: encrypt/decrypt, n-gram statistics, GA and memetic key search"};
  app.name(args.empty() ? "sdes-attack" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  // encrypt / decrypt
  std::string key_text, in_path, out_path;
  auto add_codec = [&](const char* name, const char* what) {
    CLI::App* cmd = app.add_subcommand(name, what);
    cmd->add_option("--key", key_text, "10-bit key, e.g. 1010000010")->required();
    cmd->add_option("--in", in_path, "Input file")->required();
    cmd->add_option("--out", out_path, "Output file")->required();
    return cmd;
  };
  CLI::App* encrypt_cmd = add_codec("encrypt", "Encrypt a file byte by byte (ECB)");
  CLI::App* decrypt_cmd = add_codec("decrypt", "Decrypt a file byte by byte (ECB)");

  // stats
  std::string corpus = default_corpus();
  int order = 2;
  std::string stats_out;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Build an n-gram frequency table (TSV) from a corpus");
  stats_cmd->add_option("--corpus", corpus, "Plain-text corpus")->capture_default_str();
  stats_cmd->add_option("--order", order, "n-gram order")->check(CLI::IsMember({1, 2, 3}))->capture_default_str();
  stats_cmd->add_option("--out", stats_out, "Output TSV path")->required();

  // attack
  ScoringOptions attack_scoring;
  std::string algo = "ga";
  std::optional<std::size_t> pop_size, max_gen;
  std::optional<double> cross_rate, mutate_rate;
  std::uint64_t seed = 1;
  std::string ls_steps_text = "10";
  bool ls_off_init = false, ls_off_offspring = false;
  std::string attack_timing = "on";
  CLI::App* attack_cmd = app.add_subcommand("attack", "Recover a key with the GA or the memetic algorithm");
  attack_cmd->add_option("--algo", algo, "Search algorithm")->check(CLI::IsMember({"ga", "ma"}))->capture_default_str();
  add_scoring_options(attack_cmd, attack_scoring);
  attack_cmd->add_option("--pop-size", pop_size, "Population size [default: ga 100, ma 10]");
  attack_cmd->add_option("--max-gen", max_gen, "Generation limit [default: 200]");
  attack_cmd->add_option("--cross-rate", cross_rate, "Crossover probability [default: ga 0.95, ma 0.5]");
  attack_cmd->add_option("--mutate-rate", mutate_rate, "Per-bit mutation probability [default: ga 0.05, ma 0.5]");
  attack_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  attack_cmd->add_option("--ls-max-steps", ls_steps_text, "MA: hill-climb move limit, or 'unbounded'")->capture_default_str();
  attack_cmd->add_flag("--ls-off-init", ls_off_init, "MA: skip local search on the initial population");
  attack_cmd->add_flag("--ls-off-offspring", ls_off_offspring, "MA: skip local search on offspring");
  attack_cmd->add_option("--timing", attack_timing, "Report wall-clock time (off prints 0)")
      ->check(CLI::IsMember({"on", "off"}))->capture_default_str();

  // oracle
  ScoringOptions oracle_scoring;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Score all 1024 keys and report the exhaustive minimum");
  add_scoring_options(oracle_cmd, oracle_scoring);

  // bench
  std::string spec_path, bench_out, log_path;
  std::string bench_corpus = default_corpus();
  std::vector<std::string> bench_stats{default_bigrams()};
  std::size_t jobs = 1;
  const ExperimentSpec defaults;
  std::vector<std::size_t> lengths = defaults.ciphertext_lengths;
  std::size_t messages = defaults.messages_per_point, runs = defaults.runs_per_message;
  std::vector<std::string> algos{"ga", "ma"};
  std::uint64_t master_seed = defaults.master_seed;
  std::string bench_weights = "0,1,0";
  std::size_t ga_pop = defaults.ga.pop_size, ga_gen = defaults.ga.max_gen;
  double ga_cross = defaults.ga.cross_rate, ga_mut = defaults.ga.mutate_rate;
  std::size_t ma_pop = defaults.ma.ga.pop_size, ma_gen = defaults.ma.ga.max_gen;
  double ma_cross = defaults.ma.ga.cross_rate, ma_mut = defaults.ma.ga.mutate_rate;
  std::string bench_ls_steps = "10";
  bool bench_ls_off_init = false, bench_ls_off_offspring = false;
  std::string stop_at_oracle = "on", bench_timing = "on";

  CLI::App* bench_cmd = app.add_subcommand("bench", "Run the GA vs MA key-recovery experiment and write a CSV");
  bench_cmd->add_option("--spec", spec_path, "key=value experiment config; flags given explicitly override it");
  bench_cmd->add_option("--out", bench_out, "Results CSV path")->required();
  bench_cmd->add_option("--log", log_path, "Optional per-run JSON-lines log");
  bench_cmd->add_option("--corpus", bench_corpus, "Corpus that messages are drawn from")->capture_default_str();
  bench_cmd->add_option("--stats", bench_stats, "Reference n-gram TSV; repeat for several orders")->capture_default_str();
  bench_cmd->add_option("--weights", bench_weights, "Cost weights alpha,beta,gamma")->capture_default_str();
  bench_cmd->add_option("--jobs", jobs, "Worker threads (0 = all cores); output does not depend on it")->capture_default_str();
  auto* o_lengths = bench_cmd->add_option("--lengths", lengths, "Ciphertext lengths in characters")->delimiter(',')->capture_default_str();
  auto* o_messages = bench_cmd->add_option("--messages", messages, "Messages per data point")->capture_default_str();
  auto* o_runs = bench_cmd->add_option("--runs", runs, "Attack runs per message")->capture_default_str();
  auto* o_algos = bench_cmd->add_option("--algos", algos, "Algorithms to compare")->delimiter(',')
      ->check(CLI::IsMember({"ga", "ma"}))->capture_default_str();
  auto* o_seed = bench_cmd->add_option("--seed", master_seed, "Master seed")->capture_default_str();
  auto* o_ga_pop = bench_cmd->add_option("--ga-pop-size", ga_pop, "GA population size")->capture_default_str();
  auto* o_ga_gen = bench_cmd->add_option("--ga-max-gen", ga_gen, "GA generation limit")->capture_default_str();
  auto* o_ga_cross = bench_cmd->add_option("--ga-cross-rate", ga_cross, "GA crossover probability")->capture_default_str();
  auto* o_ga_mut = bench_cmd->add_option("--ga-mutate-rate", ga_mut, "GA per-bit mutation probability")->capture_default_str();
  auto* o_ma_pop = bench_cmd->add_option("--ma-pop-size", ma_pop, "MA population size")->capture_default_str();
  auto* o_ma_gen = bench_cmd->add_option("--ma-max-gen", ma_gen, "MA generation limit")->capture_default_str();
  auto* o_ma_cross = bench_cmd->add_option("--ma-cross-rate", ma_cross, "MA crossover probability")->capture_default_str();
  auto* o_ma_mut = bench_cmd->add_option("--ma-mutate-rate", ma_mut, "MA per-bit mutation probability")->capture_default_str();
  auto* o_ls_steps = bench_cmd->add_option("--ls-max-steps", bench_ls_steps, "MA hill-climb move limit, or 'unbounded'")->capture_default_str();
  auto* o_ls_init = bench_cmd->add_flag("--ls-off-init", bench_ls_off_init, "MA: skip local search on the initial population");
  auto* o_ls_off = bench_cmd->add_flag("--ls-off-offspring", bench_ls_off_offspring, "MA: skip local search on offspring");
  auto* o_stop = bench_cmd->add_option("--stop-at-oracle", stop_at_oracle, "Stop runs at the exhaustive minimum cost")
      ->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  auto* o_timing = bench_cmd->add_option("--timing", bench_timing, "Record wall-clock time (off writes zeros)")
      ->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  auto* o_weights = bench_cmd->get_option("--weights");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(std::move(reversed));
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto parse_steps = [](const std::string& text) -> std::size_t {
    if (text == "unbounded") return kUnboundedSteps;
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      throw ValidationError(fmt::format("--ls-max-steps expects a count or 'unbounded', got '{}'", text));
    }
    return value;
  };

  try {
    if (encrypt_cmd->parsed() || decrypt_cmd->parsed()) {
      const Key10 key = parse_key(key_text);
      const std::vector<std::uint8_t> input = read_file_bytes(in_path);
      const auto output = encrypt_cmd->parsed() ? encrypt_text(input, key) : decrypt_text(input, key);
      write_file_bytes(out_path, output);
      out << fmt::format("bytes={}\n", output.size());
    } else if (stats_cmd->parsed()) {
      const NGramTable table = ingest_corpus(read_file_bytes(corpus), order);
      save_tsv(stats_out, table);
      out << fmt::format("order={}\nngrams={}\n", order, table.entries().size());
    } else if (attack_cmd->parsed()) {
      const CostWeights w = parse_weights(attack_scoring.weights);
      const KeyScorer scorer(read_ciphertext(attack_scoring.cipher),
                             load_reference(attack_scoring.stats, w), w);
      RunOptions options;
      options.measure_time = parse_switch("--timing", attack_timing);
      if (!attack_scoring.true_key.empty()) options.true_key = parse_key(attack_scoring.true_key);
      const Algorithm algorithm = parse_algorithm(algo);
      AttackResult result;
      if (algorithm == Algorithm::kGa) {
        GaParams p = default_ga_params();
        if (pop_size) p.pop_size = *pop_size;
        if (max_gen) p.max_gen = *max_gen;
        if (cross_rate) p.cross_rate = *cross_rate;
        if (mutate_rate) p.mutate_rate = *mutate_rate;
        p.rng_seed = seed;
        result = run_ga(scorer, p, options);
      } else {
        MaParams p = default_ma_params();
        if (pop_size) p.ga.pop_size = *pop_size;
        if (max_gen) p.ga.max_gen = *max_gen;
        if (cross_rate) p.ga.cross_rate = *cross_rate;
        if (mutate_rate) p.ga.mutate_rate = *mutate_rate;
        p.ga.rng_seed = seed;
        p.ls_max_steps = parse_steps(ls_steps_text);
        p.ls_on_init = !ls_off_init;
        p.ls_on_offspring = !ls_off_offspring;
        result = run_ma(scorer, p, options);
      }
      print_result(out, to_string(algorithm), result);
    } else if (oracle_cmd->parsed()) {
      const CostWeights w = parse_weights(oracle_scoring.weights);
      const OracleResult oracle = brute_force(
          KeyScorer(read_ciphertext(oracle_scoring.cipher), load_reference(oracle_scoring.stats, w), w));
      out << fmt::format("evaluated={}\n", oracle.evaluations());
      out << fmt::format("best_key={}\n", oracle.best_key.to_string());
      out << fmt::format("best_cost={:.12f}\n", oracle.best_cost);
      if (!oracle_scoring.true_key.empty()) {
        const Key10 truth = parse_key(oracle_scoring.true_key);
        out << fmt::format("true_key_rank={}\n", oracle.rank_of(truth));
        out << fmt::format("bits_matched={}\n", bits_matched(oracle.best_key, truth));
      }
    } else if (bench_cmd->parsed()) {
      ExperimentSpec spec;
      if (!spec_path.empty()) spec = load_experiment_config(spec_path);
      if (o_lengths->count()) spec.ciphertext_lengths = lengths;
      if (o_messages->count()) spec.messages_per_point = messages;
      if (o_runs->count()) spec.runs_per_message = runs;
      if (o_algos->count()) {
        spec.algorithms.clear();
        for (const auto& a : algos) spec.algorithms.push_back(parse_algorithm(a));
      }
      if (o_seed->count()) spec.master_seed = master_seed;
      if (o_weights->count()) spec.weights = parse_weights(bench_weights);
      if (o_ga_pop->count()) spec.ga.pop_size = ga_pop;
      if (o_ga_gen->count()) spec.ga.max_gen = ga_gen;
      if (o_ga_cross->count()) spec.ga.cross_rate = ga_cross;
      if (o_ga_mut->count()) spec.ga.mutate_rate = ga_mut;
      if (o_ma_pop->count()) spec.ma.ga.pop_size = ma_pop;
      if (o_ma_gen->count()) spec.ma.ga.max_gen = ma_gen;
      if (o_ma_cross->count()) spec.ma.ga.cross_rate = ma_cross;
      if (o_ma_mut->count()) spec.ma.ga.mutate_rate = ma_mut;
      if (o_ls_steps->count()) spec.ma.ls_max_steps = parse_steps(bench_ls_steps);
      if (o_ls_init->count()) spec.ma.ls_on_init = !bench_ls_off_init;
      if (o_ls_off->count()) spec.ma.ls_on_offspring = !bench_ls_off_offspring;
      if (o_stop->count()) spec.stop_at_oracle = parse_switch("--stop-at-oracle", stop_at_oracle);
      if (o_timing->count()) spec.measure_time = parse_switch("--timing", bench_timing);
      spec.validate();

      const std::vector<std::uint8_t> corpus_bytes = read_file_bytes(bench_corpus);
      const LanguageStats reference = load_reference(bench_stats, spec.weights);
      const ExperimentResult result = run_experiment(spec, corpus_bytes, reference, jobs);
      write_results(result.points, bench_out);
      if (!log_path.empty()) write_run_log(result.runs, log_path);
      out << fmt::format("points={}\nruns={}\nout={}\n", result.points.size(), result.runs.size(), bench_out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace sdescrypt::cli
