#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "sdescrypt/error.hpp"
#include "sdescrypt/experiment.hpp"

namespace sdescrypt {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = s.find(',');
    parts.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw ValidationError(fmt::format("config key '{}': cannot parse '{}'", key, text));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "off" || text == "no") return false;
  throw ValidationError(fmt::format("config key '{}': expected true/false, got '{}'", key, text));
}

std::size_t parse_steps(std::string_view key, std::string_view text) {
  if (text == "unbounded") return kUnboundedSteps;
  return parse_number<std::size_t>(key, text);
}

void apply(ExperimentSpec& spec, std::string_view key, std::string_view value) {
  if (key == "lengths") {
    spec.ciphertext_lengths.clear();
    for (auto part : split_list(value)) spec.ciphertext_lengths.push_back(parse_number<std::size_t>(key, part));
  } else if (key == "messages") {
    spec.messages_per_point = parse_number<std::size_t>(key, value);
  } else if (key == "runs") {
    spec.runs_per_message = parse_number<std::size_t>(key, value);
  } else if (key == "algos") {
    spec.algorithms.clear();
    for (auto part : split_list(value)) spec.algorithms.push_back(parse_algorithm(part));
  } else if (key == "seed") {
    spec.master_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "weights") {
    const auto parts = split_list(value);
    if (parts.size() != 3) throw ValidationError("config key 'weights' needs alpha,beta,gamma");
    spec.weights = {parse_number<double>(key, parts[0]), parse_number<double>(key, parts[1]),
                    parse_number<double>(key, parts[2])};
  } else if (key == "ga-pop-size") {
    spec.ga.pop_size = parse_number<std::size_t>(key, value);
  } else if (key == "ga-max-gen") {
    spec.ga.max_gen = parse_number<std::size_t>(key, value);
  } else if (key == "ga-cross-rate") {
    spec.ga.cross_rate = parse_number<double>(key, value);
  } else if (key == "ga-mutate-rate") {
    spec.ga.mutate_rate = parse_number<double>(key, value);
  } else if (key == "ga-selection") {
    spec.ga.selection = parse_selection(value);
  } else if (key == "ma-pop-size") {
    spec.ma.ga.pop_size = parse_number<std::size_t>(key, value);
  } else if (key == "ma-max-gen") {
    spec.ma.ga.max_gen = parse_number<std::size_t>(key, value);
  } else if (key == "ma-cross-rate") {
    spec.ma.ga.cross_rate = parse_number<double>(key, value);
  } else if (key == "ma-mutate-rate") {
    spec.ma.ga.mutate_rate = parse_number<double>(key, value);
  } else if (key == "ma-selection") {
    spec.ma.ga.selection = parse_selection(value);
  } else if (key == "ls-max-steps") {
    spec.ma.ls_max_steps = parse_steps(key, value);
  } else if (key == "ls-strategy") {
    spec.ma.ls_strategy = parse_local_strategy(value);
  } else if (key == "ls-off-init") {
    spec.ma.ls_on_init = !parse_bool(key, value);
  } else if (key == "ls-off-offspring") {
    spec.ma.ls_on_offspring = !parse_bool(key, value);
  } else if (key == "stop-at-oracle") {
    spec.stop_at_oracle = parse_bool(key, value);
  } else if (key == "timing") {
    spec.measure_time = parse_bool(key, value);
  } else {
    throw ValidationError(fmt::format("unknown config key '{}'", key));
  }
}

}  // namespace

ExperimentSpec parse_experiment_config(std::istream& in, ExperimentSpec base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(fmt::format("config line {}: expected key=value", line_no));
    }
    try {
      apply(base, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
  base.validate();
  return base;
}

ExperimentSpec load_experiment_config(const std::filesystem::path& path, ExperimentSpec base) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  try {
    return parse_experiment_config(in, std::move(base));
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string format_experiment_config(const ExperimentSpec& spec) {
  auto join = [](const auto& items, auto&& render) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += ',';
      out += render(item);
    }
    return out;
  };
  auto steps = [](std::size_t s) {
    return s == kUnboundedSteps ? std::string("unbounded") : std::to_string(s);
  };
  std::ostringstream out;
  out << "lengths=" << join(spec.ciphertext_lengths, [](std::size_t v) { return std::to_string(v); }) << '\n'
      << "messages=" << spec.messages_per_point << '\n'
      << "runs=" << spec.runs_per_message << '\n'
      << "algos=" << join(spec.algorithms, [](Algorithm a) { return a == Algorithm::kGa ? "ga" : "ma"; }) << '\n'
      << "seed=" << spec.master_seed << '\n'
      << fmt::format("weights={},{},{}\n", spec.weights.alpha, spec.weights.beta, spec.weights.gamma)
      << "ga-pop-size=" << spec.ga.pop_size << '\n'
      << "ga-max-gen=" << spec.ga.max_gen << '\n'
      << fmt::format("ga-cross-rate={}\n", spec.ga.cross_rate)
      << fmt::format("ga-mutate-rate={}\n", spec.ga.mutate_rate)
      << "ga-selection=" << to_string(spec.ga.selection) << '\n'
      << "ma-pop-size=" << spec.ma.ga.pop_size << '\n'
      << "ma-max-gen=" << spec.ma.ga.max_gen << '\n'
      << fmt::format("ma-cross-rate={}\n", spec.ma.ga.cross_rate)
      << fmt::format("ma-mutate-rate={}\n", spec.ma.ga.mutate_rate)
      << "ma-selection=" << to_string(spec.ma.ga.selection) << '\n'
      << "ls-max-steps=" << steps(spec.ma.ls_max_steps) << '\n'
      << "ls-strategy=" << to_string(spec.ma.ls_strategy) << '\n'
      << "ls-off-init=" << (spec.ma.ls_on_init ? "false" : "true") << '\n'
      << "ls-off-offspring=" << (spec.ma.ls_on_offspring ? "false" : "true") << '\n'
      << "stop-at-oracle=" << (spec.stop_at_oracle ? "true" : "false") << '\n'
      << "timing=" << (spec.measure_time ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace sdescrypt
