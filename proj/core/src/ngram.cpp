#include "sdescrypt/ngram.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

#include "sdescrypt/error.hpp"

namespace sdescrypt {

namespace {

void check_order(int order) {
  if (order < 1 || order > NGramTable::kMaxOrder) {
    throw ValidationError(fmt::format("n-gram order must be 1, 2 or 3, got {}", order));
  }
}

std::span<const std::uint8_t> as_bytes(std::string_view text) {
  return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

// Shortest fixed-point rendering with at least six decimals that parses back
// to the same double.
std::string format_frequency(double value) {
  for (int precision = 6; precision < 40; ++precision) {
    std::string text = fmt::format("{:.{}f}", value, precision);
    double parsed = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), parsed);
    if (parsed == value) return text;
  }
  return fmt::format("{}", value);
}

}  // namespace

std::size_t cell_count(int order) {
  check_order(order);
  std::size_t cells = 1;
  for (int i = 0; i < order; ++i) cells *= Alphabet::kSize;
  return cells;
}

std::size_t ngram_index(std::string_view ngram, int order) {
  check_order(order);
  if (ngram.size() != static_cast<std::size_t>(order)) {
    throw ValidationError(fmt::format("n-gram '{}' does not have {} letters", ngram, order));
  }
  std::size_t index = 0;
  for (char c : ngram) {
    const int letter = Alphabet::index_of(static_cast<std::uint8_t>(c));
    if (letter < 0) throw ValidationError(fmt::format("n-gram '{}' contains a non-letter", ngram));
    index = index * Alphabet::kSize + static_cast<std::size_t>(letter);
  }
  return index;
}

std::string ngram_string(std::size_t index, int order) {
  std::string out(static_cast<std::size_t>(order), 'A');
  for (int i = order - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = Alphabet::symbol(static_cast<int>(index % Alphabet::kSize));
    index /= Alphabet::kSize;
  }
  return out;
}

NGramTable::NGramTable(int order) : order_(order), freq_(sdescrypt::cell_count(order), 0.0) {}

NGramTable NGramTable::from_entries(int order,
                                    std::span<const std::pair<std::string, double>> entries) {
  NGramTable table(order);
  std::vector<bool> seen(table.freq_.size(), false);
  for (const auto& [gram, value] : entries) {
    for (char c : gram) {
      if (c < 'A' || c > 'Z') {
        throw ValidationError(fmt::format("n-gram '{}' must be upper-case A-Z", gram));
      }
    }
    const std::size_t index = ngram_index(gram, order);
    if (seen[index]) throw ValidationError(fmt::format("duplicate n-gram '{}'", gram));
    if (!std::isfinite(value) || value < 0.0) {
      throw ValidationError(fmt::format("n-gram '{}' has invalid frequency {}", gram, value));
    }
    seen[index] = true;
    table.freq_[index] = value;
  }
  return table;
}

NGramTable NGramTable::from_counts(int order, std::span<const std::uint64_t> counts) {
  NGramTable table(order);
  if (counts.size() != table.freq_.size()) {
    throw ValidationError("count vector size does not match the n-gram order");
  }
  std::uint64_t windows = 0;
  for (std::uint64_t c : counts) windows += c;
  if (windows == 0) return table;
  const double denom = static_cast<double>(windows);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    table.freq_[i] = static_cast<double>(counts[i]) / denom;
  }
  return table;
}

bool NGramTable::empty() const {
  for (double f : freq_) {
    if (f != 0.0) return false;
  }
  return true;
}

double NGramTable::frequency(std::string_view ngram) const {
  return freq_[ngram_index(ngram, order_)];
}

std::vector<std::pair<std::string, double>> NGramTable::entries() const {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < freq_.size(); ++i) {
    if (freq_[i] != 0.0) out.emplace_back(ngram_string(i, order_), freq_[i]);
  }
  return out;
}

double NGramTable::total() const {
  double sum = 0.0;
  for (double f : freq_) sum += f;
  return sum;
}

std::uint64_t count_windows(std::span<const std::uint8_t> text, int order,
                            std::span<std::uint64_t> counts) {
  const std::size_t cells = cell_count(order);
  if (counts.size() != cells) throw ValidationError("count buffer has the wrong size");
  std::size_t rolling = 0;
  int filled = 0;
  std::uint64_t windows = 0;
  for (std::uint8_t byte : text) {
    const int letter = Alphabet::index_of(byte);
    if (letter < 0) continue;
    rolling = (rolling * Alphabet::kSize + static_cast<std::size_t>(letter)) % cells;
    if (filled < order) ++filled;
    if (filled == order) {
      ++counts[rolling];
      ++windows;
    }
  }
  return windows;
}

NGramTable observe(std::span<const std::uint8_t> text, int order) {
  std::vector<std::uint64_t> counts(cell_count(order), 0);
  count_windows(text, order, counts);
  return NGramTable::from_counts(order, counts);
}

NGramTable observe(std::string_view text, int order) { return observe(as_bytes(text), order); }

NGramTable ingest_corpus(std::span<const std::uint8_t> text, int order) {
  std::vector<std::uint64_t> counts(cell_count(order), 0);
  if (count_windows(text, order, counts) == 0) {
    throw EmptyCorpusError(
        fmt::format("corpus has no letter windows of length {} to build statistics from", order));
  }
  return NGramTable::from_counts(order, counts);
}

NGramTable ingest_corpus(std::string_view text, int order) {
  return ingest_corpus(as_bytes(text), order);
}

void write_tsv(std::ostream& out, const NGramTable& table) {
  for (const auto& [gram, value] : table.entries()) {
    out << gram << '\t' << format_frequency(value) << '\n';
  }
}

NGramTable read_tsv(std::istream& in) {
  std::vector<std::pair<std::string, double>> rows;
  int order = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ValidationError(fmt::format("line {}: expected '<ngram>\\t<frequency>'", line_no));
    }
    std::string gram = line.substr(0, tab);
    const std::string number = line.substr(tab + 1);
    const int row_order = static_cast<int>(gram.size());
    if (order == 0) {
      if (row_order < 1 || row_order > NGramTable::kMaxOrder) {
        throw ValidationError(fmt::format("line {}: n-gram '{}' must have 1-3 letters", line_no, gram));
      }
      order = row_order;
    } else if (row_order != order) {
      throw ValidationError(fmt::format("line {}: mixed n-gram orders in one table", line_no));
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc() || end != number.data() + number.size()) {
      throw ValidationError(fmt::format("line {}: bad frequency '{}'", line_no, number));
    }
    rows.emplace_back(std::move(gram), value);
  }
  if (order == 0) throw ValidationError("n-gram table file has no rows");
  NGramTable table = NGramTable::from_entries(order, rows);
  const double sum = table.total();
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ValidationError(fmt::format("n-gram frequencies sum to {}, expected 1 +/- 1e-6", sum));
  }
  return table;
}

void save_tsv(const std::filesystem::path& path, const NGramTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  write_tsv(out, table);
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

NGramTable load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  try {
    return read_tsv(in);
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(fmt::format("failed reading '{}'", path.string()));
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace sdescrypt
