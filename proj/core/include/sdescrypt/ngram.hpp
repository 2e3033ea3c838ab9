#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdescrypt {

/// The 26-letter statistics alphabet. Letters map case-insensitively; every
/// other byte is excluded from statistics.
struct Alphabet {
  static constexpr int kSize = 26;

  /// 0..25 for A-Z / a-z, -1 otherwise.
  static constexpr int index_of(std::uint8_t byte) {
    if (byte >= 'A' && byte <= 'Z') return byte - 'A';
    if (byte >= 'a' && byte <= 'z') return byte - 'a';
    return -1;
  }
  static constexpr char symbol(int index) { return static_cast<char>('A' + index); }
};

/// Relative n-gram frequencies (order 1, 2 or 3) stored densely over all 26^n
/// n-grams. A table with no windows is "empty": every frequency is zero.
class NGramTable {
 public:
  static constexpr int kMaxOrder = 3;

  /// Empty table of the given order. Throws ValidationError for order outside 1..3.
  explicit NGramTable(int order);

  /// Builds a table from (ngram, frequency) pairs. Every ngram must be
  /// `order` upper-case letters, appear once, and have a finite frequency >= 0.
  static NGramTable from_entries(int order,
                                 std::span<const std::pair<std::string, double>> entries);

  /// Relative frequencies from raw window counts.
  static NGramTable from_counts(int order, std::span<const std::uint64_t> counts);

  int order() const { return order_; }
  std::size_t cell_count() const { return freq_.size(); }
  bool empty() const;

  /// Frequency of an n-gram given as letters (case-insensitive).
  double frequency(std::string_view ngram) const;

  std::span<const double> dense() const { return freq_; }

  /// Non-zero cells in lexicographic order.
  std::vector<std::pair<std::string, double>> entries() const;

  double total() const;

  friend bool operator==(const NGramTable&, const NGramTable&) = default;

 private:
  int order_;
  std::vector<double> freq_;
};

/// Number of cells for an order: 26, 676, 17576.
std::size_t cell_count(int order);

/// Dense index of an n-gram, or throws ValidationError if it is not `order` letters.
std::size_t ngram_index(std::string_view ngram, int order);

std::string ngram_string(std::size_t index, int order);

/// Counts sliding windows of `order` letters over the filtered letter stream of
/// `text` (non-letters are dropped first, so windows can bridge them). Adds
/// into `counts` (size cell_count(order)) and returns the number of windows.
std::uint64_t count_windows(std::span<const std::uint8_t> text, int order,
                            std::span<std::uint64_t> counts);

/// Reference statistics from a corpus. Throws EmptyCorpusError when the
/// corpus yields no windows of the requested order.
NGramTable ingest_corpus(std::span<const std::uint8_t> text, int order);
NGramTable ingest_corpus(std::string_view text, int order);

/// Statistics of a candidate decryption. Text without any window yields an
/// empty table rather than an error.
NGramTable observe(std::span<const std::uint8_t> text, int order);
NGramTable observe(std::string_view text, int order);

/// TSV: `<NGRAM>\t<frequency>` per line, upper-case, no header.
void write_tsv(std::ostream& out, const NGramTable& table);
/// Infers the order from the n-gram length. Rejects malformed rows, mixed
/// orders, duplicates and frequency sums outside 1 +/- 1e-6.
NGramTable read_tsv(std::istream& in);

void save_tsv(const std::filesystem::path& path, const NGramTable& table);
NGramTable load_tsv(const std::filesystem::path& path);

/// Reads a whole file as bytes; throws IoError naming the path on failure.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace sdescrypt
