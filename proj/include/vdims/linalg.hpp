// Exact rank of sparse integer matrices by elimination modulo word-sized
// primes, plus SMS / Matrix Market interchange.
#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vdims {

struct MatrixEntry {
  std::uint32_t col = 0;
  std::int64_t value = 0;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  std::int64_t value = 0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Row-compressed integer matrix. Within a row, columns are strictly
/// increasing and values nonzero.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols);

  /// Duplicate (row, col) pairs are summed; zero sums are dropped.
  static SparseIntMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);

  /// Appends a row; duplicate columns are summed and zeros dropped.
  /// An entry whose column is out of range throws std::out_of_range.
  void add_row(std::span<const MatrixEntry> entries);
  /// Same, but skips the row when it comes out empty. Returns whether a row was added.
  bool add_nonzero_row(std::span<const MatrixEntry> entries);

  std::size_t rows() const { return offsets_.size() - 1; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  std::span<const MatrixEntry> row(std::size_t i) const {
    return {entries_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::int64_t max_abs_value() const;
  std::vector<Triplet> triplets() const;

  /// Matrix consisting of the given rows, in the given order.
  SparseIntMatrix select_rows(std::span<const std::size_t> rows) const;
  /// Vertical concatenation; column counts must agree.
  void append(const SparseIntMatrix& other);

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<MatrixEntry> entries_;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PivotStats {
  std::size_t rows_processed = 0;
  std::size_t pivot_entries = 0;  // total stored entries across pivot rows
  std::size_t max_pivot_length = 0;
  std::size_t eliminations = 0;   // row operations performed
};

struct RankOptions {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  bool parallel_primes = false;
};

struct RankResult {
  std::size_t rank = 0;
  std::vector<std::uint32_t> primes;
  std::vector<std::size_t> per_prime;
  bool consensus = true;
  double seconds = 0.0;
  PivotStats stats;  // from the first prime
};

bool is_prime(std::uint64_t n);

/// Smallest admissible modulus. Pipeline coefficients stay far below it, so
/// a nonzero integer coefficient never vanishes mod p.
inline constexpr std::uint32_t kMinPrime = 1u << 16;

/// Two primes just below 2^31.
std::vector<std::uint32_t> default_primes();

/// Rank over Z/p by sparse elimination with a fewest-occurrences pivot rule.
/// Throws ParameterError unless p is a prime of at least kMinPrime.
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p, const RankOptions& options = {},
                       PivotStats* stats = nullptr);

/// Needs at least two distinct admissible primes. The reported rank is the
/// maximum per-prime rank; disagreement clears `consensus` and is not thrown.
RankResult rank_consensus(const SparseIntMatrix& m, std::span<const std::uint32_t> primes,
                          const RankOptions& options = {});

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class MatrixFormat { Sms, MatrixMarket };

/// SMS: `rows cols M`, then `i j v` with 1-based indices, then `0 0 0`.
void export_sms(const SparseIntMatrix& m, std::ostream& out);
SparseIntMatrix import_sms(std::istream& in);

/// `%%MatrixMarket matrix coordinate integer general`.
void export_mtx(const SparseIntMatrix& m, std::ostream& out);
SparseIntMatrix import_mtx(std::istream& in);

void export_matrix(const SparseIntMatrix& m, MatrixFormat format, const std::filesystem::path& path);
SparseIntMatrix import_matrix(MatrixFormat format, const std::filesystem::path& path);

}  // namespace vdims
