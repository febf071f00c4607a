#include "vdims/linalg.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

namespace vdims {

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols) {
  offsets_.assign(rows + 1, 0);
}

SparseIntMatrix SparseIntMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets) {
    if (t.row >= rows || t.col >= cols) throw std::out_of_range("triplet index out of range");
  }
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) { return a.row < b.row; });
  SparseIntMatrix m(0, cols);
  std::vector<MatrixEntry> row;
  std::size_t t = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    row.clear();
    for (; t < triplets.size() && triplets[t].row == r; ++t)
      row.push_back({static_cast<std::uint32_t>(triplets[t].col), triplets[t].value});
    m.add_row(row);
  }
  return m;
}

void SparseIntMatrix::add_row(std::span<const MatrixEntry> entries) {
  std::vector<MatrixEntry> sorted(entries.begin(), entries.end());
  for (const MatrixEntry& e : sorted) {
    if (e.col >= cols_) throw std::out_of_range("column index out of range");
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const MatrixEntry& a, const MatrixEntry& b) { return a.col < b.col; });
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    std::int64_t sum = 0;
    for (; j < sorted.size() && sorted[j].col == sorted[i].col; ++j) sum += sorted[j].value;
    if (sum != 0) entries_.push_back({sorted[i].col, sum});
    i = j;
  }
  offsets_.push_back(entries_.size());
}

bool SparseIntMatrix::add_nonzero_row(std::span<const MatrixEntry> entries) {
  add_row(entries);
  if (offsets_[offsets_.size() - 1] == offsets_[offsets_.size() - 2]) {
    offsets_.pop_back();
    return false;
  }
  return true;
}

std::int64_t SparseIntMatrix::max_abs_value() const {
  std::int64_t best = 0;
  for (const MatrixEntry& e : entries_) best = std::max(best, e.value < 0 ? -e.value : e.value);
  return best;
}

std::vector<Triplet> SparseIntMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < rows(); ++r)
    for (const MatrixEntry& e : row(r)) out.push_back({r, e.col, e.value});
  return out;
}

SparseIntMatrix SparseIntMatrix::select_rows(std::span<const std::size_t> rows) const {
  SparseIntMatrix out(0, cols_);
  for (std::size_t r : rows) out.add_row(row(r));
  return out;
}

void SparseIntMatrix::append(const SparseIntMatrix& other) {
  if (other.cols_ != cols_) throw std::invalid_argument("column counts differ");
  for (std::size_t r = 0; r < other.rows(); ++r) {
    auto src = other.row(r);
    entries_.insert(entries_.end(), src.begin(), src.end());
    offsets_.push_back(entries_.size());
  }
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mulmod(b, b))
      if (e & 1) r = mulmod(r, b);
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  for (; d % 2 == 0; d /= 2) ++s;
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> default_primes() { return {2147483647u, 2147483629u}; }

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

struct PivotRow {
  std::vector<std::uint32_t> cols;  // cols[0] is the pivot column (value 1)
  std::vector<std::uint32_t> vals;
};

}  // namespace

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p, const RankOptions& options, PivotStats* stats) {
  if (!is_prime(p)) throw ParameterError(std::to_string(p) + " is not prime");
  if (p < kMinPrime) throw ParameterError("prime " + std::to_string(p) + " is below the admissible bound 2^16");

  const std::size_t ncols = m.cols();
  const std::size_t nrows = m.rows();
  std::vector<std::uint32_t> col_count(ncols, 0);
  for (std::size_t r = 0; r < nrows; ++r)
    for (const MatrixEntry& e : m.row(r)) ++col_count[e.col];

  std::vector<std::size_t> order(nrows);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).size() < m.row(b).size(); });

  std::vector<std::int32_t> pivot_of(ncols, -1);
  std::vector<PivotRow> pivots;
  std::vector<std::uint32_t> acc(ncols, 0);
  std::vector<std::uint8_t> touched_flag(ncols, 0), queued(ncols, 0);
  std::vector<std::uint32_t> touched;
  using QueueItem = std::pair<std::int32_t, std::uint32_t>;  // (pivot ordinal, column)
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue;
  PivotStats local;

  auto touch = [&](std::uint32_t c) {
    if (!touched_flag[c]) {
      touched_flag[c] = 1;
      touched.push_back(c);
    }
    if (pivot_of[c] >= 0 && !queued[c]) {
      queued[c] = 1;
      queue.emplace(pivot_of[c], c);
    }
  };

  for (std::size_t processed = 0; processed < nrows; ++processed) {
    if (pivots.size() == ncols) break;
    if (options.deadline && (processed & 1023) == 0 && std::chrono::steady_clock::now() > *options.deadline)
      throw BudgetExceeded("rank computation exceeded its time budget");
    ++local.rows_processed;

    for (const MatrixEntry& e : m.row(order[processed])) {
      std::int64_t v = e.value % static_cast<std::int64_t>(p);
      if (v < 0) v += p;
      acc[e.col] = static_cast<std::uint32_t>((acc[e.col] + static_cast<std::uint64_t>(v)) % p);
      touch(e.col);
    }
    while (!queue.empty()) {
      auto [ordinal, c] = queue.top();
      queue.pop();
      queued[c] = 0;
      const std::uint64_t factor = acc[c];
      if (factor == 0) continue;
      ++local.eliminations;
      const PivotRow& pr = pivots[ordinal];
      acc[c] = 0;
      for (std::size_t k = 1; k < pr.cols.size(); ++k) {
        const std::uint32_t cc = pr.cols[k];
        const std::uint64_t sub = factor * pr.vals[k] % p;
        acc[cc] = static_cast<std::uint32_t>((acc[cc] + p - sub) % p);
        touch(cc);
      }
    }

    std::uint32_t best = 0;
    bool found = false;
    for (std::uint32_t c : touched) {
      if (acc[c] != 0 && (!found || col_count[c] < col_count[best] || (col_count[c] == col_count[best] && c < best))) {
        best = c;
        found = true;
      }
    }
    if (found) {
      PivotRow pr;
      const std::uint64_t inv = inverse_mod(acc[best], p);
      pr.cols.push_back(best);
      pr.vals.push_back(1);
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        if (c != best && acc[c] != 0) {
          pr.cols.push_back(c);
          pr.vals.push_back(static_cast<std::uint32_t>(acc[c] * inv % p));
        }
      }
      local.pivot_entries += pr.cols.size();
      local.max_pivot_length = std::max(local.max_pivot_length, pr.cols.size());
      pivot_of[best] = static_cast<std::int32_t>(pivots.size());
      pivots.push_back(std::move(pr));
    }
    for (std::uint32_t c : touched) {
      acc[c] = 0;
      touched_flag[c] = 0;
    }
    touched.clear();
  }
  if (stats) *stats = local;
  return pivots.size();
}

RankResult rank_consensus(const SparseIntMatrix& m, std::span<const std::uint32_t> primes, const RankOptions& options) {
  std::vector<std::uint32_t> distinct(primes.begin(), primes.end());
  std::sort(distinct.begin(), distinct.end());
  if (std::adjacent_find(distinct.begin(), distinct.end()) != distinct.end() || distinct.size() < 2)
    throw ParameterError("rank consensus needs at least two distinct primes");

  const auto start = std::chrono::steady_clock::now();
  RankResult result;
  result.primes.assign(primes.begin(), primes.end());
  result.per_prime.resize(primes.size());
  if (options.parallel_primes) {
    std::vector<std::future<std::size_t>> jobs;
    std::vector<PivotStats> stats(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i)
      jobs.push_back(std::async(std::launch::async, [&, i] { return rank_mod_p(m, primes[i], options, &stats[i]); }));
    for (std::size_t i = 0; i < primes.size(); ++i) result.per_prime[i] = jobs[i].get();
    result.stats = stats[0];
  } else {
    for (std::size_t i = 0; i < primes.size(); ++i)
      result.per_prime[i] = rank_mod_p(m, primes[i], options, i == 0 ? &result.stats : nullptr);
  }
  result.rank = *std::max_element(result.per_prime.begin(), result.per_prime.end());
  result.consensus = std::all_of(result.per_prime.begin(), result.per_prime.end(),
                                 [&](std::size_t r) { return r == result.per_prime.front(); });
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no, bool skip_comments) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (skip_comments && line[line.find_first_not_of(" \t")] == '%') continue;
    return true;
  }
  return false;
}

template <typename... T>
bool read_fields(const std::string& line, T&... fields) {
  std::istringstream s(line);
  ((s >> fields), ...);
  if (!s) return false;
  std::string rest;
  return !(s >> rest);
}

}  // namespace

void export_sms(const SparseIntMatrix& m, std::ostream& out) {
  out << m.rows() << ' ' << m.cols() << " M\n";
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const MatrixEntry& e : m.row(r)) out << r + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  out << "0 0 0\n";
}

SparseIntMatrix import_sms(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no, false)) throw ParseError(line_no, "missing SMS header");
  std::size_t rows = 0, cols = 0;
  std::string tag;
  if (!read_fields(line, rows, cols, tag) || (tag != "M" && tag != "R" && tag != "I"))
    throw ParseError(line_no, "malformed SMS header");
  std::vector<Triplet> triplets;
  while (true) {
    if (!next_content_line(in, line, line_no, false)) throw ParseError(line_no + 1, "missing 0 0 0 terminator");
    long long i = 0, j = 0, v = 0;
    if (!read_fields(line, i, j, v)) throw ParseError(line_no, "malformed triplet");
    if (i == 0 && j == 0 && v == 0) break;
    if (i < 1 || j < 1) throw ParseError(line_no, "indices are 1-based");
    if (static_cast<std::size_t>(i) > rows || static_cast<std::size_t>(j) > cols)
      throw ParseError(line_no, "index out of range");
    triplets.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), v});
  }
  return SparseIntMatrix::from_triplets(rows, cols, std::move(triplets));
}

void export_mtx(const SparseIntMatrix& m, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate integer general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const MatrixEntry& e : m.row(r)) out << r + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
}

SparseIntMatrix import_mtx(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing MatrixMarket banner");
  ++line_no;
  {
    std::istringstream banner(line);
    std::string magic, object, format, field, symmetry;
    banner >> magic >> object >> format >> field >> symmetry;
    if (magic != "%%MatrixMarket" || object != "matrix" || format != "coordinate" || field != "integer" ||
        symmetry != "general")
      throw ParseError(line_no, "unsupported MatrixMarket banner");
  }
  if (!next_content_line(in, line, line_no, true)) throw ParseError(line_no, "missing size line");
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!read_fields(line, rows, cols, nnz)) throw ParseError(line_no, "malformed size line");
  std::vector<Triplet> triplets;
  triplets.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!next_content_line(in, line, line_no, true)) throw ParseError(line_no, "fewer entries than declared");
    long long i = 0, j = 0, v = 0;
    if (!read_fields(line, i, j, v)) throw ParseError(line_no, "malformed entry");
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > rows || static_cast<std::size_t>(j) > cols)
      throw ParseError(line_no, "index out of range");
    triplets.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), v});
  }
  return SparseIntMatrix::from_triplets(rows, cols, std::move(triplets));
}

void export_matrix(const SparseIntMatrix& m, MatrixFormat format, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  format == MatrixFormat::Sms ? export_sms(m, out) : export_mtx(m, out);
}

SparseIntMatrix import_matrix(MatrixFormat format, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return format == MatrixFormat::Sms ? import_sms(in) : import_mtx(in);
}

}  // namespace vdims
