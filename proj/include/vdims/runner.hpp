// Grid driver: runs (case, degree, space) jobs, caches per-degree records,
// compares against the reference table and renders reports.
#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vdims/case_spec.hpp"
#include "vdims/polyak.hpp"

namespace vdims {

/// Bumped whenever a change in the relation conventions could change a
/// cached number; part of every cache key.
inline constexpr std::string_view kConventionsVersion = "vdims-conventions-3";

enum class Space : std::uint8_t { W, V };

std::string_view to_string(Space s);

struct SpaceSelection {
  bool w = false;
  bool v = false;

  static SpaceSelection parse(std::string_view text);  // w | v | both | none
  bool empty() const { return !w && !v; }
};

/// dim W_n for one degree.
struct WeightRecord {
  std::size_t diagrams = 0;
  std::size_t six_term_rows = 0;
  std::size_t xii_rows = 0;
  std::size_t fi_rows = 0;
  std::size_t rank = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> per_prime;
  bool consensus = true;
  double seconds = 0.0;

  friend bool operator==(const WeightRecord&, const WeightRecord&) = default;
};

/// dim P_n (all degrees <= n) for one truncation degree.
struct PolyakRecord {
  std::string mode;
  std::size_t basis_size = 0;
  std::vector<std::size_t> basis_per_degree;
  std::vector<std::pair<std::string, std::size_t>> rows_per_template;
  std::size_t rank = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> per_prime;
  bool consensus = true;
  double seconds = 0.0;

  friend bool operator==(const PolyakRecord&, const PolyakRecord&) = default;
};

struct DegreeRecord {
  int n = 0;
  std::optional<WeightRecord> w;
  std::optional<PolyakRecord> p;
  std::optional<std::size_t> dim_p_prev;  // dim P_{n-1}; 0 for n = 0
  std::string error;                     // nonempty when a job of this degree failed

  std::optional<std::size_t> dim_w() const;
  /// dim V_{n/n-1} = dim P_n - dim P_{n-1}, when both are known.
  std::optional<std::size_t> dim_v() const;
  double seconds() const;
};

struct DimensionReport {
  CaseSpec spec;
  std::vector<std::uint32_t> primes;
  std::vector<DegreeRecord> degrees;
};

/// Expected dims for n = 0..5; W and V agree in every reference cell.
struct GoldenRow {
  CaseSpec spec;
  std::array<std::size_t, 6> dims;
};

inline constexpr int kGoldenMaxDegree = 5;

/// All 18 rows, in all_cases() order.
const std::array<GoldenRow, 18>& reference_table();
const GoldenRow& golden_for(const CaseSpec& c);

/// On-disk JSON cache, one file per (case, n, space, conventions, primes).
class ResultCache {
 public:
  ResultCache() = default;  // disabled
  explicit ResultCache(std::filesystem::path dir);

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  static std::string key_text(const CaseSpec& c, int n, Space s, std::span<const std::uint32_t> primes);
  static std::uint64_t key_hash(std::string_view text);
  std::filesystem::path path_for(std::string_view key_text) const;

  std::optional<WeightRecord> load_w(const CaseSpec& c, int n, std::span<const std::uint32_t> primes) const;
  std::optional<PolyakRecord> load_p(const CaseSpec& c, int n, std::span<const std::uint32_t> primes) const;
  void store(const CaseSpec& c, int n, std::span<const std::uint32_t> primes, const WeightRecord& r);
  void store(const CaseSpec& c, int n, std::span<const std::uint32_t> primes, const PolyakRecord& r);

  std::size_t hits() const { return hits_; }

 private:
  std::optional<std::string> read(const std::string& key) const;
  void write(const std::string& key, const std::string& payload);

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  mutable std::size_t hits_ = 0;
};

/// Adds `delta` to the computed rank of one job; used to check that
/// verification notices a wrong number.
struct FaultInjection {
  CaseSpec spec;
  int n = 0;
  Space space = Space::W;  // V perturbs the rank of P_n
  long delta = 1;
};

struct RunnerOptions {
  std::vector<std::uint32_t> primes = default_primes();
  ResultCache* cache = nullptr;
  unsigned jobs = 1;
  std::optional<std::chrono::seconds> cell_budget;  // per (case, n, space) job
  std::optional<FaultInjection> fault;
  /// Called after each finished job, e.g. for progress output. May be called
  /// from worker threads, but never concurrently.
  std::function<void(const CaseSpec&, int, Space, const std::string& error)> on_job;
};

/// Throws InconclusiveRank (with the offending case and degree) on prime
/// disagreement; ParameterError when n_max is outside [0, kMaxDegree].
DimensionReport run_case(const CaseSpec& c, int n_max, SpaceSelection spaces, const RunnerOptions& options = {});

/// Runs the given cases (default: all 18) concurrently by job. Failures are
/// recorded in DegreeRecord::error instead of being thrown.
std::vector<DimensionReport> run_all(int n_max, SpaceSelection spaces, const RunnerOptions& options = {},
                                     std::vector<CaseSpec> cases = {});

enum class CellStatus { Pass, Fail, Skip };
std::string_view to_string(CellStatus s);

struct CellVerdict {
  CaseSpec spec;
  int n = 0;
  Space space = Space::W;
  std::size_t expected = 0;
  std::optional<std::size_t> computed;
  CellStatus status = CellStatus::Skip;
  std::string note;
};

struct ConjectureCheck {
  CaseSpec spec;
  int n = 0;
  std::size_t dim_w = 0;
  std::size_t dim_v = 0;
  bool holds() const { return dim_w == dim_v; }
};

struct Verdict {
  std::vector<CellVerdict> cells;        // every golden cell with n <= max_degree
  std::vector<ConjectureCheck> conjecture;  // every (case, n) with both dims known
  std::size_t count(CellStatus s) const;
  bool conjecture_holds() const;
  bool ok() const { return count(CellStatus::Fail) == 0; }
};

/// Cells of the golden grid for n in [1, max_degree]; cells not covered by
/// `reports` are SKIP.
Verdict verify_against_reference(std::span<const DimensionReport> reports, int max_degree = kGoldenMaxDegree);

/// Table in the layout of the reference grid: one row per case, one column
/// per degree, cells "V / W" (a single number when they agree).
void write_markdown(std::ostream& out, std::span<const DimensionReport> reports);
void write_csv(std::ostream& out, std::span<const DimensionReport> reports);
void write_verdict_markdown(std::ostream& out, const Verdict& v);
std::string report_json(std::span<const DimensionReport> reports, const Verdict* verdict = nullptr, int indent = 2);

/// Comma- or space-separated primes, e.g. "2147483647,2147483629".
std::vector<std::uint32_t> parse_prime_list(std::string_view text);

}  // namespace vdims
