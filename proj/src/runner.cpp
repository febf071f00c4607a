#include "vdims/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace vdims {

using nlohmann::json;

std::string_view to_string(Space s) { return s == Space::W ? "W" : "V"; }

SpaceSelection SpaceSelection::parse(std::string_view text) {
  if (text == "w") return {true, false};
  if (text == "v") return {false, true};
  if (text == "both") return {true, true};
  if (text == "none") return {};
  throw std::invalid_argument("space must be w, v, both or none: " + std::string(text));
}

std::optional<std::size_t> DegreeRecord::dim_w() const {
  if (!w) return std::nullopt;
  return w->dim;
}

std::optional<std::size_t> DegreeRecord::dim_v() const {
  if (!p || !dim_p_prev || p->dim < *dim_p_prev) return std::nullopt;
  return p->dim - *dim_p_prev;
}

double DegreeRecord::seconds() const { return (w ? w->seconds : 0.0) + (p ? p->seconds : 0.0); }

// ---------------------------------------------------------------------------
// Reference dimensions, n = 0..5. The same numbers appear for W_n and for
// V_{n/n-1} in every row.

const std::array<GoldenRow, 18>& reference_table() {
  using S = SkeletonKind;
  using M = R23Mode;
  using R = R1Mode;
  static const std::array<GoldenRow, 18> table{{
      {{S::Round, M::Standard, R::ModR1}, {1, 0, 0, 1, 4, 17}},
      {{S::Round, M::Standard, R::NoR1}, {1, 1, 1, 2, 7, 29}},
      {{S::Round, M::BraidLike, R::ModR1}, {1, 0, 0, 1, 4, 17}},
      {{S::Round, M::BraidLike, R::NoR1}, {1, 1, 2, 5, 19, 77}},
      {{S::Round, M::R2Only, R::ModR1}, {1, 0, 0, 4, 44, 648}},
      {{S::Round, M::R2Only, R::NoR1}, {1, 1, 3, 16, 160, 2248}},
      {{S::Long, M::Standard, R::ModR1}, {1, 0, 2, 7, 42, 246}},
      {{S::Long, M::Standard, R::NoR1}, {1, 2, 5, 15, 67, 365}},
      {{S::Long, M::BraidLike, R::ModR1}, {1, 0, 2, 7, 42, 246}},
      {{S::Long, M::BraidLike, R::NoR1}, {1, 2, 7, 27, 139, 813}},
      {{S::Long, M::R2Only, R::ModR1}, {1, 0, 2, 28, 420, 7808}},
      {{S::Long, M::R2Only, R::NoR1}, {1, 2, 10, 96, 1332, 23880}},
      {{S::Descending, M::Standard, R::ModR1}, {1, 0, 0, 1, 6, 34}},
      {{S::Descending, M::Standard, R::NoR1}, {1, 1, 1, 2, 8, 42}},
      {{S::Descending, M::BraidLike, R::ModR1}, {1, 0, 0, 1, 6, 34}},
      {{S::Descending, M::BraidLike, R::NoR1}, {1, 1, 2, 6, 24, 120}},
      {{S::Descending, M::R2Only, R::ModR1}, {1, 0, 0, 2, 18, 174}},
      {{S::Descending, M::R2Only, R::NoR1}, {1, 1, 2, 9, 63, 570}},
  }};
  return table;
}

const GoldenRow& golden_for(const CaseSpec& c) {
  for (const GoldenRow& row : reference_table())
    if (row.spec == c) return row;
  throw std::out_of_range("no golden row for " + c.name());
}

// ---------------------------------------------------------------------------
// JSON encoding of records

namespace {

json to_json_value(const WeightRecord& r) {
  return {{"diagrams", r.diagrams}, {"rows_6T", r.six_term_rows}, {"rows_XII", r.xii_rows},
          {"rows_FI", r.fi_rows},   {"rank", r.rank},             {"dim", r.dim},
          {"per_prime", r.per_prime}, {"consensus", r.consensus}, {"seconds", r.seconds}};
}

json to_json_value(const PolyakRecord& r) {
  json rows = json::array();
  for (const auto& [name, count] : r.rows_per_template) rows.push_back({{"template", name}, {"rows", count}});
  return {{"mode", r.mode},
          {"basis_size", r.basis_size},
          {"basis_per_degree", r.basis_per_degree},
          {"rows_per_template", rows},
          {"rank", r.rank},
          {"dim", r.dim},
          {"per_prime", r.per_prime},
          {"consensus", r.consensus},
          {"seconds", r.seconds}};
}

WeightRecord weight_from_json(const json& j) {
  WeightRecord r;
  r.diagrams = j.at("diagrams");
  r.six_term_rows = j.at("rows_6T");
  r.xii_rows = j.at("rows_XII");
  r.fi_rows = j.at("rows_FI");
  r.rank = j.at("rank");
  r.dim = j.at("dim");
  r.per_prime = j.at("per_prime").get<std::vector<std::size_t>>();
  r.consensus = j.at("consensus");
  r.seconds = j.at("seconds");
  return r;
}

PolyakRecord polyak_from_json(const json& j) {
  PolyakRecord r;
  r.mode = j.at("mode");
  r.basis_size = j.at("basis_size");
  r.basis_per_degree = j.at("basis_per_degree").get<std::vector<std::size_t>>();
  for (const json& row : j.at("rows_per_template"))
    r.rows_per_template.emplace_back(row.at("template").get<std::string>(), row.at("rows").get<std::size_t>());
  r.rank = j.at("rank");
  r.dim = j.at("dim");
  r.per_prime = j.at("per_prime").get<std::vector<std::size_t>>();
  r.consensus = j.at("consensus");
  r.seconds = j.at("seconds");
  return r;
}

std::string prime_text(std::span<const std::uint32_t> primes) {
  std::string out;
  for (std::uint32_t p : primes) {
    if (!out.empty()) out += ',';
    out += std::to_string(p);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cache

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::string ResultCache::key_text(const CaseSpec& c, int n, Space s, std::span<const std::uint32_t> primes) {
  // V records hold dim P_n, from which the quotient is assembled.
  std::ostringstream out;
  out << c.name() << '|' << n << '|' << (s == Space::W ? "W" : "P") << '|' << kConventionsVersion << '|'
      << prime_text(primes);
  return out.str();
}

std::uint64_t ResultCache::key_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::filesystem::path ResultCache::path_for(std::string_view key) const {
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << key_hash(key) << ".json";
  return dir_ / name.str();
}

std::optional<std::string> ResultCache::read(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.contains("key") || doc["key"] != key || !doc.contains("record"))
    return std::nullopt;
  std::lock_guard lock(mutex_);
  ++hits_;
  return doc["record"].dump();
}

void ResultCache::write(const std::string& key, const std::string& payload) {
  if (!enabled()) return;
  json doc{{"key", key}, {"timestamp", static_cast<std::int64_t>(std::time(nullptr))}, {"record", json::parse(payload)}};
  std::lock_guard lock(mutex_);
  const auto target = path_for(key);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::optional<WeightRecord> ResultCache::load_w(const CaseSpec& c, int n, std::span<const std::uint32_t> primes) const {
  auto text = read(key_text(c, n, Space::W, primes));
  if (!text) return std::nullopt;
  return weight_from_json(json::parse(*text));
}

std::optional<PolyakRecord> ResultCache::load_p(const CaseSpec& c, int n, std::span<const std::uint32_t> primes) const {
  auto text = read(key_text(c, n, Space::V, primes));
  if (!text) return std::nullopt;
  return polyak_from_json(json::parse(*text));
}

void ResultCache::store(const CaseSpec& c, int n, std::span<const std::uint32_t> primes, const WeightRecord& r) {
  write(key_text(c, n, Space::W, primes), to_json_value(r).dump());
}

void ResultCache::store(const CaseSpec& c, int n, std::span<const std::uint32_t> primes, const PolyakRecord& r) {
  write(key_text(c, n, Space::V, primes), to_json_value(r).dump());
}

// ---------------------------------------------------------------------------
// Jobs

namespace {

struct Job {
  std::size_t case_index = 0;
  int n = 0;
  Space space = Space::W;
};

RankOptions rank_options(const RunnerOptions& options) {
  RankOptions r;
  if (options.cell_budget) r.deadline = std::chrono::steady_clock::now() + *options.cell_budget;
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t perturbed(std::size_t value, long delta) {
  const long long v = static_cast<long long>(value) + delta;
  return v < 0 ? 0 : static_cast<std::size_t>(v);
}

bool fault_hits(const RunnerOptions& options, const CaseSpec& c, int n, Space s) {
  return options.fault && options.fault->spec == c && options.fault->n == n && options.fault->space == s;
}

WeightRecord weight_job(const CaseSpec& c, int n, const RunnerOptions& options) {
  std::optional<WeightRecord> rec;
  if (options.cache) rec = options.cache->load_w(c, n, options.primes);
  if (!rec) {
    const auto t0 = std::chrono::steady_clock::now();
    WeightMatrix wm = build_weight_matrix(c.kind, n, families_for(c));
    const RankResult rank = rank_consensus(wm.matrix, options.primes, rank_options(options));
    rec.emplace();
    rec->diagrams = wm.matrix.cols();
    rec->six_term_rows = wm.six_term_rows;
    rec->xii_rows = wm.xii_rows;
    rec->fi_rows = wm.fi_rows;
    rec->rank = rank.rank;
    rec->dim = rec->diagrams - rank.rank;
    rec->per_prime = rank.per_prime;
    rec->consensus = rank.consensus;
    rec->seconds = seconds_since(t0);
    if (!rec->consensus) throw InconclusiveRank(c.name() + " W_" + std::to_string(n), rec->per_prime);
    if (options.cache) options.cache->store(c, n, options.primes, *rec);
  }
  if (fault_hits(options, c, n, Space::W)) {
    rec->rank = perturbed(rec->rank, options.fault->delta);
    rec->dim = rec->diagrams - std::min(rec->rank, rec->diagrams);
  }
  return *rec;
}

PolyakRecord polyak_job(const CaseSpec& c, int n, const RunnerOptions& options) {
  std::optional<PolyakRecord> rec;
  if (options.cache) rec = options.cache->load_p(c, n, options.primes);
  if (!rec) {
    const auto t0 = std::chrono::steady_clock::now();
    const PolyakMode mode = default_mode(c);
    PolyakMatrix pm = build_polyak_matrix(c, n, mode);
    const RankResult rank = rank_consensus(pm.matrix, options.primes, rank_options(options));
    rec.emplace();
    rec->mode = mode == PolyakMode::Signed ? "signed" : "positive";
    rec->basis_size = pm.basis.size();
    rec->basis_per_degree = pm.basis.degree_counts();
    rec->rows_per_template = pm.rows_per_template;
    rec->rank = rank.rank;
    rec->dim = rec->basis_size - rank.rank;
    rec->per_prime = rank.per_prime;
    rec->consensus = rank.consensus;
    rec->seconds = seconds_since(t0);
    if (!rec->consensus) throw InconclusiveRank(c.name() + " P_" + std::to_string(n), rec->per_prime);
    if (options.cache) options.cache->store(c, n, options.primes, *rec);
  }
  if (fault_hits(options, c, n, Space::V)) {
    rec->rank = perturbed(rec->rank, options.fault->delta);
    rec->dim = rec->basis_size - std::min(rec->rank, rec->basis_size);
  }
  return *rec;
}

std::string describe_failure(const CaseSpec& c, int n, Space s, const std::exception& e) {
  return c.name() + " n=" + std::to_string(n) + " " + std::string(to_string(s)) + ": " + e.what();
}

// Runs every job; returns the reports and, per report, the first failure
// (smallest degree) so run_case can rethrow it.
struct GridResult {
  std::vector<DimensionReport> reports;
  std::vector<std::exception_ptr> first_error;
};

GridResult run_grid(const std::vector<CaseSpec>& cases, int n_max, SpaceSelection spaces,
                    const RunnerOptions& options) {
  if (n_max < 0 || n_max > kMaxDegree)
    throw ParameterError("max degree must lie in [0, " + std::to_string(kMaxDegree) + "]");

  GridResult out;
  out.reports.resize(cases.size());
  out.first_error.resize(cases.size());
  std::vector<std::vector<std::exception_ptr>> errors(cases.size(), std::vector<std::exception_ptr>(n_max + 1));
  for (std::size_t i = 0; i < cases.size(); ++i) {
    out.reports[i].spec = cases[i];
    out.reports[i].primes = options.primes;
    if (spaces.empty()) continue;
    out.reports[i].degrees.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out.reports[i].degrees[n].n = n;
  }

  std::vector<Job> jobs;
  for (int n = n_max; n >= 0; --n)  // heavy degrees first
    for (std::size_t i = 0; i < cases.size(); ++i) {
      if (spaces.w) jobs.push_back({i, n, Space::W});
      if (spaces.v) jobs.push_back({i, n, Space::V});
    }

  std::mutex result_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Job& job = jobs[k];
      const CaseSpec& c = cases[job.case_index];
      std::string error;
      std::exception_ptr eptr;
      std::optional<WeightRecord> w;
      std::optional<PolyakRecord> p;
      try {
        if (job.space == Space::W) {
          w = weight_job(c, job.n, options);
        } else {
          p = polyak_job(c, job.n, options);
        }
      } catch (const std::exception& e) {
        error = describe_failure(c, job.n, job.space, e);
        eptr = std::current_exception();
      }
      std::lock_guard lock(result_mutex);
      DegreeRecord& rec = out.reports[job.case_index].degrees[job.n];
      if (w) rec.w = std::move(w);
      if (p) rec.p = std::move(p);
      if (!error.empty()) {
        rec.error += rec.error.empty() ? error : "; " + error;
        errors[job.case_index][job.n] = eptr;
      }
      if (options.on_job) options.on_job(c, job.n, job.space, error);
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(jobs.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto& degrees = out.reports[i].degrees;
    for (std::size_t n = 0; n < degrees.size(); ++n) {
      if (!spaces.v) continue;
      if (n == 0) {
        degrees[n].dim_p_prev = 0;
      } else if (degrees[n - 1].p) {
        degrees[n].dim_p_prev = degrees[n - 1].p->dim;
      }
    }
    for (std::size_t n = 0; n < errors[i].size() && !out.first_error[i]; ++n)
      if (errors[i][n]) out.first_error[i] = errors[i][n];
  }
  return out;
}

}  // namespace

DimensionReport run_case(const CaseSpec& c, int n_max, SpaceSelection spaces, const RunnerOptions& options) {
  GridResult grid = run_grid({c}, n_max, spaces, options);
  if (grid.first_error[0]) std::rethrow_exception(grid.first_error[0]);
  return std::move(grid.reports[0]);
}

std::vector<DimensionReport> run_all(int n_max, SpaceSelection spaces, const RunnerOptions& options,
                                     std::vector<CaseSpec> cases) {
  if (cases.empty()) {
    const auto all = all_cases();
    cases.assign(all.begin(), all.end());
  }
  return run_grid(cases, n_max, spaces, options).reports;
}

// ---------------------------------------------------------------------------
// Verification

std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Pass: return "PASS";
    case CellStatus::Fail: return "FAIL";
    case CellStatus::Skip: return "SKIP";
  }
  return "?";
}

std::size_t Verdict::count(CellStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [s](const CellVerdict& c) { return c.status == s; }));
}

bool Verdict::conjecture_holds() const {
  return std::all_of(conjecture.begin(), conjecture.end(), [](const ConjectureCheck& c) { return c.holds(); });
}

Verdict verify_against_reference(std::span<const DimensionReport> reports, int max_degree) {
  max_degree = std::min(max_degree, kGoldenMaxDegree);
  Verdict v;
  for (const GoldenRow& row : reference_table()) {
    const DimensionReport* report = nullptr;
    for (const DimensionReport& r : reports)
      if (r.spec == row.spec) report = &r;
    for (int n = 1; n <= max_degree; ++n) {
      const DegreeRecord* rec = nullptr;
      if (report)
        for (const DegreeRecord& d : report->degrees)
          if (d.n == n) rec = &d;
      for (Space s : {Space::W, Space::V}) {
        CellVerdict cell{row.spec, n, s, row.dims[n], std::nullopt, CellStatus::Skip, {}};
        if (rec) {
          cell.computed = s == Space::W ? rec->dim_w() : rec->dim_v();
          if (cell.computed) {
            cell.status = *cell.computed == cell.expected ? CellStatus::Pass : CellStatus::Fail;
          } else if (!rec->error.empty()) {
            cell.status = CellStatus::Fail;
            cell.note = rec->error;
          }
        }
        v.cells.push_back(std::move(cell));
      }
    }
  }
  for (const DimensionReport& r : reports)
    for (const DegreeRecord& d : r.degrees)
      if (auto w = d.dim_w(), vq = d.dim_v(); w && vq) v.conjecture.push_back({r.spec, d.n, *w, *vq});
  return v;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

int max_degree_of(std::span<const DimensionReport> reports) {
  int m = -1;
  for (const auto& r : reports)
    for (const auto& d : r.degrees) m = std::max(m, d.n);
  return m;
}

std::string cell_text(const DegreeRecord& d) {
  const auto v = d.dim_v();
  const auto w = d.dim_w();
  if (!d.error.empty() && !v && !w) return "err";
  if (v && w) return *v == *w ? std::to_string(*v) : std::to_string(*v) + " / " + std::to_string(*w);
  if (v) return std::to_string(*v) + " / -";
  if (w) return "- / " + std::to_string(*w);
  return "-";
}

template <class T>
std::string opt_text(const std::optional<T>& x) {
  return x ? std::to_string(*x) : std::string();
}

}  // namespace

void write_markdown(std::ostream& out, std::span<const DimensionReport> reports) {
  const int top = max_degree_of(reports);
  const int first = top == 0 ? 0 : 1;
  out << "dim V_{n/n-1} / dim W_n\n\n| skeleton | R2, R3 | R1 |";
  for (int n = first; n <= top; ++n) out << " n=" << n << " |";
  out << "\n|---|---|---|";
  for (int n = first; n <= top; ++n) out << "---:|";
  out << '\n';
  for (const DimensionReport& r : reports) {
    out << "| " << to_string(r.spec.kind) << " | " << to_string(r.spec.r23) << " | " << to_string(r.spec.r1) << " |";
    for (int n = first; n <= top; ++n) {
      std::string cell = "-";
      for (const auto& d : r.degrees)
        if (d.n == n) cell = cell_text(d);
      out << ' ' << cell << " |";
    }
    out << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const DimensionReport> reports) {
  out << "case,skeleton,r23,r1,n,diagrams,rows_6T,rows_XII,rows_FI,rank_W,dim_W,basis_P,rank_P,dim_P,dim_V,"
         "primes,consensus,seconds,error\n";
  for (const DimensionReport& r : reports) {
    const std::string primes = prime_text(r.primes);
    for (const DegreeRecord& d : r.degrees) {
      const bool consensus = (!d.w || d.w->consensus) && (!d.p || d.p->consensus);
      std::string error = d.error;
      std::replace(error.begin(), error.end(), '"', '\'');
      out << r.spec.name() << ',' << to_string(r.spec.kind) << ',' << to_string(r.spec.r23) << ','
          << to_string(r.spec.r1) << ',' << d.n << ',';
      if (d.w) {
        out << d.w->diagrams << ',' << d.w->six_term_rows << ',' << d.w->xii_rows << ',' << d.w->fi_rows << ','
            << d.w->rank << ',' << d.w->dim << ',';
      } else {
        out << ",,,,,,";
      }
      if (d.p) {
        out << d.p->basis_size << ',' << d.p->rank << ',' << d.p->dim << ',';
      } else {
        out << ",,,";
      }
      out << opt_text(d.dim_v()) << ",\"" << primes << "\"," << (consensus ? "yes" : "no") << ',' << std::fixed
          << std::setprecision(3) << d.seconds() << std::defaultfloat << ",\"" << error << "\"\n";
    }
  }
}

void write_verdict_markdown(std::ostream& out, const Verdict& v) {
  out << "| case | n | space | expected | computed | status |\n|---|---:|---|---:|---:|---|\n";
  for (const CellVerdict& c : v.cells) {
    out << "| " << c.spec.name() << " | " << c.n << " | " << to_string(c.space) << " | " << c.expected << " | "
        << opt_text(c.computed) << " | " << to_string(c.status);
    if (!c.note.empty()) out << " (" << c.note << ')';
    out << " |\n";
  }
  out << "\nPASS " << v.count(CellStatus::Pass) << ", FAIL " << v.count(CellStatus::Fail) << ", SKIP "
      << v.count(CellStatus::Skip) << '\n';
  std::size_t broken = 0;
  for (const ConjectureCheck& c : v.conjecture) {
    if (c.holds()) continue;
    ++broken;
    out << "W != V: " << c.spec.name() << " n=" << c.n << " W=" << c.dim_w << " V=" << c.dim_v << '\n';
  }
  out << "W = V check: " << (v.conjecture.size() - broken) << " of " << v.conjecture.size() << " degrees agree\n";
}

std::string report_json(std::span<const DimensionReport> reports, const Verdict* verdict, int indent) {
  json doc;
  doc["conventions"] = std::string(kConventionsVersion);
  doc["reports"] = json::array();
  for (const DimensionReport& r : reports) {
    json jr{{"case", r.spec.name()},
            {"skeleton", std::string(to_string(r.spec.kind))},
            {"r23", std::string(to_string(r.spec.r23))},
            {"r1", std::string(to_string(r.spec.r1))},
            {"primes", r.primes},
            {"degrees", json::array()}};
    for (const DegreeRecord& d : r.degrees) {
      json jd{{"n", d.n}};
      jd["dim_W"] = d.dim_w() ? json(*d.dim_w()) : json(nullptr);
      jd["dim_V"] = d.dim_v() ? json(*d.dim_v()) : json(nullptr);
      if (d.w) jd["W"] = to_json_value(*d.w);
      if (d.p) jd["P"] = to_json_value(*d.p);
      if (d.dim_p_prev) jd["dim_P_prev"] = *d.dim_p_prev;
      if (!d.error.empty()) jd["error"] = d.error;
      jr["degrees"].push_back(std::move(jd));
    }
    doc["reports"].push_back(std::move(jr));
  }
  if (verdict) {
    json jv{{"pass", verdict->count(CellStatus::Pass)},
            {"fail", verdict->count(CellStatus::Fail)},
            {"skip", verdict->count(CellStatus::Skip)},
            {"cells", json::array()},
            {"conjecture", json::array()}};
    for (const CellVerdict& c : verdict->cells) {
      json jc{{"case", c.spec.name()},
              {"n", c.n},
              {"space", std::string(to_string(c.space))},
              {"expected", c.expected},
              {"status", std::string(to_string(c.status))}};
      jc["computed"] = c.computed ? json(*c.computed) : json(nullptr);
      if (!c.note.empty()) jc["note"] = c.note;
      jv["cells"].push_back(std::move(jc));
    }
    for (const ConjectureCheck& c : verdict->conjecture)
      jv["conjecture"].push_back(
          {{"case", c.spec.name()}, {"n", c.n}, {"dim_W", c.dim_w}, {"dim_V", c.dim_v}, {"holds", c.holds()}});
    doc["verdict"] = std::move(jv);
  }
  return doc.dump(indent);
}

std::vector<std::uint32_t> parse_prime_list(std::string_view text) {
  std::vector<std::uint32_t> primes;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ',' || text[i] == ' ' || text[i] == '\t') {
      ++i;
      continue;
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + i)
      throw ParameterError("cannot parse prime list: " + std::string(text));
    if (value > 0xffffffffULL || value < kMinPrime || !is_prime(value))
      throw ParameterError("not an admissible prime: " + std::to_string(value));
    primes.push_back(static_cast<std::uint32_t>(value));
    i = static_cast<std::size_t>(ptr - text.data());
  }
  if (std::set<std::uint32_t>(primes.begin(), primes.end()).size() < 2)
    throw ParameterError("need at least two distinct primes");
  return primes;
}

}  // namespace vdims
