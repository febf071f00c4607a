// vdims: dimension tables for virtual knot invariants and weight systems.
//
//   vdims run --skeleton long --r23 standard --r1 mod --max-degree 4 --space both
//   vdims verify --max-degree 4 --jobs 4 --out-dir report
//   vdims export-matrix --case long/standard/mod --degree 3 --format sms --out m.sms
//   vdims dump-diagrams --skeleton round --degree 3
//
// VDIMS_CACHE_DIR overrides the cache location (empty disables caching) and
// VDIMS_PRIMES the prime list, e.g. "2147483647,2147483629".
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "vdims/polyak.hpp"
#include "vdims/runner.hpp"
#include "vdims/weight.hpp"

using namespace vdims;

namespace {

struct Common {
  int jobs = 0;
  long budget_seconds = 0;
  bool no_cache = false;
  bool quiet = false;
  std::string cache_dir;
  std::string primes;
};

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("VDIMS_CACHE_DIR")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "vdims";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "vdims";
  return ".vdims-cache";
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-j,--jobs", c.jobs, "Worker threads (default: hardware concurrency)");
  cmd->add_option("--budget", c.budget_seconds, "Per-job time budget in seconds (0 = none)");
  cmd->add_flag("--no-cache", c.no_cache, "Neither read nor write the result cache");
  cmd->add_option("--cache-dir", c.cache_dir, "Cache directory (overrides VDIMS_CACHE_DIR)");
  cmd->add_option("--primes", c.primes, "Comma-separated primes (overrides VDIMS_PRIMES)");
  cmd->add_flag("-q,--quiet", c.quiet, "No progress lines on stderr");
}

RunnerOptions make_options(const Common& c, std::unique_ptr<ResultCache>& cache) {
  RunnerOptions o;
  std::string primes = c.primes;
  if (primes.empty())
    if (const char* env = std::getenv("VDIMS_PRIMES")) primes = env;
  if (!primes.empty()) o.primes = parse_prime_list(primes);

  if (!c.no_cache) {
    const std::filesystem::path dir = c.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(c.cache_dir);
    if (!dir.empty()) {
      cache = std::make_unique<ResultCache>(dir);
      o.cache = cache.get();
    }
  }
  o.jobs = c.jobs > 0 ? static_cast<unsigned>(c.jobs) : std::max(1u, std::thread::hardware_concurrency());
  if (c.budget_seconds > 0) o.cell_budget = std::chrono::seconds(c.budget_seconds);
  if (!c.quiet) {
    o.on_job = [](const CaseSpec& spec, int n, Space s, const std::string& error) {
      std::cerr << "  done " << spec.name() << " n=" << n << ' ' << to_string(s);
      if (!error.empty()) std::cerr << "  ERROR " << error;
      std::cerr << '\n';
    };
  }
  return o;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_outputs(const std::string& out_dir, std::span<const DimensionReport> reports, const Verdict* verdict) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  std::ostringstream md, csv;
  write_markdown(md, reports);
  if (verdict) {
    md << '\n';
    write_verdict_markdown(md, *verdict);
  }
  write_csv(csv, reports);
  write_file(dir / "report.md", md.str());
  write_file(dir / "report.csv", csv.str());
  write_file(dir / "report.json", report_json(reports, verdict) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimensions of finite type invariants and weight systems of virtual knots"};
  app.require_subcommand(1);

  // run
  Common run_common;
  std::string skeleton = "long", r23 = "standard", r1 = "mod", space = "both", run_out, format = "md";
  int run_degree = 4;
  auto* run = app.add_subcommand("run", "Compute dimensions for one case");
  run->add_option("--skeleton", skeleton, "round | long | descending")->capture_default_str();
  run->add_option("--r23", r23, "standard | braid | r2only")->capture_default_str();
  run->add_option("--r1", r1, "mod | no")->capture_default_str();
  run->add_option("--max-degree", run_degree, "Largest degree n")->capture_default_str();
  run->add_option("--space", space, "w | v | both")->capture_default_str();
  run->add_option("--format", format, "Stdout format: md | csv | json")->capture_default_str();
  run->add_option("--out-dir", run_out, "Also write report.{md,csv,json} here");
  add_common(run, run_common);

  // verify
  Common verify_common;
  int verify_degree = 4;
  std::string verify_out;
  std::vector<std::string> verify_cases;
  auto* verify = app.add_subcommand("verify", "Run the grid and compare with the reference table");
  verify->add_option("--max-degree", verify_degree, "Largest degree n (5 is long-running)")->capture_default_str();
  verify->add_option("--case", verify_cases, "Restrict to these cases, e.g. long/standard/mod");
  verify->add_option("--out-dir", verify_out, "Also write report.{md,csv,json} here");
  add_common(verify, verify_common);

  // export-matrix
  std::string export_case, export_format = "sms", export_path, export_space = "w";
  int export_degree = 3;
  auto* exporter = app.add_subcommand("export-matrix", "Write one relation matrix");
  exporter->add_option("--case", export_case, "e.g. long/standard/mod")->required();
  exporter->add_option("--degree", export_degree, "Degree n")->required();
  exporter->add_option("--format", export_format, "sms | mtx")->capture_default_str();
  exporter->add_option("--space", export_space, "w (weight systems) | v (Polyak algebra P_n)")->capture_default_str();
  exporter->add_option("--out", export_path, "Output file")->required();

  // dump-diagrams
  std::string dump_skeleton = "long";
  int dump_degree = 2;
  bool dump_signed = false;
  auto* dump = app.add_subcommand("dump-diagrams", "List canonical diagrams of one degree");
  dump->add_option("--skeleton", dump_skeleton, "round | long | descending")->required();
  dump->add_option("--degree", dump_degree, "Degree n")->required();
  dump->add_flag("--signed", dump_signed, "All sign assignments");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const CaseSpec spec{parse_skeleton(skeleton), parse_r23(r23), parse_r1(r1)};
      std::unique_ptr<ResultCache> cache;
      const RunnerOptions options = make_options(run_common, cache);
      const DimensionReport report = run_case(spec, run_degree, SpaceSelection::parse(space), options);
      const std::span<const DimensionReport> reports(&report, 1);
      if (format == "md") {
        write_markdown(std::cout, reports);
      } else if (format == "csv") {
        write_csv(std::cout, reports);
      } else if (format == "json") {
        std::cout << report_json(reports) << '\n';
      } else {
        throw std::invalid_argument("unknown format " + format);
      }
      write_outputs(run_out, reports, nullptr);
      return 0;
    }

    if (*verify) {
      std::unique_ptr<ResultCache> cache;
      const RunnerOptions options = make_options(verify_common, cache);
      std::vector<CaseSpec> cases;
      for (const std::string& name : verify_cases) cases.push_back(CaseSpec::parse(name));
      const auto reports = run_all(verify_degree, {true, true}, options, cases);
      const Verdict verdict = verify_against_reference(reports, verify_degree);
      write_markdown(std::cout, reports);
      std::cout << '\n';
      write_verdict_markdown(std::cout, verdict);
      write_outputs(verify_out, reports, &verdict);
      return verdict.ok() && verdict.conjecture_holds() ? 0 : 1;
    }

    if (*exporter) {
      const CaseSpec spec = CaseSpec::parse(export_case);
      MatrixFormat fmt;
      if (export_format == "sms") {
        fmt = MatrixFormat::Sms;
      } else if (export_format == "mtx") {
        fmt = MatrixFormat::MatrixMarket;
      } else {
        throw std::invalid_argument("format must be sms or mtx");
      }
      SparseIntMatrix m;
      if (export_space == "w") {
        m = weight_matrix(spec, export_degree);
      } else if (export_space == "v") {
        m = build_polyak_matrix(spec, export_degree, default_mode(spec)).matrix;
      } else {
        throw std::invalid_argument("space must be w or v");
      }
      export_matrix(m, fmt, export_path);
      std::cerr << m.rows() << " x " << m.cols() << ", " << m.nnz() << " nonzeros -> " << export_path << '\n';
      return 0;
    }

    if (*dump) {
      const SkeletonKind kind = parse_skeleton(dump_skeleton);
      const auto diagrams = enumerate_diagrams(kind, dump_degree, dump_signed);
      for (const ArrowDiagram& d : diagrams) std::cout << d.to_text() << '\n';
      std::cerr << diagrams.size() << " diagrams\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "vdims: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
