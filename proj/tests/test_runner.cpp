#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vdims/runner.hpp"

using namespace vdims;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vdims_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

const CaseSpec kRoundStdMod{SkeletonKind::Round, R23Mode::Standard, R1Mode::ModR1};

}  // namespace

TEST_CASE("golden table") {
  CHECK(reference_table().size() == 18);
  for (std::size_t i = 0; i < 18; ++i) {
    CHECK(reference_table()[i].spec == all_cases()[i]);
    CHECK(reference_table()[i].dims[0] == 1);
  }
  CHECK(golden_for({SkeletonKind::Long, R23Mode::R2Only, R1Mode::NoR1}).dims[5] == 23880);
}

TEST_CASE("space selection") {
  CHECK(SpaceSelection::parse("both").w);
  CHECK(SpaceSelection::parse("both").v);
  CHECK(SpaceSelection::parse("none").empty());
  CHECK_THROWS(SpaceSelection::parse("x"));
}

TEST_CASE("run_case") {
  SUBCASE("round standard mod, W") {
    const DimensionReport r = run_case(kRoundStdMod, 4, {true, false});
    REQUIRE(r.degrees.size() == 5);
    const std::size_t expected[] = {1, 0, 0, 1, 4};
    for (int n = 0; n <= 4; ++n) {
      CHECK(r.degrees[n].dim_w() == expected[n]);
      CHECK_FALSE(r.degrees[n].dim_v());
      CHECK(r.degrees[n].w->consensus);
    }
  }
  SUBCASE("descending r2only no, V") {
    const DimensionReport r = run_case({SkeletonKind::Descending, R23Mode::R2Only, R1Mode::NoR1}, 4, {false, true});
    const std::size_t expected[] = {1, 1, 2, 9, 63};
    for (int n = 0; n <= 4; ++n) CHECK(r.degrees[n].dim_v() == expected[n]);
  }
  SUBCASE("degree zero") {
    for (const CaseSpec& c : all_cases()) {
      const DimensionReport r = run_case(c, 0, {true, true});
      REQUIRE(r.degrees.size() == 1);
      CHECK(r.degrees[0].dim_w() == 1);
      CHECK(r.degrees[0].dim_v() == 1);
    }
  }
  SUBCASE("empty selection") {
    CHECK(run_case(kRoundStdMod, 3, {}).degrees.empty());
  }
  SUBCASE("degree bounds") {
    CHECK_THROWS_AS(run_case(kRoundStdMod, -1, {true, true}), ParameterError);
    CHECK_THROWS_AS(run_case(kRoundStdMod, kMaxDegree + 1, {true, true}), ParameterError);
  }
}

TEST_CASE("verification") {
  RunnerOptions opts;
  opts.jobs = 4;
  const auto reports = run_all(3, {true, true}, opts);
  REQUIRE(reports.size() == 18);

  SUBCASE("all correct") {
    const Verdict v = verify_against_reference(reports, 3);
    CHECK(v.count(CellStatus::Pass) == 18 * 3 * 2);
    CHECK(v.count(CellStatus::Fail) == 0);
    CHECK(v.count(CellStatus::Skip) == 0);
    CHECK(v.conjecture.size() == 18 * 4);
    CHECK(v.conjecture_holds());
    CHECK(v.ok());
  }
  SUBCASE("degrees beyond the run are skipped") {
    const Verdict v = verify_against_reference(reports, 5);
    CHECK(v.count(CellStatus::Skip) == 18 * 2 * 2);
    CHECK(v.ok());
  }
  SUBCASE("partial run") {
    const Verdict v = verify_against_reference(std::span(reports).subspan(6, 1), 3);
    CHECK(v.count(CellStatus::Pass) == 6);
    CHECK(v.count(CellStatus::Skip) == 17 * 6);
  }
  SUBCASE("fault injection on W") {
    RunnerOptions bad = opts;
    const CaseSpec target{SkeletonKind::Long, R23Mode::BraidLike, R1Mode::NoR1};
    bad.fault = FaultInjection{target, 3, Space::W, 1};
    const auto perturbed = run_all(3, {true, true}, bad);
    const Verdict v = verify_against_reference(perturbed, 3);
    REQUIRE(v.count(CellStatus::Fail) == 1);
    for (const CellVerdict& c : v.cells)
      if (c.status == CellStatus::Fail) {
        CHECK(c.spec == target);
        CHECK(c.n == 3);
        CHECK(c.space == Space::W);
        CHECK(c.computed == c.expected - 1);
      }
    CHECK_FALSE(v.conjecture_holds());
  }
  SUBCASE("fault injection on P_n touches V_n and V_{n+1}") {
    RunnerOptions bad = opts;
    bad.fault = FaultInjection{kRoundStdMod, 2, Space::V, -1};
    const auto perturbed = run_all(3, {true, true}, bad, {kRoundStdMod});
    const Verdict v = verify_against_reference(perturbed, 3);
    CHECK(v.count(CellStatus::Fail) == 2);
    for (const CellVerdict& c : v.cells)
      if (c.status == CellStatus::Fail) {
        CHECK(c.space == Space::V);
        CHECK((c.n == 2 || c.n == 3));
      }
  }
}

TEST_CASE("failed jobs are recorded and reported as FAIL") {
  RunnerOptions opts;
  opts.cell_budget = std::chrono::seconds(0);
  const CaseSpec c{SkeletonKind::Long, R23Mode::BraidLike, R1Mode::NoR1};
  const auto reports = run_all(4, {true, false}, opts, {c});
  REQUIRE(reports.size() == 1);
  CHECK_FALSE(reports[0].degrees[4].error.empty());
  CHECK_FALSE(reports[0].degrees[4].dim_w());
  const Verdict v = verify_against_reference(reports, 4);
  CHECK(v.count(CellStatus::Fail) >= 1);
  CHECK_THROWS_AS(run_case(c, 4, {true, false}, opts), BudgetExceeded);
}

TEST_CASE("result cache") {
  const auto dir = fresh_dir("cache");
  ResultCache cache(dir);
  RunnerOptions opts;
  opts.cache = &cache;
  opts.jobs = 3;
  const std::vector<CaseSpec> cases{kRoundStdMod, {SkeletonKind::Descending, R23Mode::BraidLike, R1Mode::NoR1}};

  const auto cold = run_all(4, {true, true}, opts, cases);
  CHECK(cache.hits() == 0);
  const auto warm = run_all(4, {true, true}, opts, cases);
  CHECK(cache.hits() == 2 * 5 * 2);
  CHECK(report_json(cold) == report_json(warm));

  // a different prime set is a different key
  CHECK(ResultCache::key_text(kRoundStdMod, 3, Space::W, default_primes()) !=
        ResultCache::key_text(kRoundStdMod, 3, Space::W, std::vector<std::uint32_t>{1000003, 999983}));
  CHECK(ResultCache::key_text(kRoundStdMod, 3, Space::W, default_primes()).find(kConventionsVersion) !=
        std::string::npos);

  // a corrupt file is ignored and rewritten
  const auto path = cache.path_for(ResultCache::key_text(kRoundStdMod, 4, Space::W, default_primes()));
  REQUIRE(std::filesystem::exists(path));
  std::ofstream(path) << "{ not json";
  ResultCache again(dir);
  opts.cache = &again;
  const auto rerun = run_all(4, {true, true}, opts, cases);
  CHECK(again.hits() == 2 * 5 * 2 - 1);
  CHECK(rerun[0].degrees[4].dim_w() == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports") {
  const auto reports = run_all(2, {true, true}, {}, {kRoundStdMod});
  std::ostringstream md, csv;
  write_markdown(md, reports);
  CHECK(md.str().find("| round | standard | mod | 0 | 0 |") != std::string::npos);
  write_csv(csv, reports);
  std::size_t lines = 0;
  for (char ch : csv.str()) lines += ch == '\n';
  CHECK(lines == 1 + 3);
  const Verdict v = verify_against_reference(reports, 2);
  const std::string json = report_json(reports, &v);
  CHECK(json.find("\"verdict\"") != std::string::npos);
  CHECK(json.find("\"dim_W\"") != std::string::npos);
}

TEST_CASE("prime lists") {
  CHECK(parse_prime_list("2147483647,2147483629") == std::vector<std::uint32_t>{2147483647u, 2147483629u});
  CHECK(parse_prime_list(" 1000003  999983 ") == std::vector<std::uint32_t>{1000003u, 999983u});
  CHECK_THROWS_AS(parse_prime_list("17,19"), ParameterError);
  CHECK_THROWS_AS(parse_prime_list("1000003"), ParameterError);
  CHECK_THROWS_AS(parse_prime_list("1000003,abc"), ParameterError);
}
