#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "vdims/linalg.hpp"

using namespace vdims;

namespace {

SparseIntMatrix identity(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1});
  return SparseIntMatrix::from_triplets(n, n, t);
}

constexpr std::uint32_t kP1 = 1000003, kP2 = 999983;

}  // namespace

TEST_CASE("matrix assembly sums duplicates and drops zeros") {
  SparseIntMatrix m(0, 4);
  const std::vector<MatrixEntry> row{{2, 3}, {0, 1}, {2, -3}, {1, 5}, {1, 2}};
  m.add_row(row);
  REQUIRE(m.rows() == 1);
  CHECK(std::vector<MatrixEntry>(m.row(0).begin(), m.row(0).end()) == std::vector<MatrixEntry>{{0, 1}, {1, 7}});
  CHECK_FALSE(m.add_nonzero_row(std::vector<MatrixEntry>{{3, 1}, {3, -1}}));
  CHECK(m.rows() == 1);
  CHECK_THROWS_AS(m.add_row(std::vector<MatrixEntry>{{4, 1}}), std::out_of_range);

  const auto f = SparseIntMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 0, 1}, {1, 1, 2}, {1, 1, -2}});
  CHECK(f.nnz() == 1);
  CHECK(f.triplets() == std::vector<Triplet>{{0, 0, 2}});
}

TEST_CASE("prime admissibility") {
  CHECK(is_prime(2147483647));
  CHECK(is_prime(1000003));
  CHECK_FALSE(is_prime(1000001));
  CHECK_FALSE(is_prime(1));
  for (std::uint32_t p : default_primes()) {
    CHECK(is_prime(p));
    CHECK(p > (1u << 20));
  }
  const auto m = identity(2);
  CHECK_THROWS_AS(rank_mod_p(m, 1000001), ParameterError);
  CHECK_THROWS_AS(rank_mod_p(m, 17), ParameterError);
  const std::vector<std::uint32_t> one{kP1};
  CHECK_THROWS_AS(rank_consensus(m, one), ParameterError);
  const std::vector<std::uint32_t> same{kP1, kP1};
  CHECK_THROWS_AS(rank_consensus(m, same), ParameterError);
}

TEST_CASE("rank examples") {
  CHECK(rank_mod_p(identity(3), kP1) == 3);
  CHECK(rank_mod_p(SparseIntMatrix(4, 7), kP1) == 0);
  CHECK(rank_mod_p(SparseIntMatrix(0, 0), kP1) == 0);

  const std::vector<std::uint32_t> primes{kP1, kP2};
  const RankResult r = rank_consensus(identity(5), primes);
  CHECK(r.rank == 5);
  CHECK(r.consensus);

  // an unlucky prime
  const auto unlucky = SparseIntMatrix::from_triplets(1, 1, {{0, 0, 1000003}});
  const RankResult u = rank_consensus(unlucky, primes);
  CHECK(u.per_prime == std::vector<std::size_t>{0, 1});
  CHECK(u.rank == 1);
  CHECK_FALSE(u.consensus);
}

TEST_CASE("sparse modular rank equals dense rational rank") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const double density = 0.03 + 0.02 * (trial % 10);
    const SparseIntMatrix m = oracle::random_matrix(rng, 30, 40, density, 3);
    const std::size_t expected = oracle::dense_rational_rank(m);
    for (std::uint32_t p : default_primes()) CHECK(rank_mod_p(m, p) == expected);
  }
}

TEST_CASE("rank of deficient products") {
  // A (20x5) * B (5x25) has rank <= 5
  std::mt19937_64 rng(5);
  const SparseIntMatrix a = oracle::random_matrix(rng, 20, 5, 0.6, 4);
  const SparseIntMatrix b = oracle::random_matrix(rng, 5, 25, 0.6, 4);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& ea : a.row(i))
      for (const auto& eb : b.row(ea.col)) t.push_back({i, eb.col, ea.value * eb.value});
  const SparseIntMatrix ab = SparseIntMatrix::from_triplets(20, 25, t);
  const std::size_t expected = oracle::dense_rational_rank(ab);
  CHECK(expected <= 5);
  CHECK(rank_mod_p(ab, default_primes()[0]) == expected);
}

TEST_CASE("rank is invariant under row permutation and duplication") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const SparseIntMatrix m = oracle::random_matrix(rng, 25, 30, 0.1, 3);
    const std::uint32_t p = default_primes()[trial % 2];
    const std::size_t base = rank_mod_p(m, p);
    CHECK(base <= std::min(m.rows(), m.cols()));
    std::vector<std::size_t> order(m.rows());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    CHECK(rank_mod_p(m.select_rows(order), p) == base);
    for (std::size_t i = 0; i < 10; ++i) order.push_back(rng() % m.rows());
    std::shuffle(order.begin(), order.end(), rng);
    CHECK(rank_mod_p(m.select_rows(order), p) == base);
    SparseIntMatrix twice = m;
    twice.append(m);
    CHECK(rank_mod_p(twice, p) == base);
  }
}

TEST_CASE("rank is deterministic across repeats and parallel primes") {
  std::mt19937_64 rng(3);
  const SparseIntMatrix m = oracle::random_matrix(rng, 300, 200, 0.02, 2);
  const auto primes = default_primes();
  RankOptions par;
  par.parallel_primes = true;
  const RankResult a = rank_consensus(m, primes);
  const RankResult b = rank_consensus(m, primes, par);
  CHECK(a.rank == b.rank);
  CHECK(a.per_prime == b.per_prime);
  CHECK(a.primes == primes);
}

TEST_CASE("an expired deadline aborts the elimination") {
  std::mt19937_64 rng(4);
  const SparseIntMatrix m = oracle::random_matrix(rng, 3000, 100, 0.05, 2);
  RankOptions opts;
  opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(rank_mod_p(m, default_primes()[0], opts), BudgetExceeded);
}

TEST_CASE("SMS format") {
  std::ostringstream out;
  export_sms(identity(2), out);
  CHECK(out.str() == "2 2 M\n1 1 1\n2 2 1\n0 0 0\n");

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const SparseIntMatrix m = oracle::random_matrix(rng, 1 + trial % 17, 1 + trial % 13, 0.3, 5);
    std::stringstream io;
    export_sms(m, io);
    CHECK(import_sms(io) == m);
  }

  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return import_sms(in);
  };
  CHECK_NOTHROW(parse("  2 3 M\n1  3 -4\n\n2 1 7\n0 0 0\n"));
  CHECK(parse("2 3 M\n1 3 -4\n0 0 0\n").triplets() == std::vector<Triplet>{{0, 2, -4}});
  auto line_of = [&](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("2 2 M\n1 0 1\n0 0 0\n") == 2);  // column 0
  CHECK(line_of("2 2 M\n1 1 1\n") == 3);          // missing terminator
  CHECK(line_of("2 2\n0 0 0\n") == 1);            // header
  CHECK(line_of("2 2 M\n1 1 1\n3 1 1\n0 0 0\n") == 3);
  CHECK(line_of("2 2 M\n1 1 x\n0 0 0\n") == 2);
}

TEST_CASE("Matrix Market format") {
  std::ostringstream out;
  export_mtx(identity(2), out);
  CHECK(out.str().rfind("%%MatrixMarket matrix coordinate integer general\n", 0) == 0);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const SparseIntMatrix m = oracle::random_matrix(rng, 1 + trial % 11, 1 + trial % 19, 0.3, 5);
    std::stringstream io;
    export_mtx(m, io);
    CHECK(import_mtx(io) == m);
  }
  std::istringstream bad("%%MatrixMarket matrix coordinate integer general\n2 2 1\n3 1 1\n");
  CHECK_THROWS_AS(import_mtx(bad), ParseError);
}

TEST_CASE("file export round trip") {
  std::mt19937_64 rng(13);
  const SparseIntMatrix m = oracle::random_matrix(rng, 9, 7, 0.4, 3);
  const auto dir = std::filesystem::temp_directory_path();
  for (MatrixFormat f : {MatrixFormat::Sms, MatrixFormat::MatrixMarket}) {
    const auto path = dir / (f == MatrixFormat::Sms ? "vdims_rt.sms" : "vdims_rt.mtx");
    export_matrix(m, f, path);
    CHECK(import_matrix(f, path) == m);
    std::filesystem::remove(path);
  }
}
