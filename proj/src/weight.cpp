#include "vdims/weight.hpp"

#include <algorithm>
#include <sstream>

namespace vdims {

InconclusiveRank::InconclusiveRank(const std::string& where, std::vector<std::size_t> ranks)
    : std::runtime_error([&] {
        std::ostringstream out;
        out << "primes disagree on the rank for " << where << ":";
        for (auto r : ranks) out << ' ' << r;
        return out.str();
      }()),
      ranks_(std::move(ranks)) {}

namespace {

enum Site : std::uint8_t { I = 0, J = 1, K = 2 };

// x * y with both arrows on sites {0,1,2}; x's endpoint first on a shared site.
LocalPicture product(LocalArrow x, LocalArrow y) {
  std::vector<std::vector<int>> orders(3);
  for (int s = 0; s < 3; ++s) {
    if (x.tail_site == s || x.head_site == s) orders[s].push_back(0);
    if (y.tail_site == s || y.head_site == s) orders[s].push_back(1);
  }
  return LocalPicture::from_orders({x, y}, orders);
}

std::vector<MatrixEntry> normalized_row(std::span<const MatrixEntry> row) {
  std::vector<MatrixEntry> out(row.begin(), row.end());
  std::sort(out.begin(), out.end(), [](const MatrixEntry& a, const MatrixEntry& b) { return a.col < b.col; });
  std::vector<MatrixEntry> merged;
  for (const MatrixEntry& e : out) {
    if (!merged.empty() && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const MatrixEntry& e) { return e.value == 0; });
  return merged;
}

std::vector<RelationRow> rows_for(std::span<const RelationTemplate> templates, SkeletonKind kind, int n,
                                  int ambient_degree) {
  std::vector<RelationRow> rows;
  if (ambient_degree < 0) return rows;
  const DiagramIndex basis(enumerate_keys(kind, n, false));
  EmbedOptions options;
  options.max_degree = n;
  options.gate_descending = kind == SkeletonKind::Descending;
  for (const DiagramKey& ambient : enumerate_keys(kind, ambient_degree, false)) {
    for (const RelationTemplate& t : templates) {
      embed_template(t, kind, ambient, basis, options, [&](std::span<const MatrixEntry> row) {
        auto entries = normalized_row(row);
        if (!entries.empty()) rows.push_back({n, std::move(entries)});
      });
    }
  }
  return rows;
}

std::size_t add_rows(SparseIntMatrix& m, std::span<const RelationTemplate> templates, SkeletonKind kind, int n,
                     int ambient_degree, const DiagramIndex& basis) {
  if (ambient_degree < 0) return 0;
  EmbedOptions options;
  options.max_degree = n;
  options.gate_descending = kind == SkeletonKind::Descending;
  std::size_t added = 0;
  for (const DiagramKey& ambient : enumerate_keys(kind, ambient_degree, false)) {
    for (const RelationTemplate& t : templates) {
      embed_template(t, kind, ambient, basis, options,
                     [&](std::span<const MatrixEntry> row) { added += m.add_nonzero_row(row) ? 1 : 0; });
    }
  }
  return added;
}

}  // namespace

RelationTemplate six_term_template() {
  const LocalArrow ij{I, J, 1}, ik{I, K, 1}, jk{J, K, 1};
  RelationTemplate t{"6T", 3, {}};
  t.terms.push_back({+1, product(ij, ik)});
  t.terms.push_back({+1, product(ij, jk)});
  t.terms.push_back({+1, product(ik, jk)});
  t.terms.push_back({-1, product(ik, ij)});
  t.terms.push_back({-1, product(jk, ij)});
  t.terms.push_back({-1, product(jk, ik)});
  return t;
}

RelationTemplate xii_template() {
  return {"XII", 2, {{+1, twisted_stack(2)}, {-1, parallel_stack(2)}}};
}

std::vector<RelationTemplate> fi_templates() {
  LocalPicture tail_first, head_first;
  tail_first.arrows = head_first.arrows = {{0, 0, 1}};
  tail_first.sites = {{{0, false}, {0, true}}};
  head_first.sites = {{{0, true}, {0, false}}};
  return {{"FI", 1, {{1, tail_first}}}, {"FI", 1, {{1, head_first}}}};
}

std::vector<RelationRow> generate_6T(SkeletonKind kind, int n) {
  const RelationTemplate t = six_term_template();
  return rows_for({&t, 1}, kind, n, n - 2);
}

std::vector<RelationRow> generate_XII(SkeletonKind kind, int n) {
  const RelationTemplate t = xii_template();
  return rows_for({&t, 1}, kind, n, n - 2);
}

std::vector<RelationRow> generate_FI(SkeletonKind kind, int n) {
  return rows_for(fi_templates(), kind, n, n - 1);
}

RelationFamilies families_for(const CaseSpec& c) {
  return {c.r23 != R23Mode::R2Only, c.r23 != R23Mode::BraidLike, c.r1 == R1Mode::ModR1};
}

WeightMatrix build_weight_matrix(SkeletonKind kind, int n, RelationFamilies families) {
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  const DiagramIndex basis(enumerate_keys(kind, n, false));
  WeightMatrix out{SparseIntMatrix(0, basis.size())};
  if (families.six_term) {
    const RelationTemplate t = six_term_template();
    out.six_term_rows = add_rows(out.matrix, {&t, 1}, kind, n, n - 2, basis);
  }
  if (families.xii) {
    const RelationTemplate t = xii_template();
    out.xii_rows = add_rows(out.matrix, {&t, 1}, kind, n, n - 2, basis);
  }
  if (families.fi) out.fi_rows = add_rows(out.matrix, fi_templates(), kind, n, n - 1, basis);
  return out;
}

SparseIntMatrix weight_matrix(const CaseSpec& c, int n) { return build_weight_matrix(c.kind, n, families_for(c)).matrix; }

WeightResult compute_weight_systems(const CaseSpec& c, int n, std::span<const std::uint32_t> primes,
                                    const RankOptions& options) {
  WeightMatrix wm = build_weight_matrix(c.kind, n, families_for(c));
  WeightResult out;
  out.diagrams = wm.matrix.cols();
  out.six_term_rows = wm.six_term_rows;
  out.xii_rows = wm.xii_rows;
  out.fi_rows = wm.fi_rows;
  out.rank = rank_consensus(wm.matrix, primes, options);
  if (!out.rank.consensus) throw InconclusiveRank(c.name() + " W_" + std::to_string(n), out.rank.per_prime);
  out.dim = out.diagrams - out.rank.rank;
  return out;
}

std::size_t dim_weight_systems(const CaseSpec& c, int n) {
  const auto primes = default_primes();
  return compute_weight_systems(c, n, primes).dim;
}

}  // namespace vdims
