#include "vdims/polyak.hpp"

#include <algorithm>
#include <optional>

namespace vdims {

std::string_view to_string(MoveId id) {
  switch (id) {
    case MoveId::R1Pos: return "R1+";
    case MoveId::R1Neg: return "R1-";
    case MoveId::R2b: return "R2b";
    case MoveId::R2c: return "R2c";
    case MoveId::R3b: return "R3b";
    case MoveId::R3c: return "R3c";
  }
  return "?";
}

namespace {

// Oriented R3 moves, one per class up to relabeling the strands and swapping
// the two sides. Arrow 0 joins strands {0,1}, arrow 1 joins {0,2} and arrow 2
// joins {1,2}; each arrow runs from the upper to the lower strand and carries
// its crossing sign. Site orders list arrow ids along each oriented strand.
// The table follows from three straight oriented lines at heights
// top/middle/bottom, one of them pushed across the crossing of the other two;
// tests re-derive it from that geometry.
struct R3Row {
  bool cyclic;
  LocalArrow arrows[3];
  int left[3][2];
  int right[3][2];
};

constexpr R3Row kR3Table[] = {
    {false, {{0, 1, -1}, {0, 2, -1}, {1, 2, -1}}, {{0, 1}, {0, 2}, {1, 2}}, {{1, 0}, {2, 0}, {2, 1}}},
    {false, {{0, 1, -1}, {0, 2, +1}, {2, 1, -1}}, {{0, 1}, {0, 2}, {2, 1}}, {{1, 0}, {2, 0}, {1, 2}}},
    {false, {{0, 1, -1}, {0, 2, -1}, {1, 2, +1}}, {{0, 1}, {2, 0}, {2, 1}}, {{1, 0}, {0, 2}, {1, 2}}},
    {false, {{0, 1, -1}, {0, 2, +1}, {1, 2, +1}}, {{0, 1}, {0, 2}, {2, 1}}, {{1, 0}, {2, 0}, {1, 2}}},
    {false, {{0, 1, -1}, {2, 0, +1}, {2, 1, +1}}, {{0, 1}, {0, 2}, {1, 2}}, {{1, 0}, {2, 0}, {2, 1}}},
    {false, {{0, 1, +1}, {0, 2, +1}, {1, 2, +1}}, {{0, 1}, {0, 2}, {1, 2}}, {{1, 0}, {2, 0}, {2, 1}}},
    {true, {{0, 1, -1}, {0, 2, +1}, {2, 1, +1}}, {{0, 1}, {2, 0}, {1, 2}}, {{1, 0}, {0, 2}, {2, 1}}},
    {true, {{0, 1, -1}, {0, 2, +1}, {1, 2, -1}}, {{0, 1}, {2, 0}, {1, 2}}, {{1, 0}, {0, 2}, {2, 1}}},
};

LocalPicture empty_picture(int sites) {
  LocalPicture p;
  p.sites.resize(sites);
  return p;
}

LocalPicture isolated_arrow(bool tail_first, std::int8_t sign) {
  LocalPicture p;
  p.arrows = {{0, 0, sign}};
  p.sites = {tail_first ? std::vector<LocalEnd>{{0, false}, {0, true}} : std::vector<LocalEnd>{{0, true}, {0, false}}};
  return p;
}

// Two arrows from strand 0 to strand 1 with opposite signs; the first on
// strand 0 has sign `first`.
LocalPicture r2_pair(std::int8_t first, bool twisted) {
  LocalPicture p = twisted ? twisted_stack(2) : parallel_stack(2);
  p.arrows[0].sign = first;
  p.arrows[1].sign = static_cast<std::int8_t>(-first);
  return p;
}

std::vector<std::vector<int>> orders(const int (&table)[3][2]) {
  return {{table[0][0], table[0][1]}, {table[1][0], table[1][1]}, {table[2][0], table[2][1]}};
}

}  // namespace

MoveTemplate move_template(MoveId id) {
  MoveTemplate t{id, 0, {}};
  switch (id) {
    case MoveId::R1Pos:
    case MoveId::R1Neg: {
      const std::int8_t sign = id == MoveId::R1Pos ? 1 : -1;
      t.strand_count = 1;
      for (bool tail_first : {true, false}) t.variants.push_back({isolated_arrow(tail_first, sign), empty_picture(1)});
      break;
    }
    case MoveId::R2b:
    case MoveId::R2c:
      t.strand_count = 2;
      for (std::int8_t first : {1, -1})
        t.variants.push_back({r2_pair(first, id == MoveId::R2c), empty_picture(2)});
      break;
    case MoveId::R3b:
    case MoveId::R3c:
      t.strand_count = 3;
      for (const R3Row& row : kR3Table) {
        if (row.cyclic != (id == MoveId::R3c)) continue;
        std::vector<LocalArrow> arrows(std::begin(row.arrows), std::end(row.arrows));
        t.variants.push_back(
            {LocalPicture::from_orders(arrows, orders(row.left)), LocalPicture::from_orders(arrows, orders(row.right))});
      }
      break;
  }
  return t;
}

std::vector<MoveId> move_set(const CaseSpec& c) {
  std::vector<MoveId> ids;
  switch (c.r23) {
    case R23Mode::Standard: ids = {MoveId::R2b, MoveId::R2c, MoveId::R3b, MoveId::R3c}; break;
    case R23Mode::BraidLike: ids = {MoveId::R2b, MoveId::R3b}; break;
    case R23Mode::R2Only: ids = {MoveId::R2b, MoveId::R2c}; break;
  }
  if (c.r1 == R1Mode::ModR1) {
    ids.push_back(MoveId::R1Pos);
    ids.push_back(MoveId::R1Neg);
  }
  return ids;
}

std::vector<MoveTemplate> move_templates(const CaseSpec& c) {
  std::vector<MoveTemplate> out;
  for (MoveId id : move_set(c)) out.push_back(move_template(id));
  return out;
}

std::vector<TemplateTerm> subset_rule(const MoveVariant& v) {
  std::vector<TemplateTerm> terms;
  auto add_subsets = [&](const LocalPicture& side, std::int64_t coef) {
    const int m = side.degree();
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> keep;
      for (int a = 0; a < m; ++a)
        if (mask >> a & 1) keep.push_back(a);
      terms.push_back({coef, side.restricted(keep)});
    }
  };
  add_subsets(v.left, +1);
  add_subsets(v.right, -1);
  return combine_terms(std::move(terms));
}

std::vector<TemplateTerm> NegativeElimination::rewrite(const TemplateTerm& term, int max_degree) const {
  return expand_negative_arrows(term, max_degree, twisted);
}

NegativeElimination eliminate_negative_arrows(std::span<const MoveId> moves, int n) {
  const bool has_b = std::find(moves.begin(), moves.end(), MoveId::R2b) != moves.end();
  const bool has_c = std::find(moves.begin(), moves.end(), MoveId::R2c) != moves.end();
  if (!has_b && !has_c) throw UnsupportedElimination("negative arrows can only be eliminated when an R2 move is imposed");
  NegativeElimination out;
  out.twisted = !has_b;
  if (has_b && has_c) {
    // sum_k (-1)^k (parallel a^k - twisted a^k); the k = 1 terms cancel.
    std::vector<TemplateTerm> terms;
    for (int k = 1; k <= n; ++k) {
      const std::int64_t sign = k % 2 ? -1 : 1;
      terms.push_back({sign, parallel_stack(k)});
      terms.push_back({-sign, twisted_stack(k)});
    }
    RelationTemplate aux{"R2 series", 2, combine_terms(std::move(terms))};
    if (!aux.terms.empty()) out.auxiliary.push_back(std::move(aux));
  }
  return out;
}

namespace {

std::vector<RelationTemplate> templates_for(const MoveTemplate& t, int n, PolyakMode mode,
                                            const NegativeElimination* elimination) {
  std::vector<RelationTemplate> out;
  for (const MoveVariant& v : t.variants) {
    std::vector<TemplateTerm> terms = subset_rule(v);
    if (mode == PolyakMode::PositiveOnly) {
      std::vector<TemplateTerm> expanded;
      for (const TemplateTerm& term : terms) {
        auto parts = elimination->rewrite(term, n);
        expanded.insert(expanded.end(), parts.begin(), parts.end());
      }
      terms = combine_terms(std::move(expanded));
    }
    if (!terms.empty()) out.push_back({std::string(to_string(t.id)), t.strand_count, std::move(terms)});
  }
  return out;
}

int min_term_degree(const RelationTemplate& t) {
  int d = kMaxDegree + 1;
  for (const TemplateTerm& term : t.terms) d = std::min(d, term.picture.degree());
  return d;
}

template <typename Sink>
std::size_t emit_rows(std::span<const RelationTemplate> templates, SkeletonKind kind, int n,
                      const DiagramIndex& basis, Sink&& sink) {
  EmbedOptions options;
  options.max_degree = n;
  options.gate_descending = kind == SkeletonKind::Descending;
  std::size_t count = 0;
  for (const RelationTemplate& t : templates) {
    const int max_ambient = n - min_term_degree(t);
    for (const DiagramKey& ambient : basis.keys()) {
      if (ambient.degree > max_ambient) break;  // basis is ordered by degree
      embed_template(t, kind, ambient, basis, options, [&](std::span<const MatrixEntry> row) {
        if (sink(row)) ++count;
      });
    }
  }
  return count;
}

}  // namespace

std::vector<InhomogeneousRow> generate_move_relations(const MoveTemplate& t, const CaseSpec& c, int n,
                                                      PolyakMode mode, const DiagramIndex& basis) {
  std::vector<InhomogeneousRow> rows;
  if (n < 1) return rows;
  std::optional<NegativeElimination> elimination;
  if (mode == PolyakMode::PositiveOnly) {
    const auto moves = move_set(c);
    elimination = eliminate_negative_arrows(moves, n);
  }
  const auto templates = templates_for(t, n, mode, elimination ? &*elimination : nullptr);
  SparseIntMatrix scratch(0, basis.size());
  emit_rows(templates, c.kind, n, basis, [&](std::span<const MatrixEntry> row) {
    if (!scratch.add_nonzero_row(row)) return false;
    auto added = scratch.row(scratch.rows() - 1);
    rows.emplace_back(added.begin(), added.end());
    return true;
  });
  return rows;
}

PolyakMode default_mode(const CaseSpec& c) {
  const auto moves = move_set(c);
  const bool has_r2 = std::any_of(moves.begin(), moves.end(),
                                  [](MoveId id) { return id == MoveId::R2b || id == MoveId::R2c; });
  return has_r2 ? PolyakMode::PositiveOnly : PolyakMode::Signed;
}

PolyakMatrix build_polyak_matrix(const CaseSpec& c, int n, PolyakMode mode) {
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  PolyakMatrix out{DiagramIndex::for_degrees(c.kind, 0, n, mode == PolyakMode::Signed), {}, {}};
  out.matrix = SparseIntMatrix(0, out.basis.size());
  if (n == 0) return out;

  const auto moves = move_set(c);
  std::optional<NegativeElimination> elimination;
  if (mode == PolyakMode::PositiveOnly) elimination = eliminate_negative_arrows(moves, n);

  auto add = [&](std::span<const RelationTemplate> templates, std::string name) {
    const std::size_t count = emit_rows(templates, c.kind, n, out.basis, [&](std::span<const MatrixEntry> row) {
      return out.matrix.add_nonzero_row(row);
    });
    out.rows_per_template.emplace_back(std::move(name), count);
  };

  for (MoveId id : moves) {
    // Positive mode: the R2 relations are carried by the rewriting itself,
    // plus the auxiliary series rows below.
    if (mode == PolyakMode::PositiveOnly && (id == MoveId::R2b || id == MoveId::R2c)) continue;
    add(templates_for(move_template(id), n, mode, elimination ? &*elimination : nullptr), std::string(to_string(id)));
  }
  if (elimination && !elimination->auxiliary.empty()) add(elimination->auxiliary, elimination->auxiliary.front().name);
  return out;
}

PolyakResult compute_polyak(const CaseSpec& c, int n, PolyakMode mode, std::span<const std::uint32_t> primes,
                            const RankOptions& options) {
  PolyakMatrix pm = build_polyak_matrix(c, n, mode);
  PolyakResult out;
  out.basis_size = pm.basis.size();
  out.basis_per_degree = pm.basis.degree_counts();
  out.rows_per_template = std::move(pm.rows_per_template);
  out.rank = rank_consensus(pm.matrix, primes, options);
  if (!out.rank.consensus) throw InconclusiveRank(c.name() + " P_" + std::to_string(n), out.rank.per_prime);
  out.dim = out.basis_size - out.rank.rank;
  return out;
}

std::size_t dim_polyak(const CaseSpec& c, int n, PolyakMode mode) {
  const auto primes = default_primes();
  return compute_polyak(c, n, mode, primes).dim;
}

std::size_t dim_polyak(const CaseSpec& c, int n) { return dim_polyak(c, n, default_mode(c)); }

std::size_t dim_V_quotient(const CaseSpec& c, int n) {
  if (n < 1) throw std::invalid_argument("dim V_{n/n-1} needs n >= 1");
  const std::size_t upper = dim_polyak(c, n);
  const std::size_t lower = dim_polyak(c, n - 1);
  if (upper < lower) throw std::logic_error("Polyak dimensions decreased with the degree");
  return upper - lower;
}

}  // namespace vdims
