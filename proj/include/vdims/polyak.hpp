// The truncated Polyak algebra: signed arrow diagrams of degree <= n modulo
// the Reidemeister move relations, and dim V_{n/n-1} = dim P_n - dim P_{n-1}.
//
// A move replacing local arrows A by local arrows B gives, for every ambient
// diagram D and every placement of the move's strands, the relation
//   sum over nonempty S in A of (D + S)  -  sum over nonempty T in B of (D + T)
// with terms of degree > n dropped.
#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "vdims/case_spec.hpp"
#include "vdims/embedding.hpp"
#include "vdims/linalg.hpp"
#include "vdims/weight.hpp"

namespace vdims {

enum class MoveId : std::uint8_t { R1Pos, R1Neg, R2b, R2c, R3b, R3c };

std::string_view to_string(MoveId id);

/// One oriented instance of a move. `left` and `right` share the strand count;
/// `right` is empty for R1 and R2.
struct MoveVariant {
  LocalPicture left;
  LocalPicture right;
};

struct MoveTemplate {
  MoveId id = MoveId::R1Pos;
  int strand_count = 0;
  std::vector<MoveVariant> variants;
};

MoveTemplate move_template(MoveId id);
std::vector<MoveId> move_set(const CaseSpec& c);
std::vector<MoveTemplate> move_templates(const CaseSpec& c);

/// The nonempty-subset expansion of one variant, with equal terms merged.
std::vector<TemplateTerm> subset_rule(const MoveVariant& v);

enum class PolyakMode { Signed, PositiveOnly };

class UnsupportedElimination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// How negative arrows are rewritten in positive-only mode.
struct NegativeElimination {
  bool twisted = false;  // false: parallel stacks (R2b); true: twisted stacks (R2c only)
  /// Rows equating the parallel and twisted series, present when both R2
  /// moves are imposed.
  std::vector<RelationTemplate> auxiliary;

  /// b -> sum_{k>=1} (-1)^k a^k, truncated at local degree `max_degree`.
  std::vector<TemplateTerm> rewrite(const TemplateTerm& term, int max_degree) const;
};

/// Throws UnsupportedElimination when `moves` has no R2 move.
NegativeElimination eliminate_negative_arrows(std::span<const MoveId> moves, int n);

using InhomogeneousRow = std::vector<MatrixEntry>;

/// Relation rows over `basis` (all diagrams of degree <= n, signed or
/// positive according to `mode`). Positive mode rewrites negative local
/// arrows; R2 templates whose content is absorbed by the rewriting yield
/// nothing there.
std::vector<InhomogeneousRow> generate_move_relations(const MoveTemplate& t, const CaseSpec& c, int n,
                                                      PolyakMode mode, const DiagramIndex& basis);

struct PolyakMatrix {
  DiagramIndex basis;
  SparseIntMatrix matrix;
  std::vector<std::pair<std::string, std::size_t>> rows_per_template;
};

PolyakMatrix build_polyak_matrix(const CaseSpec& c, int n, PolyakMode mode);

struct PolyakResult {
  std::size_t basis_size = 0;
  std::vector<std::size_t> basis_per_degree;
  std::vector<std::pair<std::string, std::size_t>> rows_per_template;
  RankResult rank;
  std::size_t dim = 0;
};

PolyakMode default_mode(const CaseSpec& c);

/// Throws InconclusiveRank if the primes disagree.
PolyakResult compute_polyak(const CaseSpec& c, int n, PolyakMode mode, std::span<const std::uint32_t> primes,
                            const RankOptions& options = {});
std::size_t dim_polyak(const CaseSpec& c, int n, PolyakMode mode);
std::size_t dim_polyak(const CaseSpec& c, int n);
std::size_t dim_V_quotient(const CaseSpec& c, int n);

}  // namespace vdims
