// Weight systems: arrow diagrams of one degree modulo 6T, XII and FI.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "vdims/case_spec.hpp"
#include "vdims/embedding.hpp"
#include "vdims/linalg.hpp"

namespace vdims {

/// Homogeneous relation among degree-`degree` diagrams.
struct RelationRow {
  int degree = 0;
  std::vector<MatrixEntry> entries;
};

/// Rank computations whose primes disagree.
class InconclusiveRank : public std::runtime_error {
 public:
  InconclusiveRank(const std::string& where, std::vector<std::size_t> ranks);
  const std::vector<std::size_t>& ranks() const { return ranks_; }

 private:
  std::vector<std::size_t> ranks_;
};

/// Sites i, j, k = 0, 1, 2 with a_xy the arrow from x to y:
/// [a_ij, a_ik] + [a_ij, a_jk] + [a_ik, a_jk], where in a product the left
/// factor's endpoint comes first on a shared site.
RelationTemplate six_term_template();
/// Two arrows from site 0 to site 1: crossed minus parallel.
RelationTemplate xii_template();
/// An isolated arrow, tail first or head first.
std::vector<RelationTemplate> fi_templates();

/// Rows are given over the degree-n basis of enumerate_keys(kind, n, false).
std::vector<RelationRow> generate_6T(SkeletonKind kind, int n);
std::vector<RelationRow> generate_XII(SkeletonKind kind, int n);
std::vector<RelationRow> generate_FI(SkeletonKind kind, int n);

struct RelationFamilies {
  bool six_term = false;
  bool xii = false;
  bool fi = false;
};

RelationFamilies families_for(const CaseSpec& c);

struct WeightMatrix {
  SparseIntMatrix matrix;
  std::size_t six_term_rows = 0;
  std::size_t xii_rows = 0;
  std::size_t fi_rows = 0;
};

WeightMatrix build_weight_matrix(SkeletonKind kind, int n, RelationFamilies families);
SparseIntMatrix weight_matrix(const CaseSpec& c, int n);

struct WeightResult {
  std::size_t diagrams = 0;
  std::size_t six_term_rows = 0;
  std::size_t xii_rows = 0;
  std::size_t fi_rows = 0;
  RankResult rank;
  std::size_t dim = 0;
};

/// Throws InconclusiveRank if the primes disagree.
WeightResult compute_weight_systems(const CaseSpec& c, int n, std::span<const std::uint32_t> primes,
                                    const RankOptions& options = {});
std::size_t dim_weight_systems(const CaseSpec& c, int n);

}  // namespace vdims
