// Local relation pictures and their placement into ambient diagrams.
//
// A relation is drawn on a few short skeleton pieces ("sites"). Each term of
// the relation puts some arrows between the sites; a site lists the arrow
// endpoints it carries in skeleton order. An instance of the relation picks
// an ambient diagram and places the sites, in some order, among the ambient
// endpoints (several sites may share one gap).
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vdims/diagram.hpp"
#include "vdims/linalg.hpp"

namespace vdims {

struct LocalEnd {
  std::uint8_t arrow = 0;
  bool head = false;

  friend bool operator==(const LocalEnd&, const LocalEnd&) = default;
};

struct LocalArrow {
  std::uint8_t tail_site = 0;
  std::uint8_t head_site = 0;
  std::int8_t sign = 1;

  friend bool operator==(const LocalArrow&, const LocalArrow&) = default;
};

struct LocalPicture {
  std::vector<LocalArrow> arrows;
  std::vector<std::vector<LocalEnd>> sites;

  int degree() const { return static_cast<int>(arrows.size()); }
  bool has_negative_arrow() const;

  /// Builds the per-site endpoint lists from per-site arrow orders: the
  /// endpoint of arrow a on site s is a tail iff arrows[a].tail_site == s.
  static LocalPicture from_orders(std::vector<LocalArrow> arrows, const std::vector<std::vector<int>>& site_orders);

  /// Arrows renumbered by first appearance scanning sites in order.
  LocalPicture normalized() const;
  /// Keeps only the listed arrows (indices into `arrows`).
  LocalPicture restricted(std::span<const int> keep) const;

  friend bool operator==(const LocalPicture&, const LocalPicture&) = default;
};

struct TemplateTerm {
  std::int64_t coef = 0;
  LocalPicture picture;
};

struct RelationTemplate {
  std::string name;
  int site_count = 0;
  std::vector<TemplateTerm> terms;
};

/// Merges terms with equal normalized pictures and drops zero coefficients.
std::vector<TemplateTerm> combine_terms(std::vector<TemplateTerm> terms);

/// Stack of k arrows from site 0 to site 1. Parallel: the i-th tail pairs
/// with the i-th head. Twisted: heads in reverse order.
LocalPicture parallel_stack(int k, std::int8_t sign = 1);
LocalPicture twisted_stack(int k, std::int8_t sign = 1);

/// Replaces every negative arrow by the series sum_{k>=1} (-1)^k a^k of
/// positive stacks placed where the negative arrow's endpoints were
/// (parallel stacks, or twisted ones when `twisted`). Terms whose degree
/// would exceed `max_degree` are dropped.
std::vector<TemplateTerm> expand_negative_arrows(const TemplateTerm& term, int max_degree, bool twisted = false);

struct EmbedOptions {
  int max_degree = kMaxDegree;   // terms of larger total degree are dropped
  bool gate_descending = false;  // drop instances with any non-descending term
};

/// Number of ways to place `sites` ordered sites among `ambient_slots` endpoints.
std::size_t placement_count(int ambient_slots, int sites);

/// Every placement of `t` into `ambient`; each resulting row (possibly empty
/// after cancellation) is handed to `sink` with columns from `basis`. Returns
/// the number of instances emitted. Throws StructuralError when a term is
/// missing from `basis`.
std::size_t embed_template(const RelationTemplate& t, SkeletonKind kind, const DiagramKey& ambient,
                           const DiagramIndex& basis, const EmbedOptions& options,
                           const std::function<void(std::span<const MatrixEntry>)>& sink);

/// Raw diagram of one term of one placement; exposed for oracles and tests.
/// `word` lists, in skeleton order, ambient slot indices (>= 0) and sites
/// encoded as -1 - site.
RawDiagram materialize(const RawDiagram& ambient, std::span<const int> word, const LocalPicture& picture);

}  // namespace vdims
