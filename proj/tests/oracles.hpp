// Independent reference implementations used by the unit and acceptance tests.
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "vdims/diagram.hpp"
#include "vdims/embedding.hpp"
#include "vdims/linalg.hpp"

namespace oracle {

/// A directed matching on 2n positions as (tail, head) pairs.
using Matching = std::vector<std::pair<int, int>>;

/// Packs a matching, pairs sorted, 4 bits per position.
std::uint64_t encode(Matching m);

Matching matching_of(const vdims::RawDiagram& raw);

/// All directed perfect matchings of 2n points, found by running over every
/// permutation of the slots and deduplicating; ordered by encoding.
std::vector<Matching> all_matchings(int n, bool descending_only);
std::vector<std::uint64_t> brute_force_matchings(int n, bool descending_only);

/// Least encoding over the 2n rotations of the circle.
std::uint64_t rotation_representative(const Matching& m, int n);

/// Number of rotation orbits of directed matchings on 2n cyclic points.
std::size_t round_orbit_count(int n);

/// Rank over Q by dense fraction-exact elimination.
std::size_t dense_rational_rank(const vdims::SparseIntMatrix& m);

vdims::SparseIntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density,
                                     int max_abs);

/// Counts the instances of `t` over all ambient diagrams of the given degree
/// by building every slot word directly. With `gate_descending`, instances
/// with any non-descending term (of degree <= max_degree) are skipped.
std::size_t naive_instance_count(const vdims::RelationTemplate& t, vdims::SkeletonKind kind, int ambient_degree,
                                 int max_degree, bool gate_descending);

std::size_t factorial(int n);
std::size_t double_factorial_odd(int n);  // (2n-1)!!

}  // namespace oracle
