// Arrow diagrams on round, long and descending skeletons.
//
// A diagram of degree n is a word of 2n endpoint tokens read along the
// skeleton. Arrows are numbered by first appearance, so a long diagram has a
// unique encoding; a round diagram is additionally rotated to the
// lexicographically least of its 2n rotations.
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vdims {

enum class SkeletonKind : std::uint8_t { Round, Long, Descending };

std::string_view to_string(SkeletonKind kind);
SkeletonKind parse_skeleton(std::string_view text);

/// Largest supported degree; a packed key holds 2 * kMaxDegree nibbles.
inline constexpr int kMaxDegree = 8;

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedSkeleton : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Endpoint {
  std::uint8_t arrow = 0;
  bool head = false;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Packed canonical encoding. Slot s occupies nibble s counted from the most
/// significant end, holding (arrow << 1) | head; bit a of `negative` marks a
/// negative sign on arrow a. Comparing keys of equal degree compares the slot
/// words lexicographically.
struct DiagramKey {
  std::uint64_t code = 0;
  std::uint8_t negative = 0;
  std::uint8_t degree = 0;

  friend auto operator<=>(const DiagramKey& a, const DiagramKey& b) {
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    if (auto c = a.code <=> b.code; c != 0) return c;
    return a.negative <=> b.negative;
  }
  friend bool operator==(const DiagramKey&, const DiagramKey&) = default;
};

struct DiagramKeyHash {
  std::size_t operator()(const DiagramKey& k) const noexcept {
    std::uint64_t h = k.code * 0x9E3779B97F4A7C15ULL;
    h ^= (std::uint64_t{k.negative} << 8 | k.degree) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// Scratch representation used on hot paths: endpoints with arbitrary arrow
/// ids and a sign per id (+1/-1). Arrow ids must be < arrow_count.
struct RawDiagram {
  std::array<Endpoint, 2 * kMaxDegree> slots{};
  std::array<std::int8_t, kMaxDegree> sign{};
  int length = 0;       // number of slots
  int arrow_count = 0;  // length / 2

  std::span<const Endpoint> view() const { return {slots.data(), static_cast<std::size_t>(length)}; }
};

/// Canonical key of a raw diagram. Does not validate the matching.
DiagramKey canonical_key(SkeletonKind kind, const RawDiagram& raw);

/// Decodes a key into a raw diagram with first-appearance arrow ids.
RawDiagram decode(const DiagramKey& key);

/// True iff every arrow's tail precedes its head in slot order.
bool tails_precede_heads(const RawDiagram& raw);

class ArrowDiagram {
 public:
  ArrowDiagram() = default;

  /// Validates the matching: every arrow id in [0, degree) appears exactly
  /// once as a tail and once as a head. `signs` is empty (unsigned) or has
  /// one entry in {+1, -1} per arrow id. Descending diagrams must already be
  /// descending.
  ArrowDiagram(SkeletonKind kind, std::vector<Endpoint> slots, std::vector<std::int8_t> signs = {});

  static ArrowDiagram from_key(SkeletonKind kind, const DiagramKey& key, bool signed_mode);

  SkeletonKind kind() const { return kind_; }
  int degree() const { return static_cast<int>(slots_.size() / 2); }
  bool is_signed() const { return !signs_.empty(); }
  const std::vector<Endpoint>& slots() const { return slots_; }
  const std::vector<std::int8_t>& signs() const { return signs_; }

  /// Key of the canonical representative.
  DiagramKey key() const;

  /// Long/Descending: arrows renumbered by first appearance. Round: also
  /// rotated to the least encoding. Idempotent.
  ArrowDiagram canonicalize() const;

  /// Throws UnsupportedSkeleton on Round diagrams.
  bool is_descending() const;

  /// `2: T1 T2 H1 H2`; signed diagrams carry the arrow sign on its tail
  /// token, e.g. `1: T1+ H1`.
  std::string to_text() const;
  static ArrowDiagram parse_text(SkeletonKind kind, std::string_view line);

  friend bool operator==(const ArrowDiagram&, const ArrowDiagram&) = default;

 private:
  RawDiagram raw() const;

  SkeletonKind kind_ = SkeletonKind::Long;
  std::vector<Endpoint> slots_;
  std::vector<std::int8_t> signs_;
};

/// All canonical diagrams of exactly `degree` arrows, sorted by key. Signed
/// mode takes every unsigned diagram with all 2^degree sign assignments.
std::vector<DiagramKey> enumerate_keys(SkeletonKind kind, int degree, bool signed_mode);
std::vector<ArrowDiagram> enumerate_diagrams(SkeletonKind kind, int degree, bool signed_mode);

/// Dense index over a fixed set of canonical keys.
class DiagramIndex {
 public:
  DiagramIndex() = default;
  explicit DiagramIndex(std::vector<DiagramKey> keys);

  /// Basis of all diagrams with degree in [min_degree, max_degree], ordered
  /// by degree then key.
  static DiagramIndex for_degrees(SkeletonKind kind, int min_degree, int max_degree, bool signed_mode);

  std::size_t size() const { return keys_.size(); }
  const DiagramKey& key(std::size_t i) const { return keys_[i]; }
  const std::vector<DiagramKey>& keys() const { return keys_; }

  /// -1 when the key is not in the basis.
  std::int64_t find(const DiagramKey& key) const;
  std::size_t index_of(const DiagramKey& key) const;  // throws std::out_of_range

  /// Number of basis elements of each degree 0..max.
  std::vector<std::size_t> degree_counts() const;

 private:
  std::vector<DiagramKey> keys_;
  std::unordered_map<DiagramKey, std::uint32_t, DiagramKeyHash> lookup_;
};

}  // namespace vdims
