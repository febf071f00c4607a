// The 3 x 3 x 2 grid of virtual knot theories.
#pragma once

#include <array>
#include <string>
#include <string_view>

#include "vdims/diagram.hpp"

namespace vdims {

enum class R23Mode : std::uint8_t { Standard, BraidLike, R2Only };
enum class R1Mode : std::uint8_t { ModR1, NoR1 };

std::string_view to_string(R23Mode mode);
std::string_view to_string(R1Mode mode);
R23Mode parse_r23(std::string_view text);  // standard | braid | r2only
R1Mode parse_r1(std::string_view text);    // mod | no

struct CaseSpec {
  SkeletonKind kind = SkeletonKind::Long;
  R23Mode r23 = R23Mode::Standard;
  R1Mode r1 = R1Mode::ModR1;

  /// e.g. "long/standard/mod"
  std::string name() const;
  static CaseSpec parse(std::string_view name);

  friend bool operator==(const CaseSpec&, const CaseSpec&) = default;
};

/// All 18 cases: skeleton-major, then R23 mode, then R1 mode.
std::array<CaseSpec, 18> all_cases();

}  // namespace vdims
