#include "vdims/case_spec.hpp"

#include <stdexcept>

namespace vdims {

std::string_view to_string(R23Mode mode) {
  switch (mode) {
    case R23Mode::Standard: return "standard";
    case R23Mode::BraidLike: return "braid";
    case R23Mode::R2Only: return "r2only";
  }
  return "?";
}

std::string_view to_string(R1Mode mode) { return mode == R1Mode::ModR1 ? "mod" : "no"; }

R23Mode parse_r23(std::string_view text) {
  if (text == "standard") return R23Mode::Standard;
  if (text == "braid" || text == "braid-like") return R23Mode::BraidLike;
  if (text == "r2only" || text == "r2-only") return R23Mode::R2Only;
  throw std::invalid_argument("unknown R23 mode '" + std::string(text) + "'");
}

R1Mode parse_r1(std::string_view text) {
  if (text == "mod") return R1Mode::ModR1;
  if (text == "no") return R1Mode::NoR1;
  throw std::invalid_argument("unknown R1 mode '" + std::string(text) + "'");
}

std::string CaseSpec::name() const {
  std::string out(to_string(kind));
  out += '/';
  out += to_string(r23);
  out += '/';
  out += to_string(r1);
  return out;
}

CaseSpec CaseSpec::parse(std::string_view name) {
  auto first = name.find('/');
  auto second = first == std::string_view::npos ? first : name.find('/', first + 1);
  if (second == std::string_view::npos) throw std::invalid_argument("case must look like skeleton/r23/r1");
  return {parse_skeleton(name.substr(0, first)), parse_r23(name.substr(first + 1, second - first - 1)),
          parse_r1(name.substr(second + 1))};
}

std::array<CaseSpec, 18> all_cases() {
  std::array<CaseSpec, 18> out;
  std::size_t i = 0;
  for (auto kind : {SkeletonKind::Round, SkeletonKind::Long, SkeletonKind::Descending})
    for (auto r23 : {R23Mode::Standard, R23Mode::BraidLike, R23Mode::R2Only})
      for (auto r1 : {R1Mode::ModR1, R1Mode::NoR1}) out[i++] = {kind, r23, r1};
  return out;
}

}  // namespace vdims
