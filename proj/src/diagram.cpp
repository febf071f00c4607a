#include "vdims/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace vdims {

std::string_view to_string(SkeletonKind kind) {
  switch (kind) {
    case SkeletonKind::Round: return "round";
    case SkeletonKind::Long: return "long";
    case SkeletonKind::Descending: return "descending";
  }
  return "?";
}

SkeletonKind parse_skeleton(std::string_view text) {
  if (text == "round") return SkeletonKind::Round;
  if (text == "long") return SkeletonKind::Long;
  if (text == "descending") return SkeletonKind::Descending;
  throw std::invalid_argument("unknown skeleton '" + std::string(text) + "'");
}

namespace {

DiagramKey encode_rotation(const RawDiagram& raw, int start) {
  std::array<std::int8_t, kMaxDegree> renumber;
  renumber.fill(-1);
  DiagramKey key;
  key.degree = static_cast<std::uint8_t>(raw.arrow_count);
  std::int8_t next = 0;
  for (int s = 0; s < raw.length; ++s) {
    int slot = start + s;
    if (slot >= raw.length) slot -= raw.length;
    const Endpoint& e = raw.slots[slot];
    std::int8_t& id = renumber[e.arrow];
    if (id < 0) {
      id = next++;
      if (raw.sign[e.arrow] < 0) key.negative |= static_cast<std::uint8_t>(1u << id);
    }
    key.code = key.code << 4 | static_cast<std::uint64_t>(id << 1 | (e.head ? 1 : 0));
  }
  return key;
}

}  // namespace

DiagramKey canonical_key(SkeletonKind kind, const RawDiagram& raw) {
  DiagramKey best = encode_rotation(raw, 0);
  if (kind == SkeletonKind::Round) {
    for (int start = 1; start < raw.length; ++start) {
      DiagramKey k = encode_rotation(raw, start);
      if (k < best) best = k;
    }
  }
  return best;
}

RawDiagram decode(const DiagramKey& key) {
  RawDiagram raw;
  raw.arrow_count = key.degree;
  raw.length = 2 * key.degree;
  for (int s = 0; s < raw.length; ++s) {
    auto nibble = static_cast<unsigned>(key.code >> (4 * (raw.length - 1 - s)) & 0xF);
    raw.slots[s] = Endpoint{static_cast<std::uint8_t>(nibble >> 1), (nibble & 1) != 0};
  }
  for (int a = 0; a < raw.arrow_count; ++a) raw.sign[a] = (key.negative >> a & 1) ? -1 : 1;
  return raw;
}

bool tails_precede_heads(const RawDiagram& raw) {
  std::uint32_t seen_tail = 0;
  for (int s = 0; s < raw.length; ++s) {
    const Endpoint& e = raw.slots[s];
    if (e.head) {
      if (!(seen_tail >> e.arrow & 1)) return false;
    } else {
      seen_tail |= 1u << e.arrow;
    }
  }
  return true;
}

ArrowDiagram::ArrowDiagram(SkeletonKind kind, std::vector<Endpoint> slots, std::vector<std::int8_t> signs)
    : kind_(kind), slots_(std::move(slots)), signs_(std::move(signs)) {
  if (slots_.size() % 2 != 0) throw StructuralError("odd number of endpoints");
  const int n = degree();
  if (n > kMaxDegree) throw StructuralError("degree " + std::to_string(n) + " exceeds the supported maximum");
  std::vector<int> tails(n, 0), heads(n, 0);
  for (const Endpoint& e : slots_) {
    if (e.arrow >= n) throw StructuralError("arrow id " + std::to_string(e.arrow) + " out of range");
    (e.head ? heads : tails)[e.arrow]++;
  }
  for (int a = 0; a < n; ++a) {
    if (tails[a] != 1 || heads[a] != 1)
      throw StructuralError("arrow " + std::to_string(a + 1) + " is not matched to exactly one tail and one head");
  }
  if (!signs_.empty()) {
    if (static_cast<int>(signs_.size()) != n) throw StructuralError("sign count does not match degree");
    for (auto s : signs_)
      if (s != 1 && s != -1) throw StructuralError("signs must be +1 or -1");
  }
  if (kind_ == SkeletonKind::Descending && !tails_precede_heads(raw()))
    throw StructuralError("descending diagram has an arrow pointing against the skeleton");
}

RawDiagram ArrowDiagram::raw() const {
  RawDiagram r;
  r.length = static_cast<int>(slots_.size());
  r.arrow_count = degree();
  std::copy(slots_.begin(), slots_.end(), r.slots.begin());
  for (int a = 0; a < r.arrow_count; ++a) r.sign[a] = signs_.empty() ? 1 : signs_[a];
  return r;
}

ArrowDiagram ArrowDiagram::from_key(SkeletonKind kind, const DiagramKey& key, bool signed_mode) {
  RawDiagram r = decode(key);
  std::vector<std::int8_t> signs;
  if (signed_mode) signs.assign(r.sign.begin(), r.sign.begin() + r.arrow_count);
  return ArrowDiagram(kind, {r.slots.begin(), r.slots.begin() + r.length}, std::move(signs));
}

DiagramKey ArrowDiagram::key() const { return canonical_key(kind_, raw()); }

ArrowDiagram ArrowDiagram::canonicalize() const { return from_key(kind_, key(), is_signed()); }

bool ArrowDiagram::is_descending() const {
  if (kind_ == SkeletonKind::Round) throw UnsupportedSkeleton("is_descending needs a long skeleton");
  return tails_precede_heads(raw());
}

std::string ArrowDiagram::to_text() const {
  std::ostringstream out;
  out << degree() << ':';
  for (const Endpoint& e : slots_) {
    out << ' ' << (e.head ? 'H' : 'T') << (e.arrow + 1);
    if (!e.head && is_signed()) out << (signs_[e.arrow] > 0 ? '+' : '-');
  }
  return out.str();
}

ArrowDiagram ArrowDiagram::parse_text(SkeletonKind kind, std::string_view line) {
  auto colon = line.find(':');
  if (colon == std::string_view::npos) throw StructuralError("missing ':' after degree");
  int degree = -1;
  {
    auto head = line.substr(0, colon);
    while (!head.empty() && head.front() == ' ') head.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), degree);
    if (ec != std::errc{} || degree < 0) throw StructuralError("bad degree field");
  }
  std::vector<Endpoint> slots;
  std::vector<std::int8_t> signs(degree, 0);
  bool any_sign = false;
  std::istringstream tokens{std::string(line.substr(colon + 1))};
  std::string tok;
  while (tokens >> tok) {
    if (tok.size() < 2 || (tok[0] != 'T' && tok[0] != 'H')) throw StructuralError("bad token '" + tok + "'");
    const bool head = tok[0] == 'H';
    std::int8_t sign = 0;
    std::string_view digits(tok);
    digits.remove_prefix(1);
    if (digits.back() == '+' || digits.back() == '-') {
      if (head) throw StructuralError("sign suffix belongs on the tail token");
      sign = digits.back() == '+' ? 1 : -1;
      digits.remove_suffix(1);
    }
    int id = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || id < 1 || id > degree)
      throw StructuralError("bad arrow number in '" + tok + "'");
    if (sign != 0) {
      signs[id - 1] = sign;
      any_sign = true;
    }
    slots.push_back({static_cast<std::uint8_t>(id - 1), head});
  }
  if (static_cast<int>(slots.size()) != 2 * degree) throw StructuralError("token count does not match degree");
  if (any_sign) {
    for (auto s : signs)
      if (s == 0) throw StructuralError("signed diagram is missing a sign");
  } else {
    signs.clear();
  }
  return ArrowDiagram(kind, std::move(slots), std::move(signs));
}

namespace {

void enumerate_matchings(SkeletonKind kind, RawDiagram& raw, std::uint32_t used, int next_arrow,
                         const std::function<void(const RawDiagram&)>& emit) {
  int first = 0;
  while (first < raw.length && (used >> first & 1)) ++first;
  if (first == raw.length) {
    emit(raw);
    return;
  }
  const auto arrow = static_cast<std::uint8_t>(next_arrow);
  for (int other = first + 1; other < raw.length; ++other) {
    if (used >> other & 1) continue;
    const std::uint32_t now = used | 1u << first | 1u << other;
    raw.slots[first] = {arrow, false};
    raw.slots[other] = {arrow, true};
    enumerate_matchings(kind, raw, now, next_arrow + 1, emit);
    if (kind != SkeletonKind::Descending) {
      raw.slots[first] = {arrow, true};
      raw.slots[other] = {arrow, false};
      enumerate_matchings(kind, raw, now, next_arrow + 1, emit);
    }
  }
}

}  // namespace

std::vector<DiagramKey> enumerate_keys(SkeletonKind kind, int degree, bool signed_mode) {
  if (degree < 0 || degree > kMaxDegree) throw std::invalid_argument("degree out of range");
  RawDiagram raw;
  raw.length = 2 * degree;
  raw.arrow_count = degree;
  std::vector<DiagramKey> keys;
  const std::uint32_t sign_patterns = signed_mode ? 1u << degree : 1u;
  enumerate_matchings(kind, raw, 0, 0, [&](const RawDiagram& r) {
    RawDiagram copy = r;
    for (std::uint32_t mask = 0; mask < sign_patterns; ++mask) {
      for (int a = 0; a < degree; ++a) copy.sign[a] = (mask >> a & 1) ? -1 : 1;
      keys.push_back(canonical_key(kind, copy));
    }
  });
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::vector<ArrowDiagram> enumerate_diagrams(SkeletonKind kind, int degree, bool signed_mode) {
  std::vector<ArrowDiagram> out;
  for (const DiagramKey& k : enumerate_keys(kind, degree, signed_mode))
    out.push_back(ArrowDiagram::from_key(kind, k, signed_mode));
  return out;
}

DiagramIndex::DiagramIndex(std::vector<DiagramKey> keys) : keys_(std::move(keys)) {
  lookup_.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (!lookup_.emplace(keys_[i], static_cast<std::uint32_t>(i)).second)
      throw std::invalid_argument("duplicate key in diagram index");
  }
}

DiagramIndex DiagramIndex::for_degrees(SkeletonKind kind, int min_degree, int max_degree, bool signed_mode) {
  std::vector<DiagramKey> all;
  for (int d = std::max(min_degree, 0); d <= max_degree; ++d) {
    auto keys = enumerate_keys(kind, d, signed_mode);
    all.insert(all.end(), keys.begin(), keys.end());
  }
  return DiagramIndex(std::move(all));
}

std::int64_t DiagramIndex::find(const DiagramKey& key) const {
  auto it = lookup_.find(key);
  return it == lookup_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::size_t DiagramIndex::index_of(const DiagramKey& key) const {
  auto it = lookup_.find(key);
  if (it == lookup_.end()) throw std::out_of_range("diagram not in basis");
  return it->second;
}

std::vector<std::size_t> DiagramIndex::degree_counts() const {
  std::vector<std::size_t> counts;
  for (const DiagramKey& k : keys_) {
    if (counts.size() <= k.degree) counts.resize(k.degree + 1, 0);
    ++counts[k.degree];
  }
  return counts;
}

}  // namespace vdims
