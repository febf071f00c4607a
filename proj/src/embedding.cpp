#include "vdims/embedding.hpp"

#include <algorithm>
#include <numeric>

namespace vdims {

bool LocalPicture::has_negative_arrow() const {
  return std::any_of(arrows.begin(), arrows.end(), [](const LocalArrow& a) { return a.sign < 0; });
}

LocalPicture LocalPicture::from_orders(std::vector<LocalArrow> arrows, const std::vector<std::vector<int>>& site_orders) {
  LocalPicture pic;
  pic.sites.resize(site_orders.size());
  for (std::size_t s = 0; s < site_orders.size(); ++s) {
    for (int a : site_orders[s]) {
      const bool is_tail = arrows.at(a).tail_site == s;
      const bool is_head = arrows.at(a).head_site == s;
      if (is_tail == is_head) throw StructuralError("arrow does not join two distinct sites");
      pic.sites[s].push_back({static_cast<std::uint8_t>(a), is_head});
    }
  }
  pic.arrows = std::move(arrows);
  return pic;
}

LocalPicture LocalPicture::normalized() const {
  std::vector<int> renumber(arrows.size(), -1);
  int next = 0;
  LocalPicture out;
  out.arrows.resize(arrows.size());
  out.sites.resize(sites.size());
  for (std::size_t s = 0; s < sites.size(); ++s) {
    for (const LocalEnd& e : sites[s]) {
      if (renumber[e.arrow] < 0) {
        renumber[e.arrow] = next;
        out.arrows[next] = arrows[e.arrow];
        ++next;
      }
      out.sites[s].push_back({static_cast<std::uint8_t>(renumber[e.arrow]), e.head});
    }
  }
  return out;
}

LocalPicture LocalPicture::restricted(std::span<const int> keep) const {
  std::vector<int> renumber(arrows.size(), -1);
  LocalPicture out;
  for (int a : keep) {
    renumber[a] = static_cast<int>(out.arrows.size());
    out.arrows.push_back(arrows[a]);
  }
  out.sites.resize(sites.size());
  for (std::size_t s = 0; s < sites.size(); ++s)
    for (const LocalEnd& e : sites[s])
      if (renumber[e.arrow] >= 0) out.sites[s].push_back({static_cast<std::uint8_t>(renumber[e.arrow]), e.head});
  return out;
}

std::vector<TemplateTerm> combine_terms(std::vector<TemplateTerm> terms) {
  std::vector<TemplateTerm> out;
  for (TemplateTerm& t : terms) {
    LocalPicture pic = t.picture.normalized();
    auto it = std::find_if(out.begin(), out.end(), [&](const TemplateTerm& o) { return o.picture == pic; });
    if (it == out.end()) {
      out.push_back({t.coef, std::move(pic)});
    } else {
      it->coef += t.coef;
    }
  }
  std::erase_if(out, [](const TemplateTerm& t) { return t.coef == 0; });
  return out;
}

namespace {

LocalPicture stack(int k, std::int8_t sign, bool twisted) {
  LocalPicture pic;
  pic.sites.resize(2);
  for (int i = 0; i < k; ++i) {
    pic.arrows.push_back({0, 1, sign});
    pic.sites[0].push_back({static_cast<std::uint8_t>(i), false});
    pic.sites[1].push_back({static_cast<std::uint8_t>(twisted ? k - 1 - i : i), true});
  }
  return pic;
}

// Replaces arrow `target` by k positive copies; heads reversed when twisted.
LocalPicture replace_by_stack(const LocalPicture& pic, int target, int k, bool twisted) {
  LocalPicture out;
  std::vector<int> base(pic.arrows.size());
  for (std::size_t a = 0; a < pic.arrows.size(); ++a) {
    base[a] = static_cast<int>(out.arrows.size());
    if (static_cast<int>(a) == target) {
      for (int i = 0; i < k; ++i) out.arrows.push_back({pic.arrows[a].tail_site, pic.arrows[a].head_site, 1});
    } else {
      out.arrows.push_back(pic.arrows[a]);
    }
  }
  out.sites.resize(pic.sites.size());
  for (std::size_t s = 0; s < pic.sites.size(); ++s) {
    for (const LocalEnd& e : pic.sites[s]) {
      if (e.arrow == target) {
        for (int i = 0; i < k; ++i) {
          const int copy = twisted && e.head ? k - 1 - i : i;
          out.sites[s].push_back({static_cast<std::uint8_t>(base[e.arrow] + copy), e.head});
        }
      } else {
        out.sites[s].push_back({static_cast<std::uint8_t>(base[e.arrow]), e.head});
      }
    }
  }
  return out;
}

}  // namespace

LocalPicture parallel_stack(int k, std::int8_t sign) { return stack(k, sign, false); }
LocalPicture twisted_stack(int k, std::int8_t sign) { return stack(k, sign, true); }

std::vector<TemplateTerm> expand_negative_arrows(const TemplateTerm& term, int max_degree, bool twisted) {
  std::vector<TemplateTerm> done, pending{term};
  while (!pending.empty()) {
    TemplateTerm t = std::move(pending.back());
    pending.pop_back();
    auto neg = std::find_if(t.picture.arrows.begin(), t.picture.arrows.end(),
                            [](const LocalArrow& a) { return a.sign < 0; });
    if (neg == t.picture.arrows.end()) {
      done.push_back(std::move(t));
      continue;
    }
    const int target = static_cast<int>(neg - t.picture.arrows.begin());
    for (int k = 1; t.picture.degree() - 1 + k <= max_degree; ++k)
      pending.push_back({(k % 2 ? -t.coef : t.coef), replace_by_stack(t.picture, target, k, twisted)});
  }
  return done;
}

std::size_t placement_count(int ambient_slots, int sites) {
  std::size_t total = 1;
  for (int i = 0; i < sites; ++i) total *= static_cast<std::size_t>(ambient_slots + sites - i);
  return total;
}

RawDiagram materialize(const RawDiagram& ambient, std::span<const int> word, const LocalPicture& picture) {
  RawDiagram raw;
  const int d = ambient.arrow_count;
  raw.arrow_count = d + picture.degree();
  if (raw.arrow_count > kMaxDegree) throw StructuralError("term degree exceeds the supported maximum");
  for (int a = 0; a < d; ++a) raw.sign[a] = ambient.sign[a];
  for (int a = 0; a < picture.degree(); ++a) raw.sign[d + a] = picture.arrows[a].sign;
  for (int token : word) {
    if (token >= 0) {
      raw.slots[raw.length++] = ambient.slots[token];
    } else {
      for (const LocalEnd& e : picture.sites[-1 - token])
        raw.slots[raw.length++] = {static_cast<std::uint8_t>(d + e.arrow), e.head};
    }
  }
  return raw;
}

std::size_t embed_template(const RelationTemplate& t, SkeletonKind kind, const DiagramKey& ambient,
                           const DiagramIndex& basis, const EmbedOptions& options,
                           const std::function<void(std::span<const MatrixEntry>)>& sink) {
  const RawDiagram amb = decode(ambient);
  const int m = t.site_count;
  const int length = amb.length + m;

  // Terms that survive truncation for this ambient degree.
  std::vector<const TemplateTerm*> live;
  for (const TemplateTerm& term : t.terms)
    if (amb.arrow_count + term.picture.degree() <= options.max_degree) live.push_back(&term);
  if (live.empty()) return 0;

  std::vector<int> positions(m);
  std::iota(positions.begin(), positions.end(), 0);
  std::vector<int> labels(m), word(length);
  std::vector<MatrixEntry> row;
  std::size_t instances = 0;

  while (true) {
    std::iota(labels.begin(), labels.end(), 0);
    do {
      int next_ambient = 0, p = 0;
      for (int i = 0; i < length; ++i) {
        if (p < m && positions[p] == i) {
          word[i] = -1 - labels[p++];
        } else {
          word[i] = next_ambient++;
        }
      }
      row.clear();
      bool keep = true;
      for (const TemplateTerm* term : live) {
        RawDiagram raw = materialize(amb, word, term->picture);
        if (options.gate_descending && !tails_precede_heads(raw)) {
          keep = false;
          break;
        }
        const std::int64_t col = basis.find(canonical_key(kind, raw));
        if (col < 0) throw StructuralError("relation term is not in the diagram basis");
        row.push_back({static_cast<std::uint32_t>(col), term->coef});
      }
      if (keep) {
        ++instances;
        sink(row);
      }
    } while (std::next_permutation(labels.begin(), labels.end()));

    // Next combination of m marker positions out of `length`.
    int i = m - 1;
    while (i >= 0 && positions[i] == length - m + i) --i;
    if (i < 0) break;
    ++positions[i];
    for (int j = i + 1; j < m; ++j) positions[j] = positions[j - 1] + 1;
  }
  return instances;
}

}  // namespace vdims
