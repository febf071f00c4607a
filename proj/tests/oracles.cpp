#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using vdims::SparseIntMatrix;

std::uint64_t encode(Matching m) {
  std::sort(m.begin(), m.end());
  std::uint64_t code = m.size();
  for (auto [t, h] : m) code = code << 8 | static_cast<std::uint64_t>(t) << 4 | static_cast<std::uint64_t>(h);
  return code;
}

Matching matching_of(const vdims::RawDiagram& raw) {
  Matching m(raw.arrow_count, {-1, -1});
  for (int s = 0; s < raw.length; ++s) {
    auto& p = m[raw.slots[s].arrow];
    (raw.slots[s].head ? p.second : p.first) = s;
  }
  return m;
}

std::vector<Matching> all_matchings(int n, bool descending_only) {
  std::vector<int> perm(2 * n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::uint64_t, Matching>> found;
  do {
    Matching m;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      m.emplace_back(perm[2 * i], perm[2 * i + 1]);
      if (descending_only && perm[2 * i] > perm[2 * i + 1]) ok = false;
    }
    if (!ok) continue;
    std::sort(m.begin(), m.end());
    found.emplace_back(encode(m), std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
              found.end());
  std::vector<Matching> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<std::uint64_t> brute_force_matchings(int n, bool descending_only) {
  std::vector<std::uint64_t> out;
  for (const Matching& m : all_matchings(n, descending_only)) out.push_back(encode(m));
  return out;
}

std::uint64_t rotation_representative(const Matching& m, int n) {
  std::uint64_t best = ~std::uint64_t{0};
  const int len = 2 * n;
  for (int r = 0; r < std::max(len, 1); ++r) {
    Matching rotated;
    for (auto [t, h] : m) rotated.emplace_back((t + r) % len, (h + r) % len);
    best = std::min(best, encode(std::move(rotated)));
  }
  return best;
}

std::size_t round_orbit_count(int n) {
  if (n == 0) return 1;
  std::set<std::uint64_t> reps;
  for (const Matching& m : all_matchings(n, false)) reps.insert(rotation_representative(m, n));
  return reps.size();
}

std::size_t dense_rational_rank(const SparseIntMatrix& m) {
  using boost::multiprecision::cpp_rational;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<cpp_rational>> a(rows, std::vector<cpp_rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& e : m.row(i)) a[i][e.col] = e.value;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const cpp_rational f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

SparseIntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density,
                              int max_abs) {
  std::bernoulli_distribution fill(density);
  std::uniform_int_distribution<int> value(-max_abs, max_abs);
  SparseIntMatrix m(0, cols);
  std::vector<vdims::MatrixEntry> row;
  for (std::size_t i = 0; i < rows; ++i) {
    row.clear();
    for (std::size_t j = 0; j < cols; ++j)
      if (fill(rng)) row.push_back({static_cast<std::uint32_t>(j), value(rng)});
    m.add_row(row);
  }
  return m;
}

namespace {

struct Slot {
  int arrow;
  bool head;
};

bool descends(const std::vector<Slot>& word, int arrows) {
  std::vector<int> tail_pos(arrows, -1);
  for (int i = 0; i < static_cast<int>(word.size()); ++i) {
    if (!word[i].head) {
      tail_pos[word[i].arrow] = i;
    } else if (tail_pos[word[i].arrow] < 0) {
      return false;
    }
  }
  return true;
}

void interleavings(int ambient_left, std::vector<bool>& used, std::vector<int>& word, int placed_sites,
                   const std::function<void(const std::vector<int>&)>& visit) {
  const int m = static_cast<int>(used.size());
  if (ambient_left == 0 && placed_sites == m) {
    visit(word);
    return;
  }
  if (ambient_left > 0) {
    word.push_back(0);
    interleavings(ambient_left - 1, used, word, placed_sites, visit);
    word.pop_back();
  }
  for (int s = 0; s < m; ++s) {
    if (used[s]) continue;
    used[s] = true;
    word.push_back(-1 - s);
    interleavings(ambient_left, used, word, placed_sites + 1, visit);
    word.pop_back();
    used[s] = false;
  }
}

}  // namespace

std::size_t naive_instance_count(const vdims::RelationTemplate& t, vdims::SkeletonKind kind, int ambient_degree,
                                 int max_degree, bool gate_descending) {
  std::size_t count = 0;
  for (const vdims::DiagramKey& key : vdims::enumerate_keys(kind, ambient_degree, false)) {
    const vdims::RawDiagram amb = vdims::decode(key);
    std::vector<bool> used(t.site_count, false);
    std::vector<int> word;
    bool any_live = false;
    for (const auto& term : t.terms)
      if (ambient_degree + term.picture.degree() <= max_degree) any_live = true;
    if (!any_live) continue;
    interleavings(amb.length, used, word, 0, [&](const std::vector<int>& w) {
      if (gate_descending) {
        for (const auto& term : t.terms) {
          if (ambient_degree + term.picture.degree() > max_degree) continue;
          std::vector<Slot> slots;
          int next_ambient = 0;
          for (int token : w) {
            if (token == 0) {
              const auto& e = amb.slots[next_ambient++];
              slots.push_back({e.arrow, e.head});
            } else {
              for (const auto& e : term.picture.sites[-1 - token]) slots.push_back({ambient_degree + e.arrow, e.head});
            }
          }
          if (!descends(slots, ambient_degree + term.picture.degree())) return;
        }
      }
      ++count;
    });
  }
  return count;
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::size_t double_factorial_odd(int n) {
  std::size_t f = 1;
  for (int i = 1; i <= 2 * n - 1; i += 2) f *= static_cast<std::size_t>(i);
  return f;
}

}  // namespace oracle
