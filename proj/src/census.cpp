#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "tauttrack/corpus.hpp"
#include "tauttrack/union_find.hpp"

namespace tauttrack {

namespace {

const std::array<Perm4, 24>& all_perms() {
  static const std::array<Perm4, 24> perms = [] {
    std::array<Perm4, 24> out;
    std::array<int, 4> p{0, 1, 2, 3};
    int i = 0;
    do {
      out[i++] = Perm4(p[0], p[1], p[2], p[3]);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

int perm_code(const Perm4& p) {
  const auto& perms = all_perms();
  return static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
}

// Breadth-first relabelling starting from `start` with vertex map `sigma`.
// Returns the gluing code and fills `out`.
std::vector<int> relabel_from(const Triangulation& tri, int start, const Perm4& sigma, Triangulation* out) {
  const int n = tri.size();
  std::vector<int> index(n, -1), order;
  std::vector<Perm4> map(n);
  index[start] = 0;
  map[start] = sigma;
  order.push_back(start);
  std::vector<int> code;
  Triangulation result(n);
  for (size_t i = 0; i < order.size(); ++i) {
    int t = order[i];
    Perm4 inv = map[t].inverse();
    for (int f = 0; f < 4; ++f) {
      int k = inv[f];
      const auto& g = tri.gluing(t, k);
      if (index[g.tet] < 0) {
        index[g.tet] = static_cast<int>(order.size());
        map[g.tet] = map[t] * g.perm.inverse();
        order.push_back(g.tet);
      }
      Perm4 p = map[g.tet] * g.perm * inv;
      code.push_back(index[g.tet]);
      code.push_back(perm_code(p));
      result.gluing(static_cast<int>(i), f) = Gluing{index[g.tet], p};
    }
  }
  if (out != nullptr) *out = result;
  return code;
}

bool connected(const Triangulation& tri) {
  UnionFind uf(tri.size());
  for (int t = 0; t < tri.size(); ++t)
    for (int k = 0; k < 4; ++k)
      if (tri.gluing(t, k).glued()) uf.unite(t, tri.gluing(t, k).tet);
  return uf.count_sets() <= 1;
}

// Every closed table on n tetrahedra, by recursion on the least free slot.
void all_tables(Triangulation& tri, std::vector<bool>& used, const std::vector<std::vector<Perm4>>& sending,
                std::vector<Triangulation>& out) {
  int a = static_cast<int>(std::find(used.begin(), used.end(), false) - used.begin());
  if (a == static_cast<int>(used.size())) {
    out.push_back(tri);
    return;
  }
  used[a] = true;
  for (int b = a + 1; b < static_cast<int>(used.size()); ++b) {
    if (used[b]) continue;
    used[b] = true;
    for (const auto& p : sending[(a % 4) * 4 + b % 4]) {
      tri.join(a / 4, a % 4, b / 4, p);
      all_tables(tri, used, sending, out);
    }
    used[b] = false;
  }
  used[a] = false;
}

}  // namespace

Triangulation canonical_form(const Triangulation& tri) {
  if (tri.size() == 0) return tri;
  if (!connected(tri)) throw InputError("canonical form needs a connected closed triangulation");
  std::vector<int> best;
  Triangulation result;
  for (int t = 0; t < tri.size(); ++t)
    for (const auto& sigma : all_perms()) {
      Triangulation candidate;
      auto code = relabel_from(tri, t, sigma, &candidate);
      if (best.empty() || code < best) {
        best = std::move(code);
        result = std::move(candidate);
      }
    }
  return result;
}

Triangulation random_closed_triangulation(int n, std::mt19937_64& rng) {
  std::vector<int> slots(n * 4);
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  Triangulation tri(n);
  for (int i = 0; i < n * 4; i += 2) {
    int a = slots[i], b = slots[i + 1];
    std::vector<Perm4> options;
    for (const auto& p : all_perms())
      if (p[a % 4] == b % 4) options.push_back(p);
    tri.join(a / 4, a % 4, b / 4, options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(rng)]);
  }
  return tri;
}

bool census_admissible(const Triangulation& tri) {
  return tri.size() > 0 && connected(tri) && validate_triangulation(tri).ok();
}

std::vector<CensusEntry> census(std::uint64_t seed, const CensusBounds& bounds) {
  std::vector<CensusEntry> out;
  std::set<std::string> seen;
  auto admit = [&](const Triangulation& tri, bool need_taut) {
    if (!census_admissible(tri)) return;
    if (need_taut && enumerate_taut(tri).empty()) return;
    auto canon = canonical_form(tri);
    auto text = serialize_triangulation(canon);
    if (!seen.insert(text).second) return;
    int index = 0;
    for (const auto& e : out)
      if (e.tri.size() == canon.size()) ++index;
    out.push_back({"t" + std::to_string(canon.size()) + "_" + std::to_string(index), canon});
  };

  std::vector<std::vector<Perm4>> sending(16);
  for (const auto& p : all_perms())
    for (int f = 0; f < 4; ++f) sending[f * 4 + p[f]].push_back(p);
  for (int n = 1; n <= std::min(bounds.exhaustive_tets, bounds.max_tets); ++n) {
    Triangulation tri(n);
    std::vector<bool> used(4 * n, false);
    std::vector<Triangulation> tables;
    all_tables(tri, used, sending, tables);
    for (const auto& t : tables) admit(t, false);
  }
  std::mt19937_64 rng(seed);
  for (int n = bounds.exhaustive_tets + 1; n <= bounds.max_tets; ++n) {
    size_t before = out.size();
    for (int trial = 0; trial < bounds.random_trials && out.size() - before < static_cast<size_t>(bounds.random_keep);
         ++trial)
      admit(random_closed_triangulation(n, rng), true);
  }
  return out;
}

}  // namespace tauttrack
