#include "tauttrack/corpus.hpp"

#include <cstdlib>
#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>

namespace tauttrack {

std::uint64_t corpus_seed(std::uint64_t fallback) {
  const char* env = std::getenv("TAUTTRACK_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    size_t used = 0;
    auto v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  return fallback;
}

namespace {

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
}

}  // namespace

std::optional<NormalLoop> random_normal_loop(const TautTriangulation& tt, std::mt19937_64& rng, int max_steps) {
  if (tt.size() == 0) return std::nullopt;
  const auto& comb = tt.comb();
  // State: the face slot being entered and the model edge it is entered through.
  using State = std::tuple<int, int, int>;
  std::uniform_int_distribution<int> tet_dist(0, tt.size() - 1), face_dist(0, 3);
  int t = tet_dist(rng), f = face_dist(rng);
  std::vector<int> edges;
  for (int e = 0; e < 6; ++e)
    if (model::face_contains_edge(f, e)) edges.push_back(e);
  State cur{t, f, pick(edges, rng)};

  std::map<State, int> seen;
  std::vector<NormalArc> arcs;
  for (int step = 0; step < max_steps; ++step) {
    if (auto it = seen.find(cur); it != seen.end())
      return NormalLoop{std::vector<NormalArc>(arcs.begin() + it->second, arcs.end())};
    seen[cur] = step;
    auto [tet, face, in_edge] = cur;
    auto [u, v] = model::kEdgeVertices[in_edge];
    int apex = std::uniform_int_distribution<int>(0, 1)(rng) ? u : v;
    int w = 0 + 1 + 2 + 3 - face - u - v;
    int out_edge = model::edge_index(apex, w);
    arcs.push_back({tet, face, apex});
    auto slot = comb.slot(tet, face, out_edge);
    const auto& cls = comb.edges()[slot.edge_class];
    const auto& colors = tt.edge_sides(slot.edge_class).colors;
    std::vector<int> options;
    for (int q = 0; q < cls.degree(); ++q)
      if (colors[q] != colors[slot.position]) options.push_back(q);
    int q = pick(options, rng);
    const auto& g = cls.germs[q];
    cur = {g.tet, g.entry_face, g.edge};
  }
  return std::nullopt;
}

std::optional<DualLoop> random_dual_loop(const TautTriangulation& tt, std::mt19937_64& rng, bool vertical,
                                         int max_steps) {
  if (tt.size() == 0) return std::nullopt;
  std::uniform_int_distribution<int> tet_dist(0, tt.size() - 1), face_dist(0, 3);
  std::pair<int, int> cur{tet_dist(rng), face_dist(rng)};
  std::map<std::pair<int, int>, int> seen;
  std::vector<DualStep> steps;
  for (int step = 0; step < max_steps; ++step) {
    if (auto it = seen.find(cur); it != seen.end())
      return DualLoop{std::vector<DualStep>(steps.begin() + it->second, steps.end())};
    seen[cur] = step;
    auto [tet, in] = cur;
    std::vector<int> outs;
    for (int f = 0; f < 4; ++f)
      if (f != in && (!vertical || tt.face_side(tet, f) != tt.face_side(tet, in))) outs.push_back(f);
    int out = pick(outs, rng);
    steps.push_back({tet, in, out});
    const auto& g = tt.tri().gluing(tet, out);
    cur = {g.tet, g.perm[out]};
  }
  return std::nullopt;
}

std::vector<StructureEntry> census_structures(const std::vector<CensusEntry>& census) {
  std::vector<StructureEntry> out;
  for (const auto& entry : census) {
    auto structures = enumerate_taut(entry.tri);
    for (size_t i = 0; i < structures.size(); ++i) {
      TautTriangulation tt(entry.tri, structures[i]);
      std::optional<TransverseTaut> tv;
      if (auto coor = detect_transverse_taut(tt)) tv.emplace(tt, *coor);
      out.push_back({entry.name + "/" + std::to_string(i), std::move(tt), std::move(tv)});
    }
  }
  return out;
}

std::vector<VerticalCase> vertical_corpus(const std::vector<StructureEntry>& structures, std::uint64_t seed,
                                          const LoopCorpusBounds& bounds) {
  std::mt19937_64 rng(seed);
  std::vector<VerticalCase> out;
  for (size_t s = 0; s < structures.size(); ++s) {
    std::set<std::string> seen;
    for (int i = 0; i < bounds.loops_per_structure; ++i) {
      auto loop = random_dual_loop(structures[s].tt, rng, true, 2 * bounds.max_arcs);
      if (!loop || loop->size() < bounds.min_arcs || loop->size() > bounds.max_arcs) continue;
      if (!seen.insert(serialize_loop(*loop)).second) continue;
      auto diagrams = diagrams_for_boundary(structures[s].tt, boundary_arcs(*loop), nullptr, bounds.diagrams);
      out.push_back({static_cast<int>(s), *loop, std::move(diagrams)});
    }
  }
  return out;
}

std::vector<NormalCase> normal_corpus(const std::vector<StructureEntry>& structures, std::uint64_t seed,
                                      const LoopCorpusBounds& bounds) {
  std::mt19937_64 rng(seed);
  std::vector<NormalCase> out;
  for (size_t s = 0; s < structures.size(); ++s) {
    if (!structures[s].tv) continue;
    const auto& tv = *structures[s].tv;
    std::set<std::string> seen;
    for (int i = 0; i < bounds.loops_per_structure; ++i) {
      auto loop = random_normal_loop(tv.tt(), rng, 3 * bounds.max_arcs);
      if (!loop) continue;
      auto raised = raise_loop(tv, *loop);
      int n = static_cast<int>(raised.arcs.size());
      if (n < bounds.min_arcs || n > bounds.max_arcs) continue;
      if (bounds.need_type_c && std::none_of(raised.arcs.begin(), raised.arcs.end(),
                                             [](const RaisedArc& a) { return a.type == RaisedType::C; }))
        continue;
      if (!seen.insert(serialize_loop(*loop)).second) continue;
      auto diagrams = diagrams_for_boundary(tv.tt(), boundary_arcs(raised), &tv, bounds.diagrams);
      out.push_back({static_cast<int>(s), *loop, std::move(raised), std::move(diagrams)});
    }
  }
  return out;
}

}  // namespace tauttrack
