#include "tauttrack/taut.hpp"

#include <sstream>

namespace tauttrack {

namespace {
constexpr std::array<const char*, 3> kPairNames{"01|23", "02|13", "03|12"};
}

std::string pi_pair_name(int pair) { return kPairNames.at(pair); }

int parse_pi_pair(std::string_view name) {
  for (int p = 0; p < 3; ++p)
    if (name == kPairNames[p]) return p;
  throw InputError("unknown pi pair '" + std::string(name) + "'");
}

TautStructure parse_taut(std::string_view text, int tet_count) {
  TautStructure taut;
  taut.pi_pair.assign(tet_count, -1);
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw, idx, pair, extra;
    if (!(ls >> kw)) continue;
    auto where = " (line " + std::to_string(lineno) + ")";
    if (kw != "taut" || !(ls >> idx >> pair) || (ls >> extra)) throw InputError("expected 'taut i P'" + where);
    int t = -1;
    try {
      t = std::stoi(idx);
    } catch (const std::exception&) {
      throw InputError("bad tetrahedron index" + where);
    }
    if (t < 0 || t >= tet_count) throw InputError("tetrahedron index out of range" + where);
    if (taut.pi_pair[t] >= 0) throw InputError("tetrahedron assigned twice" + where);
    taut.pi_pair[t] = parse_pi_pair(pair);
  }
  for (int t = 0; t < tet_count; ++t)
    if (taut.pi_pair[t] < 0) throw InputError("tetrahedron " + std::to_string(t) + " has no pi pair");
  return taut;
}

std::string serialize_taut(const TautStructure& taut) {
  std::string out;
  for (int t = 0; t < taut.size(); ++t) out += "taut " + std::to_string(t) + " " + pi_pair_name(taut.pi_pair[t]) + "\n";
  return out;
}

namespace {

std::vector<EdgeAngleFailure> check_counts(const Combinatorics& comb, const TautStructure& cand) {
  std::vector<EdgeAngleFailure> out;
  for (const auto& cls : comb.edges()) {
    int pi = 0;
    for (const auto& g : cls.germs) pi += cand.is_pi(g.tet, g.edge) ? 1 : 0;
    if (pi != 2) out.push_back({cls.id, pi});
  }
  return out;
}

}  // namespace

std::vector<EdgeAngleFailure> verify_taut(const Triangulation& tri, const TautStructure& cand) {
  if (cand.size() != tri.size()) throw InputError("taut structure size does not match triangulation");
  for (int p : cand.pi_pair)
    if (p < 0 || p > 2) throw InputError("pi pair out of range");
  return check_counts(Combinatorics(tri), cand);
}

std::vector<TautStructure> enumerate_taut(const Triangulation& tri) {
  Combinatorics comb(tri);
  int n = tri.size();
  int classes = static_cast<int>(comb.edges().size());
  std::vector<int> pi(classes, 0);
  std::vector<int> open(classes, 0);  // germs in unassigned tetrahedra
  for (const auto& cls : comb.edges()) open[cls.id] = cls.degree();

  std::vector<TautStructure> out;
  TautStructure cur{std::vector<int>(n, 0)};

  auto feasible = [&](int t) {
    for (int e = 0; e < 6; ++e) {
      int c = comb.edge_class_of(t, e);
      if (pi[c] > 2 || pi[c] + open[c] < 2) return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, int t) -> void {
    if (t == n) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e < 6; ++e) open[comb.edge_class_of(t, e)]--;
    for (int p = 0; p < 3; ++p) {
      cur.pi_pair[t] = p;
      pi[comb.edge_class_of(t, p)]++;
      pi[comb.edge_class_of(t, model::opposite_edge(p))]++;
      if (feasible(t)) self(self, t + 1);
      pi[comb.edge_class_of(t, p)]--;
      pi[comb.edge_class_of(t, model::opposite_edge(p))]--;
    }
    for (int e = 0; e < 6; ++e) open[comb.edge_class_of(t, e)]++;
  };
  if (n == 0) return {TautStructure{}};
  recurse(recurse, 0);
  return out;
}

namespace {

Equator make_equator(const TautStructure& taut, int tet) {
  Equator eq;
  eq.tet = tet;
  int p = taut.pi_pair[tet];
  eq.pi_edges = {p, model::opposite_edge(p)};
  auto [a, b] = model::kEdgeVertices[p];
  auto [c, d] = model::kEdgeVertices[model::opposite_edge(p)];
  eq.cycle = {model::edge_index(a, c), model::edge_index(c, b), model::edge_index(b, d), model::edge_index(d, a)};
  for (int f = 0; f < 4; ++f) eq.side[f] = model::face_contains_edge(f, p) ? 0 : 1;
  return eq;
}

}  // namespace

Equator equator_and_sides(const Triangulation& tri, const TautStructure& taut, int tet) {
  if (!verify_taut(tri, taut).empty()) throw InputError("unverified taut structure");
  if (tet < 0 || tet >= tri.size()) throw InputError("tetrahedron index out of range");
  return make_equator(taut, tet);
}

std::vector<Side> flip_coloring(const std::vector<bool>& pi_pattern) {
  std::vector<Side> colors(pi_pattern.size());
  if (colors.empty()) return colors;
  colors[0] = Side::L;
  for (size_t i = 1; i < colors.size(); ++i) colors[i] = pi_pattern[i - 1] ? flip(colors[i - 1]) : colors[i - 1];
  return colors;
}

EdgeSides edge_branch_sides(const Triangulation& tri, const TautStructure& taut, const EdgeClass& edge) {
  if (!verify_taut(tri, taut).empty()) throw InputError("unverified taut structure");
  std::vector<bool> pattern;
  for (const auto& g : edge.germs) pattern.push_back(taut.is_pi(g.tet, g.edge));
  return {edge.id, flip_coloring(pattern)};
}

TautTriangulation::TautTriangulation(Triangulation tri, TautStructure taut)
    : tri_(std::move(tri)), taut_(std::move(taut)), comb_(tri_) {
  if (taut_.size() != tri_.size()) throw InputError("taut structure size does not match triangulation");
  if (!check_counts(comb_, taut_).empty()) throw InputError("unverified taut structure");
  for (int t = 0; t < tri_.size(); ++t) equators_.push_back(make_equator(taut_, t));
  for (const auto& cls : comb_.edges()) {
    std::vector<bool> pattern;
    for (const auto& g : cls.germs) pattern.push_back(taut_.is_pi(g.tet, g.edge));
    sides_.push_back({cls.id, flip_coloring(pattern)});
  }
}

Side TautTriangulation::slot_color(int tet, int face, int edge) const {
  auto s = comb_.slot(tet, face, edge);
  return sides_.at(s.edge_class).colors.at(s.position);
}

}  // namespace tauttrack
