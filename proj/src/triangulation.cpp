#include "tauttrack/triangulation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "tauttrack/union_find.hpp"

namespace tauttrack {

Perm4 Perm4::parse(std::string_view digits) {
  if (digits.size() != 4) throw InputError("permutation must have four digits: '" + std::string(digits) + "'");
  std::array<int, 4> img{};
  unsigned seen = 0;
  for (int i = 0; i < 4; ++i) {
    int d = digits[i] - '0';
    if (d < 0 || d > 3 || (seen & (1u << d))) throw InputError("not a permutation of 0123: '" + std::string(digits) + "'");
    seen |= 1u << d;
    img[i] = d;
  }
  return Perm4(img[0], img[1], img[2], img[3]);
}

Perm4 Perm4::inverse() const {
  std::array<int, 4> inv{};
  for (int i = 0; i < 4; ++i) inv[image_[i]] = i;
  return Perm4(inv[0], inv[1], inv[2], inv[3]);
}

Perm4 Perm4::operator*(const Perm4& rhs) const {
  return Perm4((*this)[rhs[0]], (*this)[rhs[1]], (*this)[rhs[2]], (*this)[rhs[3]]);
}

int Perm4::sign() const {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (image_[i] > image_[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

std::string Perm4::str() const {
  std::string s;
  for (auto v : image_) s.push_back(static_cast<char>('0' + v));
  return s;
}

namespace model {

int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int e = 0; e < 6; ++e)
    if (kEdgeVertices[e][0] == a && kEdgeVertices[e][1] == b) return e;
  throw std::invalid_argument("not a model edge");
}

int shared_edge(int f, int g) {
  if (f == g) throw std::invalid_argument("faces must differ");
  int a = -1, b = -1;
  for (int v = 0; v < 4; ++v) {
    if (v == f || v == g) continue;
    (a < 0 ? a : b) = v;
  }
  return edge_index(a, b);
}

std::string edge_name(int e) {
  return {static_cast<char>('0' + kEdgeVertices[e][0]), static_cast<char>('0' + kEdgeVertices[e][1])};
}

}  // namespace model

void Triangulation::join(int tet, int face, int other, Perm4 perm) {
  gluing(tet, face) = Gluing{other, perm};
  gluing(other, perm[face]) = Gluing{tet, perm.inverse()};
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_index(const std::string& tok, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("expected integer ") + what + ", got '" + tok + "'");
  }
}

}  // namespace

Triangulation parse_gluing_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Triangulation> tri;
  std::set<std::pair<int, int>> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    auto where = " (line " + std::to_string(lineno) + ")";
    if (!tri) {
      if (tok.size() != 2 || tok[0] != "tets") throw InputError("expected header 'tets N'" + where);
      int n = parse_index(tok[1], "tetrahedron count");
      if (n < 0) throw InputError("negative tetrahedron count" + where);
      tri.emplace(n);
      continue;
    }
    if (tok.size() != 6 || tok[0] != "glue" || tok[3] != "->")
      throw InputError("expected 'glue i k -> j pppp'" + where);
    int i = parse_index(tok[1], "tetrahedron");
    int k = parse_index(tok[2], "face");
    int j = parse_index(tok[4], "tetrahedron");
    if (i < 0 || i >= tri->size() || j < 0 || j >= tri->size()) throw InputError("tetrahedron index out of range" + where);
    if (k < 0 || k > 3) throw InputError("face index out of range" + where);
    if (!seen.insert({i, k}).second) throw InputError("face glued twice" + where);
    tri->gluing(i, k) = Gluing{j, Perm4::parse(tok[5])};
  }
  if (!tri) throw InputError("missing header 'tets N'");
  return *tri;
}

namespace {

std::string face_loc(int t, int k) { return "tet " + std::to_string(t) + " face " + std::to_string(k); }

void structural_violations(const Triangulation& tri, std::vector<Violation>& out) {
  for (int t = 0; t < tri.size(); ++t) {
    for (int k = 0; k < 4; ++k) {
      const auto& g = tri.gluing(t, k);
      if (!g.glued()) {
        out.push_back({"unglued face", face_loc(t, k), ""});
        continue;
      }
      int back_face = g.perm[k];
      if (g.tet == t && back_face == k) {
        out.push_back({"involution", face_loc(t, k), "face glued to itself"});
        continue;
      }
      const auto& back = tri.gluing(g.tet, back_face);
      if (!back.glued() || back.tet != t || back.perm != g.perm.inverse())
        out.push_back({"involution", face_loc(t, k),
                       "partner " + face_loc(g.tet, back_face) + " does not glue back by the inverse permutation"});
    }
  }
}

}  // namespace

Triangulation parse_triangulation(std::string_view text) {
  auto tri = parse_gluing_table(text);
  std::vector<Violation> v;
  structural_violations(tri, v);
  if (!v.empty()) throw InputError(v.front().kind + " at " + v.front().location + (v.front().detail.empty() ? "" : ": " + v.front().detail));
  return tri;
}

std::string serialize_triangulation(const Triangulation& tri) {
  std::string out = "tets " + std::to_string(tri.size()) + "\n";
  for (int t = 0; t < tri.size(); ++t)
    for (int k = 0; k < 4; ++k) {
      const auto& g = tri.gluing(t, k);
      if (!g.glued()) continue;
      out += "glue " + std::to_string(t) + " " + std::to_string(k) + " -> " + std::to_string(g.tet) + " " + g.perm.str() + "\n";
    }
  return out;
}

namespace {

// Walk state around an edge: germ (tet, edge) entered through face `in`.
struct WalkState {
  int tet;
  int edge;
  int in;
  friend bool operator==(const WalkState&, const WalkState&) = default;
};

int other_face(int edge, int face) {
  for (int v = 0; v < 4; ++v)
    if (v != face && model::face_contains_edge(v, edge) && v != model::kEdgeVertices[edge][0] &&
        v != model::kEdgeVertices[edge][1])
      return v;
  return -1;
}

WalkState step(const Triangulation& tri, const WalkState& s) {
  int out = other_face(s.edge, s.in);
  const auto& g = tri.gluing(s.tet, out);
  auto [a, b] = model::kEdgeVertices[s.edge];
  return {g.tet, model::edge_index(g.perm[a], g.perm[b]), g.perm[out]};
}

std::vector<EdgeGerm> walk_orbit(const Triangulation& tri, WalkState start, bool& repeated) {
  std::vector<EdgeGerm> germs;
  std::set<std::pair<int, int>> seen;
  repeated = false;
  WalkState s = start;
  do {
    if (seen.insert({s.tet, s.edge}).second)
      germs.push_back({s.tet, s.edge, s.in, other_face(s.edge, s.in)});
    else
      repeated = true;
    s = step(tri, s);
  } while (!(s == start));
  return germs;
}

auto germ_key(const EdgeGerm& g) { return std::tuple(g.tet, g.edge, g.entry_face); }

}  // namespace

Combinatorics::Combinatorics(const Triangulation& tri)
    : germ_class_(tri.size() * 6, -1), face_class_(tri.size() * 4, -1), slots_(tri.size() * 24) {
  for (int t = 0; t < tri.size(); ++t)
    for (int k = 0; k < 4; ++k)
      if (!tri.gluing(t, k).glued()) throw InputError("combinatorics require a closed triangulation");

  for (int t = 0; t < tri.size(); ++t) {
    for (int e = 0; e < 6; ++e) {
      if (germ_class_[t * 6 + e] >= 0) continue;
      auto [a, b] = model::kEdgeVertices[e];
      int c = -1, d = -1;
      for (int v = 0; v < 4; ++v)
        if (v != a && v != b) (c < 0 ? c : d) = v;
      bool rep1 = false, rep2 = false;
      auto fwd = walk_orbit(tri, {t, e, c}, rep1);
      auto bwd = walk_orbit(tri, {t, e, d}, rep2);
      // Orient toward the lexicographically smaller neighbour of the least germ.
      auto key_seq = [](const std::vector<EdgeGerm>& g) {
        std::vector<std::tuple<int, int, int>> k;
        for (size_t i = 1; i < g.size(); ++i) k.emplace_back(g[i].tet, g[i].edge, 0);
        k.emplace_back(germ_key(g[0]));
        return k;
      };
      EdgeClass cls;
      cls.id = static_cast<int>(edges_.size());
      cls.germs = key_seq(bwd) < key_seq(fwd) ? bwd : fwd;
      cls.reversed_self_gluing = rep1 || rep2;
      for (const auto& g : cls.germs) germ_class_[g.tet * 6 + g.edge] = cls.id;
      int n = cls.degree();
      for (int i = 0; i < n; ++i) {
        const auto& g = cls.germs[i];
        slots_[(g.tet * 4 + g.entry_face) * 6 + g.edge] = {cls.id, i};
        slots_[(g.tet * 4 + g.exit_face) * 6 + g.edge] = {cls.id, (i + 1) % n};
      }
      edges_.push_back(std::move(cls));
    }
  }

  for (int t = 0; t < tri.size(); ++t)
    for (int k = 0; k < 4; ++k) {
      if (face_class_[t * 4 + k] >= 0) continue;
      FaceRef rep{t, k};
      FaceRef other = tri.partner(rep);
      int id = static_cast<int>(faces_.size());
      faces_.push_back({id, rep, other});
      face_class_[t * 4 + k] = id;
      face_class_[other.tet * 4 + other.face] = id;
    }
}

EdgeSlot Combinatorics::slot(int tet, int face, int edge) const {
  if (!model::face_contains_edge(face, edge)) throw std::invalid_argument("face does not contain edge");
  return slots_[(tet * 4 + face) * 6 + edge];
}

std::vector<EdgeClass> edge_classes(const Triangulation& tri) { return Combinatorics(tri).edges(); }
std::vector<FaceClass> face_classes(const Triangulation& tri) { return Combinatorics(tri).faces(); }

std::vector<VertexLink> vertex_link_check(const Triangulation& tri) {
  int n = tri.size();
  UnionFind corners(n * 4);
  UnionFind ends(n * 12);  // (tet*6 + edge)*2 + endpoint slot
  for (int t = 0; t < n; ++t)
    for (int k = 0; k < 4; ++k) {
      const auto& g = tri.gluing(t, k);
      if (!g.glued()) continue;
      for (int v = 0; v < 4; ++v)
        if (v != k) corners.unite(t * 4 + v, g.tet * 4 + g.perm[v]);
      for (int e = 0; e < 6; ++e) {
        if (!model::face_contains_edge(k, e)) continue;
        auto [a, b] = model::kEdgeVertices[e];
        int e2 = model::edge_index(g.perm[a], g.perm[b]);
        for (int s = 0; s < 2; ++s) {
          int v = model::kEdgeVertices[e][s];
          int s2 = model::kEdgeVertices[e2][0] == g.perm[v] ? 0 : 1;
          ends.unite((t * 6 + e) * 2 + s, (g.tet * 6 + e2) * 2 + s2);
        }
      }
    }

  std::map<int, VertexLink> links;
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) links[corners.find(t * 4 + v)].triangles++;
  // Each link edge is a glued pair of face corners.
  for (int t = 0; t < n; ++t)
    for (int k = 0; k < 4; ++k)
      for (int v = 0; v < 4; ++v)
        if (v != k) links[corners.find(t * 4 + v)].edges++;
  std::set<int> counted;
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e)
      for (int s = 0; s < 2; ++s) {
        int id = ends.find((t * 6 + e) * 2 + s);
        if (!counted.insert(id).second) continue;
        links[corners.find(t * 4 + model::kEdgeVertices[e][s])].vertices++;
      }

  // Number vertex classes by first appearance.
  std::map<int, int> order;
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) order.emplace(corners.find(t * 4 + v), static_cast<int>(order.size()));
  std::vector<VertexLink> ordered(links.size());
  for (auto& [root, link] : links) {
    link.edges /= 2;
    link.vertex_class = order[root];
    ordered[link.vertex_class] = link;
  }
  return ordered;
}

bool is_orientable(const Triangulation& tri) {
  ParityUnionFind uf(tri.size());
  for (int t = 0; t < tri.size(); ++t)
    for (int k = 0; k < 4; ++k) {
      const auto& g = tri.gluing(t, k);
      if (!g.glued()) continue;
      // Coherent orientations glue by odd permutations.
      if (!uf.unite(t, g.tet, g.perm.sign() > 0 ? 1 : 0)) return false;
    }
  return true;
}

ValidationReport validate_triangulation(const Triangulation& tri) {
  ValidationReport report;
  structural_violations(tri, report.violations);
  if (!report.violations.empty()) return report;
  for (const auto& link : vertex_link_check(tri))
    if (link.euler_characteristic() != 0)
      report.violations.push_back({"non-torus link", "vertex " + std::to_string(link.vertex_class),
                                   "link Euler characteristic " + std::to_string(link.euler_characteristic())});
  for (const auto& e : edge_classes(tri))
    if (e.reversed_self_gluing)
      report.violations.push_back({"reversed edge", "edge class " + std::to_string(e.id),
                                   "edge identified with itself in reverse"});
  report.orientable = is_orientable(tri);
  return report;
}

}  // namespace tauttrack
