#include "tauttrack/transverse.hpp"

#include <set>
#include <sstream>

#include "tauttrack/union_find.hpp"

namespace tauttrack {

bool points_into(const Combinatorics& comb, const Coorientation& coor, FaceRef f) {
  int cls = comb.face_class_of(f);
  bool rep = comb.faces()[cls].rep == f;
  return rep ? coor.sign[cls] < 0 : coor.sign[cls] > 0;
}

Coorientation parse_coorientation(std::string_view text, const Combinatorics& comb) {
  int n = static_cast<int>(comb.faces().size());
  Coorientation coor{std::vector<int>(n, 0)};
  int tets = n / 2;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw, s, extra;
    int t = -1, k = -1;
    if (!(ls >> kw)) continue;
    auto where = " (line " + std::to_string(lineno) + ")";
    if (kw != "coor" || !(ls >> t >> k >> s) || (ls >> extra) || (s != "+" && s != "-"))
      throw InputError("expected 'coor i k +|-'" + where);
    if (t < 0 || t >= tets || k < 0 || k > 3) throw InputError("face out of range" + where);
    int cls = comb.face_class_of({t, k});
    if (coor.sign[cls] != 0) throw InputError("face class given twice" + where);
    int out = s == "+" ? 1 : -1;
    coor.sign[cls] = comb.faces()[cls].rep == FaceRef{t, k} ? out : -out;
  }
  for (int c = 0; c < n; ++c)
    if (coor.sign[c] == 0) throw InputError("face class " + std::to_string(c) + " has no co-orientation");
  return coor;
}

std::string serialize_coorientation(const Coorientation& coor, const Combinatorics& comb) {
  std::string out;
  for (const auto& fc : comb.faces())
    out += "coor " + std::to_string(fc.rep.tet) + " " + std::to_string(fc.rep.face) + " " +
           (coor.sign[fc.id] > 0 ? "+" : "-") + "\n";
  return out;
}

std::vector<Violation> verify_coorientation(const TautTriangulation& tt, const Coorientation& coor) {
  const auto& comb = tt.comb();
  if (coor.size() != static_cast<int>(comb.faces().size())) throw InputError("co-orientation size mismatch");
  std::vector<Violation> out;
  for (int t = 0; t < tt.size(); ++t)
    for (int f = 0; f < 4; ++f)
      for (int g = f + 1; g < 4; ++g) {
        int e = model::shared_edge(f, g);
        bool equatorial = !tt.taut().is_pi(t, e);
        bool exactly_one = points_into(comb, coor, {t, f}) != points_into(comb, coor, {t, g});
        if (equatorial != exactly_one)
          out.push_back({"tetrahedron edge", "tet " + std::to_string(t) + " edge " + model::edge_name(e),
                         equatorial ? "equatorial edge but co-orientations agree"
                                    : "pi edge but exactly one co-orientation points in"});
      }
  for (const auto& cls : comb.edges()) {
    int n = cls.degree();
    int changes = 0;
    for (int i = 0; i < n; ++i) {
      const auto& a = cls.germs[i];
      const auto& b = cls.germs[(i + 1) % n];
      bool fwd_a = points_into(comb, coor, {a.tet, a.entry_face});
      bool fwd_b = points_into(comb, coor, {b.tet, b.entry_face});
      if (fwd_a != fwd_b) ++changes;
    }
    if (changes != 2)
      out.push_back({"edge class", "edge class " + std::to_string(cls.id),
                     "co-orientation changes direction " + std::to_string(changes) + " times"});
  }
  return out;
}

PiLabelling PiLabelling::lexicographic(const TautStructure& taut) {
  PiLabelling l;
  for (int p : taut.pi_pair) l.order.push_back({p, model::opposite_edge(p)});
  return l;
}

namespace {

// Whether face `face` of copy `copy` (0 = t', 1 = t'') points into the copy.
bool copy_points_in(const PiLabelling& l, int tet, int copy, int face) {
  return model::face_contains_edge(face, l.order[tet][copy]);
}

}  // namespace

CoverTriangulation build_double_cover(const TautTriangulation& tt, const PiLabelling& labelling) {
  int n = tt.size();
  if (static_cast<int>(labelling.order.size()) != n) throw InputError("labelling size mismatch");
  for (int t = 0; t < n; ++t) {
    int p = tt.taut().pi_pair[t];
    std::set<int> want{p, model::opposite_edge(p)};
    std::set<int> got(labelling.order[t].begin(), labelling.order[t].end());
    if (want != got) throw InputError("labelling of tetrahedron " + std::to_string(t) + " is not its pi edges");
  }
  CoverTriangulation cover;
  cover.tri = Triangulation(2 * n);
  cover.taut.pi_pair.resize(2 * n);
  cover.base.resize(2 * n);
  for (int t = 0; t < n; ++t)
    for (int c = 0; c < 2; ++c) {
      cover.taut.pi_pair[2 * t + c] = tt.taut().pi_pair[t];
      cover.base[2 * t + c] = t;
    }
  for (int t = 0; t < n; ++t)
    for (int k = 0; k < 4; ++k) {
      const auto& g = tt.tri().gluing(t, k);
      int l = g.perm[k];
      for (int c = 0; c < 2; ++c) {
        bool in = copy_points_in(labelling, t, c, k);
        // The glued copy must see the same co-orientation, i.e. pointing out.
        int target = copy_points_in(labelling, g.tet, 0, l) != in ? 0 : 1;
        cover.tri.gluing(2 * t + c, k) = Gluing{2 * g.tet + target, g.perm};
      }
    }
  Combinatorics comb(cover.tri);
  cover.coor.sign.resize(comb.faces().size());
  for (const auto& fc : comb.faces()) {
    int t = fc.rep.tet;
    bool in = copy_points_in(labelling, t / 2, t % 2, fc.rep.face);
    cover.coor.sign[fc.id] = in ? -1 : 1;
  }
  UnionFind uf(2 * n);
  for (int t = 0; t < 2 * n; ++t)
    for (int k = 0; k < 4; ++k) uf.unite(t, cover.tri.gluing(t, k).tet);
  cover.component.resize(2 * n);
  std::vector<int> label(2 * n, -1);
  for (int t = 0; t < 2 * n; ++t) {
    int r = uf.find(t);
    if (label[r] < 0) label[r] = cover.component_count++;
    cover.component[t] = label[r];
  }
  return cover;
}

std::optional<Coorientation> detect_transverse_taut(const TautTriangulation& tt) {
  auto labelling = PiLabelling::lexicographic(tt.taut());
  auto cover = build_double_cover(tt, labelling);
  int n = tt.size();
  for (int t = 0; t < n; ++t)
    if (cover.component[2 * t] == cover.component[2 * t + 1]) return std::nullopt;
  // Keep, per connected piece, the cover component holding t' of its first tetrahedron.
  std::vector<int> keep_copy(n, -1);
  std::vector<bool> kept(cover.component_count, false);
  for (int t = 0; t < n; ++t) {
    if (!kept[cover.component[2 * t]] && !kept[cover.component[2 * t + 1]]) kept[cover.component[2 * t]] = true;
    keep_copy[t] = kept[cover.component[2 * t]] ? 0 : 1;
  }
  Coorientation coor;
  for (const auto& fc : tt.comb().faces()) {
    int t = fc.rep.tet;
    coor.sign.push_back(copy_points_in(labelling, t, keep_copy[t], fc.rep.face) ? -1 : 1);
  }
  return coor;
}

std::optional<Coorientation> solve_coorientation_parity(const TautTriangulation& tt) {
  int n = tt.size();
  // x_t = 0: lower faces are those containing the first pi edge.
  auto first_in = [&](int t, int k) { return model::face_contains_edge(k, tt.taut().pi_pair[t]) ? 1 : 0; };
  ParityUnionFind uf(n);
  for (int t = 0; t < n; ++t)
    for (int k = 0; k < 4; ++k) {
      const auto& g = tt.tri().gluing(t, k);
      int l = g.perm[k];
      // into(t,k) xor into(j,l) == 1
      if (!uf.unite(t, g.tet, 1 ^ first_in(t, k) ^ first_in(g.tet, l))) return std::nullopt;
    }
  // Normalise so the first tetrahedron of each piece takes x = 0.
  std::vector<int> x(n), root_flip(n, -1);
  for (int t = 0; t < n; ++t) {
    auto [root, parity] = uf.find(t);
    if (root_flip[root] < 0) root_flip[root] = parity;
    x[t] = parity ^ root_flip[root];
  }
  Coorientation coor;
  for (const auto& fc : tt.comb().faces()) {
    bool in = (first_in(fc.rep.tet, fc.rep.face) ^ x[fc.rep.tet]) != 0;
    coor.sign.push_back(in ? -1 : 1);
  }
  return coor;
}

TransverseTaut::TransverseTaut(TautTriangulation tt, Coorientation coor)
    : tt_(std::move(tt)), coor_(std::move(coor)), lower_(tt_.size() * 4), bottom_(tt_.size()) {
  auto violations = verify_coorientation(tt_, coor_);
  if (!violations.empty())
    throw InputError("co-orientation is not transverse taut: " + violations.front().location + ", " +
                     violations.front().detail);
  for (int t = 0; t < tt_.size(); ++t) {
    int lo[2], m = 0;
    for (int k = 0; k < 4; ++k) {
      lower_[t * 4 + k] = points_into(tt_.comb(), coor_, {t, k});
      if (lower_[t * 4 + k]) lo[m++] = k;
    }
    bottom_[t] = model::shared_edge(lo[0], lo[1]);
  }
}

FaceRef TransverseTaut::above(int face_class) const {
  const auto& fc = comb().faces()[face_class];
  return is_lower(fc.rep.tet, fc.rep.face) ? fc.rep : fc.partner;
}

FaceRef TransverseTaut::below(int face_class) const {
  const auto& fc = comb().faces()[face_class];
  return is_lower(fc.rep.tet, fc.rep.face) ? fc.partner : fc.rep;
}

}  // namespace tauttrack
