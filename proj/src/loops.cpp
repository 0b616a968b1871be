#include "tauttrack/loops.hpp"

#include <array>
#include <regex>
#include <stdexcept>

namespace tauttrack {

namespace {

std::string strip_comments(std::string_view text) {
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    out += line;
    out += ' ';
    pos = nl + 1;
  }
  return out;
}

std::vector<std::array<int, 3>> parse_triples(std::string_view text, const std::string& keyword) {
  std::string body = strip_comments(text);
  static const std::regex head(R"(^\s*([a-z]+)\s*)");
  std::smatch m;
  if (!std::regex_search(body, m, head) || m[1] != keyword)
    throw InputError("expected a '" + keyword + "' loop document");
  std::string rest = m.suffix();
  static const std::regex triple(R"(^\(\s*(-?\d+)\s+(-?\d+)\s+(-?\d+)\s*\)\s*)");
  std::vector<std::array<int, 3>> out;
  while (!rest.empty()) {
    if (!std::regex_search(rest, m, triple))
      throw InputError("malformed loop entry near '" + rest.substr(0, 20) + "'");
    out.push_back({std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])});
    rest = m.suffix();
  }
  return out;
}

int common_vertex(int e1, int e2) {
  auto a = model::kEdgeVertices[e1];
  auto b = model::kEdgeVertices[e2];
  for (int u : a)
    for (int v : b)
      if (u == v) return u;
  throw std::logic_error("edges share no vertex");
}

std::array<int, 2> cut_edges(int face, int apex) {
  std::array<int, 2> others{};
  int m = 0;
  for (int v = 0; v < 4; ++v)
    if (v != face && v != apex) others[m++] = v;
  return {model::edge_index(apex, others[0]), model::edge_index(apex, others[1])};
}

void check_arc_range(const Triangulation& tri, const NormalArc& a, int i) {
  auto where = " (arc " + std::to_string(i) + ")";
  if (a.tet < 0 || a.tet >= tri.size()) throw InputError("tetrahedron out of range" + where);
  if (a.face < 0 || a.face > 3) throw InputError("face out of range" + where);
  if (a.apex < 0 || a.apex > 3 || a.apex == a.face) throw InputError("apex must be a vertex of the face" + where);
}

}  // namespace

DualLoop parse_dual_loop(std::string_view text) {
  DualLoop loop;
  for (auto [t, a, b] : parse_triples(text, "dual")) loop.steps.push_back({t, a, b});
  return loop;
}

NormalLoop parse_normal_loop(std::string_view text) {
  NormalLoop loop;
  for (auto [t, f, v] : parse_triples(text, "normal")) loop.arcs.push_back({t, f, v});
  return loop;
}

std::string serialize_loop(const DualLoop& loop) {
  std::string out = "dual";
  for (const auto& s : loop.steps)
    out += " (" + std::to_string(s.tet) + " " + std::to_string(s.face_in) + " " + std::to_string(s.face_out) + ")";
  return out + "\n";
}

std::string serialize_loop(const NormalLoop& loop) {
  std::string out = "normal";
  for (const auto& a : loop.arcs)
    out += " (" + std::to_string(a.tet) + " " + std::to_string(a.face) + " " + std::to_string(a.apex) + ")";
  return out + "\n";
}

std::string loop_kind(std::string_view text) {
  std::string body = strip_comments(text);
  static const std::regex head(R"(^\s*([a-z]+))");
  std::smatch m;
  if (std::regex_search(body, m, head) && (m[1] == "dual" || m[1] == "normal")) return m[1];
  throw InputError("not a loop document");
}

std::vector<Violation> check_vertical(const TautTriangulation& tt, const DualLoop& loop) {
  int n = loop.size();
  if (n == 0) throw InputError("empty loop");
  const auto& tri = tt.tri();
  for (int i = 0; i < n; ++i) {
    const auto& s = loop.steps[i];
    auto where = " (step " + std::to_string(i) + ")";
    if (s.tet < 0 || s.tet >= tri.size()) throw InputError("tetrahedron out of range" + where);
    if (s.face_in < 0 || s.face_in > 3 || s.face_out < 0 || s.face_out > 3) throw InputError("face out of range" + where);
    if (s.face_in == s.face_out) throw InputError("step enters and leaves through the same face" + where);
  }
  for (int i = 0; i < n; ++i) {
    const auto& s = loop.steps[i];
    const auto& next = loop.steps[(i + 1) % n];
    const auto& g = tri.gluing(s.tet, s.face_out);
    if (g.tet != next.tet || g.perm[s.face_out] != next.face_in)
      throw InputError("step " + std::to_string(i) + " is not glued to the next step");
  }
  std::vector<Violation> out;
  for (int i = 0; i < n; ++i) {
    const auto& s = loop.steps[i];
    int a = tt.face_side(s.tet, s.face_in), b = tt.face_side(s.tet, s.face_out);
    if (a == b)
      out.push_back({"does not link equator", "step " + std::to_string(i),
                     "faces " + std::to_string(s.face_in) + " and " + std::to_string(s.face_out) +
                         " share the pi edge " + model::edge_name(tt.equator(s.tet).pi_edges[a])});
  }
  return out;
}

namespace {

std::vector<Crossing> crossings_of(const TautTriangulation& tt, const std::vector<ResolvedArc>& arcs) {
  const auto& comb = tt.comb();
  int n = static_cast<int>(arcs.size());
  std::vector<Crossing> out(n);
  for (int i = 0; i < n; ++i) {
    const auto& a = arcs[i];
    const auto& b = arcs[(i + 1) % n];
    auto from = comb.slot(a.tet, a.face, a.exit_edge);
    auto to = comb.slot(b.tet, b.face, b.entry_edge);
    auto& c = out[i];
    c.edge_class = from.edge_class;
    c.from_position = from.position;
    c.edges_match = from.edge_class == to.edge_class;
    c.from_color = tt.edge_sides(from.edge_class).colors[from.position];
    if (c.edges_match) {
      c.to_position = to.position;
      c.to_color = tt.edge_sides(to.edge_class).colors[to.position];
    }
  }
  return out;
}

}  // namespace

NormalAnalysis analyse_normal_loop(const TautTriangulation& tt, const NormalLoop& loop) {
  int n = loop.size();
  if (n == 0) throw InputError("empty loop");
  const auto& comb = tt.comb();
  for (int i = 0; i < n; ++i) check_arc_range(tt.tri(), loop.arcs[i], i);

  std::vector<std::array<int, 2>> cuts(n);
  for (int i = 0; i < n; ++i) cuts[i] = cut_edges(loop.arcs[i].face, loop.arcs[i].apex);
  auto entry = [&](int i, int o) { return cuts[i][o]; };
  auto exit = [&](int i, int o) { return cuts[i][1 - o]; };
  auto match = [&](int i, int o, int j, int p) {
    return comb.edge_class_of(loop.arcs[i].tet, exit(i, o)) == comb.edge_class_of(loop.arcs[j].tet, entry(j, p));
  };

  auto smooth = [&](int i, int o, int j, int p) {
    if (!match(i, o, j, p)) return false;
    auto from = comb.slot(loop.arcs[i].tet, loop.arcs[i].face, exit(i, o));
    auto to = comb.slot(loop.arcs[j].tet, loop.arcs[j].face, entry(j, p));
    const auto& colors = tt.edge_sides(from.edge_class).colors;
    return colors[from.position] != colors[to.position];
  };

  // Lexicographically first cyclic assignment of directions in which every
  // consecutive pair satisfies `ok`; can[i][o] says o_i..o_{n-1} completes.
  auto solve = [&](auto ok) {
    std::vector<int> orient;
    for (int o0 = 0; o0 < 2 && orient.empty(); ++o0) {
      std::vector<std::array<bool, 2>> can(n);
      for (int o = 0; o < 2; ++o) can[n - 1][o] = ok(n - 1, o, 0, o0);
      for (int i = n - 2; i >= 0; --i)
        for (int o = 0; o < 2; ++o) can[i][o] = (ok(i, o, i + 1, 0) && can[i + 1][0]) || (ok(i, o, i + 1, 1) && can[i + 1][1]);
      if (!can[0][o0]) continue;
      orient.assign(n, 0);
      orient[0] = o0;
      for (int i = 1; i < n; ++i) orient[i] = (ok(i - 1, orient[i - 1], i, 0) && can[i][0]) ? 0 : 1;
    }
    return orient;
  };
  auto orient = solve(smooth);
  if (orient.empty()) orient = solve(match);
  if (orient.empty()) {
    // No consistent direction: follow greedily so mismatches get reported.
    orient.assign(n, 0);
    for (int i = 1; i < n; ++i) orient[i] = match(i - 1, orient[i - 1], i, 0) ? 0 : (match(i - 1, orient[i - 1], i, 1) ? 1 : 0);
  }

  NormalAnalysis out;
  for (int i = 0; i < n; ++i) {
    const auto& a = loop.arcs[i];
    out.arcs.push_back({a.tet, a.face, a.apex, entry(i, orient[i]), exit(i, orient[i])});
  }
  out.crossings = crossings_of(tt, out.arcs);
  for (int i = 0; i < n; ++i) {
    const auto& c = out.crossings[i];
    auto where = "crossing " + std::to_string(i);
    if (!c.edges_match) {
      out.violations.push_back({"edge mismatch", where, "arc " + std::to_string(i) + " leaves through an edge the next arc does not meet"});
    } else if (c.from_color == c.to_color) {
      out.violations.push_back({"not smooth", where,
                                "edge class " + std::to_string(c.edge_class) + " slots " + std::to_string(c.from_position) +
                                    " and " + std::to_string(c.to_position) + " both colored " + side_char(c.from_color)});
    }
  }
  return out;
}

std::vector<Violation> check_normal(const TautTriangulation& tt, const NormalLoop& loop) {
  return analyse_normal_loop(tt, loop).violations;
}

std::string raised_type_name(RaisedType type) {
  static const std::array<const char*, 6> names{"A1", "A2", "A3", "B1", "B2", "C"};
  return names[static_cast<int>(type)];
}

namespace {

struct UpPath {
  std::vector<int> germs;  // from the germ above the slot to the top germ
  int dir = 1;
};

UpPath walk_up(const TransverseTaut& tv, int edge_class, int position) {
  const auto& germs = tv.comb().edges()[edge_class].germs;
  int n = static_cast<int>(germs.size());
  UpPath up;
  int start;
  if (tv.is_lower(germs[position].tet, germs[position].entry_face)) {
    start = position;
  } else {
    start = (position - 1 + n) % n;
    up.dir = -1;
    if (!tv.is_lower(germs[start].tet, germs[start].exit_face)) throw std::logic_error("face slot has no tetrahedron above it");
  }
  up.germs.push_back(start);
  int cur = start;
  while (!tv.tt().taut().is_pi(germs[cur].tet, germs[cur].edge)) {
    cur = (cur + up.dir + n) % n;
    up.germs.push_back(cur);
    if (static_cast<int>(up.germs.size()) > n) throw std::logic_error("no top germ around edge");
  }
  const auto& top = germs[cur];
  if (!tv.is_lower(top.tet, top.entry_face) || !tv.is_lower(top.tet, top.exit_face))
    throw std::logic_error("walk upwards ended at a bottom germ");
  return up;
}

ResolvedArc to_lower_slot(const TransverseTaut& tv, const ResolvedArc& a) {
  if (tv.is_lower(a.tet, a.face)) return a;
  const auto& g = tv.tri().gluing(a.tet, a.face);
  auto map_edge = [&](int e) {
    auto [u, v] = model::kEdgeVertices[e];
    return model::edge_index(g.perm[u], g.perm[v]);
  };
  return {g.tet, g.perm[a.face], g.perm[a.apex], map_edge(a.entry_edge), map_edge(a.exit_edge)};
}

bool share_upper_face(const TransverseTaut& tv, int tet, int x, int y) {
  for (int f = 0; f < 4; ++f)
    if (!tv.is_lower(tet, f) && model::face_contains_edge(f, x) && model::face_contains_edge(f, y)) return true;
  return false;
}

}  // namespace

RaisedCurve raise_loop(const TransverseTaut& tv, const NormalLoop& loop) {
  auto analysis = analyse_normal_loop(tv.tt(), loop);
  if (!analysis.violations.empty())
    throw InputError("loop is not normal: " + analysis.violations.front().location + ", " + analysis.violations.front().detail);
  RaisedCurve curve;
  for (const auto& a : analysis.arcs) curve.gamma.push_back(to_lower_slot(tv, a));
  curve.crossings = crossings_of(tv.tt(), curve.gamma);
  int n = static_cast<int>(curve.gamma.size());
  const auto& comb = tv.comb();

  std::vector<UpPath> from(n), to(n);
  std::vector<bool> merged(n);
  for (int i = 0; i < n; ++i) {
    const auto& c = curve.crossings[i];
    from[i] = walk_up(tv, c.edge_class, c.from_position);
    to[i] = walk_up(tv, c.edge_class, c.to_position);
    if (from[i].germs.back() != to[i].germs.back()) throw std::logic_error("the two sides of a crossing reach different tops");
    merged[i] = from[i].germs.size() == 1 && to[i].germs.size() == 1;
  }

  auto germ = [&](int crossing, int index) -> const EdgeGerm& {
    return comb.edges()[curve.crossings[crossing].edge_class].germs[index];
  };
  auto make = [&](const EdgeGerm& g, int in, int out, RaisedType type) {
    RaisedArc r;
    r.tet = g.tet;
    r.entry_face = in;
    r.entry_lower = tv.is_lower(g.tet, in);
    r.exit_face = out;
    r.exit_lower = tv.is_lower(g.tet, out);
    r.type = type;
    return r;
  };

  auto body = [&](int first, int last) {
    const auto& a = curve.gamma[first];
    const auto& b = curve.gamma[last];
    int before = (first - 1 + n) % n;
    const auto& gin = germ(before, to[before].germs[0]);
    const auto& gout = germ(last, from[last].germs[0]);
    int in = gin.entry_face == a.face ? gin.exit_face : gin.entry_face;
    int out = gout.entry_face == b.face ? gout.exit_face : gout.entry_face;
    RaisedArc r = make(gin, in, out, RaisedType::A3);
    if (first != last) {
      r.lowering = {first, last};
      r.type = share_upper_face(tv, a.tet, a.entry_edge, b.exit_edge) ? RaisedType::A1 : RaisedType::A2;
    } else {
      r.lowering = {first};
      if (r.entry_lower && r.exit_lower) throw std::logic_error("raised arc over a normal arc with two lower ends");
      r.type = (r.entry_lower || r.exit_lower) ? RaisedType::B2 : RaisedType::A3;
    }
    curve.arcs.push_back(r);
  };

  auto crossing_arcs = [&](int i) {
    const auto& up = from[i];
    const auto& down = to[i];
    int r = static_cast<int>(up.germs.size()) - 1;
    int rr = static_cast<int>(down.germs.size()) - 1;
    auto vertex = [&](RaisedArc a) {
      a.vertex_crossing = i;
      curve.arcs.push_back(a);
    };
    for (int m = 1; m < r; ++m) {
      const auto& g = germ(i, up.germs[m]);
      int in = up.dir > 0 ? g.entry_face : g.exit_face;
      vertex(make(g, in, in == g.entry_face ? g.exit_face : g.entry_face, RaisedType::B1));
    }
    if (r > 0 && rr > 0) {
      const auto& g = germ(i, up.germs[r]);
      vertex(make(g, up.dir > 0 ? g.entry_face : g.exit_face, down.dir > 0 ? g.entry_face : g.exit_face, RaisedType::C));
    }
    for (int m = rr - 1; m >= 1; --m) {
      const auto& g = germ(i, down.germs[m]);
      int in = down.dir > 0 ? g.exit_face : g.entry_face;
      vertex(make(g, in, in == g.entry_face ? g.exit_face : g.entry_face, RaisedType::B1));
    }
  };

  for (int i = 0; i < n; ++i) {
    bool absorbed = i > 0 && merged[i - 1];
    if (i == 0 && merged[n - 1])
      body(n - 1, 0);
    else if (!absorbed && !(i == n - 1 && merged[n - 1]))
      body(i, merged[i] ? (i + 1) % n : i);
    crossing_arcs(i);
  }
  for (const auto& a : curve.arcs) {
    int lower = (a.entry_lower ? 1 : 0) + (a.exit_lower ? 1 : 0);
    int want = is_type_a(a.type) ? 0 : (a.type == RaisedType::C ? 2 : 1);
    if (lower != want) throw std::logic_error("raised arc endpoint pattern does not match its type");
  }
  return curve;
}

bool raised_linkage_holds(const Triangulation& tri, const RaisedCurve& curve) {
  int n = static_cast<int>(curve.arcs.size());
  for (int k = 0; k < n; ++k) {
    const auto& a = curve.arcs[k];
    const auto& b = curve.arcs[(k + 1) % n];
    const auto& g = tri.gluing(a.tet, a.exit_face);
    if (g.tet != b.tet || g.perm[a.exit_face] != b.entry_face) return false;
  }
  return n > 0;
}

std::vector<NormalArc> upper_replacement(const TransverseTaut& tv, int tet, int x, int y) {
  const auto& taut = tv.tt().taut();
  if (taut.is_pi(tet, x) || taut.is_pi(tet, y)) throw InputError("replacement endpoints must be equatorial edges");
  if (x == y) return {};
  for (int f = 0; f < 4; ++f)
    if (!tv.is_lower(tet, f) && model::face_contains_edge(f, x) && model::face_contains_edge(f, y))
      return {{tet, f, common_vertex(x, y)}};
  int top = tv.top_edge(tet);
  int ux = -1, uy = -1;
  for (int f = 0; f < 4; ++f) {
    if (tv.is_lower(tet, f)) continue;
    if (model::face_contains_edge(f, x)) ux = f;
    if (model::face_contains_edge(f, y)) uy = f;
  }
  return {{tet, ux, common_vertex(x, top)}, {tet, uy, common_vertex(top, y)}};
}

PushResult push_up(const TransverseTaut& tv, const NormalLoop& loop, int site) {
  auto curve = raise_loop(tv, loop);
  if (site < 0 || site >= static_cast<int>(curve.arcs.size())) throw InputError("site index out of range");
  const auto& arc = curve.arcs[site];
  if (!is_type_a(arc.type)) throw InputError("site " + std::to_string(site) + " is not below a bottom edge (type " + raised_type_name(arc.type) + ")");
  int n = loop.size();
  const auto& first = curve.gamma[arc.lowering.front()];
  const auto& last = curve.gamma[arc.lowering.back()];
  auto replacement = upper_replacement(tv, arc.tet, first.entry_edge, last.exit_edge);

  PushResult res;
  res.tet = arc.tet;
  res.site_type = arc.type;
  res.removed = static_cast<int>(arc.lowering.size());
  res.inserted = static_cast<int>(replacement.size());
  int a = arc.lowering.front();
  if (res.removed == 2 && a == n - 1) {
    // Lowering wraps past the end: rotate so the replacement closes the loop.
    res.loop.arcs.assign(loop.arcs.begin() + 1, loop.arcs.end() - 1);
    res.first_inserted = n - 2;
    res.loop.arcs.insert(res.loop.arcs.end(), replacement.begin(), replacement.end());
  } else {
    res.loop.arcs.assign(loop.arcs.begin(), loop.arcs.begin() + a);
    res.first_inserted = a;
    res.loop.arcs.insert(res.loop.arcs.end(), replacement.begin(), replacement.end());
    res.loop.arcs.insert(res.loop.arcs.end(), loop.arcs.begin() + a + res.removed, loop.arcs.end());
  }
  if (res.loop.arcs.empty()) throw InputError("push would leave an empty loop");
  return res;
}

DualLoop lift_loop(const CoverTriangulation& cover, const DualLoop& loop) {
  DualLoop out;
  int c = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& s : loop.steps) {
      int t = 2 * s.tet + c;
      out.steps.push_back({t, s.face_in, s.face_out});
      c = cover.tri.gluing(t, s.face_out).tet % 2;
    }
    if (c == 0) return out;
  }
  throw std::logic_error("lift did not close after two passes");
}

NormalLoop lift_loop(const TautTriangulation& base, const CoverTriangulation& cover, const NormalLoop& loop) {
  auto analysis = analyse_normal_loop(base, loop);
  if (!analysis.violations.empty()) throw InputError("loop is not normal");
  Combinatorics comb(cover.tri);
  int n = loop.size();
  NormalLoop out;
  int c = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < n; ++i) {
      const auto& a = analysis.arcs[i];
      const auto& b = analysis.arcs[(i + 1) % n];
      int t = 2 * a.tet + c;
      out.arcs.push_back({t, a.face, a.apex});
      int cls = comb.edge_class_of(t, a.exit_edge);
      c = comb.edge_class_of(2 * b.tet, b.entry_edge) == cls ? 0 : 1;
    }
    if (c == 0) return out;
  }
  throw std::logic_error("lift did not close after two passes");
}

}  // namespace tauttrack
