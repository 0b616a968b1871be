#include "tauttrack/surgery.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tauttrack {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

std::string arc_name(int k) { return "d" + std::to_string(k); }

std::optional<BigonTag> bigon_tag(const OrientationReport& orient, int region) {
  for (const auto& tag : orient.bigons)
    if (tag.region == region) return tag;
  return std::nullopt;
}

// The walk of a one-arc disk region, rotated to start at its boundary arc.
std::vector<int> walk_from_arc(const DiskDiagram& dd, int region) {
  const auto& walks = dd.walks(region);
  const std::string& name = dd.region_name(region);
  if (walks.size() != 1) throw InputError(name + " is not a disk");
  std::vector<int> w = walks[0];
  if (std::count_if(w.begin(), w.end(), [&](int d) { return dd.is_arc_dart(d); }) != 1)
    throw InputError(name + " does not meet the boundary in exactly one arc");
  std::rotate(w.begin(), std::find_if(w.begin(), w.end(), [&](int d) { return dd.is_arc_dart(d); }), w.end());
  return w;
}

DiagramSpec shift_stops(DiagramSpec spec, int shift) {
  const int n = spec.stops;
  if (n == 0 || mod(shift, n) == 0) return spec;
  for (auto& b : spec.branches)
    for (VertexRef* v : {&b.v, &b.w})
      if (v->stop) v->index = mod(v->index + shift, n);
  for (auto& r : spec.regions)
    for (auto& walk : r.walks)
      for (auto& item : walk)
        if (item.kind == WalkItem::Kind::Arc) item.index = mod(item.index + shift, n);
  return spec;
}

// Angle of the wedge between x and sigma(x), in quarter turns.
int wedge_angle(const DiskDiagram& dd, int x) {
  switch (dd.passage_kind(dd.rev(x), dd.sigma(x))) {
    case PassageKind::Cusp: return 0;
    case PassageKind::Corner: return 1;
    case PassageKind::Smooth: return 2;
  }
  return 2;
}

// A full region, or the part of one near a single glued branch.
struct Piece {
  int region = 0;
  bool full = true;
  std::vector<int> wedges;
  int glue_branch = -1;
  int extra_corners = 0;
};

Piece full_piece(const DiskDiagram& dd, int region) {
  Piece p{region, true, {}, -1, 0};
  for (int x = 0; x < dd.dart_count(); ++x)
    if (dd.region_of(dd.rev(x)) == region) p.wedges.push_back(x);
  return p;
}

Piece quad_piece(const DiskDiagram& dd, const Quadrilateral& q) {
  Piece p{q.region, false, {}, q.branch, 2};
  for (int x : dd.vertex_darts(q.stop))
    if (dd.region_of(dd.rev(x)) == q.region) {
      p.wedges.push_back(x);
      break;
    }
  for (int x : dd.vertex_darts(q.cusp_vertex))
    if (dd.region_of(dd.rev(x)) == q.region &&
        (dd.branch_of(x) == q.branch || dd.branch_of(dd.sigma(x)) == q.branch) &&
        dd.passage_kind(dd.rev(x), dd.sigma(x)) == PassageKind::Cusp) {
      p.wedges.push_back(x);
      break;
    }
  return p;
}

// Corners, cusps and Euler characteristic of a union of pieces, found by
// summing wedge angles around each vertex between unglued branches.
UnionShape union_shape(const DiskDiagram& dd, const std::vector<Piece>& pieces) {
  UnionShape u;
  u.pieces = static_cast<int>(pieces.size());
  std::map<int, int> owner;
  std::set<int> vertices;
  for (int i = 0; i < u.pieces; ++i) {
    for (int x : pieces[i].wedges) {
      if (!owner.emplace(x, i).second) ++u.overlaps;
      vertices.insert(dd.tail(x));
    }
    u.corners += pieces[i].extra_corners;
  }
  auto glued = [&](int x) {
    // Across dart x, between the wedge ending at x and the one starting at it.
    int before = dd.rev(dd.prev(x));
    auto a = owner.find(before), b = owner.find(x);
    if (a == owner.end() || b == owner.end() || !dd.is_branch_dart(x)) return false;
    for (int i : {a->second, b->second})
      if (!pieces[i].full && pieces[i].glue_branch != dd.branch_of(x)) return false;
    return true;
  };
  int interior = 0;
  for (int v : vertices) {
    const auto& ds = dd.vertex_darts(v);
    const int deg = static_cast<int>(ds.size());
    int start = -1;
    for (int i = 0; i < deg && start < 0; ++i)
      if (!glued(ds[i])) start = i;
    if (start < 0) {
      ++interior;
      continue;
    }
    int run = -1;
    auto close = [&] {
      if (run == 0) ++u.cusps;
      else if (run == 1) ++u.corners;
      else if (run == 3) ++u.inward_corners;
      else if (run >= 4) ++u.overlaps;
      run = -1;
    };
    for (int j = 0; j < deg; ++j) {
      int x = ds[(start + j) % deg];
      if (!glued(x)) close();
      if (owner.count(x)) run = (run < 0 ? 0 : run) + wedge_angle(dd, x);
    }
    close();
  }
  int edges = 0;
  for (int b = 0; b < dd.branch_count(); ++b)
    if (glued(2 * b) || glued(2 * b + 1)) ++edges;
  u.euler = u.pieces - edges + interior;
  u.index = index_q(u.euler, u.cusps, u.corners, u.inward_corners);
  return u;
}

}  // namespace

// ---------------------------------------------------------------------------

MinBigonPush push_min_bigon(const DiskDiagram& dd, int region, const TransverseTaut& tv, const NormalLoop* gamma) {
  if (region < 0 || region >= dd.region_count()) throw InputError("region index out of range");
  const std::string& name = dd.region_name(region);
  auto orient = pull_back_orientation(dd, tv);
  auto tag = bigon_tag(orient, region);
  if (!tag || tag->max) throw InputError(name + " is not a min-bigon");

  auto w = walk_from_arc(dd, region);
  const int k = dd.arc_of(w[0]);
  const std::vector<int> side(w.begin() + 1, w.end());
  const int m = static_cast<int>(side.size());
  const int n = dd.stop_count();
  const int nb = dd.branch_count();

  std::vector<bool> gone_branch(nb, false), gone_vertex(dd.vertex_count(), false);
  for (int e : side) {
    if (dd.region_of(dd.rev(e)) == region) throw InputError(name + " lies on both sides of " + dd.dart_name(e));
    gone_branch[dd.branch_of(e)] = true;
  }
  gone_vertex[k] = gone_vertex[(k + 1) % n] = true;
  for (int j = 0; j + 1 < m; ++j) {
    int x = dd.head(side[j]);
    if (!dd.is_switch(x) || gone_vertex[x]) throw InputError(name + " meets " + dd.vertex_name(x) + " twice");
    gone_vertex[x] = true;
  }

  // New boundary order: surviving stops after k+1, then the branch ends met
  // along the reversed track side.
  struct NewStop {
    int old_stop = -1;
    BranchEnd end;
  };
  std::vector<NewStop> order;
  for (int i = 2; i < n; ++i) order.push_back({mod(k + i, n), {}});
  for (int j = m - 1; j >= 1; --j)
    for (int o = dd.sigma(side[j]); o != dd.rev(side[j - 1]); o = dd.sigma(o)) order.push_back({-1, dd.leaving_end(o)});
  const int n2 = static_cast<int>(order.size());
  int first = 0;
  for (int i = 0; i < n - 2; ++i)
    if (order[i].old_stop < order[first].old_stop) first = i;
  std::map<int, int> stop_of_old;
  std::map<BranchEnd, int> stop_of_end;
  for (int i = 0; i < n2; ++i) {
    int index = mod(i - first, n2);
    if (order[i].old_stop >= 0) stop_of_old[order[i].old_stop] = index;
    else stop_of_end[order[i].end] = index;
  }

  std::vector<int> new_branch(nb, -1), new_switch(dd.switch_count(), -1);
  for (int b = 0, c = 0; b < nb; ++b)
    if (!gone_branch[b]) new_branch[b] = c++;
  for (int s = 0, c = 0; s < dd.switch_count(); ++s)
    if (!gone_vertex[n + s]) new_switch[s] = c++;

  const auto& old = dd.spec();
  DiagramSpec spec;
  spec.stops = n2;
  spec.boundary_loop = old.boundary_loop;
  for (int s = 0; s < dd.switch_count(); ++s) {
    if (gone_vertex[n + s]) continue;
    SwitchSpec sw{old.switches[s].name, {}};
    for (int t = 0; t < 2; ++t)
      for (const auto& e : old.switches[s].sides[t]) sw.sides[t].push_back({new_branch[e.branch], e.end});
    spec.switches.push_back(std::move(sw));
  }
  auto endpoint = [&](int b, int end) -> VertexRef {
    int v = dd.tail(2 * b + end);
    if (dd.is_stop(v)) return {true, stop_of_old.at(v)};
    if (gone_vertex[v]) return {true, stop_of_end.at({b, end})};
    return {false, new_switch[v - n]};
  };
  for (int b = 0; b < nb; ++b) {
    if (gone_branch[b]) continue;
    BranchSpec br = old.branches[b];
    br.v = endpoint(b, 0);
    br.w = endpoint(b, 1);
    spec.branches.push_back(std::move(br));
  }

  auto boundaryish = [&](int d) { return !dd.is_branch_dart(d) || gone_branch[dd.branch_of(d)]; };
  auto stop_at_head = [&](int d) {
    int v = dd.head(d);
    return dd.is_stop(v) ? stop_of_old.at(v) : stop_of_end.at(dd.leaving_end(dd.rev(d)));
  };
  for (int r = 0; r < dd.region_count(); ++r) {
    if (r == region) continue;
    RegionSpec rs{old.regions[r].name, {}, old.regions[r].tet};
    for (const auto& walk : dd.walks(r)) {
      const int len = static_cast<int>(walk.size());
      int s0 = static_cast<int>(std::find_if_not(walk.begin(), walk.end(), boundaryish) - walk.begin());
      std::vector<WalkItem> items;
      if (s0 == len) {
        items.push_back({WalkItem::Kind::Circle, 0});
      } else {
        for (int j = 0; j < len; ++j) {
          int d = walk[(s0 + j) % len];
          if (boundaryish(d)) continue;
          items.push_back({d % 2 == 0 ? WalkItem::Kind::Forward : WalkItem::Kind::Backward, new_branch[dd.branch_of(d)]});
          int nd = walk[(s0 + j + 1) % len];
          if (boundaryish(nd) || gone_vertex[dd.head(d)]) items.push_back({WalkItem::Kind::Arc, stop_at_head(d)});
        }
      }
      rs.walks.push_back(std::move(items));
    }
    spec.regions.push_back(std::move(rs));
  }

  MinBigonPush out{DiskDiagram::build(spec, &tv.tt()), k, std::nullopt, false};
  if (gamma != nullptr) {
    auto pushed = push_up(tv, *gamma, k);
    out.loop = pushed.loop;
    std::vector<BoundaryArc> arcs;
    try {
      arcs = boundary_arcs(raise_loop(tv, pushed.loop));
    } catch (const InputError&) {
      return out;
    }
    if (static_cast<int>(arcs.size()) != n2 || n2 == 0) return out;
    for (int r = 0; r < n2; ++r) {
      std::vector<BoundaryArc> rotated(n2);
      for (int i = 0; i < n2; ++i) rotated[i] = arcs[(i + r) % n2];
      if (check_boundary(out.diagram, rotated).empty()) {
        if (r != 0) out.diagram = DiskDiagram::build(shift_stops(spec, r), &tv.tt());
        out.boundary_consistent = true;
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<int> TrigonChain::trigons() const {
  std::vector<int> out;
  for (int i = 0; i + 1 < end; ++i) out.push_back(links[i].region);
  return out;
}

MaxBigonReport max_bigon_surgery(const DiskDiagram& dd, int region, const TransverseTaut& tv,
                                 const RaisedCurve& curve) {
  if (region < 0 || region >= dd.region_count()) throw InputError("region index out of range");
  const std::string& name = dd.region_name(region);
  auto orient = pull_back_orientation(dd, tv);
  auto tag = bigon_tag(orient, region);
  if (!tag || !tag->max) throw InputError(name + " is not a max-bigon");
  const int n = dd.stop_count();
  if (static_cast<int>(curve.arcs.size()) != n)
    throw InputError("raised curve has " + std::to_string(curve.arcs.size()) + " arcs for " + std::to_string(n) +
                     " stops");
  const auto& comb = tv.comb();

  MaxBigonReport rep;
  rep.region = region;
  auto fail = [&](const std::string& kind, const std::string& where, const std::string& detail) {
    rep.violations.push_back({kind, where, detail});
  };
  auto edge_text = [](int tet, int e) { return "edge " + model::edge_name(e) + " of tet " + std::to_string(tet); };

  auto w = walk_from_arc(dd, region);
  const int k0 = rep.arc = dd.arc_of(w[0]);
  const int t0 = dd.region_tet(region);
  const auto& a0 = curve.arcs[k0];
  if (a0.type != RaisedType::C)
    fail("Claim Base", arc_name(k0), "raised arc is type " + raised_type_name(a0.type) + ", expected C");
  if (w.size() != 3) {
    fail("Claim Base", name, "track side meets " + std::to_string(static_cast<int>(w.size()) - 2) +
                                 " switches, expected one");
  } else {
    rep.base_switch = dd.head(w[1]);
    FaceRef f = dd.seen(w[1]), g = dd.seen(w[2]);
    LoweringTrace tr{k0, "c'0 at " + dd.vertex_name(rep.base_switch), false, ""};
    if (f.face == g.face) {
      tr.detail = "both sides of the switch see face " + std::to_string(f.face);
    } else {
      int e = model::shared_edge(f.face, g.face);
      int cls = comb.edge_class_of(t0, e);
      bool bottom = e == tv.bottom_edge(t0);
      bool paired = a0.vertex_crossing >= 0 && curve.crossings[a0.vertex_crossing].edge_class == cls;
      tr.ok = bottom && paired;
      tr.detail = "switch on " + edge_text(t0, e) + (bottom ? " (bottom edge)" : "") +
                  (paired ? ", same edge class as the lowering vertex" : ", lowering vertex on another edge");
      if (!bottom)
        fail("Claim Base", dd.vertex_name(rep.base_switch),
             "switch lies on " + edge_text(t0, e) + ", not the bottom edge " + model::edge_name(tv.bottom_edge(t0)));
      else if (!paired)
        fail("lowering trace", dd.vertex_name(rep.base_switch), "the lowering of " + arc_name(k0) + " is not on edge class " + std::to_string(cls));
    }
    rep.traces.push_back(tr);
  }

  auto agrees = [&](int stop) { return !points_left(orient, dd.stop_dart(stop)); };

  auto walk_chain = [&](bool right) {
    TrigonChain ch;
    ch.right = right;
    const std::string label = right ? "right chain" : "left chain";
    int stop_prev = right ? k0 : (k0 + 1) % n;
    int b_prev = ch.b0 = dd.branch_of(dd.stop_dart(stop_prev));
    bool agree_prev = agrees(stop_prev);
    for (int i = 1;; ++i) {
      const int arc = mod(right ? k0 - i : k0 + i, n);
      const int a = dd.arc_dart(arc);
      const int r = dd.region_of(a);
      if (i >= n || r == region) {
        fail("Claim Induct", label, "the chain returns to " + name + " without reaching a negative region");
        return ch;
      }
      ChainLink link;
      link.region = r;
      link.arc = arc;
      link.stop = right ? arc : (arc + 1) % n;
      link.branch = dd.branch_of(dd.stop_dart(link.stop));
      link.agrees = agrees(link.stop);
      auto info = region_info(dd, r);
      link.index = info.index;
      link.kind = info.kind;
      link.type = curve.arcs[arc].type;
      // The passage at the far end of b_{i-1}, and the side s_i beyond it.
      int in, out;
      std::vector<int> s;
      if (right) {
        in = dd.next(a);
        out = dd.next(in);
        for (int d = out; dd.is_branch_dart(d); d = dd.next(d)) {
          s.push_back(d);
          if (dd.head(d) == link.stop || s.size() > static_cast<size_t>(dd.dart_count())) break;
        }
      } else {
        out = dd.prev(a);
        in = dd.prev(out);
        for (int d = dd.next(a); d != out && dd.is_branch_dart(d); d = dd.next(d)) {
          s.push_back(d);
          if (s.size() > static_cast<size_t>(dd.dart_count())) break;
        }
      }
      if (dd.is_branch_dart(in) && dd.is_branch_dart(out) && dd.passage_kind(in, out) == PassageKind::Cusp)
        link.cusp_vertex = dd.head(in);
      link.side_switches = static_cast<int>(s.size()) - 1;
      link.opposite_branch = s.empty() ? -1 : dd.branch_of(right ? s.front() : s.back());
      ch.links.push_back(link);
      const std::string where = dd.region_name(r);

      if (link.agrees != agree_prev) {
        ch.local_minimum = true;
        ch.end = i;
        if (link.kind == RegionKind::BoundaryTrigon)
          fail("Claim NotTrigon", where, "the " + label + " turns uphill at a boundary trigon");
      } else if (link.index < 0) {
        ch.end = i;
      } else if (link.index > 0) {
        fail("Claim Induct", where, "region of index " + index_string(link.index) + " inside the " + label);
        return ch;
      } else if (link.kind != RegionKind::BoundaryTrigon) {
        fail("Claim Induct", where, region_kind_name(link.kind) + " inside the " + label + ", expected a boundary trigon");
        return ch;
      } else if (link.cusp_vertex < 0) {
        fail("Claim Induct", where, "no cusp at the far end of " + dd.spec().branches[b_prev].name);
        return ch;
      } else {
        const auto& ra = curve.arcs[arc];
        if (ra.type != RaisedType::B1 && ra.type != RaisedType::B2) {
          fail("Claim Induct", arc_name(arc), "raised arc is type " + raised_type_name(ra.type) + ", expected B1 or B2");
        } else if ((ra.type == RaisedType::B1) != (link.side_switches == 0) || link.side_switches > 1) {
          fail("Claim Induct", where, "type " + raised_type_name(ra.type) + " but s meets " +
                                          std::to_string(link.side_switches) + " switches");
        } else {
          const int t = dd.region_tet(r);
          int x = right ? in : out, y = right ? out : in;
          FaceRef fx = dd.seen(x), fy = dd.seen(y);
          LoweringTrace tr{arc, "cusp at " + dd.vertex_name(link.cusp_vertex), false, ""};
          if (fx.face == fy.face) {
            tr.detail = "the cusp joins face " + std::to_string(fx.face) + " to itself";
          } else if (ra.type == RaisedType::B1) {
            int e = model::shared_edge(fx.face, fy.face);
            int cls = comb.edge_class_of(t, e);
            tr.ok = ra.vertex_crossing >= 0 && curve.crossings[ra.vertex_crossing].edge_class == cls;
            tr.detail = "cusp on " + edge_text(t, e) + (tr.ok ? ", the lowering vertex's edge class" : ", away from the lowering vertex");
          } else {
            const auto& g = curve.gamma[ra.lowering.front()];
            int far = right ? s.back() : s.front();
            FaceRef fz = dd.seen(s.size() == 2 ? (right ? s[1] : s[0]) : far);
            bool face_ok = fy == FaceRef{g.tet, g.face};
            std::set<int> edges, want{g.entry_edge, g.exit_edge};
            edges.insert(model::shared_edge(fx.face, fy.face));
            if (fz.face != fy.face) edges.insert(model::shared_edge(fy.face, fz.face));
            tr.ok = face_ok && edges == want;
            tr.detail = "c' sees face " + std::to_string(fy.face) + (face_ok ? ", the face of the lowering arc" : ", not the face of the lowering arc") +
                        (edges == want ? "" : ", ends on other edges");
          }
          rep.traces.push_back(tr);
          if (!tr.ok) fail("lowering trace", where, tr.detail);
        }
      }
      if (ch.end > 0) {
        if (link.cusp_vertex < 0) {
          fail("Claim Induct", where, "no cusp at the far end of " + dd.spec().branches[b_prev].name + ", so no quadrilateral");
        } else {
          Quadrilateral q{r, b_prev, stop_prev, link.cusp_vertex, 3, 1, 0};
          q.index = index_q(1, q.cusps, q.corners);
          ch.q = q;
        }
        return ch;
      }
      stop_prev = link.stop;
      b_prev = link.branch;
      agree_prev = link.agrees;
    }
  };
  rep.right = walk_chain(true);
  rep.left = walk_chain(false);

  if (rep.right.q && rep.left.q) {
    auto rt = rep.right.trigons(), lt = rep.left.trigons();
    std::set<int> seen{region};
    bool shared = false;
    for (int r : rt) shared = !seen.insert(r).second || shared;
    for (int r : lt) shared = !seen.insert(r).second || shared;
    rep.members.assign(seen.begin(), seen.end());
    if (shared) fail("Claim Induct", name, "the left and right chains share a region besides " + name);
    std::vector<Piece> pieces;
    for (int r : rep.members) pieces.push_back(full_piece(dd, r));
    pieces.push_back(quad_piece(dd, *rep.right.q));
    pieces.push_back(quad_piece(dd, *rep.left.q));
    rep.s = union_shape(dd, pieces);
    rep.embedded = !shared && rep.s->overlaps == 0 && rep.s->euler == 1;
    rep.rectangle = rep.s->euler == 1 && rep.s->corners == 4 && rep.s->cusps == 0 && rep.s->inward_corners == 0 &&
                    rep.s->index == 0;
    if (!rep.embedded) fail("S(R)", name, "the union is not an embedded disk");
    if (!rep.rectangle)
      fail("S(R)", name, std::to_string(rep.s->corners) + " corners, " + std::to_string(rep.s->cusps) +
                             " cusps, index " + index_string(rep.s->index) + "; expected a rectangle");
  }
  return rep;
}

std::vector<Violation> check_disjoint(const std::vector<MaxBigonReport>& reports) {
  std::vector<Violation> out;
  auto quads = [](const MaxBigonReport& r) {
    std::vector<Quadrilateral> q;
    if (r.right.q) q.push_back(*r.right.q);
    if (r.left.q) q.push_back(*r.left.q);
    return q;
  };
  for (size_t i = 0; i < reports.size(); ++i)
    for (size_t j = i + 1; j < reports.size(); ++j) {
      const auto& a = reports[i];
      const auto& b = reports[j];
      std::string where = "S(" + std::to_string(a.region) + ") and S(" + std::to_string(b.region) + ")";
      for (int r : a.members)
        if (std::count(b.members.begin(), b.members.end(), r))
          out.push_back({"disjointness", where, "both contain region " + std::to_string(r)});
      for (const auto& qa : quads(a)) {
        if (std::count(b.members.begin(), b.members.end(), qa.region))
          out.push_back({"disjointness", where, "a quadrilateral lies in a region of the other"});
        for (const auto& qb : quads(b))
          if (qa.region == qb.region && qa.branch == qb.branch)
            out.push_back({"disjointness", where, "quadrilaterals along the same branch"});
      }
      for (const auto& qb : quads(b))
        if (std::count(a.members.begin(), a.members.end(), qb.region))
          out.push_back({"disjointness", where, "a quadrilateral lies in a region of the other"});
    }
  return out;
}

CarvedDisk carve(const DiskDiagram& dd, const std::vector<MaxBigonReport>& reports) {
  CarvedDisk out;
  std::set<int> removed;
  std::map<int, int> quads;
  for (const auto& rep : reports) {
    if (!rep.s || !rep.right.q || !rep.left.q) throw InputError("carving needs complete surgery reports");
    removed.insert(rep.members.begin(), rep.members.end());
    ++quads[rep.right.q->region];
    ++quads[rep.left.q->region];
    out.outward_corners += 2;
    out.inward_corners += 2;
  }
  for (const auto& info : region_census(dd)) {
    if (removed.count(info.region)) continue;
    // Each quadrilateral takes a corner and a cusp and leaves two corners.
    int q = quads.count(info.region) ? quads[info.region] : 0;
    CarvedRegion c{info.region, q, info.corners + q, info.cusps - q, info.euler, 0};
    c.index = index_q(c.euler, c.cusps, c.corners);
    out.total += c.index;
    out.regions.push_back(c);
  }
  out.boundary_index = index_q(1, 0, out.outward_corners, out.inward_corners);
  return out;
}

// ---------------------------------------------------------------------------

std::string loop_kind_name(LoopKind kind) { return kind == LoopKind::Vertical ? "vertical" : "normal"; }

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Refuted: return "refuted";
    case Verdict::Reducible: return "reducible";
    case Verdict::Accepted: return "accepted";
  }
  return "accepted";
}

namespace {

std::string summary_line(const DiskDiagram& dd) {
  return "diagram: " + std::to_string(dd.stop_count()) + " stops, " + std::to_string(dd.switch_count()) +
         " switches, " + std::to_string(dd.branch_count()) + " branches, " + std::to_string(dd.region_count()) +
         " regions";
}

Refutation& settle(Refutation& out, Verdict v, std::string stage, std::string location, std::string reason) {
  out.verdict = v;
  out.stage = std::move(stage);
  out.location = std::move(location);
  out.reason = std::move(reason);
  out.transcript.push_back(verdict_name(v) + " at " + out.stage + (out.location.empty() ? "" : " (" + out.location + ")") +
                           ": " + out.reason);
  return out;
}

bool minimal_or_reduce(Refutation& out, const DiskDiagram& dd, const std::string& stage) {
  auto red = audit_minimality(dd);
  if (red.empty()) {
    out.transcript.push_back("minimal form: disk regions, sides meet at most one switch, no nullgons or monogons");
    return true;
  }
  for (const auto& v : red) out.transcript.push_back("  " + v.kind + " at " + v.location + ": " + v.detail);
  out.findings = red;
  settle(out, Verdict::Reducible, stage, red.front().location,
         std::to_string(red.size()) + " minimality violation(s); apply the reductions and resubmit");
  return false;
}

}  // namespace

Refutation refute_certificate(const DiskDiagram& dd, const TautTriangulation& tt, const DualLoop* loop) {
  Refutation out;
  out.kind = LoopKind::Vertical;
  auto& tr = out.transcript;
  tr.push_back(summary_line(dd));
  if (dd.branch_count() == 0)
    return settle(out, Verdict::Accepted, "preconditions", "",
                  "no branches, but a vertical loop crosses the branched surface; re-examine the boundary loop");
  if (!dd.labelled())
    return settle(out, Verdict::Accepted, "preconditions", "", "diagram is unlabelled; re-examine the labels");
  if (loop != nullptr) {
    auto v = check_vertical(tt, *loop);
    if (!v.empty())
      return settle(out, Verdict::Accepted, "preconditions", v.front().location,
                    "boundary loop is not vertical: " + v.front().detail + "; re-examine check_vertical");
    auto b = check_boundary(dd, boundary_arcs(*loop));
    if (!b.empty())
      return settle(out, Verdict::Accepted, "preconditions", b.front().location,
                    "labels do not carry the loop: " + b.front().detail + "; re-examine the boundary labels");
    tr.push_back("boundary carries the vertical loop (" + std::to_string(loop->size()) + " arcs)");
  }
  if (!minimal_or_reduce(out, dd, "minimality")) return out;

  for (const auto& info : region_census(dd)) {
    if (info.kind != RegionKind::BoundaryBigon) continue;
    const int t = dd.region_tet(info.region);
    const std::string& name = dd.region_name(info.region);
    for (const auto& side : info.sides) {
      if (side.boundary) continue;
      std::vector<int> faces, sides;
      std::string text;
      for (int d : side.darts) {
        faces.push_back(dd.seen(d).face);
        sides.push_back(tt.face_side(t, faces.back()));
        text += " " + std::to_string(faces.back()) + (sides.back() ? "R" : "L");
      }
      tr.push_back("boundary bigon " + name + " in tet " + std::to_string(t) + ": track side sees faces" + text);
      if (sides.front() == sides.back()) {
        tr.push_back("  its corner faces lie on one side of the equator");
        continue;
      }
      for (size_t j = 0; j + 1 < faces.size(); ++j) {
        if (sides[j] == sides[j + 1]) continue;
        int v = dd.head(side.darts[j]);
        int e = model::shared_edge(faces[j], faces[j + 1]);
        return settle(out, Verdict::Refuted, "parity", dd.vertex_name(v),
                      "the track side of " + name + " crosses the equator of tet " + std::to_string(t) +
                          " an odd number of times; at " + dd.vertex_name(v) + " it passes smoothly from face " +
                          std::to_string(faces[j]) + " to face " + std::to_string(faces[j + 1]) +
                          " across equatorial edge " + model::edge_name(e) + ", where the track must have a cusp");
      }
    }
  }
  return settle(out, Verdict::Accepted, "parity", "",
                "no boundary bigon has a track side linking the equator; re-examine whether the boundary loop is "
                "vertical");
}

Refutation refute_certificate(const DiskDiagram& dd, const TransverseTaut& tv, const NormalLoop& gamma) {
  Refutation out;
  out.kind = LoopKind::Normal;
  auto& tr = out.transcript;
  tr.push_back(summary_line(dd));
  if (dd.branch_count() == 0)
    return settle(out, Verdict::Accepted, "preconditions", "",
                  "no branches, but a raised normal loop crosses the branched surface; re-examine the boundary loop");
  if (!dd.labelled())
    return settle(out, Verdict::Accepted, "preconditions", "", "diagram is unlabelled; re-examine the labels");
  auto nv = check_normal(tv.tt(), gamma);
  if (!nv.empty())
    return settle(out, Verdict::Accepted, "preconditions", nv.front().location,
                  "boundary loop is not normal: " + nv.front().detail + "; re-examine check_normal");
  auto curve = raise_loop(tv, gamma);
  auto b = check_boundary(dd, boundary_arcs(curve));
  if (!b.empty())
    return settle(out, Verdict::Accepted, "preconditions", b.front().location,
                  "labels do not carry the raised loop: " + b.front().detail + "; re-examine the boundary labels");
  tr.push_back("boundary carries the raised loop (" + std::to_string(curve.arcs.size()) + " raised arcs)");
  auto orient = pull_back_orientation(dd, tv);
  if (!orient.consistent()) {
    const auto& v = orient.inconsistencies.front();
    return settle(out, Verdict::Accepted, "orientation", v.location,
                  v.kind + ": " + v.detail + "; re-examine the face labels against the co-orientation");
  }
  if (!minimal_or_reduce(out, dd, "minimality")) return out;

  DiskDiagram cur = dd;
  NormalLoop g = gamma;
  for (;;) {
    orient = pull_back_orientation(cur, tv);
    int target = -1;
    for (int k = 0; k < cur.stop_count() && target < 0; ++k) {
      int r = cur.region_of(cur.arc_dart(k));
      auto tag = bigon_tag(orient, r);
      if (tag && !tag->max) target = r;
    }
    if (target < 0) break;
    const std::string name = cur.region_name(target);
    MinBigonPush pushed;
    try {
      pushed = push_min_bigon(cur, target, tv, &g);
    } catch (const InputError& e) {
      return settle(out, Verdict::Refuted, "min-bigon push", name, e.what());
    }
    if (!pushed.boundary_consistent)
      return settle(out, Verdict::Refuted, "min-bigon push", name,
                    "after pushing across " + name + " the boundary no longer carries the pushed loop");
    ++out.pushes;
    tr.push_back("pushed min-bigon " + name + " at d" + std::to_string(pushed.site) + ": " +
                 std::to_string(pushed.diagram.region_count()) + " regions remain");
    cur = std::move(pushed.diagram);
    g = std::move(*pushed.loop);
  }
  out.reduced = cur;
  out.pushed_loop = g;
  if (out.pushes > 0 && !minimal_or_reduce(out, cur, "minimality after pushes")) return out;

  curve = raise_loop(tv, g);
  for (const auto& tag : orient.bigons) {
    if (!tag.max) continue;
    auto rep = max_bigon_surgery(cur, tag.region, tv, curve);
    tr.push_back("max-bigon " + cur.region_name(tag.region) + ": right chain K=" + std::to_string(rep.right.end) +
                 ", left chain K=" + std::to_string(rep.left.end) +
                 (rep.s ? ", S(R) has " + std::to_string(rep.s->corners) + " corners and " +
                              std::to_string(rep.s->cusps) + " cusps"
                        : ""));
    out.surgeries.push_back(std::move(rep));
  }
  for (const auto& rep : out.surgeries)
    if (!rep.ok()) {
      out.findings = rep.violations;
      const auto& v = rep.violations.front();
      return settle(out, Verdict::Refuted, v.kind, v.location, v.detail);
    }
  auto overlap = check_disjoint(out.surgeries);
  if (!overlap.empty()) {
    out.findings = overlap;
    return settle(out, Verdict::Refuted, "disjointness", overlap.front().location, overlap.front().detail);
  }
  out.carved = carve(cur, out.surgeries);
  const auto& carved = *out.carved;
  tr.push_back("carved " + std::to_string(out.surgeries.size()) + " rectangle(s): regions left total " +
               index_string(carved.total) + ", the carved disk's own corners give " +
               index_string(carved.boundary_index));
  for (const auto& c : carved.regions)
    if (c.index > 0)
      return settle(out, Verdict::Refuted, "carving", cur.region_name(c.region),
                    "carved region " + cur.region_name(c.region) + " keeps index " + index_string(c.index) +
                        ", but every region of the carved disk has non-positive index");
  return settle(out, Verdict::Refuted, "carving", "",
                "carved total " + index_string(carved.total) + " is not positive, but the carved disk has index " +
                    index_string(carved.boundary_index));
}

}  // namespace tauttrack
