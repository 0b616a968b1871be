#include "tauttrack/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace tauttrack {

namespace {

std::string trim(std::string_view s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InputError("diagram line " + std::to_string(line) + ": " + msg);
}

int parse_int(const std::string& s, int line) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(line, "expected an integer, got '" + s + "'");
}

struct RawSwitch {
  int line;
  std::string name;
  std::array<std::vector<std::string>, 2> sides;
};
struct RawBranch {
  int line;
  std::string name, v, w;
  int face = -1;
  int orient = 0;
};
struct RawRegion {
  int line;
  std::string name;
  std::vector<std::vector<std::string>> walks;
  int tet = -1;
};

}  // namespace

DiagramSpec parse_diagram(std::string_view text) {
  DiagramSpec spec;
  std::vector<RawSwitch> raw_switches;
  std::vector<RawBranch> raw_branches;
  std::vector<RawRegion> raw_regions;
  bool have_stops = false;
  std::string section;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  static const std::regex paren(R"(\(([^()]*)\))");
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto toks = tokens(line);
    if (toks[0] == "stops") {
      if (toks.size() != 2) fail(line_no, "expected 'stops <count>'");
      spec.stops = parse_int(toks[1], line_no);
      if (spec.stops < 0) fail(line_no, "negative stop count");
      have_stops = true;
      section.clear();
      continue;
    }
    if (toks[0] == "switches" || toks[0] == "branches" || toks[0] == "regions") {
      if (toks.size() != 1) fail(line_no, "section header takes no arguments");
      section = toks[0];
      continue;
    }
    if (toks[0] == "boundary") {
      for (size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].rfind("loop=", 0) != 0) fail(line_no, "expected 'boundary loop=<file>'");
        spec.boundary_loop = toks[i].substr(5);
      }
      section.clear();
      continue;
    }
    auto colon = line.find(':');
    if (section.empty() || colon == std::string::npos) fail(line_no, "unexpected line '" + line + "'");
    std::string name = trim(line.substr(0, colon));
    std::string rest = line.substr(colon + 1);
    if (name.empty() || name.find_first_of(" \t()|") != std::string::npos) fail(line_no, "bad name '" + name + "'");

    if (section == "switches") {
      RawSwitch s{line_no, name, {}};
      int count = 0;
      for (std::sregex_iterator it(rest.begin(), rest.end(), paren), end; it != end; ++it) {
        if (count == 2) fail(line_no, "a switch has exactly two sides");
        s.sides[count++] = tokens((*it)[1].str());
      }
      if (count != 2) fail(line_no, "a switch needs two parenthesised sides");
      raw_switches.push_back(std::move(s));
    } else if (section == "branches") {
      auto t = tokens(rest);
      if (t.size() < 2) fail(line_no, "a branch needs two endpoints");
      RawBranch b{line_no, name, t[0], t[1]};
      for (size_t i = 2; i < t.size(); ++i) {
        if (t[i].rfind("face=", 0) == 0) {
          b.face = parse_int(t[i].substr(5), line_no);
        } else if (t[i] == "orient=+") {
          b.orient = 1;
        } else if (t[i] == "orient=-") {
          b.orient = -1;
        } else {
          fail(line_no, "unknown branch attribute '" + t[i] + "'");
        }
      }
      raw_branches.push_back(std::move(b));
    } else {
      RawRegion r{line_no, name, {{}}};
      bool in_walk = false;
      for (auto& t : tokens(rest)) {
        if (t.rfind("walk=", 0) == 0) {
          in_walk = true;
          t = t.substr(5);
          if (t.empty()) continue;
        } else if (t.rfind("tet=", 0) == 0) {
          r.tet = parse_int(t.substr(4), line_no);
          in_walk = false;
          continue;
        } else if (!in_walk) {
          fail(line_no, "unknown region attribute '" + t + "'");
        }
        if (t == "|") {
          r.walks.emplace_back();
        } else {
          r.walks.back().push_back(t);
        }
      }
      raw_regions.push_back(std::move(r));
    }
  }
  if (!have_stops) throw InputError("diagram: missing 'stops' line");

  std::map<std::string, int> switch_id, branch_id;
  for (const auto& s : raw_switches)
    if (!switch_id.emplace(s.name, static_cast<int>(switch_id.size())).second)
      fail(s.line, "duplicate switch '" + s.name + "'");
  for (const auto& b : raw_branches)
    if (!branch_id.emplace(b.name, static_cast<int>(branch_id.size())).second)
      fail(b.line, "duplicate branch '" + b.name + "'");

  auto vertex = [&](const std::string& t, int line) -> VertexRef {
    if (auto it = switch_id.find(t); it != switch_id.end()) return {false, it->second};
    if (t.size() > 1 && t[0] == 'p' && std::all_of(t.begin() + 1, t.end(), ::isdigit)) {
      int k = parse_int(t.substr(1), line);
      if (k >= spec.stops) fail(line, "stop " + t + " out of range");
      return {true, k};
    }
    fail(line, "unknown endpoint '" + t + "'");
  };
  for (const auto& b : raw_branches)
    spec.branches.push_back({b.name, vertex(b.v, b.line), vertex(b.w, b.line), b.face, b.orient});

  for (const auto& s : raw_switches) {
    SwitchSpec out{s.name, {}};
    for (int side = 0; side < 2; ++side) {
      for (const auto& t : s.sides[side]) {
        auto dot = t.rfind('.');
        if (dot == std::string::npos) fail(s.line, "branch end '" + t + "' needs .v or .w");
        auto it = branch_id.find(t.substr(0, dot));
        std::string e = t.substr(dot + 1);
        if (it == branch_id.end() || (e != "v" && e != "w")) fail(s.line, "bad branch end '" + t + "'");
        out.sides[side].push_back({it->second, e == "v" ? 0 : 1});
      }
    }
    spec.switches.push_back(std::move(out));
  }

  std::set<std::string> region_names;
  for (const auto& r : raw_regions) {
    if (!region_names.insert(r.name).second) fail(r.line, "duplicate region '" + r.name + "'");
    RegionSpec out{r.name, {}, r.tet};
    for (const auto& walk : r.walks) {
      if (walk.empty()) fail(r.line, "empty walk");
      std::vector<WalkItem> items;
      for (const auto& t : walk) {
        char last = t.back();
        if (last == '+' || last == '-') {
          auto it = branch_id.find(t.substr(0, t.size() - 1));
          if (it == branch_id.end()) fail(r.line, "unknown branch in walk item '" + t + "'");
          items.push_back({last == '+' ? WalkItem::Kind::Forward : WalkItem::Kind::Backward, it->second});
        } else if (t == "d") {
          items.push_back({WalkItem::Kind::Circle, 0});
        } else if (t[0] == 'd') {
          int k = parse_int(t.substr(1), r.line);
          if (k < 0 || k >= spec.stops) fail(r.line, "boundary arc " + t + " out of range");
          items.push_back({WalkItem::Kind::Arc, k});
        } else {
          fail(r.line, "bad walk item '" + t + "'");
        }
      }
      out.walks.push_back(std::move(items));
    }
    spec.regions.push_back(std::move(out));
  }
  return spec;
}

std::string serialize_diagram(const DiagramSpec& spec) {
  std::ostringstream out;
  auto vertex = [&](const VertexRef& v) {
    return v.stop ? "p" + std::to_string(v.index) : spec.switches.at(v.index).name;
  };
  out << "stops " << spec.stops << "\n";
  if (!spec.switches.empty()) {
    out << "switches\n";
    for (const auto& s : spec.switches) {
      out << "  " << s.name << ":";
      for (const auto& side : s.sides) {
        out << " (";
        for (size_t i = 0; i < side.size(); ++i)
          out << (i ? " " : "") << spec.branches.at(side[i].branch).name << (side[i].end == 0 ? ".v" : ".w");
        out << ")";
      }
      out << "\n";
    }
  }
  if (!spec.branches.empty()) {
    out << "branches\n";
    for (const auto& b : spec.branches) {
      out << "  " << b.name << ": " << vertex(b.v) << " " << vertex(b.w);
      if (b.face_class >= 0) out << " face=" << b.face_class;
      if (b.orient != 0) out << " orient=" << (b.orient > 0 ? '+' : '-');
      out << "\n";
    }
  }
  out << "regions\n";
  for (const auto& r : spec.regions) {
    out << "  " << r.name << ": walk=";
    for (size_t w = 0; w < r.walks.size(); ++w) {
      if (w) out << " | ";
      for (size_t i = 0; i < r.walks[w].size(); ++i) {
        const auto& item = r.walks[w][i];
        if (i) out << " ";
        switch (item.kind) {
          case WalkItem::Kind::Forward: out << spec.branches.at(item.index).name << "+"; break;
          case WalkItem::Kind::Backward: out << spec.branches.at(item.index).name << "-"; break;
          case WalkItem::Kind::Arc: out << "d" << item.index; break;
          case WalkItem::Kind::Circle: out << "d"; break;
        }
      }
    }
    if (r.tet >= 0) out << " tet=" << r.tet;
    out << "\n";
  }
  if (!spec.boundary_loop.empty()) out << "boundary loop=" << spec.boundary_loop << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

IndexQ index_q(int euler, int cusps, int corners, int inward_corners) {
  return 4 * euler - 2 * cusps - corners + inward_corners;
}

std::string index_string(IndexQ q) {
  int g = std::gcd(q < 0 ? -q : q, 4);
  if (q == 0) return "0";
  if (g == 4) return std::to_string(q / 4);
  return std::to_string(q / g) + "/" + std::to_string(4 / g);
}

std::optional<std::array<FaceRef, 2>> seen_slots(const Combinatorics& comb, int face_class, int left_tet,
                                                 int right_tet) {
  const auto& fc = comb.faces().at(face_class);
  if (fc.rep.tet == left_tet && fc.partner.tet == right_tet) return std::array<FaceRef, 2>{fc.rep, fc.partner};
  if (fc.partner.tet == left_tet && fc.rep.tet == right_tet) return std::array<FaceRef, 2>{fc.partner, fc.rep};
  return std::nullopt;
}

DiskDiagram DiskDiagram::build(DiagramSpec spec, const TautTriangulation* tt) {
  DiskDiagram dd;
  const int n = spec.stops;
  const int s = static_cast<int>(spec.switches.size());
  const int b = static_cast<int>(spec.branches.size());
  const int vertices = n + s + (n == 0 ? 1 : 0);
  const int arcs = n == 0 ? 1 : n;
  const int darts = 2 * b + 2 * arcs;
  auto err = [](const std::string& m) { throw InputError("diagram: " + m); };

  dd.tail_.assign(darts, -1);
  dd.rev_.assign(darts, -1);
  dd.next_.assign(darts, -1);
  dd.prev_.assign(darts, -1);
  dd.region_.assign(darts, -1);
  dd.walk_.assign(darts, -1);
  dd.seen_.assign(darts, FaceRef{-1, -1});

  auto vid = [&](const VertexRef& v) {
    if (v.stop ? (v.index < 0 || v.index >= n) : (v.index < 0 || v.index >= s)) err("endpoint out of range");
    return v.stop ? v.index : n + v.index;
  };
  for (int i = 0; i < b; ++i) {
    dd.tail_[2 * i] = vid(spec.branches[i].v);
    dd.tail_[2 * i + 1] = vid(spec.branches[i].w);
    dd.rev_[2 * i] = 2 * i + 1;
    dd.rev_[2 * i + 1] = 2 * i;
  }
  if (n == 0) {
    dd.tail_[2 * b] = dd.tail_[2 * b + 1] = vertices - 1;
    dd.rev_[2 * b] = 2 * b + 1;
    dd.rev_[2 * b + 1] = 2 * b;
    dd.next_[2 * b + 1] = dd.prev_[2 * b + 1] = 2 * b + 1;
  } else {
    for (int k = 0; k < n; ++k) {
      int in = 2 * b + k, out = 2 * b + n + k;
      dd.tail_[in] = k;
      dd.tail_[out] = (k + 1) % n;
      dd.rev_[in] = out;
      dd.rev_[out] = in;
      int before = 2 * b + n + (k + n - 1) % n;
      dd.next_[out] = before;
      dd.prev_[before] = out;
    }
  }

  // Stops carry exactly one branch end each.
  dd.stop_dart_.assign(n, -1);
  for (int d = 0; d < 2 * b; ++d) {
    int v = dd.tail_[d];
    if (v >= n) continue;
    if (dd.stop_dart_[v] >= 0) err("stop p" + std::to_string(v) + " meets more than one branch end");
    dd.stop_dart_[v] = d;
  }
  for (int k = 0; k < n; ++k)
    if (dd.stop_dart_[k] < 0) err("stop p" + std::to_string(k) + " meets no branch");

  // Tangency partitions.
  std::vector<int> end_side(2 * b, -1);
  for (int i = 0; i < s; ++i) {
    const auto& sw = spec.switches[i];
    for (int side = 0; side < 2; ++side) {
      if (sw.sides[side].empty()) err("switch " + sw.name + " has an empty side");
      for (const auto& e : sw.sides[side]) {
        if (e.branch < 0 || e.branch >= b || e.end < 0 || e.end > 1) err("switch " + sw.name + ": bad branch end");
        int d = 2 * e.branch + e.end;
        if (dd.tail_[d] != n + i) err("switch " + sw.name + " lists an end of " + spec.branches[e.branch].name + " that is not there");
        if (end_side[d] >= 0) err("switch " + sw.name + " lists an end twice");
        end_side[d] = side;
      }
    }
  }
  for (int d = 0; d < 2 * b; ++d)
    if (dd.tail_[d] >= n && end_side[d] < 0)
      err("switch " + spec.switches[dd.tail_[d] - n].name + " does not place an end of " + spec.branches[d / 2].name);

  // Region walks.
  bool circle_used = false;
  dd.walks_.resize(spec.regions.size());
  for (int r = 0; r < static_cast<int>(spec.regions.size()); ++r) {
    const auto& reg = spec.regions[r];
    if (reg.walks.empty()) err("region " + reg.name + " has no boundary walk");
    for (int w = 0; w < static_cast<int>(reg.walks.size()); ++w) {
      std::vector<int> ds;
      for (const auto& item : reg.walks[w]) {
        int d = -1;
        switch (item.kind) {
          case WalkItem::Kind::Forward:
          case WalkItem::Kind::Backward:
            if (item.index < 0 || item.index >= b) err("region " + reg.name + ": branch out of range");
            d = 2 * item.index + (item.kind == WalkItem::Kind::Backward ? 1 : 0);
            break;
          case WalkItem::Kind::Arc:
            if (item.index < 0 || item.index >= n) err("region " + reg.name + ": boundary arc out of range");
            d = 2 * b + item.index;
            break;
          case WalkItem::Kind::Circle:
            if (n != 0) err("region " + reg.name + ": 'd' needs a boundary without stops");
            d = 2 * b;
            circle_used = true;
            break;
        }
        if (dd.region_[d] >= 0) err("region " + reg.name + " reuses " + dd.dart_name(d));
        dd.region_[d] = r;
        dd.walk_[d] = w;
        ds.push_back(d);
      }
      for (size_t i = 0; i < ds.size(); ++i) {
        int a = ds[i], c = ds[(i + 1) % ds.size()];
        if (dd.tail_[dd.rev_[a]] != dd.tail_[c])
          err("region " + reg.name + ": " + dd.dart_name(a) + " does not lead to " + dd.dart_name(c));
        dd.next_[a] = c;
        dd.prev_[c] = a;
      }
      dd.walks_[r].push_back(std::move(ds));
    }
  }
  for (int d = 0; d < 2 * b + arcs; ++d)
    if (dd.region_[d] < 0) err(dd.dart_name(d) + " lies on no region walk");
  if (n == 0 && !circle_used) err("the boundary circle lies on no region walk");

  // Rotation at each vertex must be a single cycle.
  dd.vertex_darts_.assign(vertices, {});
  std::vector<int> degree(vertices, 0);
  for (int d = 0; d < darts; ++d) ++degree[dd.tail_[d]];
  for (int v = 0; v < vertices; ++v) {
    int start = -1;
    for (int d = 0; d < darts && start < 0; ++d)
      if (dd.tail_[d] == v) start = d;
    if (start < 0) err("switch " + dd.vertex_name(v) + " meets no branch");
    int d = start;
    do {
      dd.vertex_darts_[v].push_back(d);
      d = dd.next_[dd.rev_[d]];
    } while (d != start && static_cast<int>(dd.vertex_darts_[v].size()) <= degree[v]);
    if (static_cast<int>(dd.vertex_darts_[v].size()) != degree[v])
      err("the walks do not close up into a disk around " + dd.vertex_name(v));
  }

  // Each side of a switch occupies one interval of the rotation.
  for (int i = 0; i < s; ++i) {
    const auto& ds = dd.vertex_darts_[n + i];
    int changes = 0;
    for (size_t j = 0; j < ds.size(); ++j)
      if (end_side[ds[j]] != end_side[ds[(j + 1) % ds.size()]]) ++changes;
    if (changes != 2) err("switch " + spec.switches[i].name + ": tangency sides interleave in the rotation");
  }

  int chi_regions = 0;
  for (const auto& reg : spec.regions) chi_regions += 2 - static_cast<int>(reg.walks.size());
  if (vertices - (b + arcs) + chi_regions != 1)
    err("Euler relation fails: V - E + F = " + std::to_string(vertices - (b + arcs) + chi_regions) + ", expected 1");

  if (tt != nullptr) {
    const auto& comb = tt->comb();
    for (const auto& reg : spec.regions)
      if (reg.tet < 0 || reg.tet >= tt->size()) err("region " + reg.name + " has no valid tetrahedron label");
    for (int i = 0; i < b; ++i) {
      const auto& br = spec.branches[i];
      if (br.face_class < 0 || br.face_class >= static_cast<int>(comb.faces().size()))
        err("branch " + br.name + " has no valid face label");
      int left = spec.regions[dd.region_[2 * i]].tet, right = spec.regions[dd.region_[2 * i + 1]].tet;
      auto slots = seen_slots(comb, br.face_class, left, right);
      if (!slots)
        err("label incompatibility: branch " + br.name + " (face " + std::to_string(br.face_class) +
            ") separates tetrahedra " + std::to_string(left) + " and " + std::to_string(right));
      dd.seen_[2 * i] = (*slots)[0];
      dd.seen_[2 * i + 1] = (*slots)[1];
    }
    dd.labelled_ = true;
  }
  dd.spec_ = std::move(spec);
  return dd;
}

int DiskDiagram::leaving_side(int d) const {
  int v = tail_[d];
  if (!is_switch(v)) return -1;
  const auto& sw = spec_.switches[v - stop_count()];
  BranchEnd e{branch_of(d), d % 2};
  for (int side = 0; side < 2; ++side)
    if (std::find(sw.sides[side].begin(), sw.sides[side].end(), e) != sw.sides[side].end()) return side;
  return -1;
}

PassageKind DiskDiagram::passage_kind(int in, int out) const {
  int v = head(in);
  if (is_stop(v)) return PassageKind::Corner;
  if (!is_switch(v)) return PassageKind::Smooth;
  return leaving_side(rev(in)) == leaving_side(out) ? PassageKind::Cusp : PassageKind::Smooth;
}

std::string DiskDiagram::dart_name(int d) const {
  int b = branch_count();
  if (d < 2 * b) {
    const std::string& name = d / 2 < static_cast<int>(spec_.branches.size()) ? spec_.branches[d / 2].name
                                                                                : std::to_string(d / 2);
    return name + (d % 2 ? "-" : "+");
  }
  if (stop_count() == 0) return d == 2 * b ? "d" : "d(outside)";
  int k = d - 2 * b;
  return k < stop_count() ? "d" + std::to_string(k) : "d" + std::to_string(k - stop_count()) + "(outside)";
}

std::string DiskDiagram::vertex_name(int v) const {
  if (v < stop_count()) return "p" + std::to_string(v);
  if (v < stop_count() + switch_count()) return spec_.switches[v - stop_count()].name;
  return "boundary point";
}

// ---------------------------------------------------------------------------

std::string region_kind_name(RegionKind kind) {
  switch (kind) {
    case RegionKind::Nullgon: return "nullgon";
    case RegionKind::CuspedMonogon: return "cusped monogon";
    case RegionKind::CuspedBigon: return "cusped bigon";
    case RegionKind::BoundaryBigon: return "boundary bigon";
    case RegionKind::BoundaryTrigon: return "boundary trigon";
    case RegionKind::Rectangle: return "rectangle";
    case RegionKind::Other: return "other";
  }
  return "other";
}

RegionKind classify_region(int euler, int corners, int cusps) {
  if (euler != 1) return RegionKind::Other;
  static const std::map<std::pair<int, int>, RegionKind> table{
      {{0, 0}, RegionKind::Nullgon},        {{0, 1}, RegionKind::CuspedMonogon},
      {{0, 2}, RegionKind::CuspedBigon},    {{2, 0}, RegionKind::BoundaryBigon},
      {{2, 1}, RegionKind::BoundaryTrigon}, {{4, 0}, RegionKind::Rectangle},
  };
  auto it = table.find({corners, cusps});
  return it == table.end() ? RegionKind::Other : it->second;
}

RegionInfo region_info(const DiskDiagram& dd, int region) {
  RegionInfo info;
  info.region = region;
  const auto& walks = dd.walks(region);
  info.euler = 2 - static_cast<int>(walks.size());
  for (int w = 0; w < static_cast<int>(walks.size()); ++w) {
    const auto& ds = walks[w];
    const int len = static_cast<int>(ds.size());
    std::vector<Passage> ps;
    for (int i = 0; i < len; ++i) {
      int in = ds[i], out = ds[(i + 1) % len];
      Passage p{dd.head(in), in, out, dd.passage_kind(in, out)};
      if (p.kind == PassageKind::Cusp) ++info.cusps;
      if (p.kind == PassageKind::Corner) ++info.corners;
      ps.push_back(p);
    }
    // Sides start just after a cusp or corner; a walk without any is one side.
    int start = 0;
    for (int i = 0; i < len; ++i)
      if (ps[i].kind != PassageKind::Smooth) {
        start = (i + 1) % len;
        break;
      }
    SideInfo side{w, {}, 0, false};
    for (int j = 0; j < len; ++j) {
      int i = (start + j) % len;
      side.darts.push_back(ds[i]);
      if (!dd.is_branch_dart(ds[i])) side.boundary = true;
      if (ps[i].kind != PassageKind::Smooth || j == len - 1) {
        info.sides.push_back(side);
        side = SideInfo{w, {}, 0, false};
      } else if (dd.is_switch(ps[i].vertex)) {
        ++side.interior_switches;
      }
    }
    info.passages.push_back(std::move(ps));
  }
  info.index = index_q(info.euler, info.cusps, info.corners);
  info.kind = classify_region(info.euler, info.corners, info.cusps);
  return info;
}

std::vector<RegionInfo> region_census(const DiskDiagram& dd) {
  std::vector<RegionInfo> out;
  for (int r = 0; r < dd.region_count(); ++r) out.push_back(region_info(dd, r));
  return out;
}

IndexAudit audit_total_index(const DiskDiagram& dd) {
  IndexAudit a;
  for (const auto& info : region_census(dd)) a.total += info.index;
  a.pass = a.total == 4;
  return a;
}

std::vector<Violation> audit_minimality(const DiskDiagram& dd) {
  std::vector<Violation> out;
  auto census = region_census(dd);
  for (const auto& info : census) {
    const std::string& name = dd.region_name(info.region);
    if (!info.disk()) {
      out.push_back({"region with topology", name,
                     "Euler characteristic " + std::to_string(info.euler) +
                         "; compress it into the containing tetrahedron"});
    }
    for (size_t i = 0; i < info.sides.size(); ++i) {
      const auto& side = info.sides[i];
      if (side.interior_switches > 1) {
        out.push_back({"side meets several switches", name + " side " + std::to_string(i),
                       std::to_string(side.interior_switches) + " switches inside " + dd.dart_name(side.darts.front()) +
                           "..; homotope the non-normal branch across its bigon"});
      }
    }
    if (info.kind == RegionKind::Nullgon)
      out.push_back({"nullgon", name, "a nullgon cannot occur in minimal position"});
    if (info.kind == RegionKind::CuspedMonogon)
      out.push_back({"monogon", name, "its boundary would cross the equator exactly once"});
  }
  if (out.empty()) {
    for (const auto& info : census)
      if (info.index > 0 && info.kind != RegionKind::BoundaryBigon)
        out.push_back({"positive region not a boundary bigon", dd.region_name(info.region),
                       region_kind_name(info.kind) + " with index " + index_string(info.index)});
  }
  return out;
}

// ---------------------------------------------------------------------------

bool points_left(const OrientationReport& orient, int d) {
  int sign = orient.sign[d / 2];
  return d % 2 == 0 ? sign > 0 : sign < 0;
}

OrientationReport pull_back_orientation(const DiskDiagram& dd, const TransverseTaut& tv) {
  if (!dd.labelled()) throw InputError("orientation needs a labelled diagram");
  OrientationReport rep;
  const auto& spec = dd.spec();
  for (int i = 0; i < dd.branch_count(); ++i) {
    int sign = points_into(tv.comb(), tv.coor(), dd.seen(2 * i)) ? 1 : -1;
    rep.sign.push_back(sign);
    if (spec.branches[i].orient != 0 && spec.branches[i].orient != sign)
      rep.inconsistencies.push_back({"stated orientation", spec.branches[i].name,
                                     "document says " + std::string(spec.branches[i].orient > 0 ? "+" : "-") +
                                         ", co-orientation gives " + (sign > 0 ? "+" : "-")});
  }
  for (int i = 0; i < dd.switch_count(); ++i) {
    int v = dd.stop_count() + i;
    std::optional<bool> side0;
    bool ok = true;
    for (int d : dd.vertex_darts(v)) {
      bool left = points_left(rep, d) != (dd.leaving_side(d) == 1);
      if (!side0) side0 = left;
      ok = ok && left == *side0;
    }
    if (!ok)
      rep.inconsistencies.push_back({"inconsistent pullback", spec.switches[i].name,
                                     "branches at this switch pull back incompatible transverse orientations"});
  }
  for (const auto& info : region_census(dd)) {
    if (info.kind != RegionKind::BoundaryBigon) continue;
    std::optional<bool> into;
    bool ok = true;
    for (const auto& side : info.sides) {
      if (side.boundary) continue;
      for (int d : side.darts) {
        bool in = points_left(rep, d);
        if (!into) into = in;
        ok = ok && in == *into;
      }
    }
    if (!ok || !into) {
      rep.inconsistencies.push_back(
          {"inconsistent pullback", dd.region_name(info.region), "the track side of this bigon is not co-oriented"});
      continue;
    }
    rep.bigons.push_back({info.region, *into});
  }
  return rep;
}

OrientationReport orient_and_classify_bigons(const DiskDiagram& dd, const TransverseTaut& tv) {
  auto rep = pull_back_orientation(dd, tv);
  if (!rep.consistent()) {
    const auto& v = rep.inconsistencies.front();
    throw InputError(v.kind + " at " + v.location + ": " + v.detail);
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<BoundaryArc> boundary_arcs(const DualLoop& loop) {
  std::vector<BoundaryArc> out;
  for (const auto& s : loop.steps) out.push_back({s.tet, s.face_in, s.face_out});
  return out;
}

std::vector<BoundaryArc> boundary_arcs(const RaisedCurve& curve) {
  std::vector<BoundaryArc> out;
  for (const auto& a : curve.arcs) out.push_back({a.tet, a.entry_face, a.exit_face});
  return out;
}

std::vector<Violation> check_boundary(const DiskDiagram& dd, const std::vector<BoundaryArc>& loop) {
  std::vector<Violation> out;
  if (!dd.labelled()) {
    out.push_back({"unlabelled", "diagram", "boundary checks need tetrahedron and face labels"});
    return out;
  }
  const int n = dd.stop_count();
  if (n != static_cast<int>(loop.size())) {
    out.push_back({"stop count", "boundary",
                   std::to_string(n) + " stops but the loop has " + std::to_string(loop.size()) + " arcs"});
    return out;
  }
  auto describe = [](FaceRef f) { return "(" + std::to_string(f.tet) + " " + std::to_string(f.face) + ")"; };
  for (int k = 0; k < n; ++k) {
    int d = dd.arc_dart(k);
    int r = dd.region_of(d);
    const auto& arc = loop[k];
    std::string where = "d" + std::to_string(k);
    if (dd.region_tet(r) != arc.tet)
      out.push_back({"tetrahedron label", where,
                     dd.region_name(r) + " is labelled " + std::to_string(dd.region_tet(r)) + ", the loop is in " +
                         std::to_string(arc.tet)});
    FaceRef in = dd.seen(dd.prev(d)), outf = dd.seen(dd.next(d));
    if (in != FaceRef{arc.tet, arc.entry_face})
      out.push_back({"entry face", where, "branch at p" + std::to_string(k) + " shows " + describe(in) +
                                              ", the loop enters through " + describe({arc.tet, arc.entry_face})});
    if (outf != FaceRef{arc.tet, arc.exit_face})
      out.push_back({"exit face", where, "branch at p" + std::to_string((k + 1) % n) + " shows " + describe(outf) +
                                             ", the loop leaves through " + describe({arc.tet, arc.exit_face})});
  }
  return out;
}

}  // namespace tauttrack
