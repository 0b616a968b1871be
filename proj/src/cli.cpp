#include "tauttrack/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "tauttrack/corpus.hpp"
#include "tauttrack/surgery.hpp"

namespace tauttrack::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Report {
  json doc = json::object();
  std::vector<std::string> text;
  int status = exit_pass;

  void line(std::string s) {
    while (!s.empty() && s.back() == '\n') s.pop_back();
    text.push_back(std::move(s));
  }
  void fail() { status = exit_audit_failure; }
};

json to_json(const Violation& v) { return {{"kind", v.kind}, {"location", v.location}, {"detail", v.detail}}; }

json to_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

void list_violations(Report& r, const std::vector<Violation>& vs, const std::string& indent = "  ") {
  for (const auto& v : vs)
    r.line(indent + v.kind + (v.location.empty() ? "" : " at " + v.location) + ": " + v.detail);
}

std::string read_file(const std::string& path, const char* option) {
  if (path.empty()) throw InputError(std::string("missing --") + option);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::vector<std::string> pairs_of(const TautStructure& taut) {
  std::vector<std::string> out;
  for (int p : taut.pi_pair) out.push_back(pi_pair_name(p));
  return out;
}

std::string joined(const std::vector<std::string>& words, const std::string& sep = " ") {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) out += (i ? sep : "") + words[i];
  return out;
}

// ---------------------------------------------------------------------------
// Inputs

struct Inputs {
  const PipelineConfig& cfg;
  std::optional<Triangulation> tri_;
  std::optional<TautTriangulation> tt_;

  const Triangulation& tri() {
    if (!tri_) tri_ = parse_triangulation(read_file(cfg.tri, "tri"));
    return *tri_;
  }
  TautStructure taut_structure() { return parse_taut(read_file(cfg.taut, "taut"), tri().size()); }
  const TautTriangulation& tt() {
    if (!tt_) tt_.emplace(tri(), taut_structure());
    return *tt_;
  }
  std::string loop_text() { return read_file(cfg.loop, "loop"); }
  DualLoop dual_loop() {
    auto text = loop_text();
    if (loop_kind(text) != "dual") throw InputError(cfg.loop + " is not a dual loop");
    return parse_dual_loop(text);
  }
  NormalLoop normal_loop() {
    auto text = loop_text();
    if (loop_kind(text) != "normal") throw InputError(cfg.loop + " is not a normal loop");
    return parse_normal_loop(text);
  }
  DiagramSpec diagram_spec() { return parse_diagram(read_file(cfg.diagram, "diagram")); }
  /// The boundary loop named inside the diagram, used when --loop is absent.
  std::string diagram_loop_path(const DiagramSpec& spec) const {
    if (!cfg.loop.empty() || spec.boundary_loop.empty()) return cfg.loop;
    return (fs::path(cfg.diagram).parent_path() / spec.boundary_loop).string();
  }
};

/// A transverse structure for the normal-loop commands.  Without --coor the
/// co-orientation is detected; when there is none the structure and loop are
/// lifted to the double cover.
struct TransverseContext {
  std::optional<TransverseTaut> tv;
  std::optional<NormalLoop> loop;
  std::string source;  // "given", "detected" or "double cover"
};

TransverseContext transverse_for(Inputs& in, Report& r, const NormalLoop* loop, bool allow_lift) {
  TransverseContext ctx;
  const auto& tt = in.tt();
  if (!in.cfg.coor.empty()) {
    auto coor = parse_coorientation(read_file(in.cfg.coor, "coor"), tt.comb());
    auto bad = verify_coorientation(tt, coor);
    if (!bad.empty()) {
      r.doc["coorientation"] = {{"verified", false}, {"violations", to_json(bad)}};
      r.line("co-orientation is not transverse taut");
      list_violations(r, bad);
      r.line("remedy: `tauttrack cover build` lifts the structure to a transverse double cover");
      r.fail();
      return ctx;
    }
    ctx.tv.emplace(tt, coor);
    ctx.source = "given";
  } else if (auto coor = detect_transverse_taut(tt)) {
    ctx.tv.emplace(tt, *coor);
    ctx.source = "detected";
  } else if (allow_lift) {
    auto cover = build_double_cover(tt);
    ctx.tv.emplace(TautTriangulation(cover.tri, cover.taut), cover.coor);
    ctx.source = "double cover";
    if (loop) ctx.loop = lift_loop(tt, cover, *loop);
    r.doc["lift"] = {{"tets", cover.tri.size()}, {"components", cover.component_count}};
    r.line("structure is not transverse taut; lifted to the double cover (" + std::to_string(cover.tri.size()) +
           " tetrahedra)");
  } else {
    throw InputError("structure is not transverse taut; build the double cover with `tauttrack cover build` first");
  }
  if (loop && !ctx.loop) ctx.loop = *loop;
  r.doc["coorientation"] = {{"verified", true}, {"source", ctx.source}};
  return ctx;
}

int find_region(const DiskDiagram& dd, const std::string& name) {
  for (int r = 0; r < dd.region_count(); ++r)
    if (dd.region_name(r) == name) return r;
  try {
    size_t used = 0;
    int r = std::stoi(name, &used);
    if (used == name.size() && r >= 0 && r < dd.region_count()) return r;
  } catch (const std::exception&) {
  }
  throw InputError("no region '" + name + "'");
}

json raised_json(const RaisedCurve& curve) {
  json arcs = json::array();
  for (const auto& a : curve.arcs)
    arcs.push_back({{"tet", a.tet},
                    {"entry_face", a.entry_face},
                    {"exit_face", a.exit_face},
                    {"entry_lower", a.entry_lower},
                    {"exit_lower", a.exit_lower},
                    {"type", raised_type_name(a.type)},
                    {"vertex_crossing", a.vertex_crossing},
                    {"lowering", a.lowering}});
  return arcs;
}

void raised_text(Report& r, const RaisedCurve& curve) {
  for (size_t i = 0; i < curve.arcs.size(); ++i) {
    const auto& a = curve.arcs[i];
    std::string lowering = a.vertex_crossing >= 0 ? "crossing " + std::to_string(a.vertex_crossing) : "arcs";
    if (a.vertex_crossing < 0)
      for (int k : a.lowering) lowering += " " + std::to_string(k);
    r.line("  a" + std::to_string(i) + ": tet " + std::to_string(a.tet) + " faces " + std::to_string(a.entry_face) +
           (a.entry_lower ? "v" : "^") + " -> " + std::to_string(a.exit_face) + (a.exit_lower ? "v" : "^") +
           " type " + raised_type_name(a.type) + ", lowering " + lowering);
  }
}

json region_json(const DiskDiagram& dd, const RegionInfo& info) {
  return {{"name", dd.region_name(info.region)},
          {"kind", region_kind_name(info.kind)},
          {"euler", info.euler},
          {"corners", info.corners},
          {"cusps", info.cusps},
          {"inward_corners", info.inward_corners},
          {"index", index_string(info.index)}};
}

std::string region_text(const DiskDiagram& dd, const RegionInfo& info) {
  return "  " + dd.region_name(info.region) + ": " + region_kind_name(info.kind) + ", " +
         std::to_string(info.corners) + " corners, " + std::to_string(info.cusps) + " cusps, index " +
         index_string(info.index);
}

// ---------------------------------------------------------------------------
// Commands

void tri_validate(Inputs& in, Report& r) {
  auto rep = validate_triangulation(in.tri());
  r.doc["tets"] = in.tri().size();
  r.doc["valid"] = rep.ok();
  r.doc["violations"] = to_json(rep.violations);
  if (rep.orientable) r.doc["orientable"] = *rep.orientable;
  r.line(std::to_string(in.tri().size()) + " tetrahedra: " + (rep.ok() ? "valid" : "invalid"));
  if (rep.orientable) r.line(*rep.orientable ? "orientable" : "non-orientable");
  list_violations(r, rep.violations);
  if (!rep.ok()) r.fail();
}

void taut_verify(Inputs& in, Report& r) {
  auto taut = in.taut_structure();
  auto bad = verify_taut(in.tri(), taut);
  json failures = json::array();
  for (const auto& f : bad) failures.push_back({{"edge_class", f.edge_class}, {"pi_count", f.pi_count}});
  r.doc["taut"] = bad.empty();
  r.doc["failures"] = failures;
  r.line(bad.empty() ? "taut: every edge class has two pi angles" : "not taut");
  for (const auto& f : bad)
    r.line("  edge class " + std::to_string(f.edge_class) + " has " + std::to_string(f.pi_count) + " pi angles");
  if (!bad.empty()) r.fail();
}

void taut_enumerate(Inputs& in, Report& r) {
  auto all = enumerate_taut(in.tri());
  json list = json::array();
  for (const auto& t : all) list.push_back(pairs_of(t));
  r.doc["count"] = all.size();
  r.doc["structures"] = list;
  r.line(std::to_string(all.size()) + " taut structures");
  for (size_t i = 0; i < all.size(); ++i) r.line("  " + std::to_string(i) + ": " + joined(pairs_of(all[i])));
}

void transverse_detect(Inputs& in, Report& r) {
  const auto& tt = in.tt();
  auto coor = detect_transverse_taut(tt);
  r.doc["transverse"] = coor.has_value();
  if (!coor) {
    r.line("not transverse taut; `tauttrack cover build` gives a transverse double cover");
    return;
  }
  auto text = serialize_coorientation(*coor, tt.comb());
  r.doc["coorientation"] = text;
  r.line("transverse taut");
  if (!in.cfg.out.empty()) {
    write_file(in.cfg.out, text);
    r.line("co-orientation written to " + in.cfg.out);
  } else {
    std::istringstream lines(text);
    for (std::string l; std::getline(lines, l);) r.line("  " + l);
  }
}

void transverse_verify(Inputs& in, Report& r) {
  const auto& tt = in.tt();
  auto coor = parse_coorientation(read_file(in.cfg.coor, "coor"), tt.comb());
  auto bad = verify_coorientation(tt, coor);
  r.doc["transverse"] = bad.empty();
  r.doc["violations"] = to_json(bad);
  r.line(bad.empty() ? "co-orientation is transverse taut" : "co-orientation is not transverse taut");
  list_violations(r, bad);
  if (!bad.empty()) r.fail();
}

void cover_build(Inputs& in, Report& r) {
  const auto& tt = in.tt();
  auto cover = build_double_cover(tt);
  json doc = {{"tets", cover.tri.size()},
              {"components", cover.component_count},
              {"base", cover.base},
              {"triangulation", serialize_triangulation(cover.tri)},
              {"taut", serialize_taut(cover.taut)}};
  Combinatorics comb(cover.tri);
  doc["coorientation"] = serialize_coorientation(cover.coor, comb);
  r.line("double cover: " + std::to_string(cover.tri.size()) + " tetrahedra, " +
         std::to_string(cover.component_count) + " component" + (cover.component_count == 1 ? "" : "s"));
  std::optional<std::string> lifted;
  if (!in.cfg.loop.empty()) {
    auto text = in.loop_text();
    lifted = loop_kind(text) == "dual" ? serialize_loop(lift_loop(cover, parse_dual_loop(text)))
                                       : serialize_loop(lift_loop(tt, cover, parse_normal_loop(text)));
    doc["loop"] = *lifted;
  }
  r.doc["cover"] = doc;
  if (in.cfg.out.empty()) return;
  fs::path dir(in.cfg.out);
  write_file(dir / "cover.tri", doc["triangulation"].get<std::string>());
  write_file(dir / "cover.taut", doc["taut"].get<std::string>());
  write_file(dir / "cover.coor", doc["coorientation"].get<std::string>());
  if (lifted) write_file(dir / "cover.loop", *lifted);
  r.line("written to " + dir.string());
}

void loop_check_vertical(Inputs& in, Report& r) {
  auto bad = check_vertical(in.tt(), in.dual_loop());
  r.doc["vertical"] = bad.empty();
  r.doc["violations"] = to_json(bad);
  r.line(bad.empty() ? "vertical: every step crosses the equator" : "not vertical");
  list_violations(r, bad);
  if (!bad.empty()) r.fail();
}

void loop_check_normal(Inputs& in, Report& r) {
  auto loop = in.normal_loop();
  auto analysis = analyse_normal_loop(in.tt(), loop);
  json crossings = json::array();
  for (const auto& c : analysis.crossings)
    crossings.push_back({{"edge_class", c.edge_class},
                         {"from", std::string(1, side_char(c.from_color))},
                         {"to", std::string(1, side_char(c.to_color))}});
  r.doc["normal"] = analysis.violations.empty();
  r.doc["crossings"] = crossings;
  r.doc["violations"] = to_json(analysis.violations);
  r.line(analysis.violations.empty() ? "normal: every crossing is smooth" : "not normal");
  list_violations(r, analysis.violations);
  if (!analysis.violations.empty()) r.fail();
}

void loop_raise(Inputs& in, Report& r) {
  auto loop = in.normal_loop();
  auto ctx = transverse_for(in, r, &loop, true);
  if (!ctx.tv) return;
  auto bad = check_normal(ctx.tv->tt(), *ctx.loop);
  if (!bad.empty()) {
    r.doc["violations"] = to_json(bad);
    r.line("loop is not normal; nothing to raise");
    list_violations(r, bad);
    r.fail();
    return;
  }
  auto curve = raise_loop(*ctx.tv, *ctx.loop);
  r.doc["raised"] = raised_json(curve);
  r.doc["linked"] = raised_linkage_holds(ctx.tv->tri(), curve);
  r.line("raised curve with " + std::to_string(curve.arcs.size()) + " arcs");
  raised_text(r, curve);
  if (!raised_linkage_holds(ctx.tv->tri(), curve)) {
    r.line("raised arcs are not linked by face gluings");
    r.fail();
  }
}

void loop_push_up(Inputs& in, Report& r) {
  auto loop = in.normal_loop();
  auto ctx = transverse_for(in, r, &loop, true);
  if (!ctx.tv) return;
  auto res = push_up(*ctx.tv, *ctx.loop, in.cfg.site);
  auto text = serialize_loop(res.loop);
  r.doc["push"] = {{"tet", res.tet},
                   {"site_type", raised_type_name(res.site_type)},
                   {"removed", res.removed},
                   {"inserted", res.inserted},
                   {"loop", text}};
  r.line("pushed up across tetrahedron " + std::to_string(res.tet) + " at a type " +
         raised_type_name(res.site_type) + " arc: " + std::to_string(res.removed) + " arcs replaced by " +
         std::to_string(res.inserted));
  if (!in.cfg.out.empty())
    write_file(in.cfg.out, text);
  else
    r.line(text);
}

void disk_audit(Inputs& in, Report& r) {
  const auto& tt = in.tt();
  auto spec = in.diagram_spec();
  auto loop_path = in.diagram_loop_path(spec);
  auto dd = DiskDiagram::build(spec, &tt);
  auto total = audit_total_index(dd);
  auto minimal = audit_minimality(dd);
  r.doc["regions"] = dd.region_count();
  r.doc["total_index"] = index_string(total.total);
  r.doc["index_pass"] = total.pass;
  r.doc["minimal"] = minimal.empty();
  r.doc["minimality"] = to_json(minimal);
  r.line("index sum " + index_string(total.total) + (total.pass ? " (pass)" : " (fail: expected 1)"));
  r.line(minimal.empty() ? "minimal form" : "not minimal:");
  list_violations(r, minimal);
  if (!total.pass) r.fail();

  if (!loop_path.empty()) {
    auto text = read_file(loop_path, "loop");
    std::vector<BoundaryArc> arcs;
    if (loop_kind(text) == "dual") {
      arcs = boundary_arcs(parse_dual_loop(text));
    } else {
      auto ctx = transverse_for(in, r, nullptr, false);
      if (!ctx.tv) return;
      arcs = boundary_arcs(raise_loop(*ctx.tv, parse_normal_loop(text)));
    }
    auto bad = check_boundary(dd, arcs);
    r.doc["boundary"] = to_json(bad);
    r.line(bad.empty() ? "boundary carries the loop" : "boundary does not carry the loop:");
    list_violations(r, bad);
    if (!bad.empty()) r.fail();
  }
  if (!in.cfg.coor.empty()) {
    auto ctx = transverse_for(in, r, nullptr, false);
    if (!ctx.tv) return;
    auto orient = pull_back_orientation(dd, *ctx.tv);
    json bigons = json::array();
    for (const auto& b : orient.bigons)
      bigons.push_back({{"region", dd.region_name(b.region)}, {"max", b.max}});
    r.doc["orientation"] = {{"consistent", orient.consistent()},
                            {"inconsistencies", to_json(orient.inconsistencies)},
                            {"bigons", bigons}};
    r.line(orient.consistent() ? "transverse orientation pulls back consistently" : "inconsistent orientation:");
    list_violations(r, orient.inconsistencies);
    for (const auto& b : orient.bigons)
      r.line("  " + dd.region_name(b.region) + ": " + (b.max ? "max-bigon" : "min-bigon"));
    if (!orient.consistent()) r.fail();
  }
}

void disk_census(Inputs& in, Report& r) {
  auto dd = DiskDiagram::build(in.diagram_spec(), in.cfg.taut.empty() ? nullptr : &in.tt());
  json regions = json::array();
  std::map<std::string, int> counts;
  for (const auto& info : region_census(dd)) {
    regions.push_back(region_json(dd, info));
    ++counts[region_kind_name(info.kind)];
    r.line(region_text(dd, info));
  }
  r.doc["regions"] = regions;
  r.doc["kinds"] = counts;
  r.doc["total_index"] = index_string(audit_total_index(dd).total);
  r.line("index sum " + index_string(audit_total_index(dd).total));
}

void disk_push_min(Inputs& in, Report& r) {
  auto spec = in.diagram_spec();
  auto loop_path = in.diagram_loop_path(spec);
  auto ctx = transverse_for(in, r, nullptr, false);
  if (!ctx.tv) return;
  auto dd = DiskDiagram::build(spec, &ctx.tv->tt());
  int region = find_region(dd, in.cfg.bigon);
  std::optional<NormalLoop> gamma;
  if (!loop_path.empty()) gamma = parse_normal_loop(read_file(loop_path, "loop"));
  auto push = push_min_bigon(dd, region, *ctx.tv, gamma ? &*gamma : nullptr);
  auto text = serialize_diagram(push.diagram.spec());
  r.doc["push"] = {{"region", dd.region_name(region)},
                   {"site", push.site},
                   {"regions", push.diagram.region_count()},
                   {"stops", push.diagram.stop_count()},
                   {"total_index", index_string(audit_total_index(push.diagram).total)},
                   {"boundary_consistent", push.boundary_consistent},
                   {"diagram", text}};
  if (push.loop) r.doc["push"]["loop"] = serialize_loop(*push.loop);
  r.line("pushed " + dd.region_name(region) + " across stop " + std::to_string(push.site) + ": " +
         std::to_string(push.diagram.region_count()) + " regions, index sum " +
         index_string(audit_total_index(push.diagram).total));
  if (push.loop)
    r.line(push.boundary_consistent ? "new boundary carries the pushed loop"
                                    : "new boundary does not carry the pushed loop");
  if (!in.cfg.out.empty())
    write_file(in.cfg.out, text);
  else
    r.line(text);
}

json chain_json(const DiskDiagram& dd, const TrigonChain& c) {
  json links = json::array();
  for (const auto& l : c.links)
    links.push_back({{"region", dd.region_name(l.region)},
                     {"arc", l.arc},
                     {"branch", dd.spec().branches[l.branch].name},
                     {"agrees", l.agrees},
                     {"index", index_string(l.index)},
                     {"kind", region_kind_name(l.kind)},
                     {"type", raised_type_name(l.type)}});
  json out = {{"side", c.right ? "right" : "left"}, {"end", c.end}, {"local_minimum", c.local_minimum}, {"links", links}};
  if (c.q)
    out["quadrilateral"] = {{"region", dd.region_name(c.q->region)},
                            {"branch", dd.spec().branches[c.q->branch].name},
                            {"corners", c.q->corners},
                            {"cusps", c.q->cusps},
                            {"index", index_string(c.q->index)}};
  return out;
}

void surgery_text(Report& r, const DiskDiagram& dd, const MaxBigonReport& rep, int verbosity) {
  for (const auto* c : {&rep.right, &rep.left}) {
    std::string line = std::string("  ") + (c->right ? "right" : "left") + " chain:";
    for (const auto& l : c->links) line += " " + dd.region_name(l.region);
    if (c->q) line += ", quadrilateral in " + dd.region_name(c->q->region) + " of index " + index_string(c->q->index);
    r.line(line);
    if (verbosity > 0)
      for (const auto& l : c->links)
        r.line("    " + dd.region_name(l.region) + ": " + region_kind_name(l.kind) + ", index " +
               index_string(l.index) + ", arc type " + raised_type_name(l.type) +
               (l.agrees ? ", agrees" : ", disagrees"));
  }
  if (rep.s)
    r.line("  union: " + std::to_string(rep.s->pieces) + " pieces, " + std::to_string(rep.s->corners) + " corners, " +
           std::to_string(rep.s->cusps) + " cusps, index " + index_string(rep.s->index) +
           (rep.rectangle ? " (rectangle)" : ""));
  for (const auto& t : rep.traces)
    if (verbosity > 0 || !t.ok) r.line("  lowering at arc " + std::to_string(t.arc) + " " + t.point + ": " + t.detail);
  list_violations(r, rep.violations);
}

void disk_surgery(Inputs& in, Report& r) {
  auto spec = in.diagram_spec();
  auto loop_path = in.diagram_loop_path(spec);
  auto ctx = transverse_for(in, r, nullptr, false);
  if (!ctx.tv) return;
  auto dd = DiskDiagram::build(spec, &ctx.tv->tt());
  auto curve = raise_loop(*ctx.tv, parse_normal_loop(read_file(loop_path, "loop")));
  int region = find_region(dd, in.cfg.bigon);
  auto rep = max_bigon_surgery(dd, region, *ctx.tv, curve);
  json members = json::array();
  for (int m : rep.members) members.push_back(dd.region_name(m));
  json doc = {{"region", dd.region_name(region)},
              {"right", chain_json(dd, rep.right)},
              {"left", chain_json(dd, rep.left)},
              {"members", members},
              {"rectangle", rep.rectangle},
              {"violations", to_json(rep.violations)}};
  if (rep.s)
    doc["union"] = {{"pieces", rep.s->pieces},
                    {"euler", rep.s->euler},
                    {"corners", rep.s->corners},
                    {"cusps", rep.s->cusps},
                    {"index", index_string(rep.s->index)}};
  r.doc["surgery"] = doc;
  r.line("surgery on " + dd.region_name(region) + (rep.ok() ? ": every claim holds" : ": claims fail"));
  surgery_text(r, dd, rep, in.cfg.verbosity);
  if (!rep.ok()) r.fail();
}

void disk_refute(Inputs& in, Report& r) {
  if (in.cfg.kind != "vertical" && in.cfg.kind != "normal") throw InputError("--kind must be vertical or normal");
  auto spec = in.diagram_spec();
  auto loop_path = in.diagram_loop_path(spec);
  Refutation res;
  std::optional<DiskDiagram> dd;
  if (in.cfg.kind == "vertical") {
    const auto& tt = in.tt();
    dd = DiskDiagram::build(spec, &tt);
    std::optional<DualLoop> loop;
    if (!loop_path.empty()) loop = parse_dual_loop(read_file(loop_path, "loop"));
    res = refute_certificate(*dd, tt, loop ? &*loop : nullptr);
  } else {
    auto ctx = transverse_for(in, r, nullptr, false);
    if (!ctx.tv) return;
    dd = DiskDiagram::build(spec, &ctx.tv->tt());
    res = refute_certificate(*dd, *ctx.tv, parse_normal_loop(read_file(loop_path, "loop")));
  }
  json verdict = {{"kind", loop_kind_name(res.kind)},
                  {"verdict", verdict_name(res.verdict)},
                  {"stage", res.stage},
                  {"location", res.location},
                  {"reason", res.reason},
                  {"findings", to_json(res.findings)},
                  {"transcript", res.transcript},
                  {"pushes", res.pushes}};
  if (res.carved) verdict["carved_total"] = index_string(res.carved->total);
  if (res.pushed_loop) verdict["pushed_loop"] = serialize_loop(*res.pushed_loop);
  r.doc["refutation"] = verdict;
  for (const auto& l : res.transcript) r.line(l);
  if (in.cfg.verbosity > 0)
    for (const auto& s : res.surgeries) {
      r.line("surgery on " + dd->region_name(s.region) + ":");
      surgery_text(r, res.reduced ? *res.reduced : *dd, s, in.cfg.verbosity);
    }
  if (res.verdict == Verdict::Accepted) r.fail();
}

std::string slug(std::string name) {
  for (auto& c : name)
    if (c == '/') c = '_';
  return name;
}

void corpus_generate(Inputs& in, Report& r) {
  const auto& cfg = in.cfg;
  if (cfg.out.empty()) throw InputError("missing --out");
  if (cfg.max_tets < 1 || cfg.max_tets > 4) throw InputError("--max-tets must be between 1 and 4");
  if (cfg.max_regions < 1 || cfg.max_regions > 6) throw InputError("--max-regions must be between 1 and 6");
  auto seed = corpus_seed(cfg.seed);
  CensusBounds cb;
  cb.max_tets = cfg.max_tets;
  cb.exhaustive_tets = std::min(2, cfg.max_tets);
  auto entries = census(seed, cb);
  auto structures = census_structures(entries);
  LoopCorpusBounds lb;
  lb.loops_per_structure = cfg.loops_per_structure;
  lb.max_arcs = cfg.max_arcs;
  lb.diagrams = {8, cfg.max_regions, cfg.per_boundary};
  auto vertical = vertical_corpus(structures, seed, lb);
  auto normal = normal_corpus(structures, seed, lb);

  fs::path dir(cfg.out);
  json manifest = {{"seed", seed}, {"triangulations", json::array()}, {"structures", json::array()}, {"cases", json::array()}};
  for (const auto& e : entries) {
    write_file(dir / "tri" / (e.name + ".tri"), serialize_triangulation(e.tri));
    manifest["triangulations"].push_back({{"name", e.name}, {"file", "tri/" + e.name + ".tri"}});
  }
  for (const auto& s : structures) {
    auto base = slug(s.name);
    json entry = {{"name", s.name}, {"taut", "taut/" + base + ".taut"}};
    write_file(dir / "taut" / (base + ".taut"), serialize_taut(s.tt.taut()));
    if (s.tv) {
      write_file(dir / "taut" / (base + ".coor"), serialize_coorientation(s.tv->coor(), s.tt.comb()));
      entry["coor"] = "taut/" + base + ".coor";
    }
    manifest["structures"].push_back(entry);
  }
  int diagrams = 0;
  auto emit = [&](const std::string& kind, int structure, const std::string& loop_text,
                  const std::vector<DiagramSpec>& specs, int index) {
    auto base = slug(structures[structure].name) + "_" + kind[0] + std::to_string(index);
    write_file(dir / "loops" / (base + ".loop"), loop_text);
    json files = json::array();
    for (size_t i = 0; i < specs.size(); ++i) {
      auto spec = specs[i];
      spec.boundary_loop = "../loops/" + base + ".loop";
      auto name = base + "_d" + std::to_string(i) + ".disk";
      write_file(dir / "disks" / name, serialize_diagram(spec));
      files.push_back("disks/" + name);
      ++diagrams;
    }
    manifest["cases"].push_back({{"kind", kind},
                                 {"structure", structures[structure].name},
                                 {"loop", "loops/" + base + ".loop"},
                                 {"diagrams", files}});
  };
  std::map<int, int> seen;
  for (const auto& c : vertical) emit("vertical", c.structure, serialize_loop(c.loop), c.diagrams, seen[c.structure]++);
  seen.clear();
  for (const auto& c : normal) emit("normal", c.structure, serialize_loop(c.loop), c.diagrams, seen[c.structure]++);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  r.doc["seed"] = seed;
  r.doc["triangulations"] = entries.size();
  r.doc["structures"] = structures.size();
  r.doc["loops"] = vertical.size() + normal.size();
  r.doc["diagrams"] = diagrams;
  r.line("seed " + std::to_string(seed) + ": " + std::to_string(entries.size()) + " triangulations, " +
         std::to_string(structures.size()) + " taut structures, " + std::to_string(vertical.size()) +
         " vertical and " + std::to_string(normal.size()) + " normal loops, " + std::to_string(diagrams) +
         " diagrams in " + dir.string());
}

using Handler = void (*)(Inputs&, Report&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"tri validate", tri_validate},
      {"taut verify", taut_verify},
      {"taut enumerate", taut_enumerate},
      {"transverse detect", transverse_detect},
      {"transverse verify", transverse_verify},
      {"cover build", cover_build},
      {"loop check-vertical", loop_check_vertical},
      {"loop check-normal", loop_check_normal},
      {"loop raise", loop_raise},
      {"loop push-up", loop_push_up},
      {"disk audit", disk_audit},
      {"disk census", disk_census},
      {"disk push-min", disk_push_min},
      {"disk surgery", disk_surgery},
      {"disk refute", disk_refute},
      {"corpus generate", corpus_generate},
  };
  return table;
}

std::string render(const PipelineConfig& cfg, const Report& r) {
  if (cfg.format == Format::Json) return r.doc.dump(2) + "\n";
  std::string out;
  for (const auto& l : r.text) out += l + "\n";
  return out;
}

}  // namespace

PipelineConfig parse_args(int argc, const char* const* argv, std::string* help) {
  PipelineConfig cfg;
  CLI::App app{"Taut triangulations, train tracks and disk diagrams", "tauttrack"};
  app.require_subcommand(1);
  std::string format = "text";
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("-v,--verbose", cfg.verbosity, "more detail");
  };
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& desc,
                  std::initializer_list<std::string> inputs) {
    auto* sub = group->add_subcommand(name, desc);
    for (const auto& opt : inputs) {
      if (opt == "tri") sub->add_option("--tri", cfg.tri, "gluing table");
      if (opt == "taut") sub->add_option("--taut", cfg.taut, "taut structure");
      if (opt == "coor") sub->add_option("--coor", cfg.coor, "co-orientation");
      if (opt == "loop") sub->add_option("--loop", cfg.loop, "dual or normal loop");
      if (opt == "diagram") sub->add_option("--diagram", cfg.diagram, "disk diagram");
      if (opt == "out") sub->add_option("-o,--out", cfg.out, "output path");
    }
    common(sub);
    sub->callback([&cfg, group, name] { cfg.command = {group->get_name(), name}; });
    return sub;
  };
  auto* tri = app.add_subcommand("tri", "gluing tables")->require_subcommand(1);
  leaf(tri, "validate", "check gluings, edge classes and vertex links", {"tri"});
  auto* taut = app.add_subcommand("taut", "taut angle structures")->require_subcommand(1);
  leaf(taut, "verify", "check a taut structure", {"tri", "taut"});
  leaf(taut, "enumerate", "list every taut structure", {"tri"});
  auto* tv = app.add_subcommand("transverse", "transverse co-orientations")->require_subcommand(1);
  leaf(tv, "detect", "find a transverse co-orientation", {"tri", "taut", "out"});
  leaf(tv, "verify", "check a co-orientation", {"tri", "taut", "coor"});
  auto* cover = app.add_subcommand("cover", "double covers")->require_subcommand(1);
  leaf(cover, "build", "transverse double cover, lifting --loop", {"tri", "taut", "loop", "out"});
  auto* loop = app.add_subcommand("loop", "dual and normal loops")->require_subcommand(1);
  leaf(loop, "check-vertical", "every step crosses the equator", {"tri", "taut", "loop"});
  leaf(loop, "check-normal", "every crossing is smooth", {"tri", "taut", "loop"});
  leaf(loop, "raise", "raise a normal loop", {"tri", "taut", "coor", "loop"});
  leaf(loop, "push-up", "push a normal loop up at a type A arc", {"tri", "taut", "coor", "loop", "out"})
      ->add_option("--site", cfg.site, "raised arc index")
      ->required();
  auto* disk = app.add_subcommand("disk", "disk diagrams")->require_subcommand(1);
  leaf(disk, "audit", "index sum, minimal form, boundary and orientation", {"tri", "taut", "coor", "loop", "diagram"});
  leaf(disk, "census", "region kinds and indices", {"tri", "taut", "diagram"});
  leaf(disk, "push-min", "push across a min-bigon", {"tri", "taut", "coor", "loop", "diagram", "out"})
      ->add_option("--bigon", cfg.bigon, "region name or index")
      ->required();
  leaf(disk, "surgery", "trigon chains from a max-bigon", {"tri", "taut", "coor", "loop", "diagram"})
      ->add_option("--bigon", cfg.bigon, "region name or index")
      ->required();
  leaf(disk, "refute", "refute a disk certificate", {"tri", "taut", "coor", "loop", "diagram"})
      ->add_option("--kind", cfg.kind, "vertical or normal")
      ->required()
      ->check(CLI::IsMember({"vertical", "normal"}));
  auto* corpus = app.add_subcommand("corpus", "test corpora")->require_subcommand(1);
  auto* gen = leaf(corpus, "generate", "write a deterministic corpus", {"out"});
  gen->add_option("--seed", cfg.seed, "generator seed (TAUTTRACK_SEED overrides)");
  gen->add_option("--max-tets", cfg.max_tets, "largest triangulation, at most 4");
  gen->add_option("--max-regions", cfg.max_regions, "largest diagram, at most 6");
  gen->add_option("--loops", cfg.loops_per_structure, "random loops per structure");
  gen->add_option("--max-arcs", cfg.max_arcs, "longest boundary");
  gen->add_option("--per-boundary", cfg.per_boundary, "diagrams kept per loop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0 && help) {
      std::ostringstream out;
      app.exit(e, out, out);
      *help = out.str();
      cfg.command.clear();
      return cfg;
    }
    throw InputError(e.what());
  }
  cfg.format = format == "json" ? Format::Json : Format::Text;
  return cfg;
}

RunResult run(const PipelineConfig& config) {
  Report r;
  auto command = joined(config.command);
  r.doc["command"] = command;
  auto it = handlers().find(command);
  try {
    if (it == handlers().end()) throw InputError("unknown command '" + command + "'");
    Inputs in{config, {}, {}};
    it->second(in, r);
  } catch (const std::exception& e) {
    r = Report{};
    r.doc["command"] = command;
    r.doc["error"] = e.what();
    r.line(std::string("error: ") + e.what());
    r.status = exit_input_error;
  }
  r.doc["status"] = r.status;
  return {r.status, render(config, r)};
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  PipelineConfig cfg;
  std::string help;
  try {
    cfg = parse_args(argc, argv, &help);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  }
  if (cfg.command.empty()) {
    out << help;
    return exit_pass;
  }
  auto res = run(cfg);
  (res.status == exit_input_error && cfg.format == Format::Text ? err : out) << res.report;
  return res.status;
}

}  // namespace tauttrack::cli
