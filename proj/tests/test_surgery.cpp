#include <doctest.h>

#include <map>
#include <set>

#include "tauttrack/corpus.hpp"
#include "tauttrack/surgery.hpp"

using namespace tauttrack;

namespace {

const std::vector<StructureEntry>& structures() {
  static const auto s = census_structures(census(5, {3, 2, 4000, 12}));
  return s;
}

const std::vector<NormalCase>& normal_cases() {
  static const auto c = normal_corpus(structures(), 17);
  return c;
}

// Larger boundaries with a type C arc; these reach both quadrilaterals.
const std::vector<NormalCase>& surgery_cases() {
  static const auto c = [] {
    LoopCorpusBounds b;
    b.loops_per_structure = 8;
    b.min_arcs = 6;
    b.max_arcs = 8;
    b.need_type_c = true;
    b.diagrams = {8, 8, 60};
    return normal_corpus(structures(), 23, b);
  }();
  return c;
}

// Switch degrees along a bigon's track side, read from the document.
int expected_stops_after_push(const DiskDiagram& dd, int region) {
  std::map<int, int> degree;
  for (const auto& b : dd.spec().branches)
    for (const auto& v : {b.v, b.w})
      if (!v.stop) ++degree[v.index];
  int n = dd.stop_count() - 2;
  const auto& walk = dd.walks(region).front();
  for (int d : walk)
    if (dd.is_branch_dart(d) && dd.is_switch(dd.head(d))) n += degree[dd.head(d) - dd.stop_count()] - 2;
  return n;
}

}  // namespace

TEST_CASE("min-bigon push removes exactly one region") {
  int pushes = 0, consistent = 0;
  for (const auto& c : normal_cases()) {
    const auto& tv = *structures()[c.structure].tv;
    for (const auto& spec : c.diagrams) {
      auto dd = DiskDiagram::build(spec, &tv.tt());
      for (const auto& tag : pull_back_orientation(dd, tv).bigons) {
        if (tag.max) {
          CHECK_THROWS_AS(push_min_bigon(dd, tag.region, tv), InputError);
          continue;
        }
        auto pushed = push_min_bigon(dd, tag.region, tv, &c.loop);
        ++pushes;
        consistent += pushed.boundary_consistent;
        CHECK(pushed.diagram.region_count() == dd.region_count() - 1);
        CHECK(pushed.diagram.stop_count() == expected_stops_after_push(dd, tag.region));
        CHECK(audit_total_index(pushed.diagram).total == 4);
        CHECK(pushed.loop.has_value());
        // The rebuilt document parses back to the same diagram.
        auto again = DiskDiagram::build(parse_diagram(serialize_diagram(pushed.diagram.spec())), &tv.tt());
        CHECK(again.region_count() == pushed.diagram.region_count());
        if (pushed.boundary_consistent)
          CHECK(check_boundary(pushed.diagram, boundary_arcs(raise_loop(tv, *pushed.loop))).empty());
      }
    }
  }
  CHECK(pushes > 100);
  CHECK(consistent > 0);
}

TEST_CASE("repeated pushes terminate") {
  int runs = 0;
  for (const auto& c : normal_cases()) {
    const auto& tv = *structures()[c.structure].tv;
    for (const auto& spec : c.diagrams) {
      auto dd = DiskDiagram::build(spec, &tv.tt());
      for (size_t guard = 0; guard <= spec.regions.size(); ++guard) {
        int target = -1;
        for (const auto& tag : pull_back_orientation(dd, tv).bigons)
          if (!tag.max) target = tag.region;
        if (target < 0) break;
        int before = dd.region_count();
        try {
          dd = push_min_bigon(dd, target, tv).diagram;
        } catch (const InputError&) {
          break;
        }
        REQUIRE(dd.region_count() == before - 1);
      }
      ++runs;
    }
  }
  CHECK(runs > 0);
}

TEST_CASE("max-bigon surgery constants") {
  int quads = 0, rectangles = 0;
  for (const auto& c : surgery_cases()) {
    const auto& tv = *structures()[c.structure].tv;
    for (const auto& spec : c.diagrams) {
      auto dd = DiskDiagram::build(spec, &tv.tt());
      auto orient = pull_back_orientation(dd, tv);
      for (const auto& tag : orient.bigons) {
        if (!tag.max) {
          CHECK_THROWS_AS(max_bigon_surgery(dd, tag.region, tv, c.raised), InputError);
          continue;
        }
        auto rep = max_bigon_surgery(dd, tag.region, tv, c.raised);
        for (const auto* chain : {&rep.right, &rep.left}) {
          // Downhill links keep the orientation of b_0: along the boundary
          // on the right, against it on the left.
          for (int i = 0; i + 1 < chain->end; ++i) CHECK(chain->links[i].agrees == chain->right);
          if (!chain->q) continue;
          ++quads;
          CHECK(chain->q->corners == 3);
          CHECK(chain->q->cusps == 1);
          CHECK(chain->q->index == -1);
          CHECK(chain->q->region == chain->links.back().region);
        }
        if (!rep.s) continue;
        ++rectangles;
        CHECK(rep.s->corners == 4);
        CHECK(rep.s->cusps == 0);
        CHECK(rep.s->index == 0);
        CHECK(rep.rectangle);
        // Additivity: the union's index is the sum over its pieces.
        IndexQ sum = 2 * -1;
        for (int r : rep.members) sum += region_info(dd, r).index;
        CHECK(sum == rep.s->index);
        auto left = rep.left.trigons(), right = rep.right.trigons();
        for (int r : left) CHECK(std::count(right.begin(), right.end(), r) == 0);
        CHECK(std::count(rep.members.begin(), rep.members.end(), tag.region) == 1);
        CHECK_FALSE(check_disjoint({rep, rep}).empty());
      }
    }
  }
  CHECK(quads > 0);
  CHECK(rectangles > 0);
}

TEST_CASE("carving keeps the total index of the disk") {
  int carved = 0;
  for (const auto& c : surgery_cases()) {
    const auto& tv = *structures()[c.structure].tv;
    for (const auto& spec : c.diagrams) {
      auto dd = DiskDiagram::build(spec, &tv.tt());
      std::vector<MaxBigonReport> reports;
      bool complete = true;
      for (const auto& tag : pull_back_orientation(dd, tv).bigons)
        if (tag.max) {
          reports.push_back(max_bigon_surgery(dd, tag.region, tv, c.raised));
          complete = complete && reports.back().s.has_value();
        }
      if (reports.empty() || !complete || !check_disjoint(reports).empty()) {
        if (!complete) CHECK_THROWS_AS(carve(dd, reports), InputError);
        continue;
      }
      auto cd = carve(dd, reports);
      ++carved;
      CHECK(cd.total == 4);
      CHECK(cd.boundary_index == 4);
      CHECK(cd.outward_corners == 2 * static_cast<int>(reports.size()));
      IndexQ kept = 0;
      for (const auto& r : cd.regions) kept += region_info(dd, r.region).index;
      CHECK(cd.total == kept + 2 * static_cast<int>(reports.size()));
    }
  }
  CHECK(carved > 0);
}

TEST_CASE("vertical refutation") {
  auto tri = parse_triangulation(
      "tets 2\nglue 0 0 -> 1 0132\nglue 0 1 -> 1 1230\nglue 0 2 -> 1 2310\nglue 0 3 -> 1 2103\n"
      "glue 1 0 -> 0 0132\nglue 1 1 -> 0 3201\nglue 1 2 -> 0 3012\nglue 1 3 -> 0 2103\n");
  TautTriangulation tt(tri, enumerate_taut(tri).front());

  SUBCASE("no branches") {
    auto dd = DiskDiagram::build(parse_diagram("stops 0\nregions\n  r0: walk=d tet=0\n"), &tt);
    auto r = refute_certificate(dd, tt, nullptr);
    CHECK(r.verdict == Verdict::Accepted);
    CHECK(r.stage == "preconditions");
  }

  int refuted = 0, reducible = 0;
  for (const auto& c : vertical_corpus(structures(), 3)) {
    const auto& st = structures()[c.structure].tt;
    for (const auto& spec : c.diagrams) {
      auto dd = DiskDiagram::build(spec, &st);
      auto r = refute_certificate(dd, st, &c.loop);
      REQUIRE(r.verdict != Verdict::Accepted);
      if (r.verdict == Verdict::Reducible) {
        ++reducible;
        CHECK_FALSE(audit_minimality(dd).empty());
        continue;
      }
      ++refuted;
      CHECK(r.stage == "parity");
      // The named switch joins faces on opposite sides of the equator.
      bool found = false;
      for (int v = dd.stop_count(); v < dd.stop_count() + dd.switch_count(); ++v) {
        if (dd.vertex_name(v) != r.location) continue;
        for (int d : dd.vertex_darts(v)) {
          int in = dd.rev(d), out = dd.sigma(d);
          int reg = dd.region_of(out);
          if (reg < 0 || region_info(dd, reg).kind != RegionKind::BoundaryBigon) continue;
          if (dd.passage_kind(in, out) != PassageKind::Smooth) continue;
          int t = dd.region_tet(reg);
          found = found || st.face_side(t, dd.seen(in).face) != st.face_side(t, dd.seen(out).face);
        }
      }
      CHECK(found);
    }
  }
  CHECK(refuted > 0);
  CHECK(reducible > 0);
}

TEST_CASE("normal refutation never accepts a corpus diagram") {
  std::map<std::string, int> stages;
  for (const auto& c : normal_cases()) {
    const auto& tv = *structures()[c.structure].tv;
    for (const auto& spec : c.diagrams) {
      auto dd = DiskDiagram::build(spec, &tv.tt());
      auto r = refute_certificate(dd, tv, c.loop);
      REQUIRE(r.verdict != Verdict::Accepted);
      CHECK_FALSE(r.transcript.empty());
      ++stages[verdict_name(r.verdict) + " " + r.stage];
    }
  }
  CHECK(stages.size() > 1);
}

TEST_CASE("normal refutation preconditions") {
  const auto& c = normal_cases().front();
  const auto& tv = *structures()[c.structure].tv;
  auto dd = DiskDiagram::build(c.diagrams.front(), &tv.tt());
  NormalLoop other = c.loop;
  std::rotate(other.arcs.begin(), other.arcs.begin() + 1, other.arcs.end());
  auto raised = raise_loop(tv, other);
  if (!check_boundary(dd, boundary_arcs(raised)).empty()) {
    auto r = refute_certificate(dd, tv, other);
    CHECK(r.verdict == Verdict::Accepted);
    CHECK(r.stage == "preconditions");
    CHECK(r.reason.find("re-examine") != std::string::npos);
  }
  auto empty = DiskDiagram::build(parse_diagram("stops 0\nregions\n  r0: walk=d tet=0\n"), &tv.tt());
  CHECK(refute_certificate(empty, tv, c.loop).verdict == Verdict::Accepted);
}
