#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tauttrack/corpus.hpp"
#include "tauttrack/loops.hpp"

using namespace tauttrack;

namespace {

Triangulation figure8() { return parse_triangulation(oracle::read_data("figure8.tri")); }

bool connected(const Triangulation& tri) {
  UnionFind uf(tri.size());
  for (int t = 0; t < tri.size(); ++t)
    for (int k = 0; k < 4; ++k) uf.unite(t, tri.gluing(t, k).tet);
  return uf.count_sets() <= 1;
}

std::vector<TautTriangulation> taut_corpus(int trials, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<TautTriangulation> out;
  auto f8 = figure8();
  for (auto& taut : enumerate_taut(f8)) out.emplace_back(f8, taut);
  for (int i = 0; i < trials; ++i) {
    int n = 1 + static_cast<int>(rng() % 4);
    auto tri = oracle::random_closed(n, rng);
    if (!connected(tri)) continue;
    for (auto& taut : enumerate_taut(tri)) out.emplace_back(tri, taut);
  }
  return out;
}

std::vector<TransverseTaut> transverse_corpus(int trials, unsigned seed) {
  std::vector<TransverseTaut> out;
  for (auto& tt : taut_corpus(trials, seed))
    if (auto coor = detect_transverse_taut(tt)) out.emplace_back(tt, *coor);
  return out;
}

std::vector<NormalLoop> loops_for(const TautTriangulation& tt, std::mt19937_64& rng, int count) {
  std::vector<NormalLoop> out;
  for (int i = 0; i < count; ++i)
    if (auto loop = random_normal_loop(tt, rng)) out.push_back(*loop);
  return out;
}

// Whether some choice of arc directions makes every crossing share an edge
// class with opposite branching sides; exhaustive over 2^n directions.
bool normal_by_exhaustion(const TautTriangulation& tt, const NormalLoop& loop) {
  int n = loop.size();
  auto cut = [&](int i, int which) {
    const auto& a = loop.arcs[i];
    std::vector<int> others;
    for (int v = 0; v < 4; ++v)
      if (v != a.face && v != a.apex) others.push_back(v);
    return model::edge_index(a.apex, others[which]);
  };
  for (int mask = 0; mask < (1 << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      int j = (i + 1) % n;
      int out = cut(i, 1 - ((mask >> i) & 1));
      int in = cut(j, (mask >> j) & 1);
      auto s = tt.comb().slot(loop.arcs[i].tet, loop.arcs[i].face, out);
      auto r = tt.comb().slot(loop.arcs[j].tet, loop.arcs[j].face, in);
      const auto& colors = tt.edge_sides(s.edge_class).colors;
      ok = s.edge_class == r.edge_class && colors[s.position] != colors[r.position];
    }
    if (ok) return true;
  }
  return false;
}

// Faces crossed by the raised curve near one crossing: the slots strictly
// above the given slot along its run of equal colour, counted towards the end
// of the run whose pi germ has both faces pointing into it.
int faces_above(const TransverseTaut& tv, int edge_class, int position) {
  const auto& cls = tv.comb().edges()[edge_class];
  const auto& colors = tv.tt().edge_sides(edge_class).colors;
  int n = cls.degree();
  for (int dir : {1, -1}) {
    int count = 0;
    int s = position;
    while (true) {
      int next = (s + dir + n) % n;
      if (colors[next] != colors[position]) break;
      s = next;
      ++count;
    }
    // germ between slot s and the first slot of the other colour
    const auto& g = cls.germs[dir > 0 ? s : (s - 1 + n) % n];
    bool both_in = points_into(tv.comb(), tv.coor(), {g.tet, g.entry_face}) &&
                   points_into(tv.comb(), tv.coor(), {g.tet, g.exit_face});
    if (both_in) return count;
  }
  throw std::logic_error("no top germ");
}

NormalArc pick_arc(const std::vector<NormalArc>& all, std::mt19937_64& rng) {
  return all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
}

}  // namespace

TEST_CASE("loop documents round trip") {
  auto d = parse_dual_loop("dual (0 1 2) (1 3 0)  # comment\n");
  CHECK(d.size() == 2);
  CHECK(d.steps[1] == DualStep{1, 3, 0});
  CHECK(parse_dual_loop(serialize_loop(d)) == d);
  auto n = parse_normal_loop("normal (0 1 2)\n(1 0 3)\n");
  CHECK(n.arcs[1] == NormalArc{1, 0, 3});
  CHECK(parse_normal_loop(serialize_loop(n)) == n);
  CHECK(loop_kind("# x\nnormal (0 1 2)") == "normal");
  CHECK_THROWS_AS(parse_dual_loop("normal (0 1 2)"), InputError);
  CHECK_THROWS_AS(parse_dual_loop("dual (0 1)"), InputError);
  CHECK_THROWS_AS(parse_dual_loop("dual (0 1 2) junk"), InputError);
  CHECK(parse_dual_loop("dual").size() == 0);
}

TEST_CASE("vertical check matches the pi-edge oracle") {
  std::mt19937_64 rng(41);
  int vertical = 0, flagged = 0;
  for (const auto& tt : taut_corpus(120, 2)) {
    for (int i = 0; i < 4; ++i) {
      if (auto loop = random_dual_loop(tt, rng, true)) {
        CHECK(check_vertical(tt, *loop).empty());
        ++vertical;
      }
      if (auto loop = random_dual_loop(tt, rng, false)) {
        auto report = check_vertical(tt, *loop);
        std::vector<std::string> expected;
        for (int s = 0; s < loop->size(); ++s) {
          const auto& st = loop->steps[s];
          int e = model::shared_edge(st.face_in, st.face_out);
          if (oracle::pi_angle(tt.taut().pi_pair[st.tet], e)) expected.push_back("step " + std::to_string(s));
        }
        REQUIRE(report.size() == expected.size());
        for (size_t k = 0; k < report.size(); ++k) CHECK(report[k].location == expected[k]);
        flagged += static_cast<int>(report.size());
      }
    }
  }
  CHECK(vertical > 0);
  CHECK(flagged > 0);
}

TEST_CASE("vertical check errors") {
  auto tri = figure8();
  TautTriangulation tt(tri, enumerate_taut(tri).front());
  CHECK_THROWS_AS(check_vertical(tt, DualLoop{}), InputError);
  CHECK_THROWS_AS(check_vertical(tt, DualLoop{{{0, 1, 1}}}), InputError);
  CHECK_THROWS_AS(check_vertical(tt, DualLoop{{{0, 0, 1}, {0, 0, 1}}}), InputError);
  CHECK_THROWS_AS(check_vertical(tt, DualLoop{{{7, 0, 1}}}), InputError);
}

TEST_CASE("normal check agrees with exhaustive direction search") {
  auto tri = figure8();
  int normal = 0, rejected = 0;
  for (const auto& taut : enumerate_taut(tri)) {
    TautTriangulation tt(tri, taut);
    std::vector<NormalArc> all;
    for (int t = 0; t < 2; ++t)
      for (int f = 0; f < 4; ++f)
        for (int v = 0; v < 4; ++v)
          if (v != f) all.push_back({t, f, v});
    for (const auto& a : all)
      for (const auto& b : all) {
        NormalLoop loop{{a, b}};
        bool ok = check_normal(tt, loop).empty();
        CHECK(ok == normal_by_exhaustion(tt, loop));
        ok ? ++normal : ++rejected;
      }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
      NormalLoop loop{{pick_arc(all, rng), pick_arc(all, rng), pick_arc(all, rng)}};
      CHECK(check_normal(tt, loop).empty() == normal_by_exhaustion(tt, loop));
    }
  }
  CHECK(normal > 0);
  CHECK(rejected > 0);
  TautTriangulation tt(tri, enumerate_taut(tri).front());
  CHECK_THROWS_AS(check_normal(tt, NormalLoop{}), InputError);
  CHECK_THROWS_AS(check_normal(tt, NormalLoop{{{0, 1, 1}}}), InputError);
  CHECK_THROWS_AS(check_normal(tt, NormalLoop{{{3, 1, 0}}}), InputError);
}

TEST_CASE("same-colour crossing is reported with its colours") {
  auto tri = figure8();
  TautTriangulation tt(tri, enumerate_taut(tri).front());
  const auto& cls = tt.comb().edges()[0];
  const auto& colors = tt.edge_sides(0).colors;
  // Two arcs crossing edge class 0 between two slots of equal colour.
  bool found = false;
  for (int p = 0; p < cls.degree() && !found; ++p)
    for (int q = 0; q < cls.degree() && !found; ++q) {
      if (p == q || colors[p] != colors[q]) continue;
      const auto& gp = cls.germs[p];
      const auto& gq = cls.germs[q];
      auto [u, v] = model::kEdgeVertices[gp.edge];
      auto [x, y] = model::kEdgeVertices[gq.edge];
      for (int a : {u, v})
        for (int b : {x, y}) {
          NormalLoop loop{{{gp.tet, gp.entry_face, a}, {gq.tet, gq.entry_face, b}}};
          auto report = check_normal(tt, loop);
          if (normal_by_exhaustion(tt, loop) || report.empty()) continue;
          bool named = false;
          for (const auto& v : report) named |= v.kind == "not smooth" && v.detail.find("colored") != std::string::npos;
          if (named) found = true;
        }
    }
  CHECK(found);
}

TEST_CASE("generated normal loops pass the check") {
  std::mt19937_64 rng(8);
  int loops = 0;
  for (const auto& tt : taut_corpus(80, 9))
    for (const auto& loop : loops_for(tt, rng, 3)) {
      CHECK(check_normal(tt, loop).empty());
      if (loop.size() <= 12) CHECK(normal_by_exhaustion(tt, loop));
      ++loops;
    }
  CHECK(loops > 50);
}

TEST_CASE("raised curves: types, lowerings and linkage") {
  std::mt19937_64 rng(13);
  std::map<RaisedType, int> seen;
  int curves = 0;
  for (const auto& tv : transverse_corpus(150, 21)) {
    for (const auto& loop : loops_for(tv.tt(), rng, 4)) {
      auto curve = raise_loop(tv, loop);
      ++curves;
      CHECK(raised_linkage_holds(tv.tri(), curve));
      std::vector<int> concat;
      int expected_arcs = 0;
      for (const auto& c : curve.crossings)
        expected_arcs += faces_above(tv, c.edge_class, c.from_position) + faces_above(tv, c.edge_class, c.to_position);
      CHECK(static_cast<int>(curve.arcs.size()) == expected_arcs);
      for (const auto& a : curve.arcs) {
        seen[a.type]++;
        int lower = a.entry_lower + a.exit_lower;
        CHECK(a.entry_lower == tv.is_lower(a.tet, a.entry_face));
        CHECK(a.exit_lower == tv.is_lower(a.tet, a.exit_face));
        switch (a.type) {
          case RaisedType::A1:
          case RaisedType::A2:
            CHECK(lower == 0);
            CHECK(a.lowering.size() == 2);
            break;
          case RaisedType::A3:
            CHECK(lower == 0);
            CHECK(a.lowering.size() == 1);
            break;
          case RaisedType::B1:
            CHECK(lower == 1);
            CHECK(a.vertex_crossing >= 0);
            CHECK(a.lowering.empty());
            break;
          case RaisedType::B2:
            CHECK(lower == 1);
            CHECK(a.lowering.size() == 1);
            break;
          case RaisedType::C: {
            CHECK(lower == 2);
            CHECK(a.lowering.empty());
            // the vertex lies on the bottom edge of the tetrahedron
            const auto& c = curve.crossings[a.vertex_crossing];
            CHECK(tv.comb().edge_class_of(a.tet, tv.bottom_edge(a.tet)) == c.edge_class);
            break;
          }
        }
        concat.insert(concat.end(), a.lowering.begin(), a.lowering.end());
      }
      // lowerings rebuild gamma up to the choice of starting arc
      REQUIRE(concat.size() == curve.gamma.size());
      int n = static_cast<int>(concat.size());
      for (int k = 0; k < n; ++k) CHECK(concat[k] == (concat[0] + k) % n);
    }
  }
  CHECK(curves > 20);
  for (auto t : {RaisedType::A1, RaisedType::A2, RaisedType::A3, RaisedType::B1, RaisedType::B2, RaisedType::C}) {
    INFO(raised_type_name(t));
    CHECK(seen[t] > 0);
  }
}

TEST_CASE("upper replacement") {
  auto tvs = transverse_corpus(40, 4);
  REQUIRE(!tvs.empty());
  const auto& tv = tvs.front();
  int t = 0;
  int top = tv.top_edge(t), bottom = tv.bottom_edge(t);
  std::vector<int> eq;
  for (int e = 0; e < 6; ++e)
    if (e != top && e != bottom) eq.push_back(e);
  for (int x : eq)
    for (int y : eq) {
      auto path = upper_replacement(tv, t, x, y);
      if (x == y) {
        CHECK(path.empty());
        continue;
      }
      bool same_upper = false;
      for (int f = 0; f < 4; ++f)
        same_upper |= !tv.is_lower(t, f) && model::face_contains_edge(f, x) && model::face_contains_edge(f, y);
      CHECK(path.size() == (same_upper ? 1u : 2u));
      for (const auto& a : path) CHECK(!tv.is_lower(a.tet, a.face));
    }
  CHECK_THROWS_AS(upper_replacement(tv, t, top, eq[0]), InputError);
}

TEST_CASE("push up replaces the lower sub-path and keeps the loop normal") {
  std::mt19937_64 rng(99);
  std::map<RaisedType, std::set<int>> deltas;
  int pushes = 0, lifted_arcs = 0;
  for (const auto& tv : transverse_corpus(150, 31)) {
    for (const auto& loop : loops_for(tv.tt(), rng, 4)) {
      auto curve = raise_loop(tv, loop);
      for (int k = 0; k < static_cast<int>(curve.arcs.size()); ++k) {
        if (!is_type_a(curve.arcs[k].type)) {
          CHECK_THROWS_AS(push_up(tv, loop, k), InputError);
          continue;
        }
        auto res = push_up(tv, loop, k);
        ++pushes;
        CHECK(check_normal(tv.tt(), res.loop).empty());
        CHECK(res.loop.size() - loop.size() == res.inserted - res.removed);
        deltas[res.site_type].insert(res.inserted - res.removed);
        // The replacement runs through the upper faces of the tetrahedron, so
        // its raised arcs sit in the tetrahedra glued on above.
        auto after = raise_loop(tv, res.loop);
        for (const auto& a : after.arcs)
          for (int idx : a.lowering) {
            int off = idx - res.first_inserted;
            if (off < 0 || off >= res.inserted) continue;
            const auto& arc = res.loop.arcs[idx];
            CHECK(arc.tet == res.tet);
            CHECK(!tv.is_lower(arc.tet, arc.face));
            CHECK(a.tet == tv.tri().gluing(res.tet, arc.face).tet);
            ++lifted_arcs;
          }
      }
    }
  }
  CHECK(pushes > 20);
  CHECK(deltas[RaisedType::A1] == std::set<int>{-1});
  CHECK(deltas[RaisedType::A2] == std::set<int>{0});
  CHECK(deltas[RaisedType::A3] == std::set<int>{1});
  CHECK(lifted_arcs > 0);
  CHECK_THROWS_AS(push_up(transverse_corpus(10, 4).front(), NormalLoop{}, 0), InputError);
}

TEST_CASE("repeated pushes terminate or revisit a loop") {
  std::mt19937_64 rng(5);
  int runs = 0;
  for (const auto& tv : transverse_corpus(60, 77)) {
    for (const auto& start : loops_for(tv.tt(), rng, 2)) {
      std::set<std::string> seen{serialize_loop(start)};
      NormalLoop cur = start;
      bool stopped = false;
      for (int step = 0; step < 40 && !stopped; ++step) {
        auto curve = raise_loop(tv, cur);
        auto it = std::find_if(curve.arcs.begin(), curve.arcs.end(), [](const RaisedArc& a) { return is_type_a(a.type); });
        if (it == curve.arcs.end()) break;
        auto res = push_up(tv, cur, static_cast<int>(it - curve.arcs.begin()));
        int delta = res.loop.size() - cur.size();
        CHECK(delta >= -2);
        CHECK(delta <= 2);
        cur = res.loop;
        stopped = !seen.insert(serialize_loop(cur)).second;
      }
      ++runs;
    }
  }
  CHECK(runs > 10);
}

TEST_CASE("loops lift to the double cover") {
  std::mt19937_64 rng(3);
  int lifted = 0;
  for (const auto& tt : taut_corpus(100, 12)) {
    auto cover = build_double_cover(tt);
    TautTriangulation up(cover.tri, cover.taut);
    TransverseTaut tv(up, cover.coor);
    for (const auto& loop : loops_for(tt, rng, 2)) {
      auto lift = lift_loop(tt, cover, loop);
      CHECK(check_normal(up, lift).empty());
      CHECK((lift.size() == loop.size() || lift.size() == 2 * loop.size()));
      for (int i = 0; i < lift.size(); ++i) {
        CHECK(cover.base[lift.arcs[i].tet] == loop.arcs[i % loop.size()].tet);
        CHECK(lift.arcs[i].face == loop.arcs[i % loop.size()].face);
      }
      CHECK(raised_linkage_holds(up.tri(), raise_loop(tv, lift)));
      ++lifted;
    }
    if (auto dual = random_dual_loop(tt, rng, true)) {
      auto lift = lift_loop(cover, *dual);
      CHECK(check_vertical(up, lift).empty());
    }
  }
  CHECK(lifted > 20);
}
