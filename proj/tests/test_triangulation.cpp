#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tauttrack/triangulation.hpp"

using namespace tauttrack;

TEST_CASE("perm4 basics") {
  auto p = Perm4::parse("1230");
  CHECK(p[0] == 1);
  CHECK(p * p.inverse() == Perm4());
  CHECK(p.sign() == -1);
  CHECK(Perm4::parse("0132").sign() == -1);
  CHECK(Perm4::parse("1032").sign() == 1);
  CHECK_THROWS_AS(Perm4::parse("0012"), InputError);
  CHECK_THROWS_AS(Perm4::parse("012"), InputError);
}

TEST_CASE("empty document gives zero tetrahedra") {
  auto tri = parse_triangulation("tets 0\n");
  CHECK(tri.size() == 0);
  CHECK(edge_classes(tri).empty());
  CHECK(vertex_link_check(tri).empty());
  CHECK(validate_triangulation(tri).ok());
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_triangulation("glue 0 0 -> 0 0123\n"), InputError);
  CHECK_THROWS_AS(parse_triangulation("tets 1\nglue 0 0 -> 1 0132\n"), InputError);
  CHECK_THROWS_AS(parse_triangulation("tets 1\nglue 0 5 -> 0 0132\n"), InputError);
  CHECK_THROWS_AS(parse_triangulation("tets 1\nglue 0 0 => 0 1023\n"), InputError);
  CHECK_THROWS_AS(parse_triangulation("tets x\n"), InputError);
}

TEST_CASE("involution violation is rejected") {
  // face 0 -> (0, 1023) lands on face 1, but face 1 glues back by 2301.
  const char* doc =
      "tets 1\n"
      "glue 0 0 -> 0 1023\n"
      "glue 0 1 -> 0 2301\n"
      "glue 0 2 -> 0 0132\n"
      "glue 0 3 -> 0 0132\n";
  CHECK_THROWS_WITH_AS(parse_triangulation(doc), doctest::Contains("involution"), InputError);
  auto raw = parse_gluing_table(doc);
  auto rep = validate_triangulation(raw);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().kind == "involution");
}

TEST_CASE("unglued face is reported with its location") {
  auto tri = parse_gluing_table(oracle::read_data("figure8.tri"));
  tri.gluing(1, 2) = Gluing{};
  auto rep = validate_triangulation(tri);
  // face (0,1) now points at a free face; (1,2) is free.
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.kind == "unglued face" && v.location == "tet 1 face 2") found = true;
  CHECK(found);
  CHECK_THROWS_AS(parse_triangulation(serialize_triangulation(tri)), InputError);
}

TEST_CASE("figure-eight table") {
  auto tri = parse_triangulation(oracle::read_data("figure8.tri"));
  CHECK(tri.size() == 2);
  Combinatorics comb(tri);
  CHECK(comb.faces().size() == 4);
  REQUIRE(comb.edges().size() == 2);
  for (const auto& e : comb.edges()) CHECK(e.degree() == 6);
  auto oracle_sizes = oracle::edge_orbit_sizes(tri);
  CHECK(oracle_sizes == std::vector<int>{6, 6});

  auto links = vertex_link_check(tri);
  REQUIRE(links.size() == 1);
  CHECK(links[0].euler_characteristic() == 0);
  CHECK(links[0].triangles == 8);
  CHECK(links[0].edges == 12);
  CHECK(links[0].vertices == 4);

  auto rep = validate_triangulation(tri);
  CHECK(rep.ok());
  CHECK(rep.orientable == std::optional<bool>(true));
}

TEST_CASE("vertex link of a sphere is reported") {
  // One tetrahedron doubled along all faces: two tetrahedra glued by the
  // identity.  The result is S^3 and each of the four vertex links is S^2.
  Triangulation tri(2);
  for (int k = 0; k < 4; ++k) tri.join(0, k, 1, Perm4());
  auto links = vertex_link_check(tri);
  REQUIRE(links.size() == 4);
  for (const auto& l : links) CHECK(l.euler_characteristic() == 2);
  auto rep = validate_triangulation(tri);
  CHECK(rep.violations.size() == 4);
  CHECK(rep.violations[0].kind == "non-torus link");
}

TEST_CASE("edge germ sequence is closed under gluings") {
  auto tri = parse_triangulation(oracle::read_data("figure8.tri"));
  Combinatorics comb(tri);
  for (const auto& cls : comb.edges()) {
    int n = cls.degree();
    for (int i = 0; i < n; ++i) {
      const auto& g = cls.germs[i];
      const auto& next = cls.germs[(i + 1) % n];
      auto partner = tri.partner({g.tet, g.exit_face});
      CHECK(partner.tet == next.tet);
      CHECK(partner.face == next.entry_face);
      CHECK(comb.slot(g.tet, g.exit_face, g.edge).position == (i + 1) % n);
      CHECK(comb.slot(next.tet, next.entry_face, next.edge).position == (i + 1) % n);
    }
  }
}

TEST_CASE("counting identities and round trip on random closed tables") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    auto tri = oracle::random_closed(n, rng);
    auto text = serialize_triangulation(tri);
    auto back = parse_triangulation(text);
    CHECK(back == tri);
    CHECK(serialize_triangulation(back) == text);

    Combinatorics comb(tri);
    CHECK(comb.faces().size() == static_cast<size_t>(2 * n));
    int total = 0;
    std::vector<int> degrees;
    bool reversed = false;
    for (const auto& e : comb.edges()) {
      total += e.degree();
      degrees.push_back(e.degree());
      reversed |= e.reversed_self_gluing;
    }
    CHECK(total == 6 * n);
    if (!reversed) {
      std::sort(degrees.begin(), degrees.end());
      auto oracle_sizes = oracle::edge_orbit_sizes(tri);
      std::sort(oracle_sizes.begin(), oracle_sizes.end());
      CHECK(degrees == oracle_sizes);
    }
  }
}

TEST_CASE("edge classes do not depend on tetrahedron relabelling up to rotation and reflection") {
  auto tri = parse_triangulation(oracle::read_data("figure8.tri"));
  // Swap the two tetrahedra.
  Triangulation swapped(2);
  for (int t = 0; t < 2; ++t)
    for (int k = 0; k < 4; ++k) {
      const auto& g = tri.gluing(t, k);
      swapped.gluing(1 - t, k) = Gluing{1 - g.tet, g.perm};
    }
  auto a = edge_classes(tri);
  auto b = edge_classes(swapped);
  REQUIRE(a.size() == b.size());
  // Map b's germs back and compare as cyclic sequences up to reflection.
  auto as_keys = [](const EdgeClass& c, bool swap) {
    std::vector<std::pair<int, int>> k;
    for (const auto& g : c.germs) k.emplace_back(swap ? 1 - g.tet : g.tet, g.edge);
    return k;
  };
  for (const auto& cb : b) {
    auto kb = as_keys(cb, true);
    bool matched = false;
    for (const auto& ca : a) {
      auto ka = as_keys(ca, false);
      if (ka.size() != kb.size()) continue;
      for (int refl = 0; refl < 2 && !matched; ++refl) {
        auto seq = kb;
        if (refl) std::reverse(seq.begin(), seq.end());
        for (size_t r = 0; r < seq.size() && !matched; ++r) {
          std::rotate(seq.begin(), seq.begin() + 1, seq.end());
          matched = seq == ka;
        }
      }
    }
    CHECK(matched);
  }
}
