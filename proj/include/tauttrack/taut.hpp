#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "tauttrack/triangulation.hpp"

namespace tauttrack {

/// Taut angle structure encoded by the opposite-edge pair carrying angle pi in
/// each tetrahedron: 0 = 01|23, 1 = 02|13, 2 = 03|12.  With this encoding every
/// model vertex meets exactly one pi edge.
struct TautStructure {
  std::vector<int> pi_pair;

  int size() const { return static_cast<int>(pi_pair.size()); }
  bool is_pi(int tet, int edge) const { return edge == pi_pair[tet] || edge == model::opposite_edge(pi_pair[tet]); }

  friend bool operator==(const TautStructure&, const TautStructure&) = default;
  friend auto operator<=>(const TautStructure&, const TautStructure&) = default;
};

std::string pi_pair_name(int pair);
int parse_pi_pair(std::string_view name);

TautStructure parse_taut(std::string_view text, int tet_count);
std::string serialize_taut(const TautStructure& taut);

struct EdgeAngleFailure {
  int edge_class = 0;
  int pi_count = 0;
};

/// Empty iff every edge class has exactly two pi germs.  Throws InputError on a
/// size mismatch.
std::vector<EdgeAngleFailure> verify_taut(const Triangulation& tri, const TautStructure& cand);

/// All taut structures in lexicographic order of the pi-pair vector.
std::vector<TautStructure> enumerate_taut(const Triangulation& tri);

enum class Side : int { L = 0, R = 1 };
inline Side flip(Side s) { return s == Side::L ? Side::R : Side::L; }
inline char side_char(Side s) { return s == Side::L ? 'L' : 'R'; }

struct Equator {
  int tet = 0;
  /// Zero-angle edges in cyclic order a-c, c-b, b-d, d-a where ab and cd are
  /// the pi edges.
  std::array<int, 4> cycle{};
  std::array<int, 2> pi_edges{};
  /// side[face] is 0 for the two faces containing pi_edges[0], else 1.
  std::array<int, 4> side{};
};

struct EdgeSides {
  int edge_class = 0;
  /// colors[i] belongs to the face slot entering germ i of the edge class.
  std::vector<Side> colors;
};

/// A triangulation together with a verified taut structure.  Construction
/// throws InputError when the structure fails verify_taut.
class TautTriangulation {
 public:
  TautTriangulation(Triangulation tri, TautStructure taut);

  const Triangulation& tri() const { return tri_; }
  const TautStructure& taut() const { return taut_; }
  const Combinatorics& comb() const { return comb_; }
  int size() const { return tri_.size(); }

  const Equator& equator(int tet) const { return equators_.at(tet); }
  int face_side(int tet, int face) const { return equators_.at(tet).side[face]; }
  const EdgeSides& edge_sides(int edge_class) const { return sides_.at(edge_class); }
  /// Branching side of the face slot (tet, face) around model edge `edge`.
  Side slot_color(int tet, int face, int edge) const;

 private:
  Triangulation tri_;
  TautStructure taut_;
  Combinatorics comb_;
  std::vector<Equator> equators_;
  std::vector<EdgeSides> sides_;
};

Equator equator_and_sides(const Triangulation& tri, const TautStructure& taut, int tet);
EdgeSides edge_branch_sides(const Triangulation& tri, const TautStructure& taut, const EdgeClass& edge);

/// Flip colouring of a cyclic pi pattern; exposed for tests of the flip rule.
std::vector<Side> flip_coloring(const std::vector<bool>& pi_pattern);

}  // namespace tauttrack
