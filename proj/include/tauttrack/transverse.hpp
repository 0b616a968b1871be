#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauttrack/taut.hpp"

namespace tauttrack {

/// Per face class: +1 when the co-orientation points out of the tetrahedron of
/// the class representative, -1 when it points into it.
struct Coorientation {
  std::vector<int> sign;
  int size() const { return static_cast<int>(sign.size()); }
  friend bool operator==(const Coorientation&, const Coorientation&) = default;
};

/// True when the co-orientation on face slot `f` points into f.tet.
bool points_into(const Combinatorics& comb, const Coorientation& coor, FaceRef f);

Coorientation parse_coorientation(std::string_view text, const Combinatorics& comb);
std::string serialize_coorientation(const Coorientation& coor, const Combinatorics& comb);

/// Empty iff the co-orientation is transverse taut; also checks that the
/// direction changes exactly twice around every edge class.
std::vector<Violation> verify_coorientation(const TautTriangulation& tt, const Coorientation& coor);

/// Ordered pi edges (e', e'') for each tetrahedron.
struct PiLabelling {
  std::vector<std::array<int, 2>> order;
  static PiLabelling lexicographic(const TautStructure& taut);
};

struct CoverTriangulation {
  Triangulation tri;      // copies t' = 2t and t'' = 2t + 1
  TautStructure taut;     // lifted
  Coorientation coor;     // per face class of `tri`
  std::vector<int> base;  // covering map on tetrahedra
  std::vector<int> component;
  int component_count = 0;
};

CoverTriangulation build_double_cover(const TautTriangulation& tt, const PiLabelling& labelling);
inline CoverTriangulation build_double_cover(const TautTriangulation& tt) {
  return build_double_cover(tt, PiLabelling::lexicographic(tt.taut()));
}

/// Co-orientation pushed down from the cover component containing t'_0 (per
/// connected piece), or nothing when some piece has a connected cover.
std::optional<Coorientation> detect_transverse_taut(const TautTriangulation& tt);

/// Independent route: solves the transverse-taut face constraints as parity
/// equations over the choice of lower pi edge per tetrahedron.
std::optional<Coorientation> solve_coorientation_parity(const TautTriangulation& tt);

/// A taut triangulation with a verified transverse co-orientation; supplies
/// the local notion of up.
class TransverseTaut {
 public:
  TransverseTaut(TautTriangulation tt, Coorientation coor);

  const TautTriangulation& tt() const { return tt_; }
  const Triangulation& tri() const { return tt_.tri(); }
  const Combinatorics& comb() const { return tt_.comb(); }
  const Coorientation& coor() const { return coor_; }

  bool is_lower(int tet, int face) const { return lower_[tet * 4 + face]; }
  int bottom_edge(int tet) const { return bottom_[tet]; }
  int top_edge(int tet) const { return model::opposite_edge(bottom_[tet]); }
  /// The tetrahedron for which face class `cls` is a lower face, with that slot.
  FaceRef above(int face_class) const;
  FaceRef below(int face_class) const;

 private:
  TautTriangulation tt_;
  Coorientation coor_;
  std::vector<bool> lower_;
  std::vector<int> bottom_;
};

}  // namespace tauttrack
