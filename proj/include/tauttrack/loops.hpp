#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tauttrack/transverse.hpp"

namespace tauttrack {

struct DualStep {
  int tet = 0;
  int face_in = 0;
  int face_out = 0;
  friend bool operator==(const DualStep&, const DualStep&) = default;
};

/// Loop in the dual graph: face_out of step i is glued to face_in of step i+1.
struct DualLoop {
  std::vector<DualStep> steps;
  int size() const { return static_cast<int>(steps.size()); }
  friend bool operator==(const DualLoop&, const DualLoop&) = default;
};

/// Normal arc in face slot (tet, face) cutting the two edges at `apex`.
struct NormalArc {
  int tet = 0;
  int face = 0;
  int apex = 0;
  friend bool operator==(const NormalArc&, const NormalArc&) = default;
};

struct NormalLoop {
  std::vector<NormalArc> arcs;
  int size() const { return static_cast<int>(arcs.size()); }
  friend bool operator==(const NormalLoop&, const NormalLoop&) = default;
};

DualLoop parse_dual_loop(std::string_view text);
NormalLoop parse_normal_loop(std::string_view text);
std::string serialize_loop(const DualLoop& loop);
std::string serialize_loop(const NormalLoop& loop);
/// "dual" or "normal", from the leading keyword.
std::string loop_kind(std::string_view text);

/// Throws InputError on an empty loop, bad indices, face_in == face_out, or a
/// broken gluing link.  Otherwise lists the steps whose faces lie on the same
/// side of the equator.
std::vector<Violation> check_vertical(const TautTriangulation& tt, const DualLoop& loop);

/// A normal arc with its direction of travel fixed.  Edges are model edges of
/// `tet`.
struct ResolvedArc {
  int tet = 0;
  int face = 0;
  int apex = 0;
  int entry_edge = 0;
  int exit_edge = 0;
};

/// Crossing i joins arc i to arc i+1 (cyclically).
struct Crossing {
  int edge_class = -1;
  int from_position = -1;
  int to_position = -1;
  Side from_color = Side::L;
  Side to_color = Side::L;
  bool edges_match = true;
};

struct NormalAnalysis {
  std::vector<ResolvedArc> arcs;
  std::vector<Crossing> crossings;
  std::vector<Violation> violations;
};

/// Fixes arc directions, preferring an assignment under which every crossing
/// is smooth, then one where consecutive arcs at least share an edge class.
/// Records the branching sides at every crossing.
NormalAnalysis analyse_normal_loop(const TautTriangulation& tt, const NormalLoop& loop);
std::vector<Violation> check_normal(const TautTriangulation& tt, const NormalLoop& loop);

enum class RaisedType { A1, A2, A3, B1, B2, C };
std::string raised_type_name(RaisedType type);
inline bool is_type_a(RaisedType t) { return t == RaisedType::A1 || t == RaisedType::A2 || t == RaisedType::A3; }

struct RaisedArc {
  int tet = 0;
  int entry_face = 0;
  bool entry_lower = false;
  int exit_face = 0;
  bool exit_lower = false;
  RaisedType type = RaisedType::A3;
  /// Lowering: either the crossing of gamma at which it is a single vertex, or
  /// the indices of one or two normal arcs of gamma.
  int vertex_crossing = -1;
  std::vector<int> lowering;
};

struct RaisedCurve {
  std::vector<ResolvedArc> gamma;  // each arc moved to the slot where its face is lower
  std::vector<Crossing> crossings;
  std::vector<RaisedArc> arcs;
};

RaisedCurve raise_loop(const TransverseTaut& tv, const NormalLoop& loop);

/// True when consecutive raised arcs are linked by face gluings.
bool raised_linkage_holds(const Triangulation& tri, const RaisedCurve& curve);

/// Normal path from equatorial edge x to equatorial edge y through the upper
/// faces of `tet`: empty when x == y, one arc when they share an upper face,
/// otherwise two arcs meeting on the top edge.
std::vector<NormalArc> upper_replacement(const TransverseTaut& tv, int tet, int x, int y);

struct PushResult {
  NormalLoop loop;
  int tet = 0;
  RaisedType site_type = RaisedType::A3;
  int removed = 0;
  int inserted = 0;
  int first_inserted = 0;  // index in `loop` of the first replacement arc
};

/// Pushes gamma up across the tetrahedron holding the type-A raised arc with
/// index `site`.
PushResult push_up(const TransverseTaut& tv, const NormalLoop& loop, int site);

/// Lifts to the double cover, going round twice when one pass does not close.
DualLoop lift_loop(const CoverTriangulation& cover, const DualLoop& loop);
NormalLoop lift_loop(const TautTriangulation& base, const CoverTriangulation& cover, const NormalLoop& loop);

}  // namespace tauttrack
