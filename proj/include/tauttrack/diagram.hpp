#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauttrack/loops.hpp"

namespace tauttrack {

// ---------------------------------------------------------------------------
// Document model

/// One end of a branch: end 0 is the `v` endpoint, end 1 the `w` endpoint.
struct BranchEnd {
  int branch = 0;
  int end = 0;
  friend bool operator==(const BranchEnd&, const BranchEnd&) = default;
  friend auto operator<=>(const BranchEnd&, const BranchEnd&) = default;
};

/// Endpoint of a branch: a stop on the boundary circle or an interior switch.
struct VertexRef {
  bool stop = false;
  int index = 0;
  friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

struct BranchSpec {
  std::string name;
  VertexRef v;
  VertexRef w;
  int face_class = -1;  // -1 when unlabelled
  int orient = 0;       // +1 points left of v->w, -1 right, 0 unstated
};

/// The two tangency sides of a switch.
struct SwitchSpec {
  std::string name;
  std::array<std::vector<BranchEnd>, 2> sides;
};

/// Items of a region boundary walk.  Forward and Backward traverse a branch
/// v->w and w->v; Arc k is the boundary arc from stop k to stop k+1; Circle is
/// the whole boundary when there are no stops.  Walks keep the region on the
/// left, so stops are numbered counterclockwise.
struct WalkItem {
  enum class Kind { Forward, Backward, Arc, Circle };
  Kind kind = Kind::Forward;
  int index = 0;
  friend bool operator==(const WalkItem&, const WalkItem&) = default;
};

struct RegionSpec {
  std::string name;
  std::vector<std::vector<WalkItem>> walks;
  int tet = -1;
};

struct DiagramSpec {
  int stops = 0;
  std::vector<SwitchSpec> switches;
  std::vector<BranchSpec> branches;
  std::vector<RegionSpec> regions;
  std::string boundary_loop;  // file reference, may be empty
};

DiagramSpec parse_diagram(std::string_view text);
std::string serialize_diagram(const DiagramSpec& spec);

// ---------------------------------------------------------------------------
// Combinatorial map

/// Index in quarter units: 4 means index 1.
using IndexQ = int;
IndexQ index_q(int euler, int cusps, int corners, int inward_corners = 0);
/// "1", "1/2", "-1/4", ...
std::string index_string(IndexQ q);

enum class PassageKind { Smooth, Cusp, Corner };

/// The turn a region walk makes at a vertex, between consecutive darts.
struct Passage {
  int vertex = 0;
  int in = 0;
  int out = 0;
  PassageKind kind = PassageKind::Smooth;
};

/// A disk carrying a train track with stops, stored as a half-edge map.
///
/// Darts: branch b gives 2b (v->w) and 2b+1 (w->v).  Boundary arc k is dart
/// 2B+k on the inside; its outside twin is 2B+N+k.  Without stops the
/// boundary is a single circle at an extra vertex, darts 2B and 2B+1.
/// Vertices: stops [0, N), switches [N, N+S), the extra vertex N+S.
class DiskDiagram {
 public:
  /// Validates the map.  Label compatibility is checked when `tt` is given.
  /// Throws InputError on any failure.
  static DiskDiagram build(DiagramSpec spec, const TautTriangulation* tt = nullptr);

  const DiagramSpec& spec() const { return spec_; }
  int stop_count() const { return spec_.stops; }
  int switch_count() const { return static_cast<int>(spec_.switches.size()); }
  int branch_count() const { return static_cast<int>(spec_.branches.size()); }
  int region_count() const { return static_cast<int>(spec_.regions.size()); }
  int vertex_count() const { return static_cast<int>(vertex_darts_.size()); }
  int dart_count() const { return static_cast<int>(tail_.size()); }
  bool labelled() const { return labelled_; }

  bool is_branch_dart(int d) const { return d < 2 * branch_count(); }
  int branch_of(int d) const { return d / 2; }
  int rev(int d) const { return rev_[d]; }
  int tail(int d) const { return tail_[d]; }
  int head(int d) const { return tail_[rev_[d]]; }
  /// Next dart along the walk containing d (outside darts run clockwise).
  int next(int d) const { return next_[d]; }
  int prev(int d) const { return prev_[d]; }
  /// Rotation at tail(d).
  int sigma(int d) const { return next_[rev_[d]]; }
  /// Region on the left of d, or -1 outside the disk.
  int region_of(int d) const { return region_[d]; }
  int walk_index(int d) const { return walk_[d]; }
  int arc_dart(int k) const { return 2 * branch_count() + k; }
  bool is_arc_dart(int d) const { return d >= 2 * branch_count() && region_[d] >= 0; }
  int arc_of(int d) const { return d - 2 * branch_count(); }
  /// Branch dart leaving stop k.
  int stop_dart(int k) const { return stop_dart_[k]; }
  bool is_stop(int vertex) const { return vertex < stop_count(); }
  bool is_switch(int vertex) const { return vertex >= stop_count() && vertex < stop_count() + switch_count(); }
  /// Tangency side (0/1) of the branch end at the tail of a branch dart
  /// leaving a switch; -1 at stops.
  int leaving_side(int d) const;
  BranchEnd leaving_end(int d) const { return {branch_of(d), d % 2}; }
  /// Darts leaving a vertex in rotation order.
  const std::vector<int>& vertex_darts(int vertex) const { return vertex_darts_[vertex]; }
  const std::vector<std::vector<int>>& walks(int region) const { return walks_[region]; }
  /// Face slot seen from the region on the left of branch dart d.
  FaceRef seen(int d) const { return seen_[d]; }
  int region_tet(int region) const { return spec_.regions[region].tet; }

  PassageKind passage_kind(int in, int out) const;
  std::string dart_name(int d) const;
  std::string vertex_name(int v) const;
  const std::string& region_name(int r) const { return spec_.regions[r].name; }

 private:
  DiagramSpec spec_;
  bool labelled_ = false;
  std::vector<int> tail_, rev_, next_, prev_, region_, walk_;
  std::vector<int> stop_dart_;
  std::vector<std::vector<int>> vertex_darts_;
  std::vector<std::vector<std::vector<int>>> walks_;
  std::vector<FaceRef> seen_;
};

/// Whether the face slots seen from the two sides of a branch can be fixed:
/// the left region sees the representative slot when both placements fit.
std::optional<std::array<FaceRef, 2>> seen_slots(const Combinatorics& comb, int face_class, int left_tet,
                                                 int right_tet);

// ---------------------------------------------------------------------------
// Census and audits

enum class RegionKind { Nullgon, CuspedMonogon, CuspedBigon, BoundaryBigon, BoundaryTrigon, Rectangle, Other };
std::string region_kind_name(RegionKind kind);
/// Table lookup by (corners, cusps) for disks; Other when not listed.
RegionKind classify_region(int euler, int corners, int cusps);

/// A maximal run of a region walk between cusps and corners.
struct SideInfo {
  int walk = 0;
  std::vector<int> darts;
  int interior_switches = 0;
  bool boundary = false;  // a boundary arc rather than part of the track
};

struct RegionInfo {
  int region = 0;
  int euler = 1;
  int cusps = 0;
  int corners = 0;
  int inward_corners = 0;
  IndexQ index = 0;
  RegionKind kind = RegionKind::Other;
  std::vector<std::vector<Passage>> passages;  // per walk; passage i follows dart i
  std::vector<SideInfo> sides;
  bool disk() const { return euler == 1; }
};

RegionInfo region_info(const DiskDiagram& diagram, int region);
std::vector<RegionInfo> region_census(const DiskDiagram& diagram);

struct IndexAudit {
  IndexQ total = 0;
  bool pass = false;
};
/// Sum of region indices; passes when it equals one whole unit.
IndexAudit audit_total_index(const DiskDiagram& diagram);

/// Violations of the minimal-form conditions, with the applicable reduction
/// as advisory text.  When none of the four conditions fails it also checks
/// that every positive-index region is a boundary bigon.
std::vector<Violation> audit_minimality(const DiskDiagram& diagram);

// ---------------------------------------------------------------------------
// Transverse orientation

struct BigonTag {
  int region = 0;
  bool max = false;
};

struct OrientationReport {
  std::vector<int> sign;  // per branch: +1 points left of v->w, -1 right
  std::vector<Violation> inconsistencies;
  std::vector<BigonTag> bigons;  // boundary bigons in region order
  bool consistent() const { return inconsistencies.empty(); }
};

/// Pulls the co-orientation back to the branches; never throws on
/// inconsistency, which is listed instead.
OrientationReport pull_back_orientation(const DiskDiagram& diagram, const TransverseTaut& tv);
/// As above but throws InputError when the pullback is inconsistent.
OrientationReport orient_and_classify_bigons(const DiskDiagram& diagram, const TransverseTaut& tv);

/// True when the transverse orientation of branch dart d points into the
/// region on its left.
bool points_left(const OrientationReport& orient, int d);

// ---------------------------------------------------------------------------
// Boundary loop

/// One arc of the boundary loop inside a tetrahedron.
struct BoundaryArc {
  int tet = 0;
  int entry_face = 0;
  int exit_face = 0;
  friend bool operator==(const BoundaryArc&, const BoundaryArc&) = default;
};

std::vector<BoundaryArc> boundary_arcs(const DualLoop& loop);
std::vector<BoundaryArc> boundary_arcs(const RaisedCurve& curve);

/// Empty when the boundary arcs of the diagram carry the loop: arc k lies in
/// the tetrahedron of its region and the branches at its two stops are
/// labelled by its entry and exit faces.
std::vector<Violation> check_boundary(const DiskDiagram& diagram, const std::vector<BoundaryArc>& loop);

}  // namespace tauttrack
