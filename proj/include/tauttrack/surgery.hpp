#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tauttrack/diagram.hpp"

namespace tauttrack {

// ---------------------------------------------------------------------------
// Min-bigon push

struct MinBigonPush {
  DiskDiagram diagram;
  int site = 0;  // stop whose boundary arc was slid across the bigon
  std::optional<NormalLoop> loop;  // gamma after push_up at `site`
  /// Whether the new boundary carries the raised pushed loop; stops are then
  /// numbered to match its raised arcs.
  bool boundary_consistent = false;
};

/// Slides the boundary arc of min-bigon `region` across it.  The track side
/// becomes boundary; branch ends at its switches become stops.  With `gamma`
/// the boundary label is pushed up at the same site.  Throws InputError when
/// the region is not a min-bigon or push_up refuses the site.
MinBigonPush push_min_bigon(const DiskDiagram& diagram, int region, const TransverseTaut& tv,
                            const NormalLoop* gamma = nullptr);

// ---------------------------------------------------------------------------
// Max-bigon surgery

/// One region of a downhill chain.  Links are numbered from 1; link k is R_k.
struct ChainLink {
  int region = 0;
  int arc = 0;            // boundary arc d_k
  int stop = 0;           // stop of the outer corner b_k
  int branch = 0;         // b_k
  bool agrees = false;    // b_k co-oriented along the boundary direction
  IndexQ index = 0;
  RegionKind kind = RegionKind::Other;
  RaisedType type = RaisedType::A3;
  int cusp_vertex = -1;      // far end of b_{k-1} when R_k has a cusp there
  int side_switches = -1;    // switches inside s_k
  int opposite_branch = -1;  // c'_k, the branch of s_k leaving the cusp
};

/// Regular neighbourhood of b_{K-1} inside R_K.
struct Quadrilateral {
  int region = 0;
  int branch = 0;
  int stop = 0;
  int cusp_vertex = 0;
  int corners = 0;
  int cusps = 0;
  IndexQ index = 0;
};

struct TrigonChain {
  bool right = true;
  int b0 = 0;  // branch at the starting corner of the max-bigon
  std::vector<ChainLink> links;  // R_1 .. R_K
  int end = 0;                   // K, zero when the walk broke off
  bool local_minimum = false;    // stopped at an orientation reversal
  std::optional<Quadrilateral> q;
  /// Trigons R_1 .. R_{K-1}.
  std::vector<int> trigons() const;
};

/// Point of a lowering followed into the diagram, with its cell check.
struct LoweringTrace {
  int arc = 0;
  std::string point;
  bool ok = false;
  std::string detail;
};

struct UnionShape {
  int pieces = 0;
  int euler = 0;
  int corners = 0;
  int cusps = 0;
  int inward_corners = 0;
  int overlaps = 0;
  IndexQ index = 0;
};

struct MaxBigonReport {
  int region = 0;
  int arc = 0;  // d_0
  int base_switch = -1;  // vertex of c'_0
  TrigonChain right;
  TrigonChain left;
  std::vector<int> members;  // regions wholly inside S(R)
  std::optional<UnionShape> s;
  std::vector<LoweringTrace> traces;
  bool embedded = false;
  bool rectangle = false;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Walks both trigon chains from a max-bigon and assembles S(R).  `boundary`
/// is the raised curve whose arc k lies along boundary arc k.  Claim failures
/// are recorded as violations; pieces are still built when their shape
/// allows.  Throws InputError when `region` is not a max-bigon.
MaxBigonReport max_bigon_surgery(const DiskDiagram& diagram, int region, const TransverseTaut& tv,
                                 const RaisedCurve& boundary);

/// Overlaps between the S(R) pieces of different reports.
std::vector<Violation> check_disjoint(const std::vector<MaxBigonReport>& reports);

// ---------------------------------------------------------------------------
// Carving

struct CarvedRegion {
  int region = 0;
  int quads = 0;  // quadrilaterals cut from it
  int corners = 0;
  int cusps = 0;
  int euler = 1;
  IndexQ index = 0;
};

struct CarvedDisk {
  std::vector<CarvedRegion> regions;  // regions outside every S(R), trimmed
  IndexQ total = 0;
  int outward_corners = 0;  // corners of D' on the boundary of D
  int inward_corners = 0;   // corners of D' where a cut meets c'
  IndexQ boundary_index = 0;  // D' as one disk, from its own corners
};

/// Removes every S(R) from the disk.  Reports must be complete.
CarvedDisk carve(const DiskDiagram& diagram, const std::vector<MaxBigonReport>& reports);

// ---------------------------------------------------------------------------
// Refutation

enum class LoopKind { Vertical, Normal };
enum class Verdict { Refuted, Reducible, Accepted };
std::string loop_kind_name(LoopKind kind);
std::string verdict_name(Verdict verdict);

struct Refutation {
  LoopKind kind = LoopKind::Vertical;
  Verdict verdict = Verdict::Accepted;
  std::string stage;
  std::string location;
  std::string reason;
  std::vector<Violation> findings;
  std::vector<std::string> transcript;
  int pushes = 0;
  std::vector<MaxBigonReport> surgeries;
  std::optional<CarvedDisk> carved;
  std::optional<DiskDiagram> reduced;  // after the min-bigon pushes
  std::optional<NormalLoop> pushed_loop;
};

/// Vertical certificate: a boundary bigon whose track side changes equator
/// side at a smooth passage.  With `loop` the boundary is checked first.
Refutation refute_certificate(const DiskDiagram& diagram, const TautTriangulation& tt, const DualLoop* loop);
/// Normal certificate with boundary label `gamma`, raised into the diagram.
Refutation refute_certificate(const DiskDiagram& diagram, const TransverseTaut& tv, const NormalLoop& gamma);

}  // namespace tauttrack
