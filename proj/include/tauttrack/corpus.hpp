#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tauttrack/diagram.hpp"

namespace tauttrack {

/// Generator seed: TAUTTRACK_SEED when set and numeric, else `fallback`.
std::uint64_t corpus_seed(std::uint64_t fallback);

/// Relabelling of tetrahedra and vertices that gives the lexicographically
/// least gluing code.  Isomorphic connected tables have equal forms.
Triangulation canonical_form(const Triangulation& tri);

/// Closed table with a uniformly shuffled face pairing and random gluing maps.
Triangulation random_closed_triangulation(int n, std::mt19937_64& rng);

/// Connected, closed, torus or Klein bottle links, no edge glued to itself
/// in reverse.
bool census_admissible(const Triangulation& tri);

struct CensusBounds {
  int max_tets = 4;
  int exhaustive_tets = 2;  // every table up to this size
  int random_trials = 20000;
  int random_keep = 30;  // per larger size, only tables with a taut structure
};

struct CensusEntry {
  std::string name;
  Triangulation tri;
};

/// Admissible triangulations up to isomorphism, in canonical form.
std::vector<CensusEntry> census(std::uint64_t seed, const CensusBounds& bounds = {});

/// Random walk through smooth crossings until a state repeats; the repeated
/// stretch is returned as a closed normal loop.
std::optional<NormalLoop> random_normal_loop(const TautTriangulation& tt, std::mt19937_64& rng, int max_steps = 64);

/// Random closed walk in the dual graph.  With `vertical` every step links the
/// equator; otherwise each step picks any other face.
std::optional<DualLoop> random_dual_loop(const TautTriangulation& tt, std::mt19937_64& rng, bool vertical,
                                         int max_steps = 64);

struct DiagramBounds {
  int max_stops = 8;
  int max_regions = 6;
  int max_per_boundary = 48;
};

/// Disk diagrams whose boundary carries `loop`.  Each block of a noncrossing
/// partition of the stops is joined by a chord, a star, a double star, an eye
/// (double star with two parallel branches) or a star with a loop.  Region
/// and branch labels are forced by the loop where it reaches them and range
/// over every compatible choice elsewhere.  Without `tv` the tangency sides
/// range over all splits of each switch into two intervals; with `tv` they
/// are the ones forced by the pulled-back transverse orientation.  Only
/// diagrams that build and pass check_boundary are returned, in a
/// deterministic order.
std::vector<DiagramSpec> diagrams_for_boundary(const TautTriangulation& tt, const std::vector<BoundaryArc>& loop,
                                               const TransverseTaut* tv, const DiagramBounds& bounds = {});

/// A taut structure on a census triangulation, with its co-orientation when
/// the structure is transverse.
struct StructureEntry {
  std::string name;  // "<triangulation>/<structure index>"
  TautTriangulation tt;
  std::optional<TransverseTaut> tv;
};

std::vector<StructureEntry> census_structures(const std::vector<CensusEntry>& census);

struct LoopCorpusBounds {
  int loops_per_structure = 6;  // random draws; repeated loops are dropped
  int min_arcs = 1;
  int max_arcs = 8;  // boundary arcs: dual steps, or raised arcs
  bool need_type_c = false;  // normal loops only: keep those with a type C raised arc
  DiagramBounds diagrams;
};

struct VerticalCase {
  int structure = 0;
  DualLoop loop;
  std::vector<DiagramSpec> diagrams;
};

struct NormalCase {
  int structure = 0;
  NormalLoop loop;
  RaisedCurve raised;
  std::vector<DiagramSpec> diagrams;
};

/// Random vertical loops on every structure, each with its generated disks.
std::vector<VerticalCase> vertical_corpus(const std::vector<StructureEntry>& structures, std::uint64_t seed,
                                          const LoopCorpusBounds& bounds = {});
/// Random normal loops on every transverse structure, with disks whose
/// boundary carries the raised loop.
std::vector<NormalCase> normal_corpus(const std::vector<StructureEntry>& structures, std::uint64_t seed,
                                      const LoopCorpusBounds& bounds = {});

}  // namespace tauttrack
