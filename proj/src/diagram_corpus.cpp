#include <algorithm>
#include <functional>
#include <set>

#include "tauttrack/corpus.hpp"

namespace tauttrack {

namespace {

using Partition = std::vector<std::vector<int>>;

bool crossing_free(const Partition& blocks) {
  for (size_t p = 0; p < blocks.size(); ++p)
    for (size_t q = 0; q < blocks.size(); ++q) {
      if (p == q) continue;
      for (int a : blocks[p])
        for (int c : blocks[p])
          for (int b : blocks[q])
            for (int d : blocks[q])
              if (a < b && b < c && c < d) return false;
    }
  return true;
}

// Noncrossing partitions of 0..n-1 with every block of size at least two.
std::vector<Partition> stop_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> label(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      Partition blocks(used);
      for (int k = 0; k < n; ++k) blocks[label[k]].push_back(k);
      for (const auto& b : blocks)
        if (b.size() < 2) return;
      if (crossing_free(blocks)) out.push_back(std::move(blocks));
      return;
    }
    for (int l = 0; l <= used && l < n; ++l) {
      label[i] = l;
      rec(i + 1, std::max(used, l + 1));
    }
  };
  if (n > 0) rec(0, 0);
  return out;
}

enum class Kind { Chord, ChordReversed, Star, Loop, DoubleStar, Eye };

struct BlockShape {
  Kind kind = Kind::Star;
  int g1 = 0, g2 = 0;  // the first part is block[g1..g2)
};

std::vector<BlockShape> block_shapes(int m) {
  std::vector<BlockShape> out;
  if (m == 2) {
    out.push_back({Kind::Chord});
    out.push_back({Kind::ChordReversed});
  }
  out.push_back({Kind::Star});
  out.push_back({Kind::Loop});
  for (int g1 = 0; g1 < m; ++g1)
    for (int g2 = g1 + 1; g2 < m; ++g2) {
      out.push_back({Kind::DoubleStar, g1, g2});
      out.push_back({Kind::Eye, g1, g2});
    }
  return out;
}

int extra_regions(Kind k) { return k == Kind::Eye || k == Kind::Loop ? 1 : 0; }

// The track before labels and tangency sides.
struct Track {
  int stops = 0;
  std::vector<BranchSpec> branches;
  std::vector<std::string> switch_names;
  std::vector<std::vector<int>> rotation;  // per switch, leaving darts counterclockwise
  std::vector<int> stop_branch;            // branch index at each stop
};

class TrackBuilder {
 public:
  TrackBuilder(int stops, const std::vector<bool>& into_stop) : into_stop_(into_stop) {
    track_.stops = stops;
    track_.stop_branch.assign(stops, -1);
  }

  void add_block(const std::vector<int>& block, const BlockShape& shape) {
    const int m = static_cast<int>(block.size());
    if (shape.kind == Kind::Chord || shape.kind == Kind::ChordReversed) {
      int a = block[0], b = block[1];
      VertexRef va{true, a}, vb{true, b};
      bool forward = !into_stop_[a];
      if (shape.kind == Kind::ChordReversed) forward = !forward;
      int id = branch("c" + std::to_string(a) + "_" + std::to_string(b), forward ? va : vb, forward ? vb : va);
      track_.stop_branch[a] = track_.stop_branch[b] = id;
      return;
    }
    std::vector<int> first, second;
    if (shape.kind == Kind::DoubleStar || shape.kind == Kind::Eye) {
      for (int i = 0; i < m; ++i) (i >= shape.g1 && i < shape.g2 ? first : second).push_back(block[i]);
      // Keep boundary order inside each part, starting after the cut.
      std::rotate(second.begin(), std::find(second.begin(), second.end(), block[shape.g2 % m]), second.end());
    } else {
      first = block;
    }
    int x = new_switch();
    for (int k : first) track_.rotation[x].push_back(leaf(k, x));
    if (shape.kind == Kind::Loop) {
      int l = branch("l" + std::to_string(x), sw(x), sw(x));
      track_.rotation[x].push_back(2 * l);
      track_.rotation[x].push_back(2 * l + 1);
    }
    if (second.empty()) return;
    int y = new_switch();
    for (int k : second) track_.rotation[y].push_back(leaf(k, y));
    int u1 = branch("u" + std::to_string(x), sw(x), sw(y));
    track_.rotation[x].push_back(2 * u1);
    if (shape.kind == Kind::Eye) {
      int u2 = branch("u" + std::to_string(x) + "b", sw(x), sw(y));
      track_.rotation[x].push_back(2 * u2);
      track_.rotation[y].push_back(2 * u2 + 1);
    }
    track_.rotation[y].push_back(2 * u1 + 1);
  }

  Track take() { return std::move(track_); }

 private:
  static VertexRef sw(int i) { return {false, i}; }

  int branch(const std::string& name, VertexRef v, VertexRef w) {
    track_.branches.push_back({name, v, w, -1, 0});
    return static_cast<int>(track_.branches.size()) - 1;
  }
  int new_switch() {
    track_.switch_names.push_back("x" + std::to_string(track_.switch_names.size()));
    track_.rotation.emplace_back();
    return static_cast<int>(track_.switch_names.size()) - 1;
  }
  // Branch from stop k to switch x; returns the dart leaving x.
  int leaf(int k, int x) {
    std::string name = "b" + std::to_string(k);
    int id = into_stop_[k] ? branch(name, sw(x), {true, k}) : branch(name, {true, k}, sw(x));
    track_.stop_branch[k] = id;
    return into_stop_[k] ? 2 * id : 2 * id + 1;
  }

  std::vector<bool> into_stop_;
  Track track_;
};

// Region walks by face tracing: the successor of x is the dart just clockwise
// of rev(x) at head(x).
std::vector<std::vector<int>> trace_faces(const Track& t) {
  const int b = static_cast<int>(t.branches.size());
  const int n = t.stops;
  const int darts = 2 * b + 2 * n;
  std::vector<int> tail(darts), rev(darts);
  auto vid = [&](const VertexRef& v) { return v.stop ? v.index : n + v.index; };
  for (int i = 0; i < b; ++i) {
    tail[2 * i] = vid(t.branches[i].v);
    tail[2 * i + 1] = vid(t.branches[i].w);
    rev[2 * i] = 2 * i + 1;
    rev[2 * i + 1] = 2 * i;
  }
  std::vector<std::vector<int>> rotation(n + t.rotation.size());
  for (int k = 0; k < n; ++k) {
    tail[2 * b + k] = k;
    tail[2 * b + n + k] = (k + 1) % n;
    rev[2 * b + k] = 2 * b + n + k;
    rev[2 * b + n + k] = 2 * b + k;
    int s = t.stop_branch[k];
    int leaving = tail[2 * s] == k ? 2 * s : 2 * s + 1;
    rotation[k] = {2 * b + k, leaving, 2 * b + n + (k + n - 1) % n};
  }
  for (size_t x = 0; x < t.rotation.size(); ++x) rotation[n + x] = t.rotation[x];
  std::vector<int> cw(darts, -1);
  for (const auto& rot : rotation)
    for (size_t i = 0; i < rot.size(); ++i) cw[rot[i]] = rot[(i + rot.size() - 1) % rot.size()];

  std::vector<bool> done(darts, false);
  std::vector<std::vector<int>> faces;
  std::vector<int> order;
  for (int k = 0; k < n; ++k) order.push_back(2 * b + k);
  for (int d = 0; d < 2 * b; ++d) order.push_back(d);
  for (int start : order) {
    if (done[start]) continue;
    std::vector<int> walk;
    for (int d = start; !done[d]; d = cw[rev[d]]) {
      done[d] = true;
      walk.push_back(d);
    }
    faces.push_back(std::move(walk));
  }
  return faces;
}

template <class F>
bool odometer(const std::vector<int>& sizes, F&& visit) {
  std::vector<int> digit(sizes.size(), 0);
  for (int s : sizes)
    if (s == 0) return true;
  while (true) {
    if (!visit(digit)) return false;
    size_t i = 0;
    while (i < digit.size() && ++digit[i] == sizes[i]) digit[i++] = 0;
    if (i == digit.size()) return true;
  }
}

}  // namespace

std::vector<DiagramSpec> diagrams_for_boundary(const TautTriangulation& tt, const std::vector<BoundaryArc>& loop,
                                               const TransverseTaut* tv, const DiagramBounds& bounds) {
  std::vector<DiagramSpec> out;
  const int n = static_cast<int>(loop.size());
  if (n == 0 || n > bounds.max_stops) return out;
  const auto& comb = tt.comb();
  const int face_count = static_cast<int>(comb.faces().size());

  // Stop branches point into stop k when the loop's entry slot there is the
  // class representative, so the region after the stop sees it on its left.
  std::vector<bool> into_stop(n);
  std::vector<int> stop_class(n);
  for (int k = 0; k < n; ++k) {
    FaceRef entry{loop[k].tet, loop[k].entry_face};
    stop_class[k] = comb.face_class_of(entry);
    into_stop[k] = comb.faces()[stop_class[k]].rep == entry;
  }

  std::set<std::string> seen_docs;
  for (const auto& blocks : stop_partitions(n)) {
    std::vector<std::vector<BlockShape>> options;
    std::vector<int> sizes;
    for (const auto& block : blocks) {
      options.push_back(block_shapes(static_cast<int>(block.size())));
      sizes.push_back(static_cast<int>(options.back().size()));
    }
    bool more = odometer(sizes, [&](const std::vector<int>& pick) {
      int regions = 1;
      for (size_t i = 0; i < blocks.size(); ++i)
        regions += static_cast<int>(blocks[i].size()) - 1 + extra_regions(options[i][pick[i]].kind);
      if (regions > bounds.max_regions) return true;

      TrackBuilder builder(n, into_stop);
      for (size_t i = 0; i < blocks.size(); ++i) builder.add_block(blocks[i], options[i][pick[i]]);
      Track track = builder.take();
      const int b = static_cast<int>(track.branches.size());
      auto faces = trace_faces(track);
      std::vector<int> face_of(2 * b + n, -1);
      for (size_t f = 0; f < faces.size(); ++f)
        for (int d : faces[f]) face_of[d] = static_cast<int>(f);

      std::vector<int> tet(faces.size(), -1);
      for (int k = 0; k < n; ++k) {
        int f = face_of[2 * b + k];
        if (tet[f] >= 0 && tet[f] != loop[k].tet) return true;
        tet[f] = loop[k].tet;
      }
      std::vector<int> fixed_class(b, -1);
      for (int k = 0; k < n; ++k) {
        int s = track.stop_branch[k];
        if (fixed_class[s] >= 0 && fixed_class[s] != stop_class[k]) return true;
        fixed_class[s] = stop_class[k];
      }
      std::vector<int> free_regions;
      for (size_t f = 0; f < faces.size(); ++f)
        if (tet[f] < 0) free_regions.push_back(static_cast<int>(f));

      std::vector<int> tet_sizes(free_regions.size(), tt.size());
      return odometer(tet_sizes, [&](const std::vector<int>& tet_pick) {
        for (size_t i = 0; i < free_regions.size(); ++i) tet[free_regions[i]] = tet_pick[i];
        std::vector<std::vector<int>> class_options(b);
        for (int i = 0; i < b; ++i) {
          int left = tet[face_of[2 * i]], right = tet[face_of[2 * i + 1]];
          for (int c = 0; c < face_count; ++c) {
            if (fixed_class[i] >= 0 && c != fixed_class[i]) continue;
            if (seen_slots(comb, c, left, right)) class_options[i].push_back(c);
          }
        }
        std::vector<int> class_sizes;
        for (const auto& o : class_options) class_sizes.push_back(static_cast<int>(o.size()));
        return odometer(class_sizes, [&](const std::vector<int>& class_pick) {
          DiagramSpec spec;
          spec.stops = n;
          spec.branches = track.branches;
          for (int i = 0; i < b; ++i) spec.branches[i].face_class = class_options[i][class_pick[i]];
          for (size_t f = 0; f < faces.size(); ++f) {
            auto walk = faces[f];
            auto first_arc = std::find_if(walk.begin(), walk.end(), [&](int d) { return d >= 2 * b; });
            if (first_arc != walk.end()) std::rotate(walk.begin(), first_arc, walk.end());
            std::vector<WalkItem> items;
            for (int d : walk) {
              if (d >= 2 * b) {
                items.push_back({WalkItem::Kind::Arc, d - 2 * b});
              } else {
                items.push_back({d % 2 ? WalkItem::Kind::Backward : WalkItem::Kind::Forward, d / 2});
              }
            }
            spec.regions.push_back({"r" + std::to_string(f), {items}, tet[f]});
          }

          // Tangency sides: every split into two intervals, or the one the
          // co-orientation forces.
          const int s = static_cast<int>(track.rotation.size());
          std::vector<std::vector<std::array<std::vector<BranchEnd>, 2>>> side_options(s);
          for (int x = 0; x < s; ++x) {
            const auto& rot = track.rotation[x];
            const int m = static_cast<int>(rot.size());
            auto end_of = [](int d) { return BranchEnd{d / 2, d % 2}; };
            if (tv == nullptr) {
              for (int g1 = 0; g1 < m; ++g1)
                for (int g2 = g1 + 1; g2 < m; ++g2) {
                  std::array<std::vector<BranchEnd>, 2> sides;
                  for (int i = 0; i < m; ++i) sides[i >= g1 && i < g2 ? 0 : 1].push_back(end_of(rot[i]));
                  side_options[x].push_back(std::move(sides));
                }
            } else {
              std::array<std::vector<BranchEnd>, 2> sides;
              std::vector<int> side_seq;
              for (int d : rot) {
                int i = d / 2;
                auto slots = seen_slots(comb, spec.branches[i].face_class, tet[face_of[2 * i]], tet[face_of[2 * i + 1]]);
                bool into_left_of_forward = points_into(comb, tv->coor(), (*slots)[0]);
                bool left = (d % 2 == 0) == into_left_of_forward;
                sides[left ? 0 : 1].push_back(end_of(d));
                side_seq.push_back(left ? 0 : 1);
              }
              int changes = 0;
              for (int i = 0; i < m; ++i) changes += side_seq[i] != side_seq[(i + 1) % m];
              if (changes == 2) side_options[x].push_back(std::move(sides));
            }
          }
          std::vector<int> side_sizes;
          for (const auto& o : side_options) side_sizes.push_back(static_cast<int>(o.size()));
          return odometer(side_sizes, [&](const std::vector<int>& side_pick) {
            DiagramSpec full = spec;
            for (int x = 0; x < s; ++x) full.switches.push_back({track.switch_names[x], side_options[x][side_pick[x]]});
            std::optional<DiskDiagram> dd;
            try {
              dd = DiskDiagram::build(full, &tt);
            } catch (const InputError&) {
              return true;
            }
            if (!check_boundary(*dd, loop).empty()) return true;
            if (!seen_docs.insert(serialize_diagram(full)).second) return true;
            out.push_back(std::move(full));
            return static_cast<int>(out.size()) < bounds.max_per_boundary;
          });
        });
      });
    });
    if (!more) break;
  }
  return out;
}

}  // namespace tauttrack
