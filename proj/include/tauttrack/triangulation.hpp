#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tauttrack {

/// Raised for malformed documents and for inputs that break a type invariant.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Permutation of the vertex labels {0,1,2,3} of a model tetrahedron.
class Perm4 {
 public:
  constexpr Perm4() : image_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d)
      : image_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
               static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {}

  /// Parses four digits such as "0132"; throws InputError otherwise.
  static Perm4 parse(std::string_view digits);

  constexpr int operator[](int v) const { return image_[v]; }
  Perm4 inverse() const;
  Perm4 operator*(const Perm4& rhs) const;  // (this * rhs)(v) = this(rhs(v))
  int sign() const;
  std::string str() const;

  friend bool operator==(const Perm4&, const Perm4&) = default;
  friend auto operator<=>(const Perm4&, const Perm4&) = default;

 private:
  std::array<std::uint8_t, 4> image_;
};

/// Model edges of a tetrahedron, indexed 0..5 as 01,02,03,12,13,23.
/// Edge i and edge 5-i are opposite.
namespace model {
constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int edge_index(int a, int b);
constexpr int opposite_edge(int e) { return 5 - e; }
/// Face k is the face opposite vertex k.
constexpr bool face_contains_edge(int face, int edge) {
  return kEdgeVertices[edge][0] != face && kEdgeVertices[edge][1] != face;
}
/// The edge shared by two distinct faces.
int shared_edge(int f, int g);
std::string edge_name(int e);
}  // namespace model

struct Gluing {
  int tet = -1;  // -1 when the face is free
  Perm4 perm;
  bool glued() const { return tet >= 0; }
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// A face of a model tetrahedron: (tet, face index opposite vertex `face`).
struct FaceRef {
  int tet = 0;
  int face = 0;
  friend bool operator==(const FaceRef&, const FaceRef&) = default;
  friend auto operator<=>(const FaceRef&, const FaceRef&) = default;
};

/// Tetrahedra with a face-gluing table.  Construction does not validate; use
/// parse_triangulation or validate_triangulation for that.
class Triangulation {
 public:
  Triangulation() = default;
  explicit Triangulation(int tet_count) : gluings_(tet_count) {}

  int size() const { return static_cast<int>(gluings_.size()); }
  const Gluing& gluing(int tet, int face) const { return gluings_.at(tet).at(face); }
  Gluing& gluing(int tet, int face) { return gluings_.at(tet).at(face); }
  FaceRef partner(FaceRef f) const {
    const auto& g = gluing(f.tet, f.face);
    return {g.tet, g.perm[f.face]};
  }

  /// Sets both directions of a gluing.
  void join(int tet, int face, int other, Perm4 perm);

  friend bool operator==(const Triangulation&, const Triangulation&) = default;

 private:
  std::vector<std::array<Gluing, 4>> gluings_;
};

/// Reads a gluing table without checking the involution or closedness.
Triangulation parse_gluing_table(std::string_view text);
/// Reads a gluing table and rejects involution violations and free faces.
Triangulation parse_triangulation(std::string_view text);
std::string serialize_triangulation(const Triangulation& tri);

/// One germ of an edge class: a model edge of a tetrahedron, together with
/// the face through which the cyclic walk enters and leaves it.
struct EdgeGerm {
  int tet = 0;
  int edge = 0;
  int entry_face = 0;
  int exit_face = 0;
  friend bool operator==(const EdgeGerm&, const EdgeGerm&) = default;
};

struct EdgeClass {
  int id = 0;
  std::vector<EdgeGerm> germs;  // cyclic, canonical start and direction
  bool reversed_self_gluing = false;
  int degree() const { return static_cast<int>(germs.size()); }
};

struct FaceClass {
  int id = 0;
  FaceRef rep;      // lexicographically smaller slot
  FaceRef partner;  // the slot glued to rep
};

/// Position of a face slot in the cyclic order around an edge class.  Slot i
/// is the entry face of germ i (equivalently the exit face of germ i-1).
struct EdgeSlot {
  int edge_class = -1;
  int position = -1;
};

/// Derived combinatorics of a closed triangulation.  Requires every face to
/// be glued.
class Combinatorics {
 public:
  explicit Combinatorics(const Triangulation& tri);

  const std::vector<EdgeClass>& edges() const { return edges_; }
  const std::vector<FaceClass>& faces() const { return faces_; }

  int edge_class_of(int tet, int edge) const { return germ_class_[tet * 6 + edge]; }
  int face_class_of(FaceRef f) const { return face_class_[f.tet * 4 + f.face]; }
  /// Slot of face (tet, face) around the model edge `edge` of `tet`.
  EdgeSlot slot(int tet, int face, int edge) const;

 private:
  std::vector<EdgeClass> edges_;
  std::vector<FaceClass> faces_;
  std::vector<int> germ_class_;
  std::vector<int> face_class_;
  std::vector<EdgeSlot> slots_;  // index (tet*4 + face)*6 + edge
};

std::vector<EdgeClass> edge_classes(const Triangulation& tri);
std::vector<FaceClass> face_classes(const Triangulation& tri);

struct VertexLink {
  int vertex_class = 0;
  int vertices = 0;
  int edges = 0;
  int triangles = 0;
  int euler_characteristic() const { return vertices - edges + triangles; }
};

/// Euler characteristic of every ideal vertex link.
std::vector<VertexLink> vertex_link_check(const Triangulation& tri);

struct Violation {
  std::string kind;
  std::string location;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::optional<bool> orientable;  // informational; unset when not computable
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_triangulation(const Triangulation& tri);

/// Orientability of a closed triangulation.
bool is_orientable(const Triangulation& tri);

}  // namespace tauttrack
