#pragma once

// Small diagram documents, one per region kind.
namespace fixture {

inline constexpr const char* kEmpty = "stops 0\nregions\n  r0: walk=d\n";

inline constexpr const char* kChord = R"(stops 2
branches
  b: p0 p1
regions
  r0: walk=b+ d1
  r1: walk=d0 b-
)";

inline constexpr const char* kMonogon = R"(stops 1
switches
  x: (a.v a.w) (c.w)
branches
  a: x x
  c: p0 x
regions
  r0: walk=a-
  r1: walk=d0 c+ a+ c-
)";

inline constexpr const char* kCuspedBigon = R"(stops 2
switches
  x: (a.v b.w) (c.w)
  y: (a.w b.v) (e.w)
branches
  a: x y
  b: y x
  c: p0 x
  e: p1 y
regions
  r0: walk=a+ b+
  r1: walk=d0 e+ a- c-
  r2: walk=d1 c+ b- e-
)";

inline constexpr const char* kTrigon = R"(stops 3
switches
  x: (a.w b.w) (c.w)
branches
  a: p0 x
  b: p1 x
  c: p2 x
regions
  r0: walk=d0 b+ a-
  r1: walk=d1 c+ b-
  r2: walk=d2 a+ c-
)";

inline constexpr const char* kRectangle = R"(stops 4
branches
  a: p1 p0
  b: p2 p3
regions
  r0: walk=d0 a+
  r1: walk=d1 b+ d3 a-
  r2: walk=d2 b-
)";

inline constexpr const char* kAnnulus = R"(stops 0
switches
  x: (a.v) (a.w)
branches
  a: x x
regions
  r0: walk=d | a-
  r1: walk=a+
)";

}  // namespace fixture
