#pragma once

// Builders for irreducible instances around a chosen terminal polygon.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "ntri/embedding.hpp"

namespace fixtures {

using ntri::EdgeRef;
using ntri::NearTriangulation;
using ntri::VertexId;

// Outer part glued on one side of the polygon. Local positions run
// 0..order-1 along the boundary; 0 and order-1 are the two corners.
struct SideSpec {
  int order = 3;
  std::vector<EdgeRef> chords;
  int stacked = 0;  // vertices stacked into an inner triangle (needs order >= 7)
};

SideSpec fan_side(int order);
// Closing triangle (0, order-1, apex), both halves fanned.
SideSpec apex_side(int order, int apex);
SideSpec random_side(int order, std::mt19937_64& rng);
// Order 7 part with `stacked` interior vertices away from the polygon.
SideSpec non_mop_side(int stacked);

struct Fixture {
  NearTriangulation graph;
  std::vector<VertexId> corners;  // ids 0..k-1, clockwise
  VertexId hub = -1;              // id k
  std::vector<std::vector<VertexId>> arcs;
  std::vector<std::array<VertexId, 3>> polygon_faces;  // faces inside the polygon
};

// Corners 0..k-1 around a hub; sides[i] is glued on (corner i, corner i+1).
Fixture terminal_fixture(const std::vector<SideSpec>& sides);

// Adds a vertex inside the polygon face (a, b, c).
Fixture stack_in_polygon(const Fixture& f, VertexId a, VertexId b, VertexId c);

// Adds `count` vertices to random faces inside the polygon.
Fixture grow_polygon(Fixture f, int count, std::mt19937_64& rng);

// Random instance of the given layout family (0..7), see fixtures.cpp.
Fixture random_terminal(int layout, std::mt19937_64& rng);
inline constexpr int kLayouts = 8;

// H plus an edge joining the boundary neighbours of boundary vertex v.
NearTriangulation close_over(const NearTriangulation& h, VertexId v);

// Terminal 7-gon with MOPs of orders 9,5,6,8,4,3 and one
// non-MOP part.
Fixture seven_gon_fixture();

}  // namespace fixtures
