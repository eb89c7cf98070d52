#pragma once

// Polygon regions cut out by the diagonals of the boundary-induced
// subgraph T[C], terminal polygons, and diagonal splits.

#include <string>
#include <vector>

#include "ntri/embedding.hpp"
#include "ntri/surgery.hpp"

namespace ntri {

/// T[C]: the subgraph induced by the boundary vertices, kept in the ids of
/// the parent graph. rotation[v] is empty for interior vertices.
struct BoundaryGraph {
  std::vector<VertexId> cycle;
  NearTriangulation::Rotation rotation;
  std::vector<EdgeRef> diagonals;
};

BoundaryGraph boundary_subgraph(const NearTriangulation& t);

struct PolygonRegion {
  std::vector<VertexId> corners;  // clockwise, lowest id first
  std::vector<EdgeRef> sides;     // sides[i] = (corners[i], corners[i+1])
  VertexSet interior;
  bool terminal = false;

  int interior_count() const { return static_cast<int>(interior.size()); }
  bool empty() const { return interior.empty(); }
};

struct DualEdge {
  int a = -1;
  int b = -1;
  EdgeRef diagonal;
};

struct PolygonDecomposition {
  std::vector<PolygonRegion> regions;
  std::vector<DualEdge> dual;

  /// Index of the terminal region with the smallest lowest corner, or -1.
  int selected_terminal() const;
};

/// Works on any valid input; decompose() additionally requires Irreducible.
PolygonDecomposition polygon_regions(const NearTriangulation& t);
PolygonDecomposition decompose(const NearTriangulation& t);

struct SplitPair {
  Induced inner;
  Induced outer;
  EdgeRef shared;
};

SplitPair split_by_diagonal(const NearTriangulation& t, EdgeRef d, const PolygonRegion& p);

struct SurroundingPart {
  Induced part;        // T_out(P, d)
  EdgeRef side;        // (x, y): y follows x clockwise around P
  bool is_mop = false;
};

/// Outer parts of a terminal region, starting after its lowest corner and
/// rotated so that the part with interior vertices (or else the first
/// largest MOP) comes last.
std::vector<SurroundingPart> mops_around(const NearTriangulation& t, const PolygonRegion& p);

/// For a MOP of order >= 10, a diagonal whose side away from `avoid` has
/// between 6 and 9 vertices. Smallest such side wins, then lowest endpoints.
EdgeRef mop_split_diagonal(const NearTriangulation& m, EdgeRef avoid);

/// Vertices of the MOP side of diagonal d that does not contain `avoid`.
VertexSet mop_side(const NearTriangulation& m, EdgeRef d, EdgeRef avoid);

std::string decomposition_json(const NearTriangulation& t);

}  // namespace ntri
