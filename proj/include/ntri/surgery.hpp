#pragma once

// Local operations on near-triangulations: deletion, contraction, boundary
// edge removal and the peeling procedures used by the inductive solver.

#include <array>
#include <vector>

#include "ntri/embedding.hpp"

namespace ntri {

/// A subgraph together with the id each of its vertices had in the parent.
struct Induced {
  NearTriangulation graph;
  std::vector<VertexId> origin;  // new id -> parent id
};

/// Subgraph induced by the vertices with keep[v] != 0. The outer face of the
/// result is the face that absorbs the parent's outer face. Kept vertices
/// are relabelled in increasing order. Throws InvariantError if the result
/// is not a near-triangulation.
Induced induced_subgraph(const NearTriangulation& t, const std::vector<char>& keep);
Induced delete_vertices(const NearTriangulation& t, const VertexSet& removed);

/// Number of boundary neighbours of a boundary vertex (its degree in T[C]).
int boundary_degree(const NearTriangulation& t, VertexId v);

/// Removes an interior vertex of degree 3 or a vertex of degree 2 in T[C].
Induced delete_vertex(const NearTriangulation& t, VertexId v);

std::vector<std::array<VertexId, 3>> separating_triangles(const NearTriangulation& t);

/// Vertices strictly inside the triangle (a, b, c).
VertexSet triangle_inside(const NearTriangulation& t, VertexId a, VertexId b, VertexId c);

bool is_contractible(const NearTriangulation& t, EdgeRef e);

struct Contraction {
  NearTriangulation graph;
  VertexId merged = -1;
  std::vector<VertexId> mapping;  // old id -> new id
};

/// The merged vertex gets id n-2; the remaining ids keep their relative order.
Contraction contract_edge(const NearTriangulation& t, EdgeRef e);

/// Removes a boundary edge whose inner triangle has an interior apex.
NearTriangulation remove_boundary_edge(const NearTriangulation& t, EdgeRef e);

/// Adds a new degree-2 vertex (id n) on the outer side of the boundary edge
/// (a, b), where b follows a clockwise.
NearTriangulation attach_ear(const NearTriangulation& t, VertexId a, VertexId b);

struct PeelResult {
  std::vector<VertexId> removed_boundary;
  VertexId anchor = -1;
  VertexId interior_partner = -1;
  Induced result;
};

PeelResult peel(const NearTriangulation& t, VertexId start);

/// For a boundary vertex u whose boundary edge {other, u} is not
/// contractible, an interior neighbour v of u such that T - {u, v} is a
/// near-triangulation.
VertexId find_interior_pair(const NearTriangulation& t, VertexId u, VertexId other);

EdgeRef find_contractible_at(const NearTriangulation& t, VertexId u);

}  // namespace ntri
