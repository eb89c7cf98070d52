#pragma once

// Near-triangulations as combinatorial embeddings: a clockwise rotation
// system per vertex plus the clockwise outer boundary cycle.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ntri {

using VertexId = std::int32_t;
using VertexSet = std::vector<VertexId>;

/// Unordered vertex pair referring to an edge of some graph.
struct EdgeRef {
  VertexId u = -1;
  VertexId v = -1;

  EdgeRef normalized() const { return u < v ? EdgeRef{u, v} : EdgeRef{v, u}; }
  bool has(VertexId x) const { return u == x || v == x; }
  VertexId other(VertexId x) const { return x == u ? v : u; }
  friend bool operator==(const EdgeRef& a, const EdgeRef& b) {
    const auto na = a.normalized();
    const auto nb = b.normalized();
    return na.u == nb.u && na.v == nb.v;
  }
};

enum class GraphClass { Mop, Reducible, Irreducible };

std::string_view to_string(GraphClass c);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Raised when a rotation system / boundary pair is not a valid
/// near-triangulation. `what()` names the violated invariant.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is called outside its precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Face {
  std::vector<VertexId> cycle;
  bool outer = false;
};

class NearTriangulation {
 public:
  using Rotation = std::vector<std::vector<VertexId>>;

  /// Empty placeholder; only make() produces usable values.
  NearTriangulation() = default;

  /// Validates every invariant; throws InvariantError on the first failure.
  static NearTriangulation make(Rotation rotation, std::vector<VertexId> boundary);

  /// Returns the name of the first violated invariant, or nullopt if valid.
  static std::optional<std::string> check(const Rotation& rotation,
                                          const std::vector<VertexId>& boundary);

  int order() const { return static_cast<int>(rot_.size()); }
  int edge_count() const { return edge_count_; }
  int boundary_length() const { return static_cast<int>(boundary_.size()); }
  int interior_count() const { return order() - boundary_length(); }

  const Rotation& rotation() const { return rot_; }
  const std::vector<VertexId>& rotation(VertexId v) const { return rot_[v]; }
  const std::vector<VertexId>& boundary() const { return boundary_; }

  bool on_boundary(VertexId v) const { return bpos_[v] >= 0; }
  /// Position of v on the boundary cycle, -1 for interior vertices.
  int boundary_index(VertexId v) const { return bpos_[v]; }
  VertexId boundary_at(int i) const;
  VertexId boundary_next(VertexId v) const;
  VertexId boundary_prev(VertexId v) const;

  int degree(VertexId v) const { return static_cast<int>(rot_[v].size()); }
  bool adjacent(VertexId a, VertexId b) const;
  std::vector<VertexId> common_neighbors(VertexId a, VertexId b) const;

  /// Neighbor following `from` in the clockwise rotation of `at`.
  VertexId cw_next(VertexId at, VertexId from) const;
  /// Neighbor preceding `from` in the clockwise rotation of `at`.
  VertexId cw_prev(VertexId at, VertexId from) const;
  /// Third vertex of the face lying to the left of the dart u->v.
  VertexId face_apex(VertexId u, VertexId v) const { return cw_next(v, u); }

  std::vector<EdgeRef> edges() const;
  std::vector<std::vector<VertexId>> adjacency() const;

  friend bool operator==(const NearTriangulation& a, const NearTriangulation& b) {
    return a.rot_ == b.rot_ && a.boundary_ == b.boundary_;
  }

 private:
  Rotation rot_;
  std::vector<VertexId> boundary_;
  std::vector<int> bpos_;
  std::vector<std::vector<VertexId>> sorted_adj_;
  int edge_count_ = 0;
};

/// All faces of the embedding; inner faces come out counterclockwise,
/// the outer face clockwise (equal to the boundary up to rotation).
std::vector<Face> faces(const NearTriangulation& t);

GraphClass classify(const NearTriangulation& t);

/// Edges among boundary vertices joining non-consecutive boundary positions.
bool is_diagonal(const NearTriangulation& t, EdgeRef e);

inline constexpr int kCanonicalMaxOrder = 16;

/// Isomorphism-invariant encoding of the underlying abstract graph.
/// Throws PreconditionError when the order exceeds kCanonicalMaxOrder.
std::string canonical_form(const NearTriangulation& t);
std::string canonical_form(const std::vector<std::vector<VertexId>>& adjacency);

/// True iff t is one of the two 12-vertex exception MOPs.
bool is_exception(const NearTriangulation& t);

NearTriangulation parse_ntg(std::string_view text);
std::string to_ntg(const NearTriangulation& t);
std::string to_dot(const NearTriangulation& t);

/// Builds the embedding from unoriented triangular inner faces and the
/// clockwise boundary cycle. Face orientations are propagated from the
/// boundary, so callers only list vertex triples.
NearTriangulation from_faces(int n, std::vector<VertexId> boundary,
                             const std::vector<std::array<VertexId, 3>>& triangles);

}  // namespace ntri
