#pragma once

// Exact total domination on maximal outerplanar graphs (linear-time DP over
// the triangle tree) and enumeration of polygon triangulations.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ntri/certificate.hpp"
#include "ntri/embedding.hpp"

namespace ntri {

/// Per-vertex membership constraint for the DP.
enum class Force : std::int8_t { Free, In, Out };

/// Minimum TDS of a MOP, lexicographically smallest among minima.
/// Returns nullopt when the forcing makes total domination impossible.
std::optional<VertexSet> mop_min_tds(const NearTriangulation& m, const std::vector<Force>& force = {});

TdsCertificate exact_tds_mop(const NearTriangulation& m);

/// Size-2 TDS of a pentagon MOP containing u.
TdsCertificate pentagon_tds_with(const NearTriangulation& m, VertexId u);

/// Size-2 TDS of a hexagon MOP containing a or b (consecutive on the
/// boundary); a is preferred.
TdsCertificate hexagon_tds_pair(const NearTriangulation& m, VertexId a, VertexId b);

/// Convex polygon 0..n-1 (clockwise) triangulated by the given chords.
NearTriangulation polygon_triangulation(int n, const std::vector<EdgeRef>& chords);

/// Calls visit() with the chord list of every triangulation of the n-gon.
void for_each_triangulation(int n, const std::function<void(const std::vector<EdgeRef>&)>& visit);

struct MopEnumeration {
  std::int64_t raw_count = 0;
  std::vector<NearTriangulation> classes;  // one per isomorphism class
};

/// All triangulations of the convex n-gon, 3 <= n <= 16, folded under the
/// dihedral group (which is exactly isomorphism for MOPs).
MopEnumeration enumerate_mops(int n);

}  // namespace ntri
