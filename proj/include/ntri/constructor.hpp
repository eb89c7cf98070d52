#pragma once

// Certified constructive solver: every near-triangulation of order n >= 5
// other than the two order-12 exceptions gets a total dominating set of
// size at most floor(2n/5).

#include <stdexcept>
#include <vector>

#include "ntri/certificate.hpp"
#include "ntri/embedding.hpp"
#include "ntri/oracle.hpp"
#include "ntri/surgery.hpp"

namespace ntri {

/// A reduction step broke its budget or produced an invalid set.
class LedgerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The constructive bound does not apply to this input (H1 or H2).
class ExceptionInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  SearchLimits oracle;
};

TdsCertificate tds_neartri(const NearTriangulation& t, const SolveOptions& options = {});

/// Set of size <= f(n-1)+1 containing u and dominating every vertex except
/// possibly u. Requires n >= 6.
TdsCertificate tds_anchored(const NearTriangulation& t, VertexId u, const SolveOptions& options = {});

enum class LiftBranch {
  BothEndpoints,  // merged vertex was chosen: both endpoints replace it
  Unchanged,      // merged vertex absent: set kept as is
  AddedAnchor,    // merged vertex absent: anchor endpoint added
};

struct Lift {
  VertexSet vertices;
  LiftBranch branch;
};

/// Lifts a set of T/e back to T. With anchored=false the first variant is
/// used (both endpoints or nothing added); with anchored=true the endpoint
/// `anchor` is added when the merged vertex is absent.
Lift lift_contraction(const Contraction& c, EdgeRef e, const VertexSet& reduced, bool anchored,
                      VertexId anchor = -1);

enum class ExceptionKind { Self, MinusVertex, MinusPair, Contracted, MinusEdge };

/// Constrained exact search used next to the exception graphs: a TDS of
/// size 5 containing `anchor` (size 4 containing anchor or anchor2 for
/// MinusEdge). Throws LedgerError if the search fails.
VertexSet handle_exception_context(ExceptionKind kind, const NearTriangulation& t, VertexId anchor,
                                   VertexId anchor2 = -1, const SearchLimits& limits = {});

/// Rewrites a TDS of a graph with a glued 4-vertex MOP (z, w1, w2 where w1
/// has neighbours z and w2) into one that contains z and avoids w1, w2.
/// When z loses its dominator, its lowest other neighbour is added.
VertexSet glued_ear_rewrite(const Adjacency& adj, VertexSet d, VertexId z, VertexId w1, VertexId w2);

}  // namespace ntri
