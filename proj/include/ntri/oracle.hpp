#pragma once

// Exact minimum total domination for small graphs by branch and bound.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ntri/embedding.hpp"

namespace ntri {

using Adjacency = std::vector<std::vector<VertexId>>;

struct SearchLimits {
  int max_n = 25;
  std::int64_t node_budget = 200'000'000;
  double time_budget = 120.0;  // seconds
};

struct TdsConstraints {
  VertexSet must_contain;
  VertexSet forbidden;
  int max_size = -1;  // -1: unbounded
  bool lexicographic = true;
};

enum class SearchStatus { Optimal, Infeasible, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::Infeasible;
  VertexSet vertices;  // sorted, valid when status == Optimal
  std::int64_t nodes = 0;

  bool ok() const { return status == SearchStatus::Optimal; }
  int size() const { return static_cast<int>(vertices.size()); }
};

bool is_tds(const Adjacency& adj, const VertexSet& d);
bool is_tds(const NearTriangulation& t, const VertexSet& d);

/// Vertices without a neighbour in d.
VertexSet undominated(const Adjacency& adj, const VertexSet& d);

/// Minimum TDS honouring the constraints. Among minimum solutions the
/// lexicographically smallest sorted vertex list is returned unless
/// constraints.lexicographic is false. Throws PreconditionError when the
/// graph exceeds limits.max_n.
SearchResult exact_tds(const Adjacency& adj, const TdsConstraints& constraints = {},
                       const SearchLimits& limits = {});
SearchResult exact_tds(const NearTriangulation& t, const TdsConstraints& constraints = {},
                       const SearchLimits& limits = {});

}  // namespace ntri
