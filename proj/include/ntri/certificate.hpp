#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ntri/embedding.hpp"

namespace ntri {

enum class CaseId {
  BaseMop,
  Reducible,
  C1,
  C2,
  C3,
  C4,
  C5,
  C6,
  C7,
  C8,
  C9,
  C10,
  C11,
  C12,
  Anchored,
  LiftPair,
  LiftAnchored,
  ExceptionSearch,
  OracleFallback,
};

std::string_view to_string(CaseId c);
CaseId case_from_string(std::string_view s);

/// One applied rule. Vertex ids refer to the graph the step was applied to.
struct ReductionStep {
  CaseId case_id = CaseId::BaseMop;
  int depth = 0;
  int n = 0;      // order of the graph at this step
  int k = 0;      // vertices removed before recursing
  int d = 0;      // dominators added on top of the recursive solution
  int bound = 0;  // size promised for this step
  int size = 0;   // size delivered
  bool anchored = false;
  VertexSet removed;
};

struct TdsCertificate {
  VertexSet vertices;  // sorted
  std::vector<ReductionStep> trace;

  int size() const { return static_cast<int>(vertices.size()); }
};

/// floor(2n/5)
inline int budget(int n) { return n <= 0 ? 0 : (2 * n) / 5; }

}  // namespace ntri
