#include "ntri/constructor.hpp"

#include <algorithm>
#include <string>

#include "ntri/decomposition.hpp"
#include "ntri/generators.hpp"
#include "ntri/mop_solver.hpp"

namespace ntri {

namespace {

bool contains(const VertexSet& s, VertexId v) { return std::find(s.begin(), s.end(), v) != s.end(); }

VertexSet normalize(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

VertexSet unite(VertexSet a, const VertexSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  return normalize(std::move(a));
}

VertexSet lift_ids(const Induced& s, const VertexSet& d) {
  VertexSet out;
  out.reserve(d.size());
  for (VertexId v : d) out.push_back(s.origin[v]);
  return normalize(std::move(out));
}

VertexId local_id(const Induced& s, VertexId parent) {
  const auto it = std::find(s.origin.begin(), s.origin.end(), parent);
  if (it == s.origin.end()) throw InvariantError("vertex " + std::to_string(parent) + " not kept");
  return static_cast<VertexId>(it - s.origin.begin());
}

Induced keep_only(const NearTriangulation& t, const VertexSet& vs) {
  std::vector<char> keep(t.order(), 0);
  for (VertexId v : vs) keep[v] = 1;
  return induced_subgraph(t, keep);
}

VertexSet slice(const std::vector<VertexId>& arc, std::size_t from, std::size_t to) {
  return VertexSet(arc.begin() + static_cast<std::ptrdiff_t>(from), arc.begin() + static_cast<std::ptrdiff_t>(to));
}

VertexSet inner_of(const std::vector<VertexId>& arc) { return slice(arc, 1, arc.size() - 1); }

std::vector<VertexId> boundary_arc(const NearTriangulation& t, VertexId x, VertexId y) {
  std::vector<VertexId> arc{x};
  VertexId v = x;
  while (v != y) {
    v = t.boundary_next(v);
    arc.push_back(v);
    if (static_cast<int>(arc.size()) > t.boundary_length()) throw InvariantError("side endpoints not on boundary");
  }
  return arc;
}

// Position in the arc of the apex of the triangle on the closing edge.
int apex_index(const NearTriangulation& t, const std::vector<VertexId>& arc) {
  const VertexId apex = t.cw_next(arc.back(), arc.front());
  const auto it = std::find(arc.begin(), arc.end(), apex);
  if (it == arc.end() || it == arc.begin() || it + 1 == arc.end()) {
    throw LedgerError("closing edge of an outer MOP has no apex inside it");
  }
  return static_cast<int>(it - arc.begin());
}

// {u, partner}: a size-2 TDS of the pentagon spanned by `piece` through u.
VertexSet pentagon_pair(const NearTriangulation& t, const VertexSet& piece, VertexId u) {
  const Induced q = keep_only(t, piece);
  return lift_ids(q, pentagon_tds_with(q.graph, local_id(q, u)).vertices);
}

VertexSet mop_tds_of(const NearTriangulation& t, const VertexSet& piece, int limit) {
  const Induced q = keep_only(t, piece);
  const VertexSet d = lift_ids(q, *mop_min_tds(q.graph));
  if (static_cast<int>(d.size()) > limit) throw LedgerError("outer MOP above its budget");
  return d;
}

struct Glued {
  NearTriangulation graph;
  VertexId w1 = -1;
  VertexId w2 = -1;
};

// Glues a 4-vertex MOP on the boundary edge after z (forward) or before it.
Glued glue_quad(const NearTriangulation& g, VertexId z, bool forward) {
  Glued out;
  out.w2 = g.order();
  out.w1 = g.order() + 1;
  if (forward) {
    const NearTriangulation a = attach_ear(g, z, g.boundary_next(z));
    out.graph = attach_ear(a, z, out.w2);
  } else {
    const NearTriangulation a = attach_ear(g, g.boundary_prev(z), z);
    out.graph = attach_ear(a, out.w2, z);
  }
  return out;
}

class Solver {
 public:
  explicit Solver(const SolveOptions& options) : opt_(options) {}

  std::vector<ReductionStep> trace;

  VertexSet solve(const NearTriangulation& t) {
    const std::size_t slot = open(t);
    Deeper guard(depth_);
    const int n = t.order();
    if (n < 5) throw LedgerError("reduction reached order " + std::to_string(n));
    if (is_exception(t)) throw LedgerError("reduction reached an exception graph");
    switch (classify(t)) {
      case GraphClass::Mop:
        return close(slot, t, CaseId::BaseMop, 0, 0, budget(n), *mop_min_tds(t));
      case GraphClass::Reducible:
        return reducible(slot, t);
      case GraphClass::Irreducible:
        return irreducible(slot, t);
    }
    throw LedgerError("unknown graph class");
  }

  VertexSet anchored(const NearTriangulation& t, VertexId u) {
    const std::size_t slot = open(t);
    Deeper guard(depth_);
    trace[slot].case_id = CaseId::Anchored;
    const int n = t.order();
    if (n < 6) throw LedgerError("anchored step below order 6");
    if (is_exception(t)) {
      const VertexSet d = exception_search(ExceptionKind::Self, t, u);
      return close(slot, t, CaseId::Anchored, 1, 1, budget(n - 1) + 1, d, {}, u);
    }
    const EdgeRef e = find_contractible_at(t, u);
    const Contraction c = contract_edge(t, e);
    if (is_exception(c.graph)) {
      const VertexSet d = exception_search(ExceptionKind::Contracted, t, u, e.other(u));
      return close(slot, t, CaseId::Anchored, 1, 1, budget(n - 1) + 1, d, {e.u, e.v}, u);
    }
    const VertexSet reduced = recurse(t, c.graph);
    const Lift lift = lift_contraction(c, e, reduced, true, u);
    record_lift(t, CaseId::LiftAnchored, lift, static_cast<int>(reduced.size()), e, u);
    return close(slot, t, CaseId::Anchored, 1, 1, budget(n - 1) + 1, lift.vertices, {e.u, e.v}, u);
  }

 private:
  struct Deeper {
    explicit Deeper(int& d) : d_(d) { ++d_; }
    ~Deeper() { --d_; }
    int& d_;
  };

  std::size_t open(const NearTriangulation& t) {
    ReductionStep s;
    s.depth = depth_;
    s.n = t.order();
    s.bound = -1;
    trace.push_back(s);
    return trace.size() - 1;
  }

  // Fills the step and checks its ledger entry. anchor >= 0 marks an
  // anchored step: the set must contain it and may leave it undominated.
  VertexSet close(std::size_t slot, const NearTriangulation& t, CaseId c, int k, int d, int bound, VertexSet set,
                  VertexSet removed = {}, VertexId anchor = -1, bool ratio_checked = true) {
    set = normalize(std::move(set));
    const int n = t.order();
    ReductionStep& s = trace[slot];
    s.case_id = c;
    s.k = k;
    s.d = d;
    s.bound = bound;
    s.size = static_cast<int>(set.size());
    s.anchored = anchor >= 0;
    s.removed = normalize(std::move(removed));
    const std::string where = std::string(to_string(c)) + " at order " + std::to_string(n);
    for (VertexId v : set) {
      if (v < 0 || v >= n) throw LedgerError(where + ": vertex out of range");
    }
    if (anchor >= 0) {
      if (!contains(set, anchor)) throw LedgerError(where + ": anchor missing");
      const VertexSet left = undominated(t.adjacency(), set);
      if (!left.empty() && left != VertexSet{anchor}) throw LedgerError(where + ": anchored set misses vertices");
      if (bound > budget(n - 1) + 1) throw LedgerError(where + ": anchored bound above f(n-1)+1");
    } else {
      if (!is_tds(t, set)) throw LedgerError(where + ": not a total dominating set");
      if (bound > budget(n)) throw LedgerError(where + ": bound above f(n)");
    }
    if (s.size > bound) throw LedgerError(where + ": size " + std::to_string(s.size) + " above bound " +
                                          std::to_string(bound));
    if (ratio_checked && anchor < 0 && k > 0 && (n - k < 5 || 5 * d > 2 * k)) {
      throw LedgerError(where + ": step violates the budget ratio");
    }
    return set;
  }

  void check_smaller(const NearTriangulation& parent, const NearTriangulation& child) const {
    const std::pair<int, int> a{child.interior_count(), child.order()};
    const std::pair<int, int> b{parent.interior_count(), parent.order()};
    if (!(a < b)) throw LedgerError("recursion does not decrease (interior, order)");
  }

  VertexSet recurse(const NearTriangulation& parent, const NearTriangulation& child) {
    check_smaller(parent, child);
    return solve(child);
  }

  // Augmented graphs keep (interior, order) but must reduce on the next step.
  VertexSet recurse_augmented(const NearTriangulation& parent, const NearTriangulation& child) {
    if (child.interior_count() != parent.interior_count() || child.order() != parent.order() ||
        classify(child) != GraphClass::Reducible) {
      throw LedgerError("augmented graph is not reducible");
    }
    return solve(child);
  }

  VertexSet anchored_child(const NearTriangulation& parent, const NearTriangulation& child, VertexId u) {
    check_smaller(parent, child);
    return anchored(child, u);
  }

  VertexSet exception_search(ExceptionKind kind, const NearTriangulation& g, VertexId a, VertexId b = -1) {
    const VertexSet d = handle_exception_context(kind, g, a, b, opt_.oracle);
    ReductionStep s;
    s.case_id = CaseId::ExceptionSearch;
    s.depth = depth_;
    s.n = g.order();
    s.bound = kind == ExceptionKind::MinusEdge ? 4 : 5;
    s.size = static_cast<int>(d.size());
    s.removed = b >= 0 ? VertexSet{a, b} : VertexSet{a};
    trace.push_back(s);
    return d;
  }

  void record_lift(const NearTriangulation& t, CaseId c, const Lift& lift, int reduced_size, EdgeRef e,
                   VertexId anchor) {
    ReductionStep s;
    s.case_id = c;
    s.depth = depth_;
    s.n = t.order();
    s.k = 1;
    s.d = lift.branch == LiftBranch::Unchanged ? 0 : 1;
    s.bound = reduced_size + s.d;
    s.size = static_cast<int>(lift.vertices.size());
    s.anchored = anchor >= 0;
    s.removed = normalize({e.u, e.v});
    const VertexSet left = undominated(t.adjacency(), lift.vertices);
    bool ok = s.size <= s.bound;
    for (VertexId v : left) {
      if (lift.branch == LiftBranch::BothEndpoints) ok = false;
      if (lift.branch == LiftBranch::Unchanged && !e.has(v)) ok = false;
      if (lift.branch == LiftBranch::AddedAnchor && v != anchor) ok = false;
    }
    if (!ok) throw LedgerError("contraction lift broke its guarantee");
    trace.push_back(s);
  }

  VertexSet reducible(std::size_t slot, const NearTriangulation& t) {
    trace[slot].case_id = CaseId::Reducible;
    const int n = t.order();
    for (VertexId a : t.boundary()) {
      const VertexId b = t.boundary_next(a);
      if (t.on_boundary(t.face_apex(b, a))) continue;
      const NearTriangulation r = remove_boundary_edge(t, {a, b});
      if (is_exception(r)) {
        const VertexSet d = exception_search(ExceptionKind::MinusEdge, t, a, b);
        return close(slot, t, CaseId::Reducible, 0, 0, 4, d, {a, b});
      }
      return close(slot, t, CaseId::Reducible, 0, 0, budget(n), recurse(t, r), {a, b});
    }
    throw LedgerError("reducible graph without a removable boundary edge");
  }

  bool middle_contractible(const NearTriangulation& t, const std::vector<VertexId>& arc) {
    const Induced r = delete_vertices(t, inner_of(arc));
    return is_contractible(r.graph, {local_id(r, arc.front()), local_id(r, arc.back())});
  }

  VertexSet irreducible(std::size_t slot, const NearTriangulation& t) {
    const PolygonDecomposition dec = decompose(t);
    const PolygonRegion& p = dec.regions[dec.selected_terminal()];
    const auto parts = mops_around(t, p);
    const int k = static_cast<int>(parts.size());
    std::vector<std::vector<VertexId>> arcs(k);
    for (int i = 0; i < k; ++i) {
      if (parts[i].side.v != parts[(i + 1) % k].side.u) throw LedgerError("outer parts are not consecutive");
      arcs[i] = boundary_arc(t, parts[i].side.u, parts[i].side.v);
    }
    for (int i = 0; i < k; ++i) {
      if (!parts[i].is_mop) continue;
      const std::size_t s = arcs[i].size();
      if (s == 4 || s == 6 || s == 7 || s == 8 || s > 9) return piece(slot, t, arcs[i]);
      if (s == 9 && (apex_index(t, arcs[i]) != 4 || middle_contractible(t, arcs[i]))) {
        return piece(slot, t, arcs[i]);
      }
    }
    // The last part stays in the remainder: pairs come from the others.
    for (int j = 0; j + 2 < k; ++j) {
      if (arcs[j].size() != arcs[j + 1].size()) return pair_case(slot, t, p, arcs, j);
    }
    const std::size_t s = arcs[0].size();
    for (int i = 0; i + 1 < k; ++i) {
      if (!parts[i].is_mop || arcs[i].size() != s) throw LedgerError("no case applies");
    }
    if (s == 3) return all_triangles(slot, t, arcs);
    if (s == 9) return all_nines(slot, t, arcs);
    if (s == 5) return all_pentagons(slot, t, p, parts, arcs);
    throw LedgerError("no case applies");
  }

  // An outer MOP given by its clockwise boundary arc x .. y, closed by the
  // edge (x, y).
  VertexSet piece(std::size_t slot, const NearTriangulation& t, const std::vector<VertexId>& arc) {
    switch (arc.size()) {
      case 4:
        return case1(slot, t, arc);
      case 6:
        return case2(slot, t, arc);
      case 7:
        return case3(slot, t, arc);
      case 8:
        return case4(slot, t, arc);
      case 9:
        return case5(slot, t, arc);
      default:
        if (arc.size() > 9) return case6(slot, t, arc);
    }
    throw LedgerError("outer MOP of order " + std::to_string(arc.size()) + " has no case");
  }

  VertexSet dispatch_sub(std::size_t slot, const NearTriangulation& t, CaseId c, const std::vector<VertexId>& sub) {
    VertexSet d;
    {
      const std::size_t child = open(t);
      Deeper guard(depth_);
      d = piece(child, t, sub);
    }
    return close(slot, t, c, 0, 0, budget(t.order()), d, inner_of(sub));
  }

  VertexSet case1(std::size_t slot, const NearTriangulation& t, const std::vector<VertexId>& arc) {
    trace[slot].case_id = CaseId::C1;
    const VertexId x = arc[0], y = arc[3];
    VertexId z;
    if (t.adjacent(y, arc[1]) && t.adjacent(y, arc[2])) {
      z = y;
    } else if (t.adjacent(x, arc[1]) && t.adjacent(x, arc[2])) {
      z = x;
    } else {
      throw LedgerError("order-4 MOP without a dominating end");
    }
    const VertexSet removed = inner_of(arc);
    const Induced r = delete_vertices(t, removed);
    const VertexId zl = local_id(r, z);
    const Glued g = glue_quad(r.graph, zl, z == y);
    const VertexSet da = recurse_augmented(t, g.graph);
    const VertexSet rewritten = glued_ear_rewrite(g.graph.adjacency(), da, zl, g.w1, g.w2);
    if (rewritten.size() > da.size()) throw LedgerError("glued ear rewrite grew the set");
    return close(slot, t, CaseId::C1, 0, 0, budget(t.order()), lift_ids(r, rewritten), removed);
  }

  VertexSet case2(std::size_t slot, const NearTriangulation& t, const std::vector<VertexId>& arc) {
    trace[slot].case_id = CaseId::C2;
    const VertexId x = arc.front(), y = arc.back();
    const VertexSet removed = inner_of(arc);
    const Induced m = keep_only(t, arc);
    const VertexSet hp = lift_ids(m, hexagon_tds_pair(m.graph, local_id(m, x), local_id(m, y)).vertices);
    const VertexId e = contains(hp, x) ? x : y;
    const VertexId u = hp[0] == e ? hp[1] : hp[0];
    const Induced r = delete_vertices(t, removed);
    const VertexSet da = lift_ids(r, anchored_child(t, r.graph, local_id(r, e)));
    const int n = t.order();
    return close(slot, t, CaseId::C2, 5, 2, budget(n - 5) + 2, unite(da, {u}), removed);
  }

  VertexSet case3(std::size_t slot, const NearTriangulation& t, const std::vector<VertexId>& arc) {
    trace[slot].case_id = CaseId::C3;
    const VertexSet removed = inner_of(arc);
    const Induced r = delete_vertices(t, removed);
    const VertexSet d = unite(lift_ids(r, recurse(t, r.graph)), mop_tds_of(t, arc, 2));
    return close(slot, t, CaseId::C3, 5, 2, budget(t.order() - 5) + 2, d, removed);
  }

  VertexSet case4(std::size_t slot, const NearTriangulation& t, const std::vector<VertexId>& arc) {
    trace[slot].case_id = CaseId::C4;
    const int a = apex_index(t, arc);
    if (a == 1 || a == 2) return dispatch_sub(slot, t, CaseId::C4, slice(arc, a, arc.size()));
    if (a == 5 || a == 6) return dispatch_sub(slot, t, CaseId::C4, slice(arc, 0, a + 1));
    std::vector<VertexId> r = arc;
    if (a == 4) std::reverse(r.begin(), r.end());
    const VertexSet removed{r[1], r[2], r[4], r[5], r[6]};
    const Induced rest = delete_vertices(t, removed);
    const VertexSet dr = lift_ids(rest, recurse(t, rest.graph));
    VertexSet d;
    if (contains(dr, r[0])) {
      d = unite(dr, pentagon_pair(t, slice(r, 3, 8), r[3]));
    } else if (contains(dr, r[7])) {
      d = unite(dr, pentagon_pair(t, slice(r, 3, 8), r[7]));
      d = unite(d, pentagon_pair(t, {r[0], r[1], r[2], r[3], r[7]}, r[7]));
    } else {
      throw LedgerError("degree-2 vertex left undominated");
    }
    return close(slot, t, CaseId::C4, 5, 2, budget(t.order() - 5) + 2, d, removed);
  }

  VertexSet case5(std::size_t slot, const NearTriangulation& t, const std::vector<VertexId>& arc) {
    trace[slot].case_id = CaseId::C5;
    const int a = apex_index(t, arc);
    if (a < 4) return dispatch_sub(slot, t, CaseId::C5, slice(arc, a, arc.size()));
    if (a > 4) return dispatch_sub(slot, t, CaseId::C5, slice(arc, 0, a + 1));
    const VertexId x = arc.front(), y = arc.back();
    const VertexSet removed = inner_of(arc);
    const Induced r = delete_vertices(t, removed);
    const EdgeRef e{local_id(r, x), local_id(r, y)};
    if (!is_contractible(r.graph, e)) throw LedgerError("order-9 MOP closing edge is not contractible");
    const Contraction c = contract_edge(r.graph, e);
    const VertexSet reduced = recurse(t, c.graph);
    const Lift lift = lift_contraction(c, e, reduced, false);
    record_lift(r.graph, CaseId::LiftPair, lift, static_cast<int>(reduced.size()), e, -1);
    VertexSet d = lift_ids(r, lift.vertices);
    if (lift.branch == LiftBranch::BothEndpoints) {
      d = unite(d, pentagon_pair(t, slice(arc, 0, 5), x));
      d = unite(d, pentagon_pair(t, slice(arc, 4, 9), y));
    } else {
      d = unite(d, mop_tds_of(t, arc, 3));
    }
    return close(slot, t, CaseId::C5, 8, 3, budget(t.order() - 8) + 3, d, removed);
  }

  VertexSet case6(std::size_t slot, const NearTriangulation& t, const std::vector<VertexId>& arc) {
    trace[slot].case_id = CaseId::C6;
    const Induced m = keep_only(t, arc);
    const EdgeRef avoid{local_id(m, arc.front()), local_id(m, arc.back())};
    const EdgeRef d = mop_split_diagonal(m.graph, avoid);
    const VertexSet side = lift_ids(m, mop_side(m.graph, d, avoid));
    std::vector<VertexId> sub;
    for (VertexId v : arc) {
      if (contains(side, v)) sub.push_back(v);
    }
    const auto first = std::find(arc.begin(), arc.end(), sub.front()) - arc.begin();
    for (std::size_t i = 0; i < sub.size(); ++i) {
      if (arc[first + i] != sub[i]) throw LedgerError("split side is not contiguous");
    }
    if (sub.size() < 6 || sub.size() > 9) throw LedgerError("split side outside 6..9");
    return dispatch_sub(slot, t, CaseId::C6, sub);
  }

  VertexSet pair_case(std::size_t slot, const NearTriangulation& t, const PolygonRegion& p,
                      const std::vector<std::vector<VertexId>>& arcs, int j) {
    trace[slot].case_id = CaseId::C7;
    const auto& a = arcs[j];
    const auto& b = arcs[j + 1];
    const VertexId s = a.back();
    const bool a_large = a.size() > b.size();
    const auto& large = a_large ? a : b;
    const auto& small = a_large ? b : a;
    const VertexId far = a_large ? a.front() : b.back();
    const VertexSet inner = unite(inner_of(large), inner_of(small));
    const int n = t.order();

    if (large.size() == 5) {
      const VertexSet sp = pentagon_pair(t, large, s);
      const VertexSet removed = unite(inner, {s});
      const Induced rest = delete_vertices(t, removed);
      VertexSet d;
      if (is_exception(rest.graph)) {
        const Induced mbar = delete_vertices(t, inner);
        d = lift_ids(mbar, exception_search(ExceptionKind::MinusVertex, mbar.graph, local_id(mbar, s)));
      } else {
        d = lift_ids(rest, recurse(t, rest.graph));
      }
      return close(slot, t, CaseId::C7, 5, 2, budget(n - 5) + 2, unite(d, sp), removed);
    }

    // The large part has order 9 and a non-contractible closing edge.
    VertexSet tp_keep = p.corners;
    tp_keep.insert(tp_keep.end(), p.interior.begin(), p.interior.end());
    const Induced tp = keep_only(t, tp_keep);
    const VertexId v2 = tp.origin[find_interior_pair(tp.graph, local_id(tp, s), local_id(tp, far))];
    const VertexId mid = large[4];
    const VertexSet p_far = large.front() == far ? slice(large, 0, 5) : slice(large, 4, 9);
    const VertexSet p_s = large.front() == far ? slice(large, 4, 9) : slice(large, 0, 5);
    const VertexSet removed = unite(inner, {s, v2});
    const Induced rest = delete_vertices(t, removed);

    trace[slot].case_id = small.size() == 3 ? CaseId::C8 : CaseId::C9;
    if (small.size() == 3) {
      VertexSet d = unite(pentagon_pair(t, p_far, mid), pentagon_pair(t, p_s, mid));
      if (is_exception(rest.graph)) {
        const Induced mbar = delete_vertices(t, inner);
        d = unite(d, lift_ids(mbar, exception_search(ExceptionKind::MinusPair, mbar.graph, local_id(mbar, s),
                                                     local_id(mbar, v2))));
      } else {
        d = unite(d, lift_ids(rest, recurse(t, rest.graph)));
        d = unite(d, {s});
      }
      return close(slot, t, CaseId::C8, 10, 4, budget(n - 10) + 4, d, removed);
    }

    if (rest.graph.order() < 6) throw LedgerError("case 9 remainder below order 6");
    VertexSet d = lift_ids(rest, anchored_child(t, rest.graph, local_id(rest, far)));
    d = unite(d, pentagon_pair(t, p_far, far));
    d = unite(d, pentagon_pair(t, p_s, s));
    d = unite(d, pentagon_pair(t, small, s));
    return close(slot, t, CaseId::C9, 13, 5, budget(n - 13) + 5, d, removed);
  }

  VertexSet all_triangles(std::size_t slot, const NearTriangulation& t, const std::vector<std::vector<VertexId>>& arcs) {
    trace[slot].case_id = CaseId::C10;
    const VertexId s = arcs[0].back();
    const VertexSet removed{arcs[0][1], arcs[1][1]};
    const Induced mbar = delete_vertices(t, removed);
    const VertexId sl = local_id(mbar, s);
    if (mbar.graph.boundary_next(sl) != local_id(mbar, arcs[1].back())) {
      throw LedgerError("polygon side is not a boundary edge after deletion");
    }
    const Glued g = glue_quad(mbar.graph, sl, true);
    const VertexSet da = recurse_augmented(t, g.graph);
    const VertexSet rewritten = glued_ear_rewrite(g.graph.adjacency(), da, sl, g.w1, g.w2);
    if (rewritten.size() > da.size()) throw LedgerError("glued ear rewrite grew the set");
    return close(slot, t, CaseId::C10, 0, 0, budget(t.order()), lift_ids(mbar, rewritten), removed);
  }

  VertexSet all_nines(std::size_t slot, const NearTriangulation& t, const std::vector<std::vector<VertexId>>& arcs) {
    trace[slot].case_id = CaseId::C11;
    const VertexId s = arcs[0].back();
    const VertexSet removed = unite(unite(inner_of(arcs[0]), inner_of(arcs[1])), {s});
    const Induced rest = delete_vertices(t, removed);
    if (is_exception(rest.graph)) return oracle_fallback(slot, t);
    VertexSet d = lift_ids(rest, recurse(t, rest.graph));
    d = unite(d, mop_tds_of(t, arcs[0], 3));
    d = unite(d, mop_tds_of(t, arcs[1], 3));
    return close(slot, t, CaseId::C11, 15, 6, budget(t.order() - 15) + 6, d, removed);
  }

  VertexSet all_pentagons(std::size_t slot, const NearTriangulation& t, const PolygonRegion& p,
                          const std::vector<SurroundingPart>& parts, const std::vector<std::vector<VertexId>>& arcs) {
    trace[slot].case_id = CaseId::C12;
    const int k = static_cast<int>(parts.size());
    const int n = t.order();
    std::vector<VertexId> c(k);
    for (int i = 0; i < k; ++i) c[i] = parts[i].side.u;
    VertexSet corners_gone;
    VertexId v;
    int j;
    if (p.interior.size() == 1) {
      j = k - 1;
      corners_gone = slice(c, 1, k - 1);
      v = p.interior[0];
    } else {
      VertexSet tp_keep = p.corners;
      tp_keep.insert(tp_keep.end(), p.interior.begin(), p.interior.end());
      const Induced tp = keep_only(t, tp_keep);
      const PeelResult pr = peel(tp.graph, local_id(tp, c[1]));
      for (VertexId x : pr.removed_boundary) corners_gone.push_back(tp.origin[x]);
      v = tp.origin[pr.interior_partner];
      j = static_cast<int>(corners_gone.size()) + 1;
      if (j > k - 1) throw LedgerError("pentagon chain peeled past the last outer MOP");
      for (int i = 0; i + 1 < j; ++i) {
        if (corners_gone[i] != c[i + 1]) throw LedgerError("pentagon chain peeled out of order");
      }
    }
    if (!t.adjacent(c[j - 1], v)) throw LedgerError("peeled interior vertex not adjacent to the last corner");

    VertexSet inner;
    for (int i = 0; i < j; ++i) inner = unite(inner, inner_of(arcs[i]));
    const VertexSet removed = unite(unite(inner, corners_gone), {v});
    const Induced rest = delete_vertices(t, removed);
    // Triple for the pair of pentagons meeting at corner i (1-based).
    auto triple = [&](int i) {
      return unite(pentagon_pair(t, arcs[i - 2], c[i - 1]), pentagon_pair(t, arcs[i - 1], c[i - 1]));
    };

    VertexSet d;
    if (j % 2 == 0) {
      int bound = budget(n - 4 * j) + 3 * j / 2;
      bool ratio_checked = true;
      if (is_exception(rest.graph)) {
        const Induced with_v = delete_vertices(t, unite(inner, corners_gone));
        d = lift_ids(with_v, exception_search(ExceptionKind::MinusVertex, with_v.graph, local_id(with_v, v)));
        bound = 5 + 3 * j / 2;
        ratio_checked = false;
      } else {
        d = lift_ids(rest, recurse(t, rest.graph));
      }
      for (int i = 2; i <= j; i += 2) d = unite(d, triple(i));
      return close(slot, t, CaseId::C12, 4 * j, 3 * j / 2, bound, d, removed, -1, ratio_checked);
    }
    bool ratio_checked = true;
    if (rest.graph.order() == 5) {
      if (rest.graph.interior_count() != 0) throw LedgerError("order-5 remainder is not a pentagon");
      d = lift_ids(rest, pentagon_tds_with(rest.graph, local_id(rest, c[0])).vertices);
      ratio_checked = false;
    } else {
      d = lift_ids(rest, anchored_child(t, rest.graph, local_id(rest, c[0])));
    }
    d = unite(d, pentagon_pair(t, arcs[0], c[0]));
    for (int i = 3; i <= j; i += 2) d = unite(d, triple(i));
    const int extra = 2 + 3 * (j - 1) / 2;
    return close(slot, t, CaseId::C12, 4 * j + 1, extra, budget(n - 4 * j - 1) + extra, d, removed, -1, ratio_checked);
  }

  VertexSet oracle_fallback(std::size_t slot, const NearTriangulation& t) {
    const int n = t.order();
    if (n > opt_.oracle.max_n) throw LedgerError("exception remainder too large for the fallback search");
    TdsConstraints c;
    c.max_size = budget(n);
    const SearchResult res = exact_tds(t, c, opt_.oracle);
    if (!res.ok()) throw LedgerError("fallback search found no set within f(n)");
    return close(slot, t, CaseId::OracleFallback, 0, 0, budget(n), res.vertices);
  }

  SolveOptions opt_;
  int depth_ = 0;
};

// Open steps from the root down to the failure point.
std::string failure_path(const std::vector<ReductionStep>& trace) {
  std::vector<std::string> chain;
  int depth = 1 << 30;
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    if (it->depth >= depth) continue;
    depth = it->depth;
    chain.push_back(std::string(to_string(it->case_id)) + (it->bound < 0 ? "*" : "") + "@" +
                    std::to_string(it->n));
  }
  std::string out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) out += (out.empty() ? "" : " > ") + *it;
  return out;
}

}  // namespace

Lift lift_contraction(const Contraction& c, EdgeRef e, const VertexSet& reduced, bool anchored, VertexId anchor) {
  const int n = static_cast<int>(c.mapping.size());
  std::vector<VertexId> back(c.graph.order(), -1);
  for (VertexId v = 0; v < n; ++v) {
    if (v != e.u && v != e.v) back[c.mapping[v]] = v;
  }
  if (anchored && !e.has(anchor)) throw PreconditionError("anchor is not an endpoint of the contracted edge");
  Lift out;
  const bool merged_in = contains(reduced, c.merged);
  for (VertexId x : reduced) {
    if (x != c.merged) out.vertices.push_back(back[x]);
  }
  if (merged_in) {
    out.vertices.push_back(e.u);
    out.vertices.push_back(e.v);
    out.branch = LiftBranch::BothEndpoints;
  } else if (anchored) {
    out.vertices.push_back(anchor);
    out.branch = LiftBranch::AddedAnchor;
  } else {
    out.branch = LiftBranch::Unchanged;
  }
  out.vertices = normalize(std::move(out.vertices));
  return out;
}

VertexSet handle_exception_context(ExceptionKind kind, const NearTriangulation& t, VertexId anchor, VertexId anchor2,
                                   const SearchLimits& limits) {
  bool holds = false;
  switch (kind) {
    case ExceptionKind::Self:
      holds = is_exception(t);
      break;
    case ExceptionKind::MinusVertex:
      holds = is_exception(delete_vertices(t, {anchor}).graph);
      break;
    case ExceptionKind::MinusPair:
      holds = anchor2 >= 0 && is_exception(delete_vertices(t, {anchor, anchor2}).graph);
      break;
    case ExceptionKind::Contracted:
      holds = anchor2 >= 0 && t.adjacent(anchor, anchor2) && is_contractible(t, {anchor, anchor2}) &&
              is_exception(contract_edge(t, {anchor, anchor2}).graph);
      break;
    case ExceptionKind::MinusEdge:
      holds = anchor2 >= 0 && is_exception(remove_boundary_edge(t, {anchor, anchor2}));
      break;
  }
  if (!holds) throw PreconditionError("exception hypothesis does not hold");
  TdsConstraints c;
  c.max_size = kind == ExceptionKind::MinusEdge ? 4 : 5;
  c.must_contain = {anchor};
  SearchResult res = exact_tds(t, c, limits);
  if (!res.ok() && kind == ExceptionKind::MinusEdge) {
    c.must_contain = {anchor2};
    res = exact_tds(t, c, limits);
  }
  if (!res.ok()) throw LedgerError("no total dominating set of the promised size next to an exception");
  return res.vertices;
}

VertexSet glued_ear_rewrite(const Adjacency& adj, VertexSet d, VertexId z, VertexId w1, VertexId w2) {
  const bool had_z = contains(d, z);
  if (!had_z && !contains(d, w2)) throw PreconditionError("set does not dominate the glued ear");
  std::erase(d, w1);
  std::erase(d, w2);
  if (!had_z) d.push_back(z);
  const bool z_dominated =
      std::any_of(adj[z].begin(), adj[z].end(), [&](VertexId x) { return x != w1 && x != w2 && contains(d, x); });
  if (!z_dominated) {
    VertexId pick = -1;
    for (VertexId x : adj[z]) {
      if (x != w1 && x != w2 && (pick < 0 || x < pick)) pick = x;
    }
    if (pick < 0) throw PreconditionError("glued vertex has no other neighbour");
    d.push_back(pick);
  }
  return normalize(std::move(d));
}

TdsCertificate tds_neartri(const NearTriangulation& t, const SolveOptions& options) {
  if (t.order() < 5) throw PreconditionError("constructive solver needs n >= 5");
  if (is_exception(t)) throw ExceptionInputError("input is one of the two order-12 exceptions");
  Solver s(options);
  TdsCertificate cert;
  try {
    cert.vertices = s.solve(t);
  } catch (const InvariantError& e) {
    throw LedgerError(std::string("reduction failed: ") + e.what() + " [" + failure_path(s.trace) + "]");
  } catch (const LedgerError& e) {
    throw LedgerError(std::string(e.what()) + " [" + failure_path(s.trace) + "]");
  }
  if (!is_tds(t, cert.vertices) || cert.size() > budget(t.order())) {
    throw LedgerError("final set fails the bound");
  }
  cert.trace = std::move(s.trace);
  return cert;
}

TdsCertificate tds_anchored(const NearTriangulation& t, VertexId u, const SolveOptions& options) {
  if (t.order() < 6) throw PreconditionError("anchored solver needs n >= 6");
  if (u < 0 || u >= t.order() || !t.on_boundary(u)) throw PreconditionError("anchor must be a boundary vertex");
  Solver s(options);
  TdsCertificate cert;
  try {
    cert.vertices = s.anchored(t, u);
  } catch (const InvariantError& e) {
    throw LedgerError(std::string("reduction failed: ") + e.what() + " [" + failure_path(s.trace) + "]");
  } catch (const LedgerError& e) {
    throw LedgerError(std::string(e.what()) + " [" + failure_path(s.trace) + "]");
  }
  cert.trace = std::move(s.trace);
  return cert;
}

}  // namespace ntri
