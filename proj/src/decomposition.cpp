#include "ntri/decomposition.hpp"

#include <algorithm>
#include <map>
#include "json.hpp"

namespace ntri {

namespace {

std::map<std::pair<VertexId, VertexId>, int> dart_faces(const BoundaryGraph& bg,
                                                          std::vector<std::vector<VertexId>>& cycles) {
  std::map<std::pair<VertexId, VertexId>, int> face_of;
  for (VertexId v : bg.cycle) {
    for (VertexId w : bg.rotation[v]) {
      if (face_of.count({v, w})) continue;
      const int f = static_cast<int>(cycles.size());
      cycles.emplace_back();
      VertexId a = v;
      VertexId b = w;
      while (!face_of.count({a, b})) {
        face_of[{a, b}] = f;
        cycles[f].push_back(a);
        const auto& rb = bg.rotation[b];
        const auto it = std::find(rb.begin(), rb.end(), a);
        const VertexId c = (it + 1 == rb.end()) ? rb.front() : *(it + 1);
        a = b;
        b = c;
      }
    }
  }
  return face_of;
}

int far_interior(const PolygonDecomposition& dec, int from, int via) {
  // Interior count of the dual subtree reached from `from` through `via`.
  std::vector<char> seen(dec.regions.size(), 0);
  seen[from] = 1;
  std::vector<int> stack{via};
  seen[via] = 1;
  int total = 0;
  while (!stack.empty()) {
    const int r = stack.back();
    stack.pop_back();
    total += dec.regions[r].interior_count();
    for (const auto& e : dec.dual) {
      const int other = e.a == r ? e.b : (e.b == r ? e.a : -1);
      if (other >= 0 && !seen[other]) {
        seen[other] = 1;
        stack.push_back(other);
      }
    }
  }
  return total;
}

}  // namespace

BoundaryGraph boundary_subgraph(const NearTriangulation& t) {
  BoundaryGraph bg;
  bg.cycle = t.boundary();
  bg.rotation.resize(t.order());
  for (VertexId v : bg.cycle) {
    for (VertexId w : t.rotation(v)) {
      if (t.on_boundary(w)) bg.rotation[v].push_back(w);
    }
  }
  for (const auto& e : t.edges()) {
    if (is_diagonal(t, e)) bg.diagonals.push_back(e);
  }
  return bg;
}

int PolygonDecomposition::selected_terminal() const {
  int best = -1;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (!regions[i].terminal) continue;
    if (best < 0 || regions[i].corners.front() < regions[best].corners.front()) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

PolygonDecomposition polygon_regions(const NearTriangulation& t) {
  const BoundaryGraph bg = boundary_subgraph(t);
  std::vector<std::vector<VertexId>> cycles;
  const auto face_of = dart_faces(bg, cycles);
  const int outer = face_of.at({t.boundary_at(0), t.boundary_at(1)});

  PolygonDecomposition dec;
  std::vector<int> region_of_face(cycles.size(), -1);
  for (std::size_t f = 0; f < cycles.size(); ++f) {
    if (static_cast<int>(f) == outer) continue;
    PolygonRegion r;
    r.corners.assign(cycles[f].rbegin(), cycles[f].rend());
    std::rotate(r.corners.begin(), std::min_element(r.corners.begin(), r.corners.end()),
                r.corners.end());
    const std::size_t k = r.corners.size();
    for (std::size_t i = 0; i < k; ++i) r.sides.push_back({r.corners[i], r.corners[(i + 1) % k]});
    region_of_face[f] = static_cast<int>(dec.regions.size());
    dec.regions.push_back(std::move(r));
  }

  // Interior components, each assigned through the wedge at a boundary neighbour.
  std::vector<char> seen(t.order(), 0);
  for (VertexId s = 0; s < t.order(); ++s) {
    if (t.on_boundary(s) || seen[s]) continue;
    std::vector<VertexId> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (VertexId w : t.rotation(comp[i])) {
        if (!t.on_boundary(w) && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    int region = -1;
    for (VertexId x : comp) {
      for (VertexId u : t.rotation(x)) {
        if (!t.on_boundary(u)) continue;
        VertexId c1 = x;
        do {
          c1 = t.cw_prev(u, c1);
        } while (!t.on_boundary(c1));
        region = region_of_face[face_of.at({c1, u})];
        break;
      }
      if (region >= 0) break;
    }
    if (region < 0) throw InvariantError("interior component without boundary contact");
    auto& in = dec.regions[region].interior;
    in.insert(in.end(), comp.begin(), comp.end());
  }
  for (auto& r : dec.regions) std::sort(r.interior.begin(), r.interior.end());

  for (const auto& d : bg.diagonals) {
    const int a = region_of_face[face_of.at({d.u, d.v})];
    const int b = region_of_face[face_of.at({d.v, d.u})];
    dec.dual.push_back({a, b, d});
  }
  for (std::size_t r = 0; r < dec.regions.size(); ++r) {
    auto& reg = dec.regions[r];
    if (reg.empty()) continue;
    int loaded = 0;
    for (const auto& e : dec.dual) {
      if (e.a != static_cast<int>(r) && e.b != static_cast<int>(r)) continue;
      const int other = e.a == static_cast<int>(r) ? e.b : e.a;
      if (far_interior(dec, static_cast<int>(r), other) > 0) ++loaded;
    }
    reg.terminal = loaded <= 1;
  }
  return dec;
}

PolygonDecomposition decompose(const NearTriangulation& t) {
  if (classify(t) != GraphClass::Irreducible) throw PreconditionError("not irreducible");
  PolygonDecomposition dec = polygon_regions(t);
  if (dec.regions.size() != dec.dual.size() + 1) throw InvariantError("dual graph is not a tree");
  if (dec.selected_terminal() < 0) throw InvariantError("irreducible graph without terminal polygon");
  return dec;
}

SplitPair split_by_diagonal(const NearTriangulation& t, EdgeRef d, const PolygonRegion& p) {
  if (std::find(p.sides.begin(), p.sides.end(), d) == p.sides.end()) {
    throw PreconditionError("edge is not a side of the region");
  }
  if (!is_diagonal(t, d)) throw PreconditionError("side is not a diagonal");
  VertexId probe = -1;
  for (VertexId c : p.corners) {
    if (!d.has(c)) {
      probe = c;
      break;
    }
  }
  std::vector<char> inner(t.order(), 0);
  inner[d.u] = inner[d.v] = 1;
  std::vector<VertexId> stack{probe};
  inner[probe] = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : t.rotation(v)) {
      if (!inner[w]) {
        inner[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<char> outer(t.order(), 0);
  for (VertexId v = 0; v < t.order(); ++v) outer[v] = !inner[v];
  outer[d.u] = outer[d.v] = 1;
  SplitPair sp{induced_subgraph(t, inner), induced_subgraph(t, outer), d};
  if (sp.inner.graph.order() + sp.outer.graph.order() != t.order() + 2) {
    throw InvariantError("split sizes do not add up");
  }
  return sp;
}

std::vector<SurroundingPart> mops_around(const NearTriangulation& t, const PolygonRegion& p) {
  if (!p.terminal) throw PreconditionError("region is not terminal");
  std::vector<SurroundingPart> parts;
  for (const auto& side : p.sides) {
    SplitPair sp = split_by_diagonal(t, side, p);
    const bool mop = sp.outer.graph.interior_count() == 0;
    parts.push_back({std::move(sp.outer), side, mop});
  }
  int last = -1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i].is_mop) {
      if (last >= 0 && !parts[last].is_mop) throw InvariantError("terminal region with two loaded sides");
      last = static_cast<int>(i);
    }
  }
  if (last < 0) {
    last = 0;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      if (parts[i].part.graph.order() > parts[last].part.graph.order()) last = static_cast<int>(i);
    }
  }
  std::rotate(parts.begin(), parts.begin() + last + 1, parts.end());
  return parts;
}

namespace {

// Clockwise arc of the MOP boundary from a to b, inclusive.
VertexSet arc(const NearTriangulation& m, VertexId a, VertexId b) {
  VertexSet out{a};
  for (VertexId v = a; v != b;) {
    v = m.boundary_next(v);
    out.push_back(v);
  }
  return out;
}

bool arc_has_edge(const VertexSet& side, EdgeRef e) {
  for (std::size_t i = 0; i + 1 < side.size(); ++i) {
    if (EdgeRef{side[i], side[i + 1]} == e) return true;
  }
  return false;
}

}  // namespace

VertexSet mop_side(const NearTriangulation& m, EdgeRef d, EdgeRef avoid) {
  VertexSet side = arc(m, d.u, d.v);
  if (arc_has_edge(side, avoid)) side = arc(m, d.v, d.u);
  return side;
}

EdgeRef mop_split_diagonal(const NearTriangulation& m, EdgeRef avoid) {
  if (m.interior_count() != 0) throw PreconditionError("mop_split_diagonal needs a MOP");
  if (m.order() < 10) throw PreconditionError("mop_split_diagonal needs order >= 10");
  if (!m.adjacent(avoid.u, avoid.v) || is_diagonal(m, avoid)) {
    throw PreconditionError("avoid must be a boundary edge");
  }
  EdgeRef best;
  std::size_t best_size = 0;
  for (const auto& e : m.edges()) {
    if (!is_diagonal(m, e)) continue;
    const std::size_t s = mop_side(m, e, avoid).size();
    if (s < 6 || s > 9) continue;
    if (best_size == 0 || s < best_size) {
      best = e;
      best_size = s;
    }
  }
  if (best_size == 0) throw InvariantError("no splitting diagonal found");
  return best;
}

std::string decomposition_json(const NearTriangulation& t) {
  nlohmann::json out;
  const GraphClass cls = classify(t);
  out["n"] = t.order();
  out["interior"] = t.interior_count();
  out["class"] = std::string(to_string(cls));
  out["regions"] = nlohmann::json::array();
  out["terminal"] = nlohmann::json::array();
  if (cls != GraphClass::Irreducible) return out.dump();
  const PolygonDecomposition dec = decompose(t);
  for (const auto& r : dec.regions) {
    nlohmann::json jr;
    jr["corners"] = r.corners;
    jr["interior_count"] = r.interior_count();
    jr["terminal"] = r.terminal;
    out["regions"].push_back(jr);
  }
  for (const auto& r : dec.regions) {
    if (!r.terminal) continue;
    nlohmann::json jt;
    jt["corners"] = r.corners;
    jt["orders"] = nlohmann::json::array();
    jt["mop"] = nlohmann::json::array();
    for (const auto& part : mops_around(t, r)) {
      jt["orders"].push_back(part.part.graph.order());
      jt["mop"].push_back(part.is_mop);
    }
    out["terminal"].push_back(jt);
  }
  out["selected_terminal"] = dec.selected_terminal();
  return out.dump();
}

}  // namespace ntri
