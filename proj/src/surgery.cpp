#include "ntri/surgery.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ntri {

namespace {

std::string edge_name(EdgeRef e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Face id of every dart (v, position in rot[v]).
struct DartFaces {
  std::vector<std::vector<int>> id;
  int count = 0;
  int outer = -1;
};

DartFaces label_darts(const NearTriangulation& t) {
  const int n = t.order();
  DartFaces df;
  df.id.resize(n);
  for (VertexId v = 0; v < n; ++v) df.id[v].assign(t.degree(v), -1);
  auto pos = [&](VertexId at, VertexId w) {
    const auto& r = t.rotation(at);
    return static_cast<int>(std::find(r.begin(), r.end(), w) - r.begin());
  };
  // Outer face first, so it gets id 0.
  const int h = t.boundary_length();
  for (int i = 0; i < h; ++i) {
    const VertexId a = t.boundary_at(i);
    df.id[a][pos(a, t.boundary_at(i + 1))] = 0;
  }
  df.outer = 0;
  df.count = 1;
  for (VertexId v = 0; v < n; ++v) {
    for (int p = 0; p < t.degree(v); ++p) {
      if (df.id[v][p] >= 0) continue;
      const int f = df.count++;
      VertexId a = v;
      int ap = p;
      while (df.id[a][ap] < 0) {
        df.id[a][ap] = f;
        const VertexId b = t.rotation(a)[ap];
        const int back = pos(b, a);
        ap = (back + 1) % t.degree(b);
        a = b;
      }
    }
  }
  return df;
}

void collapse_cyclic(std::vector<VertexId>& seq) {
  std::vector<VertexId> out;
  for (VertexId x : seq) {
    if (out.empty() || out.back() != x) out.push_back(x);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  seq = std::move(out);
}

}  // namespace

Induced induced_subgraph(const NearTriangulation& t, const std::vector<char>& keep) {
  const int n = t.order();
  std::vector<VertexId> relabel(n, -1);
  std::vector<VertexId> origin;
  for (VertexId v = 0; v < n; ++v) {
    if (keep[v]) {
      relabel[v] = static_cast<VertexId>(origin.size());
      origin.push_back(v);
    }
  }
  const int m = static_cast<int>(origin.size());
  if (m < 3) throw InvariantError("deletion breaks near-triangulation: fewer than 3 vertices");

  const DartFaces df = label_darts(t);
  UnionFind uf(df.count);
  for (VertexId v = 0; v < n; ++v) {
    for (int p = 0; p < t.degree(v); ++p) {
      const VertexId w = t.rotation(v)[p];
      if (keep[v] && keep[w]) continue;
      // Deleted edge: merge the faces on both sides.
      const auto& rw = t.rotation(w);
      const int back = static_cast<int>(std::find(rw.begin(), rw.end(), v) - rw.begin());
      uf.unite(df.id[v][p], df.id[w][back]);
    }
  }
  const int outer_class = uf.find(df.outer);

  NearTriangulation::Rotation rot(m);
  // Old face of the surviving dart new(v)->new(w), keyed by position in new rot.
  std::vector<std::vector<int>> old_face(m);
  for (VertexId v : origin) {
    const VertexId nv = relabel[v];
    for (int p = 0; p < t.degree(v); ++p) {
      const VertexId w = t.rotation(v)[p];
      if (!keep[w]) continue;
      rot[nv].push_back(relabel[w]);
      old_face[nv].push_back(uf.find(df.id[v][p]));
    }
  }
  // Walk the new faces and pick the one carrying the old outer face.
  std::vector<std::vector<char>> seen(m);
  for (int v = 0; v < m; ++v) seen[v].assign(rot[v].size(), 0);
  std::vector<VertexId> boundary;
  for (VertexId v = 0; v < m; ++v) {
    for (std::size_t p = 0; p < rot[v].size(); ++p) {
      if (seen[v][p]) continue;
      std::vector<VertexId> cycle;
      bool is_outer = false;
      VertexId a = v;
      int ap = static_cast<int>(p);
      while (!seen[a][ap]) {
        seen[a][ap] = 1;
        cycle.push_back(a);
        is_outer |= old_face[a][ap] == outer_class;
        const VertexId b = rot[a][ap];
        const auto& rb = rot[b];
        const int back = static_cast<int>(std::find(rb.begin(), rb.end(), a) - rb.begin());
        if (back == static_cast<int>(rb.size())) {
          throw InvariantError("deletion breaks near-triangulation");
        }
        ap = (back + 1) % static_cast<int>(rb.size());
        a = b;
      }
      if (is_outer) {
        if (!boundary.empty()) {
          throw InvariantError("deletion breaks near-triangulation: outer face split");
        }
        boundary = std::move(cycle);
      }
    }
  }
  if (boundary.empty()) throw InvariantError("deletion breaks near-triangulation: no outer face");
  // Start the boundary at the first surviving vertex of the old boundary.
  for (VertexId b : t.boundary()) {
    if (!keep[b]) continue;
    const auto it = std::find(boundary.begin(), boundary.end(), relabel[b]);
    if (it != boundary.end()) {
      std::rotate(boundary.begin(), it, boundary.end());
      break;
    }
  }
  if (auto err = NearTriangulation::check(rot, boundary)) {
    throw InvariantError("deletion breaks near-triangulation: " + *err);
  }
  return {NearTriangulation::make(std::move(rot), std::move(boundary)), std::move(origin)};
}

Induced delete_vertices(const NearTriangulation& t, const VertexSet& removed) {
  std::vector<char> keep(t.order(), 1);
  for (VertexId v : removed) keep[v] = 0;
  return induced_subgraph(t, keep);
}

int boundary_degree(const NearTriangulation& t, VertexId v) {
  int d = 0;
  for (VertexId w : t.rotation(v)) d += t.on_boundary(w) ? 1 : 0;
  return d;
}

Induced delete_vertex(const NearTriangulation& t, VertexId v) {
  const bool ok = t.order() >= 4 && ((!t.on_boundary(v) && t.degree(v) == 3) ||
                                     (t.on_boundary(v) && boundary_degree(t, v) == 2));
  if (!ok) throw PreconditionError("deletion breaks near-triangulation at vertex " + std::to_string(v));
  return delete_vertices(t, {v});
}

VertexSet triangle_inside(const NearTriangulation& t, VertexId a, VertexId b, VertexId c) {
  const int n = t.order();
  std::vector<int> comp(n, -1);
  comp[a] = comp[b] = comp[c] = -2;
  VertexSet inside;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    std::vector<VertexId> members{s};
    comp[s] = s;
    bool touches_boundary = false;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const VertexId v = members[i];
      touches_boundary |= t.on_boundary(v);
      for (VertexId w : t.rotation(v)) {
        if (comp[w] == -1) {
          comp[w] = s;
          members.push_back(w);
        }
      }
    }
    if (!touches_boundary) inside.insert(inside.end(), members.begin(), members.end());
  }
  std::sort(inside.begin(), inside.end());
  return inside;
}

std::vector<std::array<VertexId, 3>> separating_triangles(const NearTriangulation& t) {
  std::vector<std::array<VertexId, 3>> out;
  const int n = t.order();
  const auto adj = t.adjacency();
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b : adj[a]) {
      if (b <= a) continue;
      for (VertexId c : t.common_neighbors(a, b)) {
        if (c <= b) continue;
        const auto inside = triangle_inside(t, a, b, c);
        if (inside.empty()) continue;
        const int outside = n - 3 - static_cast<int>(inside.size());
        if (outside > 0) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

bool is_contractible(const NearTriangulation& t, EdgeRef e) {
  if (!t.adjacent(e.u, e.v)) throw PreconditionError("not an edge: " + edge_name(e));
  if (t.order() <= 3) return false;
  if (is_diagonal(t, e)) return false;
  const auto common = t.common_neighbors(e.u, e.v);
  const bool boundary_edge = t.on_boundary(e.u) && t.on_boundary(e.v);
  // The outer face counts as one more common neighbour of a boundary edge.
  return common.size() == (boundary_edge ? 1u : 2u);
}

Contraction contract_edge(const NearTriangulation& t, EdgeRef e) {
  if (!t.adjacent(e.u, e.v) || !is_contractible(t, e)) {
    throw PreconditionError("not contractible: " + edge_name(e));
  }
  const int n = t.order();
  const VertexId a = e.u;
  const VertexId b = e.v;
  std::vector<VertexId> mapping(n, -1);
  VertexId next = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (v != a && v != b) mapping[v] = next++;
  }
  const VertexId w = next;
  mapping[a] = mapping[b] = w;

  auto rotated_after = [&](VertexId at, VertexId pivot) {
    const auto& r = t.rotation(at);
    const auto it = std::find(r.begin(), r.end(), pivot);
    std::vector<VertexId> out(it + 1, r.end());
    out.insert(out.end(), r.begin(), it);
    return out;
  };
  NearTriangulation::Rotation rot(n - 1);
  std::vector<VertexId> merged = rotated_after(a, b);
  const auto tail = rotated_after(b, a);
  merged.insert(merged.end(), tail.begin(), tail.end());
  for (VertexId& x : merged) x = mapping[x];
  collapse_cyclic(merged);
  rot[w] = std::move(merged);
  for (VertexId v = 0; v < n; ++v) {
    if (v == a || v == b) continue;
    std::vector<VertexId> r;
    for (VertexId x : t.rotation(v)) r.push_back(mapping[x]);
    collapse_cyclic(r);
    rot[mapping[v]] = std::move(r);
  }
  std::vector<VertexId> boundary;
  for (VertexId x : t.boundary()) boundary.push_back(mapping[x]);
  collapse_cyclic(boundary);
  if (auto err = NearTriangulation::check(rot, boundary)) {
    throw InvariantError("contraction failed: " + *err);
  }
  return {NearTriangulation::make(std::move(rot), std::move(boundary)), w, std::move(mapping)};
}

NearTriangulation remove_boundary_edge(const NearTriangulation& t, EdgeRef e) {
  VertexId a = e.u;
  VertexId b = e.v;
  if (!t.on_boundary(a) || !t.on_boundary(b)) throw PreconditionError("not a boundary edge");
  if (t.boundary_next(a) != b) std::swap(a, b);
  if (t.boundary_next(a) != b || !t.adjacent(a, b)) throw PreconditionError("not a boundary edge");
  const VertexId apex = t.face_apex(b, a);
  if (t.on_boundary(apex)) throw PreconditionError("edge not reducible: " + edge_name(e));
  auto rot = t.rotation();
  std::erase(rot[a], b);
  std::erase(rot[b], a);
  std::vector<VertexId> boundary = t.boundary();
  const auto pos = std::find(boundary.begin(), boundary.end(), a) - boundary.begin();
  boundary.insert(boundary.begin() + pos + 1, apex);
  return NearTriangulation::make(std::move(rot), std::move(boundary));
}

NearTriangulation attach_ear(const NearTriangulation& t, VertexId a, VertexId b) {
  if (!t.on_boundary(a) || t.boundary_next(a) != b) {
    throw PreconditionError("attach_ear needs a clockwise boundary edge");
  }
  const VertexId w = t.order();
  auto rot = t.rotation();
  auto& ra = rot[a];
  ra.insert(std::find(ra.begin(), ra.end(), b), w);
  auto& rb = rot[b];
  rb.insert(std::find(rb.begin(), rb.end(), a) + 1, w);
  rot.push_back({a, b});
  std::vector<VertexId> boundary = t.boundary();
  const auto pos = std::find(boundary.begin(), boundary.end(), a) - boundary.begin();
  boundary.insert(boundary.begin() + pos + 1, w);
  return NearTriangulation::make(std::move(rot), std::move(boundary));
}

PeelResult peel(const NearTriangulation& t, VertexId start) {
  if (!t.on_boundary(start)) throw PreconditionError("peel start must lie on the boundary");
  if (t.interior_count() < 2) throw PreconditionError("peel needs at least two interior vertices");
  for (const auto& e : t.edges()) {
    if (is_diagonal(t, e)) throw PreconditionError("peel needs a graph without diagonals");
  }
  const VertexId first = t.boundary_prev(start);
  PeelResult res;
  res.removed_boundary.push_back(start);
  VertexSet removed{start};
  Induced cur = delete_vertices(t, removed);
  while (true) {
    const auto& g = cur.graph;
    VertexId local_first = -1;
    for (VertexId v = 0; v < g.order(); ++v) {
      if (cur.origin[v] == first) local_first = v;
    }
    VertexId pick = -1;
    const int h = g.boundary_length();
    const int base = g.boundary_index(local_first);
    for (int k = 1; k < h; ++k) {
      const VertexId v = g.boundary_at(base + k);
      if (boundary_degree(g, v) == 2) {
        pick = v;
        break;
      }
    }
    if (pick < 0) throw InvariantError("peel found no removable vertex");
    const VertexId original = cur.origin[pick];
    removed.push_back(original);
    if (!t.on_boundary(original)) {
      res.anchor = res.removed_boundary.back();
      res.interior_partner = original;
      res.result = delete_vertices(t, removed);
      return res;
    }
    res.removed_boundary.push_back(original);
    cur = delete_vertices(t, removed);
  }
}

VertexId find_interior_pair(const NearTriangulation& t, VertexId u, VertexId other) {
  if (!t.adjacent(u, other)) throw PreconditionError("not an edge");
  if (is_contractible(t, {other, u})) throw PreconditionError("edge is contractible");
  for (VertexId w : t.common_neighbors(u, other)) {
    const VertexSet inside = triangle_inside(t, u, other, w);
    if (inside.empty()) continue;
    VertexId partner = -1;
    if (inside.size() == 1) {
      partner = inside[0];
    } else {
      std::vector<char> keep(t.order(), 0);
      keep[u] = keep[other] = keep[w] = 1;
      for (VertexId x : inside) keep[x] = 1;
      const Induced sub = induced_subgraph(t, keep);
      VertexId local_u = -1;
      for (VertexId v = 0; v < sub.graph.order(); ++v) {
        if (sub.origin[v] == u) local_u = v;
      }
      const PeelResult pr = peel(sub.graph, local_u);
      partner = sub.origin[pr.interior_partner];
    }
    if (t.order() > 4) delete_vertices(t, {u, partner});  // throws if the pair is not removable
    return partner;
  }
  throw InvariantError("no separating triangle on a non-contractible edge");
}

EdgeRef find_contractible_at(const NearTriangulation& t, VertexId u) {
  if (t.order() < 5) throw PreconditionError("find_contractible_at needs n >= 5");
  if (!t.on_boundary(u)) throw PreconditionError("vertex is not on the boundary");
  const VertexId pred = t.boundary_prev(u);
  const VertexId succ = t.boundary_next(u);
  bool has_interior = false;
  VertexId x = pred;
  for (int k = 0; k < t.degree(u); ++k) {
    x = t.cw_next(u, x);
    if (t.on_boundary(x)) continue;
    has_interior = true;
    if (is_contractible(t, {u, x})) return {u, x};
  }
  if (has_interior) throw InvariantError("no contractible interior edge at " + std::to_string(u));
  if (is_contractible(t, {pred, u})) return {pred, u};
  if (is_contractible(t, {u, succ})) return {u, succ};
  throw InvariantError("no contractible edge at " + std::to_string(u));
}

}  // namespace ntri
