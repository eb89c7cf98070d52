#include <algorithm>
#include <set>

#include "doctest.h"
#include "ntri/generators.hpp"
#include "ntri/surgery.hpp"
#include "support/fixtures.hpp"

using namespace ntri;

namespace {

using Tri = std::array<VertexId, 3>;

std::set<Tri> all_triangles(const NearTriangulation& t) {
  std::set<Tri> out;
  const auto adj = t.adjacency();
  for (VertexId a = 0; a < t.order(); ++a) {
    for (VertexId b : adj[a]) {
      for (VertexId c : adj[b]) {
        if (a < b && b < c && t.adjacent(a, c)) out.insert({a, b, c});
      }
    }
  }
  return out;
}

std::set<Tri> face_triangles(const NearTriangulation& t) {
  std::set<Tri> out;
  for (const auto& f : faces(t)) {
    if (f.outer) continue;
    Tri x{f.cycle[0], f.cycle[1], f.cycle[2]};
    std::sort(x.begin(), x.end());
    out.insert(x);
  }
  return out;
}

// Vertices cut off from the boundary once a, b, c are removed.
VertexSet cut_off(const NearTriangulation& t, VertexId a, VertexId b, VertexId c) {
  std::vector<char> seen(t.order(), 0);
  seen[a] = seen[b] = seen[c] = 1;
  std::vector<VertexId> stack;
  for (VertexId v : t.boundary()) {
    if (!seen[v]) {
      seen[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : t.rotation(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  VertexSet out;
  for (VertexId v = 0; v < t.order(); ++v) {
    if (!seen[v]) out.push_back(v);
  }
  return out;
}

std::vector<NearTriangulation> corpus() {
  std::vector<NearTriangulation> out;
  for (int s = 0; s < 40; ++s) {
    const int n = 6 + s % 14;
    out.push_back(gen_random_neartri(n, static_cast<int>(s % (n - 3)), 100 + s));
  }
  out.push_back(gen_h7());
  out.push_back(gen_octahedra(2));
  return out;
}

}  // namespace

TEST_CASE("separating triangles are the non-facial 3-cycles") {
  for (const auto& t : corpus()) {
    std::set<Tri> expected;
    const auto fs = face_triangles(t);
    Tri outer{-1, -1, -1};
    if (t.boundary_length() == 3) {
      outer = {t.boundary()[0], t.boundary()[1], t.boundary()[2]};
      std::sort(outer.begin(), outer.end());
    }
    for (const auto& x : all_triangles(t)) {
      if (!fs.count(x) && x != outer) expected.insert(x);
    }
    std::set<Tri> got;
    for (auto x : separating_triangles(t)) {
      std::sort(x.begin(), x.end());
      got.insert(x);
    }
    CHECK(got == expected);
    for (const auto& x : got) {
      auto inside = triangle_inside(t, x[0], x[1], x[2]);
      std::sort(inside.begin(), inside.end());
      CHECK(inside == cut_off(t, x[0], x[1], x[2]));
    }
  }
}

TEST_CASE("contractibility follows the common neighbour count") {
  for (const auto& t : corpus()) {
    for (const auto& e : t.edges()) {
      const int common = static_cast<int>(t.common_neighbors(e.u, e.v).size());
      const bool boundary_edge =
          t.on_boundary(e.u) && t.on_boundary(e.v) &&
          (t.boundary_next(e.u) == e.v || t.boundary_next(e.v) == e.u);
      bool expected = boundary_edge ? common == 1 : common == 2;
      if (!boundary_edge && t.on_boundary(e.u) && t.on_boundary(e.v)) expected = false;
      if (t.order() <= 3) expected = false;
      CHECK_MESSAGE(is_contractible(t, e) == expected, "edge " << e.u << "-" << e.v);
      if (!is_contractible(t, e)) continue;
      const Contraction c = contract_edge(t, e);
      CHECK(c.graph.order() == t.order() - 1);
      CHECK(c.graph.edge_count() == t.edge_count() - 1 - common);
      CHECK(c.merged == t.order() - 2);
      CHECK(c.mapping[e.u] == c.merged);
      CHECK(c.mapping[e.v] == c.merged);
      for (const auto& f : t.edges()) {
        if (f == e) continue;
        CHECK(c.graph.adjacent(c.mapping[f.u], c.mapping[f.v]));
      }
    }
  }
}

TEST_CASE("vertex deletion keeps the induced edges") {
  for (const auto& t : corpus()) {
    for (VertexId v : t.boundary()) {
      if (boundary_degree(t, v) != 2 || t.order() < 5) continue;
      const Induced r = delete_vertex(t, v);
      CHECK(r.graph.order() == t.order() - 1);
      CHECK(r.graph.edge_count() == t.edge_count() - t.degree(v));
      for (VertexId a = 0; a < r.graph.order(); ++a) {
        CHECK(r.origin[a] != v);
        for (VertexId b : r.graph.rotation(a)) CHECK(t.adjacent(r.origin[a], r.origin[b]));
      }
    }
  }
}

TEST_CASE("deleting a cut vertex is rejected") {
  const auto f = gen_fan(6);
  CHECK_THROWS_AS(delete_vertices(f, {0}), InvariantError);
}

TEST_CASE("boundary edge removal exposes the apex") {
  const auto w = gen_wheel(7);
  const VertexId a = w.boundary()[0];
  const VertexId b = w.boundary_next(a);
  const VertexId apex = w.face_apex(b, a);
  REQUIRE_FALSE(w.on_boundary(apex));
  const auto r = remove_boundary_edge(w, {a, b});
  CHECK(r.order() == w.order());
  CHECK(r.edge_count() == w.edge_count() - 1);
  CHECK(r.on_boundary(apex));
  CHECK(classify(r) == GraphClass::Mop);
  const auto f = gen_fan(6);
  CHECK_THROWS(remove_boundary_edge(f, {f.boundary()[0], f.boundary()[1]}));
}

TEST_CASE("attached ears have degree 2") {
  const auto t = gen_h7();
  const VertexId a = t.boundary()[2];
  const VertexId b = t.boundary_next(a);
  const auto e = attach_ear(t, a, b);
  CHECK(e.order() == t.order() + 1);
  CHECK(e.degree(t.order()) == 2);
  CHECK(e.boundary_next(a) == t.order());
  CHECK(e.boundary_next(t.order()) == b);
}

TEST_CASE("contractible edge at a boundary vertex") {
  for (const auto& t : corpus()) {
    if (t.order() < 5) continue;
    for (VertexId u : t.boundary()) {
      const EdgeRef e = find_contractible_at(t, u);
      CHECK(e.has(u));
      CHECK(is_contractible(t, e));
      bool interior_neighbour = false;
      for (VertexId w : t.rotation(u)) interior_neighbour |= !t.on_boundary(w);
      if (interior_neighbour) CHECK_FALSE(t.on_boundary(e.other(u)));
    }
  }
}

TEST_CASE("peeling a diagonal-free graph") {
  std::mt19937_64 rng(5);
  for (int s = 0; s < 40; ++s) {
    auto t = gen_wheel(8 + s % 6);
    const int extra = 1 + s % 5;
    for (int i = 0; i < extra; ++i) {
      const auto tris = inner_triangles(t);
      const auto f = tris[uniform_below(rng, tris.size())];
      t = subdivide_face(t, f[0], f[1], f[2]);
    }
    const VertexId start = t.boundary()[s % t.boundary_length()];
    const PeelResult p = peel(t, start);
    CHECK(p.removed_boundary.front() == start);
    CHECK(p.anchor == p.removed_boundary.back());
    CHECK_FALSE(t.on_boundary(p.interior_partner));
    CHECK(t.adjacent(p.anchor, p.interior_partner));
    CHECK(p.result.graph.order() == t.order() - static_cast<int>(p.removed_boundary.size()) - 1);
    for (VertexId v : p.removed_boundary) CHECK(t.on_boundary(v));
  }
  CHECK_THROWS_AS(peel(gen_fan(7), 0), PreconditionError);
}

TEST_CASE("interior pair on blocked polygon sides") {
  std::mt19937_64 rng(77);
  int runs = 0;
  for (int s = 0; s < 60; ++s) {
    const auto f = fixtures::random_terminal(6, rng);
    // polygon corners plus everything inside the polygon
    std::vector<char> keep(f.graph.order(), 0);
    for (const auto& face : f.polygon_faces) {
      for (VertexId x : face) keep[x] = 1;
    }
    const Induced p = induced_subgraph(f.graph, keep);
    const auto& t = p.graph;
    const int k = static_cast<int>(f.corners.size());
    for (int i = 0; i < k; ++i) {
      const VertexId other = f.corners[i];
      const VertexId u = f.corners[(i + 1) % k];
      if (is_contractible(t, {other, u})) continue;
      const VertexId v = find_interior_pair(t, u, other);
      CHECK_FALSE(t.on_boundary(v));
      CHECK(t.adjacent(u, v));
      if (t.order() > 4) CHECK_NOTHROW(delete_vertices(t, {u, v}));
      ++runs;
    }
  }
  CHECK(runs > 20);
}
