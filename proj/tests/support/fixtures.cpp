#include "support/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

#include "ntri/generators.hpp"
#include "ntri/mop_solver.hpp"

namespace fixtures {

using ntri::from_faces;
using ntri::inner_triangles;
using ntri::uniform_below;

SideSpec fan_side(int order) {
  SideSpec s;
  s.order = order;
  for (int v = 2; v < order - 1; ++v) s.chords.push_back({0, v});
  return s;
}

SideSpec apex_side(int order, int apex) {
  SideSpec s;
  s.order = order;
  if (apex >= 2) s.chords.push_back({0, apex});
  if (apex <= order - 3) s.chords.push_back({apex, order - 1});
  for (int v = 2; v < apex; ++v) s.chords.push_back({0, v});
  for (int v = apex + 2; v <= order - 2; ++v) s.chords.push_back({apex, v});
  return s;
}

SideSpec random_side(int order, std::mt19937_64& rng) {
  SideSpec s;
  s.order = order;
  const NearTriangulation m = ntri::gen_random_mop(order, rng());
  for (const auto& e : m.edges()) {
    const int d = std::abs(e.u - e.v);
    if (d != 1 && d != order - 1) s.chords.push_back(e);
  }
  return s;
}

SideSpec non_mop_side(int stacked) {
  SideSpec s;
  s.order = 7;
  s.chords = {{1, 3}, {3, 5}, {1, 5}, {0, 5}};
  s.stacked = stacked;
  return s;
}

namespace {

std::array<VertexId, 3> sorted(std::array<VertexId, 3> f) {
  std::sort(f.begin(), f.end());
  return f;
}

}  // namespace

Fixture terminal_fixture(const std::vector<SideSpec>& sides) {
  const int k = static_cast<int>(sides.size());
  if (k < 3) throw std::invalid_argument("polygon needs three sides");
  Fixture f;
  for (int i = 0; i < k; ++i) f.corners.push_back(i);
  f.hub = k;
  VertexId next = k + 1;
  std::vector<VertexId> boundary;
  std::vector<std::array<VertexId, 3>> tris;
  for (int i = 0; i < k; ++i) f.polygon_faces.push_back({i, (i + 1) % k, f.hub});
  for (int i = 0; i < k; ++i) {
    const SideSpec& s = sides[i];
    std::vector<VertexId> arc{i};
    for (int p = 1; p + 1 < s.order; ++p) arc.push_back(next++);
    arc.push_back((i + 1) % k);
    boundary.insert(boundary.end(), arc.begin(), arc.end() - 1);
    const NearTriangulation m = ntri::polygon_triangulation(s.order, s.chords);
    bool stacked = false;
    for (const auto& t : inner_triangles(m)) {
      std::array<VertexId, 3> g{arc[t[0]], arc[t[1]], arc[t[2]]};
      if (s.stacked > 0 && sorted(t) == std::array<VertexId, 3>{1, 3, 5}) {
        stacked = true;
        for (int x = 0; x < s.stacked; ++x) {
          const VertexId v = next++;
          tris.push_back({g[1], g[2], v});
          tris.push_back({g[2], g[0], v});
          g = {g[0], g[1], v};
        }
      }
      tris.push_back(g);
    }
    if (s.stacked > 0 && !stacked) throw std::invalid_argument("side has no triangle (1,3,5) to stack into");
    f.arcs.push_back(arc);
  }
  tris.insert(tris.end(), f.polygon_faces.begin(), f.polygon_faces.end());
  f.graph = from_faces(next, boundary, tris);
  return f;
}

Fixture stack_in_polygon(const Fixture& f, VertexId a, VertexId b, VertexId c) {
  Fixture out = f;
  const auto key = sorted({a, b, c});
  const auto it = std::find_if(out.polygon_faces.begin(), out.polygon_faces.end(),
                               [&](const auto& g) { return sorted(g) == key; });
  if (it == out.polygon_faces.end()) throw std::invalid_argument("not a polygon face");
  const VertexId x = f.graph.order();
  out.graph = ntri::subdivide_face(f.graph, a, b, c);
  out.polygon_faces.erase(it);
  out.polygon_faces.push_back({a, b, x});
  out.polygon_faces.push_back({b, c, x});
  out.polygon_faces.push_back({c, a, x});
  return out;
}

Fixture grow_polygon(Fixture f, int count, std::mt19937_64& rng) {
  for (int i = 0; i < count; ++i) {
    const auto g = f.polygon_faces[uniform_below(rng, f.polygon_faces.size())];
    f = stack_in_polygon(f, g[0], g[1], g[2]);
  }
  return f;
}

namespace {

int pick(std::mt19937_64& rng, std::initializer_list<int> options) {
  return *(options.begin() + uniform_below(rng, options.size()));
}

int between(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Order 9 with the closing triangle on the middle vertex, random halves.
SideSpec middle_nine(std::mt19937_64& rng) {
  SideSpec s;
  s.order = 9;
  s.chords = {{0, 4}, {4, 8}};
  for (int half = 0; half < 2; ++half) {
    const SideSpec p = random_side(5, rng);
    for (const auto& e : p.chords) s.chords.push_back({e.u + 4 * half, e.v + 4 * half});
  }
  return s;
}

// Optionally replaces the last side by a non-MOP part.
void maybe_non_mop(std::vector<SideSpec>& sides, std::mt19937_64& rng) {
  if (uniform_below(rng, 2) == 0) sides.back() = non_mop_side(between(rng, 1, 3));
}

// Makes the sides listed non-contractible by stacking on their hub triangle.
Fixture block_sides(Fixture f, const std::vector<int>& which) {
  const int k = static_cast<int>(f.corners.size());
  for (int i : which) f = stack_in_polygon(f, i, (i + 1) % k, f.hub);
  return f;
}

}  // namespace

Fixture random_terminal(int layout, std::mt19937_64& rng) {
  std::vector<SideSpec> sides;
  switch (layout) {
    case 0: {  // anything
      const int k = between(rng, 3, 6);
      for (int i = 0; i < k; ++i) sides.push_back(random_side(between(rng, 3, 13), rng));
      maybe_non_mop(sides, rng);
      return grow_polygon(terminal_fixture(sides), between(rng, 0, 3), rng);
    }
    case 1: {  // all triangles
      const int k = between(rng, 3, 6);
      sides.assign(k, fan_side(3));
      if (uniform_below(rng, 2) == 0) sides.back() = random_side(between(rng, 4, 12), rng);
      maybe_non_mop(sides, rng);
      return grow_polygon(terminal_fixture(sides), between(rng, 0, 3), rng);
    }
    case 2: {  // all pentagons around a wheel
      const int k = between(rng, 3, 8);
      for (int i = 0; i < k; ++i) sides.push_back(random_side(5, rng));
      if (uniform_below(rng, 3) == 0) sides.back() = random_side(between(rng, 6, 9), rng);
      if (uniform_below(rng, 3) == 0) maybe_non_mop(sides, rng);
      return terminal_fixture(sides);
    }
    case 3: {  // all pentagons, larger polygon interior
      const int k = between(rng, 3, 8);
      for (int i = 0; i < k; ++i) sides.push_back(random_side(5, rng));
      maybe_non_mop(sides, rng);
      return grow_polygon(terminal_fixture(sides), between(rng, 1, 5), rng);
    }
    case 4: {  // mixed 3 and 5
      const int k = between(rng, 3, 7);
      for (int i = 0; i < k; ++i) sides.push_back(random_side(pick(rng, {3, 5}), rng));
      maybe_non_mop(sides, rng);
      return grow_polygon(terminal_fixture(sides), between(rng, 0, 2), rng);
    }
    case 5: {  // blocked nines mixed with 3 and 5
      const int k = between(rng, 3, 6);
      std::vector<int> nines;
      for (int i = 0; i < k; ++i) {
        const int order = pick(rng, {3, 5, 9, 9});
        if (order == 9) {
          sides.push_back(middle_nine(rng));
          nines.push_back(i);
        } else {
          sides.push_back(random_side(order, rng));
        }
      }
      maybe_non_mop(sides, rng);
      if (!sides.back().stacked) std::erase(nines, k - 1);
      Fixture f = block_sides(terminal_fixture(sides), nines);
      return grow_polygon(f, between(rng, 0, 2), rng);
    }
    case 6: {  // all blocked nines
      const int k = between(rng, 3, 5);
      std::vector<int> all;
      for (int i = 0; i < k; ++i) {
        sides.push_back(middle_nine(rng));
        all.push_back(i);
      }
      if (uniform_below(rng, 2) == 0) {
        sides.back() = non_mop_side(between(rng, 1, 2));
        all.pop_back();
      }
      return grow_polygon(block_sides(terminal_fixture(sides), all), between(rng, 0, 2), rng);
    }
    default: {  // orders 8 and 9 with a chosen apex
      const int k = between(rng, 3, 6);
      for (int i = 0; i < k; ++i) {
        const int order = pick(rng, {8, 9, 3, 5});
        if (order >= 8) {
          sides.push_back(apex_side(order, between(rng, 1, order - 2)));
        } else {
          sides.push_back(random_side(order, rng));
        }
      }
      maybe_non_mop(sides, rng);
      return grow_polygon(terminal_fixture(sides), between(rng, 0, 3), rng);
    }
  }
}

NearTriangulation close_over(const NearTriangulation& h, VertexId v) {
  const VertexId a = h.boundary_prev(v);
  const VertexId b = h.boundary_next(v);
  if (h.adjacent(a, b)) throw std::invalid_argument("boundary neighbours already adjacent");
  auto tris = inner_triangles(h);
  tris.push_back({a, v, b});
  std::vector<VertexId> boundary;
  for (VertexId x : h.boundary()) {
    if (x != v) boundary.push_back(x);
  }
  return from_faces(h.order(), boundary, tris);
}

Fixture seven_gon_fixture() {
  return terminal_fixture({apex_side(9, 4), fan_side(5), fan_side(6), apex_side(8, 3), fan_side(4), fan_side(3),
                           non_mop_side(1)});
}

}  // namespace fixtures
