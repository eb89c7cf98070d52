#include "ntri/generators.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ntri/mop_solver.hpp"

namespace ntri {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<std::array<VertexId, 3>> inner_triangles(const NearTriangulation& t) {
  std::vector<std::array<VertexId, 3>> out;
  for (const auto& f : faces(t)) {
    if (f.outer) continue;
    out.push_back({f.cycle[0], f.cycle[1], f.cycle[2]});
  }
  return out;
}

NearTriangulation subdivide_face(const NearTriangulation& t, VertexId a, VertexId b, VertexId c) {
  auto tris = inner_triangles(t);
  std::array<VertexId, 3> key{a, b, c};
  std::sort(key.begin(), key.end());
  const auto it = std::find_if(tris.begin(), tris.end(), [&](auto f) {
    std::sort(f.begin(), f.end());
    return f == key;
  });
  if (it == tris.end()) throw PreconditionError("not an inner face");
  tris.erase(it);
  const VertexId x = t.order();
  tris.push_back({a, b, x});
  tris.push_back({b, c, x});
  tris.push_back({c, a, x});
  return from_faces(t.order() + 1, t.boundary(), tris);
}

NearTriangulation gen_fan(int n) {
  if (n < 3) throw PreconditionError("fan needs n >= 3");
  std::vector<EdgeRef> chords;
  for (int v = 2; v < n - 1; ++v) chords.push_back({0, v});
  return polygon_triangulation(n, chords);
}

NearTriangulation gen_wheel(int n) {
  if (n < 4) throw PreconditionError("wheel needs n >= 4");
  const int rim = n - 1;
  std::vector<std::array<VertexId, 3>> tris;
  std::vector<VertexId> boundary(rim);
  std::iota(boundary.begin(), boundary.end(), 0);
  for (int i = 0; i < rim; ++i) tris.push_back({i, (i + 1) % rim, rim});
  return from_faces(n, boundary, tris);
}

NearTriangulation gen_h7() {
  return from_faces(7, {0, 1, 2, 3, 4, 5},
                    {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}, {0, 2, 6}, {2, 4, 6}, {4, 0, 6}});
}

namespace {

// Remy's growth process for uniform binary trees with `internal` inner
// nodes; returns the chords of the matching polygon triangulation.
std::vector<EdgeRef> remy_chords(int n, std::mt19937_64& rng) {
  const int internal = n - 2;
  std::vector<int> left{-1}, right{-1}, parent{-1};
  int root = 0;
  for (int i = 0; i < internal; ++i) {
    const int x = static_cast<int>(uniform_below(rng, left.size()));
    const bool leaf_left = uniform_below(rng, 2) == 1;
    const int y = static_cast<int>(left.size());
    const int z = y + 1;
    left.push_back(leaf_left ? z : x);
    right.push_back(leaf_left ? x : z);
    parent.push_back(parent[x]);
    left.push_back(-1);
    right.push_back(-1);
    parent.push_back(y);
    if (parent[x] < 0) {
      root = y;
    } else if (left[parent[x]] == x) {
      left[parent[x]] = y;
    } else {
      right[parent[x]] = y;
    }
    parent[x] = y;
  }
  // Leaf counts give each internal node its polygon edge (a, b) and apex.
  std::vector<int> leaves(left.size(), 0);
  std::vector<int> order;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    if (left[v] >= 0) {
      stack.push_back(left[v]);
      stack.push_back(right[v]);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    leaves[v] = left[v] < 0 ? 1 : leaves[left[v]] + leaves[right[v]];
  }
  std::vector<EdgeRef> chords;
  std::vector<std::pair<int, int>> todo{{root, 0}};
  while (!todo.empty()) {
    const auto [v, a] = todo.back();
    todo.pop_back();
    if (left[v] < 0) continue;
    const int b = a + leaves[v];
    const int m = a + leaves[left[v]];
    if (m - a >= 2) chords.push_back({a, m});
    if (b - m >= 2) chords.push_back({m, b});
    todo.push_back({left[v], a});
    todo.push_back({right[v], m});
  }
  return chords;
}

}  // namespace

NearTriangulation gen_random_mop(int n, std::uint64_t seed) {
  if (n < 3) throw PreconditionError("random MOP needs n >= 3");
  std::mt19937_64 rng(seed);
  return polygon_triangulation(n, remy_chords(n, rng));
}

NearTriangulation gen_random_neartri(int n, int interior, std::uint64_t seed) {
  if (n < 5 || interior < 0 || interior > n - 4) {
    throw PreconditionError("random near-triangulation needs n >= 5 and 0 <= interior <= n-4");
  }
  std::mt19937_64 rng(seed);
  const int h = n - interior;
  const NearTriangulation base = polygon_triangulation(h, remy_chords(h, rng));
  if (interior == 0) return base;
  auto tris = inner_triangles(base);
  for (int x = h; x < n; ++x) {
    const std::size_t pick = uniform_below(rng, tris.size());
    const auto [a, b, c] = tris[pick];
    tris[pick] = {a, b, x};
    tris.push_back({b, c, x});
    tris.push_back({c, a, x});
  }
  return from_faces(n, base.boundary(), tris);
}

NearTriangulation gen_tight_mop(int k) {
  if (k < 1) throw PreconditionError("tight MOP needs k >= 1");
  // Block i occupies boundary positions 5i..5i+4 as a, x, y, z, b; the
  // pentagon has apex y over the block edge (a, b). The spine joins the
  // block edges and is fanned from the first a.
  const int n = 5 * k;
  std::vector<VertexId> boundary(n);
  std::iota(boundary.begin(), boundary.end(), 0);
  std::vector<std::array<VertexId, 3>> tris;
  std::vector<VertexId> spine;
  for (int i = 0; i < k; ++i) {
    const VertexId a = 5 * i, x = a + 1, y = a + 2, z = a + 3, b = a + 4;
    tris.push_back({a, b, y});
    tris.push_back({a, x, y});
    tris.push_back({y, z, b});
    spine.push_back(a);
    spine.push_back(b);
  }
  for (std::size_t t = 1; t + 1 < spine.size(); ++t) tris.push_back({spine[0], spine[t], spine[t + 1]});
  NearTriangulation m = from_faces(n, boundary, tris);
  const auto d = mop_min_tds(m);
  if (!d || static_cast<int>(d->size()) != 2 * k) {
    throw InvariantError("tight MOP construction is not tight");
  }
  return m;
}

namespace {

void antiprism(std::array<VertexId, 3> a, std::array<VertexId, 3> b,
               std::vector<std::array<VertexId, 3>>& out) {
  out.push_back({a[0], a[1], b[2]});
  out.push_back({a[1], a[2], b[0]});
  out.push_back({a[2], a[0], b[1]});
  out.push_back({a[1], b[2], b[0]});
  out.push_back({a[2], b[0], b[1]});
  out.push_back({a[0], b[1], b[2]});
}

}  // namespace

NearTriangulation gen_octahedra(int k) {
  if (k < 1) throw PreconditionError("octahedra needs k >= 1");
  // Octahedron j has outer triangle 6j..6j+2 and inner triangle 6j+3..6j+5.
  // Octahedra 1..k-1 sit side by side inside the inner face of octahedron 0:
  // each one is linked by an antiprism to a free face of the region between
  // them, so their own inner triangles stay empty.
  std::vector<std::array<VertexId, 3>> tris;
  std::vector<std::array<VertexId, 3>> host;
  for (int j = 0; j < k; ++j) {
    const std::array<VertexId, 3> a{6 * j, 6 * j + 1, 6 * j + 2};
    const std::array<VertexId, 3> b{6 * j + 3, 6 * j + 4, 6 * j + 5};
    antiprism(a, b, tris);
    if (j == 0) {
      host.push_back(b);
      continue;
    }
    tris.push_back(b);
    const auto face = host.front();
    host.erase(host.begin());
    antiprism(face, a, host);
  }
  tris.insert(tris.end(), host.begin(), host.end());
  return from_faces(6 * k, {0, 1, 2}, tris);
}

namespace {

bool has_central_triangle(const NearTriangulation& m) {
  std::vector<std::array<VertexId, 3>> ears;
  for (VertexId v = 0; v < m.order(); ++v) {
    if (m.degree(v) == 2) ears.push_back({v, m.rotation(v)[0], m.rotation(v)[1]});
  }
  if (ears.size() != 3) return false;
  for (const auto& f : inner_triangles(m)) {
    std::array<int, 3> perm{0, 1, 2};
    do {
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) {
        const VertexId w = f[i];
        for (VertexId x : ears[perm[i]]) ok &= (x != w && !m.adjacent(w, x));
      }
      if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return false;
}

Exceptions compute_exceptions() {
  const MopEnumeration all = enumerate_mops(12);
  std::vector<std::pair<std::string, const NearTriangulation*>> found;
  for (const auto& m : all.classes) {
    const auto d = mop_min_tds(m);
    if (static_cast<int>(d->size()) > budget(12)) {
      if (d->size() != 5) throw InvariantError("order-12 MOP with total domination number above 5");
      if (!has_central_triangle(m)) throw InvariantError("exception without central triangle structure");
      found.emplace_back(canonical_form(m), &m);
    }
  }
  if (found.size() != 2) throw InvariantError("expected exactly two order-12 exceptions");
  std::sort(found.begin(), found.end());
  return {*found[0].second, *found[1].second, found[0].first, found[1].first};
}

}  // namespace

const Exceptions& derive_exceptions() {
  static const Exceptions cache = compute_exceptions();
  return cache;
}

bool is_exception(const NearTriangulation& t) {
  if (t.order() != 12 || t.interior_count() != 0) return false;
  const Exceptions& ex = derive_exceptions();
  const std::string form = canonical_form(t);
  return form == ex.h1_form || form == ex.h2_form;
}

std::vector<NearTriangulation> generate(const GeneratorSpec& spec) {
  const std::string& f = spec.family;
  if (f == "fan") return {gen_fan(spec.n)};
  if (f == "wheel") return {gen_wheel(spec.n)};
  if (f == "h7") return {gen_h7()};
  if (f == "random_mop") return {gen_random_mop(spec.n, spec.seed)};
  if (f == "random_neartri") {
    const int m = spec.interior >= 0 ? spec.interior : (spec.n - 4) / 2;
    return {gen_random_neartri(spec.n, m, spec.seed)};
  }
  if (f == "tight_mop") return {gen_tight_mop(spec.k)};
  if (f == "octahedra") return {gen_octahedra(spec.k)};
  if (f == "exceptions") {
    const Exceptions& ex = derive_exceptions();
    return {ex.h1, ex.h2};
  }
  throw PreconditionError("unknown family '" + f + "'");
}

}  // namespace ntri
