#include <algorithm>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "ntri/decomposition.hpp"
#include "ntri/generators.hpp"
#include "support/fixtures.hpp"

using namespace ntri;

TEST_CASE("diagonals are the chords between boundary vertices") {
  for (int s = 0; s < 30; ++s) {
    const auto t = gen_random_neartri(16, s % 8, 40 + s);
    const BoundaryGraph bg = boundary_subgraph(t);
    std::set<std::pair<VertexId, VertexId>> expected;
    const int h = t.boundary_length();
    for (const auto& e : t.edges()) {
      if (!t.on_boundary(e.u) || !t.on_boundary(e.v)) continue;
      const int gap = std::abs(t.boundary_index(e.u) - t.boundary_index(e.v));
      if (gap != 1 && gap != h - 1) expected.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    }
    std::set<std::pair<VertexId, VertexId>> got;
    for (const auto& d : bg.diagonals) got.insert({std::min(d.u, d.v), std::max(d.u, d.v)});
    CHECK(got == expected);
  }
}

TEST_CASE("regions form a tree and split the interior") {
  for (int s = 0; s < 60; ++s) {
    const auto t = gen_random_neartri(20, 1 + s % 10, 300 + s);
    const PolygonDecomposition dec = polygon_regions(t);
    CHECK(dec.regions.size() == boundary_subgraph(t).diagonals.size() + 1);
    CHECK(dec.dual.size() + 1 == dec.regions.size());
    VertexSet all;
    for (const auto& r : dec.regions) {
      CHECK(r.corners.size() >= 3);
      CHECK(r.corners.front() == *std::min_element(r.corners.begin(), r.corners.end()));
      all.insert(all.end(), r.interior.begin(), r.interior.end());
      for (VertexId v : r.interior) CHECK_FALSE(t.on_boundary(v));
    }
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    CHECK(static_cast<int>(all.size()) == t.interior_count());
    if (classify(t) == GraphClass::Irreducible) {
      const auto d = decompose(t);
      const int sel = d.selected_terminal();
      REQUIRE(sel >= 0);
      CHECK_FALSE(d.regions[sel].empty());
    }
  }
}

TEST_CASE("decompose rejects graphs that are not irreducible") {
  CHECK_THROWS_AS(decompose(gen_fan(8)), PreconditionError);
  CHECK_THROWS_AS(decompose(gen_wheel(8)), PreconditionError);
}

TEST_CASE("seven-gon parts come out in order") {
  const auto f = fixtures::seven_gon_fixture();
  REQUIRE(classify(f.graph) == GraphClass::Irreducible);
  const auto dec = decompose(f.graph);
  const auto& p = dec.regions[dec.selected_terminal()];
  CHECK(p.corners == f.corners);
  CHECK(p.interior == VertexSet{f.hub});
  const auto parts = mops_around(f.graph, p);
  std::vector<int> orders;
  std::vector<bool> mops;
  for (const auto& part : parts) {
    orders.push_back(part.part.graph.order());
    mops.push_back(part.is_mop);
  }
  CHECK(orders == std::vector<int>{9, 5, 6, 8, 4, 3, 8});
  CHECK(mops == std::vector<bool>{true, true, true, true, true, true, false});
  CHECK(parts.back().side == EdgeRef{6, 0});
  const auto j = nlohmann::json::parse(decomposition_json(f.graph));
  CHECK(j["class"] == "Irreducible");
  CHECK(j["terminal"][0]["orders"] == nlohmann::json({9, 5, 6, 8, 4, 3, 8}));
}

TEST_CASE("split sides add up") {
  const auto f = fixtures::seven_gon_fixture();
  const auto dec = decompose(f.graph);
  const auto& p = dec.regions[dec.selected_terminal()];
  for (const auto& side : p.sides) {
    const SplitPair sp = split_by_diagonal(f.graph, side, p);
    CHECK(sp.inner.graph.order() + sp.outer.graph.order() == f.graph.order() + 2);
    CHECK(std::count(sp.inner.origin.begin(), sp.inner.origin.end(), f.hub) == 1);
    CHECK(std::count(sp.outer.origin.begin(), sp.outer.origin.end(), f.hub) == 0);
  }
}

TEST_CASE("mop split diagonal is the smallest admissible side") {
  for (int n = 10; n <= 22; ++n) {
    for (int s = 0; s < 8; ++s) {
      const auto m = gen_random_mop(n, 1000 * n + s);
      const EdgeRef avoid{m.boundary_at(s % n), m.boundary_at(s % n + 1)};
      const EdgeRef d = mop_split_diagonal(m, avoid);
      const VertexSet side = mop_side(m, d, avoid);
      CHECK(side.size() >= 6);
      CHECK(side.size() <= 9);
      const bool both = std::find(side.begin(), side.end(), avoid.u) != side.end() &&
                        std::find(side.begin(), side.end(), avoid.v) != side.end();
      CHECK((!both || d.has(avoid.u) || d.has(avoid.v)));
      // sides counted from boundary positions
      const int a = s % n;
      std::size_t best = 100;
      for (const auto& e : m.edges()) {
        if (!is_diagonal(m, e)) continue;
        const int i = std::min(m.boundary_index(e.u), m.boundary_index(e.v));
        const int j = std::max(m.boundary_index(e.u), m.boundary_index(e.v));
        const bool holds_avoid = i <= a && a + 1 <= j;
        const std::size_t other = holds_avoid ? n - (j - i) + 1 : j - i + 1;
        if (other >= 6 && other <= 9) best = std::min(best, other);
      }
      CHECK(side.size() == best);
    }
  }
  CHECK_THROWS_AS(mop_split_diagonal(gen_fan(9), {0, 1}), PreconditionError);
}
