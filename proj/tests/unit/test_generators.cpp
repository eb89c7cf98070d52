#include <set>

#include "doctest.h"
#include "ntri/generators.hpp"
#include "ntri/mop_solver.hpp"
#include "ntri/oracle.hpp"

using namespace ntri;

TEST_CASE("seeded generators are reproducible") {
  CHECK(gen_random_mop(30, 5) == gen_random_mop(30, 5));
  CHECK(gen_random_neartri(30, 9, 5) == gen_random_neartri(30, 9, 5));
  CHECK_FALSE(gen_random_neartri(30, 9, 5) == gen_random_neartri(30, 9, 6));
}

TEST_CASE("uniform_below stays in range and covers it") {
  std::mt19937_64 rng(42);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto x = uniform_below(rng, 7);
    CHECK(x < 7);
    seen.insert(x);
  }
  CHECK(seen.size() == 7);
  CHECK_THROWS_AS(uniform_below(rng, 0), PreconditionError);
}

TEST_CASE("random near-triangulations have the requested shape") {
  for (int n = 5; n <= 40; n += 5) {
    for (int m = 0; m <= n - 4; m += 3) {
      const auto t = gen_random_neartri(n, m, n * 100 + m);
      CHECK(t.order() == n);
      CHECK(t.interior_count() == m);
      CHECK(t.edge_count() == 3 * n - 3 - t.boundary_length());
    }
  }
  CHECK_THROWS_AS(gen_random_neartri(10, 7, 1), PreconditionError);
  CHECK_THROWS_AS(gen_random_neartri(4, 0, 1), PreconditionError);
}

TEST_CASE("fixed families") {
  const auto f = gen_fan(8);
  CHECK(classify(f) == GraphClass::Mop);
  CHECK(f.degree(0) == 7);
  const auto w = gen_wheel(8);
  CHECK(w.interior_count() == 1);
  CHECK(w.degree(7) == 7);
  const auto h = gen_h7();
  CHECK(h.order() == 7);
  CHECK(classify(h) == GraphClass::Irreducible);
  CHECK(exact_tds(h).size() == 2);
}

TEST_CASE("tight MOPs need two vertices per block") {
  for (int k = 1; k <= 5; ++k) {
    const auto m = gen_tight_mop(k);
    CHECK(m.order() == 5 * k);
    CHECK(classify(m) == GraphClass::Mop);
    CHECK(mop_min_tds(m)->size() == static_cast<std::size_t>(2 * k));
  }
}

TEST_CASE("octahedra") {
  for (int k = 1; k <= 3; ++k) {
    const auto t = gen_octahedra(k);
    CHECK(t.order() == 6 * k);
    const auto r = exact_tds(t);
    REQUIRE(r.ok());
    CHECK(r.size() == 2 * k);
  }
}

TEST_CASE("subdivision adds a degree-3 vertex") {
  const auto w = gen_wheel(6);
  const auto tri = inner_triangles(w).front();
  const auto s = subdivide_face(w, tri[0], tri[1], tri[2]);
  CHECK(s.order() == 7);
  CHECK(s.degree(6) == 3);
  CHECK(s.interior_count() == 2);
  CHECK_THROWS_AS(subdivide_face(w, 0, 1, 3), PreconditionError);
}

TEST_CASE("exceptions are the two order-12 MOPs with five") {
  const auto& ex = derive_exceptions();
  CHECK(ex.h1_form < ex.h2_form);
  for (const auto* h : {&ex.h1, &ex.h2}) {
    CHECK(h->order() == 12);
    CHECK(classify(*h) == GraphClass::Mop);
    CHECK(exact_tds(*h).size() == 5);
    int ears = 0;
    for (VertexId v = 0; v < 12; ++v) ears += h->degree(v) == 2;
    CHECK(ears == 3);
  }
  CHECK(canonical_form(ex.h1) == ex.h1_form);
}

TEST_CASE("generate dispatches by family") {
  GeneratorSpec spec;
  spec.family = "exceptions";
  CHECK(generate(spec).size() == 2);
  spec.family = "random_neartri";
  spec.n = 20;
  spec.seed = 3;
  CHECK(generate(spec).front().interior_count() == 8);
  spec.family = "nope";
  CHECK_THROWS_AS(generate(spec), PreconditionError);
}
