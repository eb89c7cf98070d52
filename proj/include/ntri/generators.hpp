#pragma once

// Reproducible instance families.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ntri/embedding.hpp"

namespace ntri {

NearTriangulation gen_fan(int n);
/// Cycle of n-1 rim vertices around one hub (hub has id n-1).
NearTriangulation gen_wheel(int n);
NearTriangulation gen_h7();
NearTriangulation gen_random_mop(int n, std::uint64_t seed);
NearTriangulation gen_random_neartri(int n, int interior, std::uint64_t seed);
NearTriangulation gen_tight_mop(int k);
NearTriangulation gen_octahedra(int k);

/// Puts a new vertex (id n) inside the inner face (a, b, c).
NearTriangulation subdivide_face(const NearTriangulation& t, VertexId a, VertexId b, VertexId c);

/// Inner faces as vertex triples, in face traversal order.
std::vector<std::array<VertexId, 3>> inner_triangles(const NearTriangulation& t);

struct Exceptions {
  NearTriangulation h1;
  NearTriangulation h2;
  std::string h1_form;
  std::string h2_form;
};

/// The two order-12 MOPs whose total domination number exceeds 4, found by
/// exhaustive enumeration. H1 is the one with the smaller canonical form.
/// Computed once per process and cached.
const Exceptions& derive_exceptions();

/// Uniform integer in [0, bound) by rejection. Portable across standard
/// library implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

struct GeneratorSpec {
  std::string family;
  int n = 0;
  int k = 0;
  int interior = -1;
  std::uint64_t seed = 0;
};

/// Builds the instances a GeneratorSpec describes. "exceptions" yields two graphs.
std::vector<NearTriangulation> generate(const GeneratorSpec& spec);

}  // namespace ntri
