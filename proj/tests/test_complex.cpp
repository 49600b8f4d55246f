#include <doctest.h>

#include <random>

#include "epsitop/complex.hpp"
#include "epsitop/groups.hpp"

using namespace epsitop;

namespace {

// Brute-force truncation straight from the definition, for cross-checking.
Complex2 truncate2_bruteforce(const Complex& c) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::array<VertexId, 3>> triangles;
  for (VertexId u = 0; u < c.vertex_count(); ++u)
    for (VertexId v = u + 1; v < c.vertex_count(); ++v) {
      std::array<VertexId, 2> pair{u, v};
      if (c.is_linked(std::span<const VertexId>(pair))) edges.push_back({u, v});
      for (VertexId w = v + 1; w < c.vertex_count(); ++w) {
        std::array<VertexId, 3> triple{u, v, w};
        if (c.is_linked(std::span<const VertexId>(triple)))
          triangles.push_back({u, v, w});
      }
    }
  return make_complex2(c.vertex_count(), std::move(edges), std::move(triangles));
}

Complex random_complex(std::mt19937_64& rng, VertexId max_vertices) {
  std::uniform_int_distribution<VertexId> nv(1, max_vertices);
  VertexId n = nv(rng);
  std::uniform_int_distribution<int> ngen(0, 6), size(2, 4);
  std::uniform_int_distribution<VertexId> vx(0, n - 1);
  std::vector<Simplex> gens;
  for (int g = ngen(rng); g > 0; --g) {
    std::vector<VertexId> vs;
    for (int s = size(rng); s > 0; --s) vs.push_back(vx(rng));
    gens.emplace_back(std::move(vs));
  }
  return generate_complex(n, gens);
}

}  // namespace

TEST_CASE("generate_complex basics") {
  Complex c = generate_complex(2, {Simplex{0, 1}});
  CHECK(c.maximal_simplices().size() == 1);
  CHECK(c.is_linked(Simplex{0, 1}));

  // Pairwise generators do not produce the triple.
  Complex c3 = generate_complex(3, {Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}});
  CHECK_FALSE(c3.is_linked(Simplex{0, 1, 2}));
  CHECK(c3.is_linked(Simplex{0, 2}));

  // Antichain absorption.
  Complex c4 = generate_complex(4, {Simplex{0, 1, 2}, Simplex{1, 2}});
  CHECK(c4.maximal_simplices().size() == 1);
  CHECK(c4.maximal_simplices()[0] == Simplex{0, 1, 2});

  CHECK_THROWS_AS(generate_complex(2, {Simplex{0, 5}}), std::out_of_range);
}

TEST_CASE("is_linked conventions") {
  Complex c = generate_complex(3, {Simplex{0, 1}});
  CHECK(c.is_linked(Simplex{}));           // empty set
  CHECK(c.is_linked(Simplex{2}));          // singleton, even isolated
  CHECK_FALSE(c.is_linked(Simplex{1, 2}));
  CHECK_THROWS_AS(c.is_linked(Simplex{7}), std::out_of_range);

  Complex diamond = sphere_fixture(SphereKind::Octahedral, 1);
  // Opposed pair +e0, -e0 is vertices 0 and 1.
  std::array<VertexId, 2> opposed{0, 1};
  CHECK_FALSE(diamond.is_linked(std::span<const VertexId>(opposed)));
}

TEST_CASE("truncate2 on fixtures") {
  // Chaotic 4-point complex.
  Complex chaotic = generate_complex(4, {Simplex{0, 1, 2, 3}});
  Complex2 t = truncate2(chaotic);
  CHECK(t.edges.size() == 6);
  CHECK(t.triangles.size() == 4);

  Complex2 c4 = circle(4);
  CHECK(c4.edges.size() == 4);
  CHECK(c4.triangles.empty());

  // Simplicial 1-sphere is the 3-point circle.
  Complex2 ds1 = truncate2(sphere_fixture(SphereKind::Simplicial, 1));
  CHECK(ds1.vertex_count == 3);
  CHECK(ds1.edges.size() == 3);
  CHECK(ds1.triangles.empty());
}

TEST_CASE("truncate2 agrees with brute force on random complexes") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    Complex c = random_complex(rng, 10);
    Complex2 fast = truncate2(c);
    Complex2 slow = truncate2_bruteforce(c);
    CHECK(fast == slow);
  }
}

TEST_CASE("down-closure and antichain on random complexes") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 40; ++round) {
    Complex c = random_complex(rng, 9);
    const auto& max = c.maximal_simplices();
    for (std::size_t i = 0; i < max.size(); ++i)
      for (std::size_t j = 0; j < max.size(); ++j)
        if (i != j) CHECK_FALSE(max[i].contains(max[j]));
    // Random subsets of linked sets are linked.
    std::uniform_int_distribution<std::size_t> pick(0, max.empty() ? 0 : max.size() - 1);
    if (max.empty()) continue;
    const Simplex& m = max[pick(rng)];
    std::vector<VertexId> subset;
    for (VertexId v : m.vertices)
      if (rng() & 1) subset.push_back(v);
    CHECK(c.is_linked(std::span<const VertexId>(subset)));
  }
}

TEST_CASE("tolerance_closure") {
  Complex2 c3 = circle(3);
  Complex2 closed = tolerance_closure(c3);
  CHECK(closed.triangles.size() == 1);  // ct(C3) is chaotic

  Complex2 c4 = circle(4);
  CHECK(tolerance_closure(c4).triangles.empty());

  // Idempotence on a tolerance set.
  Complex2 once = tolerance_closure(c3);
  CHECK(tolerance_closure(once) == once);
}

TEST_CASE("product2") {
  // Interval x interval = chaotic square.
  Complex2 interval = make_complex2(2, {{0, 1}}, {});
  Complex2 square = product2(interval, interval);
  CHECK(square.vertex_count == 4);
  CHECK(square.edges.size() == 6);
  CHECK(square.triangles.size() == 4);

  // X x point is X again.
  Complex2 point = make_complex2(1, {}, {});
  Complex2 c5 = circle(5);
  Complex2 same = product2(c5, point);
  CHECK(same.vertex_count == c5.vertex_count);
  CHECK(same.edges == c5.edges);
  CHECK(same.triangles == c5.triangles);
}

TEST_CASE("product2 preserves component counts") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 20; ++round) {
    Complex2 x = truncate2(random_complex(rng, 5));
    Complex2 y = truncate2(random_complex(rng, 5));
    Complex2 p = product2(x, y);
    CHECK(pi0(p).component_count ==
          pi0(x).component_count * pi0(y).component_count);
    // Projections send linked sets to linked sets.
    for (const auto& t : p.triangles) {
      std::array<VertexId, 3> px{t[0] / y.vertex_count, t[1] / y.vertex_count,
                                 t[2] / y.vertex_count};
      std::array<VertexId, 3> py{t[0] % y.vertex_count, t[1] % y.vertex_count,
                                 t[2] % y.vertex_count};
      CHECK(x.is_linked_small(px));
      CHECK(y.is_linked_small(py));
    }
  }
}

TEST_CASE("circle shapes") {
  CHECK_THROWS_AS(circle(2), std::invalid_argument);
  Complex2 c5 = circle(5);
  std::vector<std::pair<VertexId, VertexId>> expected{
      {0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}};
  CHECK(c5.edges == expected);
}

TEST_CASE("sphere fixtures") {
  Complex s0 = sphere_fixture(SphereKind::Simplicial, 0);
  CHECK(s0.vertex_count() == 2);
  CHECK_FALSE(s0.is_linked(Simplex{0, 1}));

  // Octahedral 1-sphere is a 4-cycle.
  Complex2 diamond = truncate2(sphere_fixture(SphereKind::Octahedral, 1));
  CHECK(diamond.vertex_count == 4);
  CHECK(diamond.edges.size() == 4);
  CHECK(diamond.triangles.empty());

  // Cubical 2-sphere face membership: vertices are bit strings b2 b1 b0.
  Complex cube = sphere_fixture(SphereKind::Cubical, 2);
  std::array<VertexId, 2> shares_face{0b000, 0b110};  // both have bit0 = 0
  std::array<VertexId, 2> antipodal{0b000, 0b111};
  CHECK(cube.is_linked(std::span<const VertexId>(shares_face)));
  CHECK_FALSE(cube.is_linked(std::span<const VertexId>(antipodal)));
}
