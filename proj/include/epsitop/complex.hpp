#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace epsitop {

using VertexId = std::uint32_t;

/// A finite subset of vertices, stored strictly increasing.
struct Simplex {
  std::vector<VertexId> vertices;

  Simplex() = default;
  Simplex(std::initializer_list<VertexId> vs);
  explicit Simplex(std::vector<VertexId> vs);

  std::size_t size() const { return vertices.size(); }
  bool contains(const Simplex& other) const;  // superset test
  auto operator<=>(const Simplex& other) const = default;
};

/// A combinatorial space stored by its maximal linked parts. The empty set
/// and all singletons are linked by convention, so isolated vertices need no
/// explicit record beyond vertex_count.
class Complex {
 public:
  Complex() = default;
  Complex(VertexId vertex_count, std::vector<Simplex> maximal);

  VertexId vertex_count() const { return vertex_count_; }
  const std::vector<Simplex>& maximal_simplices() const { return maximal_; }

  bool is_linked(std::span<const VertexId> subset) const;
  bool is_linked(const Simplex& subset) const;

 private:
  VertexId vertex_count_ = 0;
  std::vector<Simplex> maximal_;  // antichain, sorted
};

/// The finest structure containing the generating sets plus singletons and
/// the empty set. Throws std::out_of_range on a vertex index >= vertex_count.
Complex generate_complex(VertexId vertex_count,
                         const std::vector<Simplex>& generating_sets);

/// 2-truncation: only the linked pairs and triples are kept. This is where
/// all pi0/pi1 computation happens.
struct Complex2 {
  VertexId vertex_count = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;        // sorted, u < v
  std::vector<std::array<VertexId, 3>> triangles;          // sorted, u < v < w

  bool has_edge(VertexId u, VertexId v) const;
  bool has_triangle(VertexId u, VertexId v, VertexId w) const;
  /// Linked test for subsets of size <= 3 (with repetitions allowed).
  bool is_linked_small(std::span<const VertexId> subset) const;

  /// Adjacency rows as 64-bit blocks, built by canonicalize(). Values are
  /// immutable afterwards, so complexes are safe to share across workers.
  const std::vector<std::uint64_t>& adjacency() const { return adjacency_; }
  std::size_t adjacency_words() const { return (vertex_count + 63) / 64; }

  void canonicalize();  // sort + dedup edges/triangles, validate, index

  bool operator==(const Complex2& other) const {
    return vertex_count == other.vertex_count && edges == other.edges &&
           triangles == other.triangles;
  }

 private:
  std::vector<std::uint64_t> adjacency_;
};

Complex2 make_complex2(VertexId vertex_count,
                       std::vector<std::pair<VertexId, VertexId>> edges,
                       std::vector<std::array<VertexId, 3>> triangles);

Complex2 truncate2(const Complex& complex);

/// ct-functor restricted to dimension <= 2: same edges, triangles = all
/// triples whose three pairs are edges.
Complex2 tolerance_closure(const Complex2& complex);

/// Binary product; vertex (a, b) maps to index a * y.vertex_count + b.
Complex2 product2(const Complex2& x, const Complex2& y);

/// k-point combinatorial circle, k >= 3. Never has triangles: the triple of
/// the 3-point circle is not linked.
Complex2 circle(VertexId k);

enum class SphereKind { Simplicial, Cubical, Octahedral };

/// Standard sphere fixtures. Simplicial: n+2 vertices, linked iff proper.
/// Cubical: 2^(n+1) cube vertices, linked iff inside a face hyperplane.
/// Octahedral: 2n+2 vertices +-e_i, linked iff no opposed pair.
Complex sphere_fixture(SphereKind kind, unsigned n);

}  // namespace epsitop
