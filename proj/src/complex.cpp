#include "epsitop/complex.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

namespace epsitop {

Simplex::Simplex(std::initializer_list<VertexId> vs) : vertices(vs) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
}

Simplex::Simplex(std::vector<VertexId> vs) : vertices(std::move(vs)) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
}

bool Simplex::contains(const Simplex& other) const {
  return std::includes(vertices.begin(), vertices.end(),
                       other.vertices.begin(), other.vertices.end());
}

Complex::Complex(VertexId vertex_count, std::vector<Simplex> maximal)
    : vertex_count_(vertex_count), maximal_(std::move(maximal)) {
  std::sort(maximal_.begin(), maximal_.end());
  maximal_.erase(std::unique(maximal_.begin(), maximal_.end()), maximal_.end());
}

bool Complex::is_linked(std::span<const VertexId> subset) const {
  std::vector<VertexId> vs(subset.begin(), subset.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  for (VertexId v : vs)
    if (v >= vertex_count_)
      throw std::out_of_range("vertex index " + std::to_string(v) +
                              " out of range");
  if (vs.size() <= 1) return true;
  Simplex s(std::move(vs));
  for (const Simplex& m : maximal_)
    if (m.contains(s)) return true;
  return false;
}

bool Complex::is_linked(const Simplex& subset) const {
  return is_linked(std::span<const VertexId>(subset.vertices));
}

Complex generate_complex(VertexId vertex_count,
                         const std::vector<Simplex>& generating_sets) {
  for (const Simplex& g : generating_sets)
    for (VertexId v : g.vertices)
      if (v >= vertex_count)
        throw std::out_of_range("generator vertex " + std::to_string(v) +
                                " out of range");
  // Antichain reduction: keep only generators not contained in another.
  std::vector<Simplex> maximal;
  for (const Simplex& g : generating_sets) {
    if (g.size() <= 1) continue;  // singletons and the empty set are implicit
    bool dominated = false;
    for (const Simplex& h : generating_sets)
      if (&g != &h && h.contains(g) && !(h == g)) { dominated = true; break; }
    if (!dominated) maximal.push_back(g);
  }
  return Complex(vertex_count, std::move(maximal));
}

bool Complex2::has_edge(VertexId u, VertexId v) const {
  if (u == v) return true;
  if (!adjacency_.empty())
    return (adjacency_[u * adjacency_words() + v / 64] >> (v % 64)) & 1u;
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

bool Complex2::has_triangle(VertexId u, VertexId v, VertexId w) const {
  std::array<VertexId, 3> t{u, v, w};
  std::sort(t.begin(), t.end());
  return std::binary_search(triangles.begin(), triangles.end(), t);
}

bool Complex2::is_linked_small(std::span<const VertexId> subset) const {
  std::vector<VertexId> vs(subset.begin(), subset.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  for (VertexId v : vs)
    if (v >= vertex_count) throw std::out_of_range("vertex out of range");
  switch (vs.size()) {
    case 0:
    case 1: return true;
    case 2: return has_edge(vs[0], vs[1]);
    case 3: return has_triangle(vs[0], vs[1], vs[2]);
    default: return false;
  }
}

void Complex2::canonicalize() {
  adjacency_.clear();
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("edge endpoints must differ");
    if (u > v) std::swap(u, v);
    if (v >= vertex_count) throw std::out_of_range("edge vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto& t : triangles) {
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2])
      throw std::invalid_argument("triangle vertices must be distinct");
    if (t[2] >= vertex_count)
      throw std::out_of_range("triangle vertex out of range");
  }
  std::sort(triangles.begin(), triangles.end());
  triangles.erase(std::unique(triangles.begin(), triangles.end()),
                  triangles.end());
  if (vertex_count > 0) {
    adjacency_.assign(static_cast<std::size_t>(vertex_count) * adjacency_words(), 0);
    for (auto [u, v] : edges) {
      adjacency_[u * adjacency_words() + v / 64] |= std::uint64_t(1) << (v % 64);
      adjacency_[v * adjacency_words() + u / 64] |= std::uint64_t(1) << (u % 64);
    }
  }
  // Down-closure: the three sides of every triangle must be edges.
  for (const auto& t : triangles)
    if (!has_edge(t[0], t[1]) || !has_edge(t[0], t[2]) || !has_edge(t[1], t[2]))
      throw std::invalid_argument("triangle side missing from edge set");
}

Complex2 make_complex2(VertexId vertex_count,
                       std::vector<std::pair<VertexId, VertexId>> edges,
                       std::vector<std::array<VertexId, 3>> triangles) {
  Complex2 c;
  c.vertex_count = vertex_count;
  c.edges = std::move(edges);
  c.triangles = std::move(triangles);
  c.canonicalize();
  return c;
}

Complex2 truncate2(const Complex& complex) {
  std::set<std::pair<VertexId, VertexId>> edges;
  std::set<std::array<VertexId, 3>> triangles;
  for (const Simplex& m : complex.maximal_simplices()) {
    const auto& vs = m.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        edges.insert({vs[i], vs[j]});
        for (std::size_t k = j + 1; k < vs.size(); ++k)
          triangles.insert({vs[i], vs[j], vs[k]});
      }
  }
  return make_complex2(complex.vertex_count(),
                       {edges.begin(), edges.end()},
                       {triangles.begin(), triangles.end()});
}

Complex2 tolerance_closure(const Complex2& complex) {
  std::vector<std::array<VertexId, 3>> triangles;
  const auto& adj = complex.adjacency();
  const std::size_t words = complex.adjacency_words();
  for (auto [u, v] : complex.edges) {
    // Common neighbours above v keep every 3-clique enumerated once.
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t both = adj[u * words + w] & adj[v * words + w];
      while (both) {
        VertexId x = static_cast<VertexId>(w * 64 + std::countr_zero(both));
        both &= both - 1;
        if (x > v) triangles.push_back({u, v, x});
      }
    }
  }
  return make_complex2(complex.vertex_count, complex.edges, std::move(triangles));
}

Complex2 product2(const Complex2& x, const Complex2& y) {
  // Vertex (a, b) has index a * y.vertex_count + b.
  const VertexId ny = y.vertex_count;
  std::vector<std::pair<VertexId, VertexId>> edges;
  const VertexId n = x.vertex_count * ny;
  for (VertexId p = 0; p < n; ++p)
    for (VertexId q = p + 1; q < n; ++q) {
      VertexId ax = p / ny, bx = p % ny, ay = q / ny, by = q % ny;
      if ((ax == ay || x.has_edge(ax, ay)) && (bx == by || y.has_edge(bx, by)))
        edges.push_back({p, q});
    }

  Complex2 result = make_complex2(n, std::move(edges), {});
  // Triples are linked iff both projections are; projections may degenerate.
  std::vector<std::array<VertexId, 3>> triangles;
  auto proj_linked = [](const Complex2& c, VertexId a, VertexId b, VertexId d) {
    std::array<VertexId, 3> s{a, b, d};
    return c.is_linked_small(s);
  };
  for (auto [p, q] : result.edges) {
    for (VertexId r = q + 1; r < n; ++r) {
      if (!result.has_edge(p, r) || !result.has_edge(q, r)) continue;
      if (proj_linked(x, p / ny, q / ny, r / ny) &&
          proj_linked(y, p % ny, q % ny, r % ny))
        triangles.push_back({p, q, r});
    }
  }
  return make_complex2(n, result.edges, std::move(triangles));
}

Complex2 circle(VertexId k) {
  if (k < 3) throw std::invalid_argument("circle requires k >= 3");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId i = 0; i < k; ++i) {
    VertexId j = (i + 1) % k;
    edges.push_back({std::min(i, j), std::max(i, j)});
  }
  return make_complex2(k, std::move(edges), {});
}

Complex sphere_fixture(SphereKind kind, unsigned n) {
  switch (kind) {
    case SphereKind::Simplicial: {
      // n+2 points, linked iff a proper subset: maximal = all (n+1)-subsets.
      VertexId count = n + 2;
      std::vector<Simplex> maximal;
      for (VertexId skip = 0; skip < count; ++skip) {
        std::vector<VertexId> vs;
        for (VertexId v = 0; v < count; ++v)
          if (v != skip) vs.push_back(v);
        maximal.emplace_back(std::move(vs));
      }
      return Complex(count, std::move(maximal));
    }
    case SphereKind::Cubical: {
      // Vertices are bit strings of length n+1; maximal linked parts are the
      // 2(n+1) faces t_i = 0 and t_i = 1.
      unsigned bits = n + 1;
      VertexId count = VertexId(1) << bits;
      std::vector<Simplex> maximal;
      for (unsigned axis = 0; axis < bits; ++axis)
        for (unsigned value = 0; value < 2; ++value) {
          std::vector<VertexId> vs;
          for (VertexId v = 0; v < count; ++v)
            if (((v >> axis) & 1u) == value) vs.push_back(v);
          maximal.emplace_back(std::move(vs));
        }
      return Complex(count, std::move(maximal));
    }
    case SphereKind::Octahedral: {
      // Vertex 2i is +e_i, vertex 2i+1 is -e_i; linked iff no opposed pair,
      // so maximal parts pick one sign per axis.
      VertexId axes = n + 1;
      VertexId count = 2 * axes;
      std::vector<Simplex> maximal;
      for (VertexId signs = 0; signs < (VertexId(1) << axes); ++signs) {
        std::vector<VertexId> vs;
        for (VertexId i = 0; i < axes; ++i)
          vs.push_back(2 * i + ((signs >> i) & 1u));
        maximal.emplace_back(std::move(vs));
      }
      return Complex(count, std::move(maximal));
    }
  }
  throw std::logic_error("unknown sphere kind");
}

}  // namespace epsitop
