#include "epsitop/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace epsitop {

namespace {

struct UnionFind {
  std::vector<VertexId> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  VertexId find(VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Partition pi0(const Complex2& complex) {
  UnionFind uf(complex.vertex_count);
  for (auto [u, v] : complex.edges) uf.unite(u, v);
  Partition part;
  part.representative.resize(complex.vertex_count);
  std::set<VertexId> roots;
  for (VertexId v = 0; v < complex.vertex_count; ++v) {
    part.representative[v] = uf.find(v);
    roots.insert(part.representative[v]);
  }
  part.component_count = static_cast<VertexId>(roots.size());
  return part;
}

std::vector<std::int32_t> free_reduce(std::vector<std::int32_t> word) {
  std::vector<std::int32_t> out;
  out.reserve(word.size());
  for (std::int32_t letter : word) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

std::vector<std::int32_t> invert_word(const std::vector<std::int32_t>& word) {
  std::vector<std::int32_t> out(word.rbegin(), word.rend());
  for (auto& letter : out) letter = -letter;
  return out;
}

EdgePathPresentation edge_path_presentation(const Complex2& complex,
                                            VertexId base, TreeOrder order) {
  if (base >= complex.vertex_count)
    throw std::out_of_range("base vertex out of range");

  const std::size_t n = complex.vertex_count;
  std::vector<std::vector<VertexId>> neighbors(n);
  for (auto [u, v] : complex.edges) {
    neighbors[u].push_back(v);
    neighbors[v].push_back(u);
  }
  for (auto& ns : neighbors) {
    std::sort(ns.begin(), ns.end());
    if (order == TreeOrder::BfsDescending)
      std::reverse(ns.begin(), ns.end());
  }

  EdgePathPresentation epp;
  epp.base = base;
  epp.parent.assign(n, -2);  // -2 = not in base component
  epp.parent[base] = -1;

  if (order == TreeOrder::DfsAscending) {
    std::vector<VertexId> stack{base};
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (auto it = neighbors[u].rbegin(); it != neighbors[u].rend(); ++it)
        if (epp.parent[*it] == -2) {
          epp.parent[*it] = u;
          stack.push_back(*it);
        }
    }
  } else {
    std::queue<VertexId> queue;
    queue.push(base);
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop();
      for (VertexId v : neighbors[u])
        if (epp.parent[v] == -2) {
          epp.parent[v] = u;
          queue.push(v);
        }
    }
  }

  auto in_component = [&](VertexId v) { return epp.parent[v] != -2; };
  auto is_tree_edge = [&](VertexId u, VertexId v) {
    return epp.parent[u] == v || epp.parent[v] == u;
  };

  epp.edge_generator.assign(complex.edges.size(), 0);
  std::int32_t next_gen = 1;
  for (std::size_t e = 0; e < complex.edges.size(); ++e) {
    auto [u, v] = complex.edges[e];
    if (in_component(u) && !is_tree_edge(u, v))
      epp.edge_generator[e] = next_gen++;
  }
  epp.presentation.generator_count = static_cast<std::uint32_t>(next_gen - 1);

  auto edge_index = [&](VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(complex.edges.begin(), complex.edges.end(),
                               std::make_pair(u, v));
    return static_cast<std::size_t>(it - complex.edges.begin());
  };
  auto letter = [&](VertexId from, VertexId to) -> std::int32_t {
    std::int32_t g = epp.edge_generator[edge_index(from, to)];
    if (g == 0) return 0;
    return from < to ? g : -g;
  };

  for (const auto& t : complex.triangles) {
    if (!in_component(t[0])) continue;
    std::vector<std::int32_t> word;
    for (auto [from, to] : {std::pair{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}})
      if (std::int32_t l = letter(from, to); l != 0) word.push_back(l);
    word = free_reduce(std::move(word));
    if (!word.empty()) epp.presentation.relators.push_back(std::move(word));
  }
  return epp;
}

std::vector<std::int32_t> loop_to_word(const Complex2& complex,
                                       const EdgePathPresentation& epp,
                                       const Path& loop) {
  if (loop.start() != epp.base || loop.end() != epp.base)
    throw std::invalid_argument("loop is not based at the presentation base");

  auto edge_index = [&](VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(complex.edges.begin(), complex.edges.end(),
                               std::make_pair(u, v));
    if (it == complex.edges.end() || *it != std::make_pair(u, v))
      throw std::invalid_argument("loop step is not an edge of the complex");
    return static_cast<std::size_t>(it - complex.edges.begin());
  };

  std::vector<std::int32_t> word;
  const auto& vs = loop.values();
  for (std::size_t i = 1; i < vs.size(); ++i) {
    VertexId from = vs[i - 1], to = vs[i];
    if (from == to) continue;
    std::int32_t g = epp.edge_generator[edge_index(from, to)];
    if (g == 0) continue;
    std::int32_t l = from < to ? g : -g;
    if (!word.empty() && word.back() == -l)
      word.pop_back();
    else
      word.push_back(l);
  }
  return word;
}

// ---------------------------------------------------------------------------
// Tietze simplification
// ---------------------------------------------------------------------------

namespace {

/// Signed union-find over generators; supports "generator is trivial" and
/// "generator equals (another)^sign" facts gathered from short relators.
struct SignedUF {
  std::vector<std::uint32_t> parent;
  std::vector<std::int8_t> sign;  // g = parent^sign
  std::vector<bool> trivial;

  explicit SignedUF(std::uint32_t n)
      : parent(n + 1), sign(n + 1, 1), trivial(n + 1, false) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<std::uint32_t, std::int8_t> find(std::uint32_t g) {
    std::int8_t s = 1;
    while (parent[g] != g) {
      s = static_cast<std::int8_t>(s * sign[g]);
      g = parent[g];
    }
    return {g, s};
  }

  void mark_trivial(std::uint32_t g) { trivial[find(g).first] = true; }

  /// Record y = x^rel. Returns false when the fact collapses to y^2 = 1
  /// (a torsion witness the caller must keep as a relator).
  bool unite(std::uint32_t x, std::uint32_t y, std::int8_t rel) {
    auto [rx, sx] = find(x);
    auto [ry, sy] = find(y);
    if (rx == ry) {
      // y = y^(sy * rel * sx ... ) — consistent iff the net sign is +1.
      return sx * rel * sy == 1;
    }
    bool t = trivial[rx] || trivial[ry];
    // ry = rx^(sx * rel * sy)
    parent[ry] = rx;
    sign[ry] = static_cast<std::int8_t>(sx * rel * sy);
    if (t) trivial[rx] = true;
    return true;
  }

  /// Maps a letter through the partition; 0 = letter vanished.
  std::int32_t map_letter(std::int32_t letter) {
    std::uint32_t g = static_cast<std::uint32_t>(std::abs(letter));
    auto [root, s] = find(g);
    if (trivial[root]) return 0;
    return letter > 0 ? static_cast<std::int32_t>(root) * s
                      : -static_cast<std::int32_t>(root) * s;
  }
};

std::vector<std::int32_t> cyclic_reduce(std::vector<std::int32_t> word) {
  word = free_reduce(std::move(word));
  while (word.size() >= 2 && word.front() == -word.back()) {
    word.erase(word.begin());
    word.pop_back();
    word = free_reduce(std::move(word));
  }
  return word;
}

/// Least cyclic rotation of the word or its inverse, for deduplication.
std::vector<std::int32_t> cyclic_canonical(const std::vector<std::int32_t>& w) {
  if (w.empty()) return w;
  std::vector<std::int32_t> best;
  for (const auto& base : {w, invert_word(w)}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      std::vector<std::int32_t> rot(base.begin() + r, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + r);
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

constexpr std::size_t kRelatorLengthCap = 64;

struct TietzeState {
  std::uint32_t gen_count;
  std::vector<std::vector<std::int32_t>> relators;
  SignedUF uf;
  std::size_t budget;

  TietzeState(const GroupPresentation& p, std::size_t effort)
      : gen_count(p.generator_count), relators(p.relators),
        uf(p.generator_count), budget(effort) {}

  bool spend(std::size_t cost = 1) {
    if (budget < cost) { budget = 0; return false; }
    budget -= cost;
    return true;
  }

  /// Push relators through the union-find, reduce, drop empties, dedup.
  /// Harvests new unit/pair facts until none appear.
  void saturate_short_facts() {
    bool changed = true;
    while (changed && budget > 0) {
      changed = false;
      std::set<std::vector<std::int32_t>> seen;
      std::vector<std::vector<std::int32_t>> next;
      for (auto& rel : relators) {
        std::vector<std::int32_t> w;
        w.reserve(rel.size());
        for (std::int32_t letter : rel)
          if (std::int32_t m = uf.map_letter(letter); m != 0) w.push_back(m);
        w = cyclic_reduce(std::move(w));
        if (w.empty()) continue;
        if (w.size() == 1) {
          uf.mark_trivial(static_cast<std::uint32_t>(std::abs(w[0])));
          changed = true;
          spend();
          continue;
        }
        if (w.size() == 2) {
          std::uint32_t x = static_cast<std::uint32_t>(std::abs(w[0]));
          std::uint32_t y = static_cast<std::uint32_t>(std::abs(w[1]));
          if (x != y) {
            std::int8_t sx = w[0] > 0 ? 1 : -1, sy = w[1] > 0 ? 1 : -1;
            // x^sx y^sy = 1  =>  y = x^(-sx sy)
            if (!uf.unite(x, y, static_cast<std::int8_t>(-sx * sy))) {
              next.push_back({static_cast<std::int32_t>(x),
                              static_cast<std::int32_t>(x)});
            }
            changed = true;
            spend();
            continue;
          }
          // Same generator: after reduction only g g or g^-1 g^-1 remain.
          w = {std::abs(w[0]), std::abs(w[0])};
        }
        auto key = cyclic_canonical(w);
        if (seen.insert(key).second) next.push_back(std::move(w));
      }
      relators = std::move(next);
    }
  }

  std::size_t occurrences(std::uint32_t g, const std::vector<std::int32_t>& w) {
    std::size_t c = 0;
    for (std::int32_t letter : w)
      if (static_cast<std::uint32_t>(std::abs(letter)) == g) ++c;
    return c;
  }

  /// Eliminates one generator occurring exactly once in some relator.
  bool eliminate_once() {
    std::size_t best_cost = SIZE_MAX;
    std::size_t best_rel = 0;
    std::uint32_t best_gen = 0;
    for (std::size_t r = 0; r < relators.size(); ++r) {
      const auto& w = relators[r];
      if (w.size() > kRelatorLengthCap) continue;
      for (std::int32_t letter : w) {
        std::uint32_t g = static_cast<std::uint32_t>(std::abs(letter));
        if (occurrences(g, w) != 1) continue;
        std::size_t total = 0;
        for (const auto& other : relators) total += occurrences(g, other);
        std::size_t cost = (w.size() - 1) * total + w.size();
        if (cost < best_cost ||
            (cost == best_cost && g < best_gen)) {
          best_cost = cost;
          best_rel = r;
          best_gen = g;
        }
      }
    }
    if (best_cost == SIZE_MAX) return false;

    // Rotate the relator so it reads g^s w; then g^s = w^-1.
    std::vector<std::int32_t> rel = relators[best_rel];
    std::size_t pos = 0;
    while (static_cast<std::uint32_t>(std::abs(rel[pos])) != best_gen) ++pos;
    std::vector<std::int32_t> rotated(rel.begin() + pos, rel.end());
    rotated.insert(rotated.end(), rel.begin(), rel.begin() + pos);
    std::int8_t s = rotated[0] > 0 ? 1 : -1;
    std::vector<std::int32_t> tail(rotated.begin() + 1, rotated.end());
    // Replacement for the positive generator letter.
    std::vector<std::int32_t> replacement =
        s > 0 ? invert_word(tail) : tail;

    std::vector<std::vector<std::int32_t>> next;
    for (std::size_t r = 0; r < relators.size(); ++r) {
      if (r == best_rel) continue;
      std::vector<std::int32_t> w;
      for (std::int32_t letter : relators[r]) {
        if (static_cast<std::uint32_t>(std::abs(letter)) != best_gen) {
          w.push_back(letter);
        } else if (letter > 0) {
          w.insert(w.end(), replacement.begin(), replacement.end());
        } else {
          auto inv = invert_word(replacement);
          w.insert(w.end(), inv.begin(), inv.end());
        }
      }
      w = cyclic_reduce(std::move(w));
      if (!w.empty()) next.push_back(std::move(w));
      spend();
    }
    relators = std::move(next);
    uf.mark_trivial(best_gen);  // substituted away: drop it from the alphabet
    eliminated.push_back(best_gen);
    spend();
    return true;
  }

  /// Shortens a relator using a long overlap with another relator.
  bool overlap_shorten() {
    if (relators.size() > 400) return false;  // quadratic pass; keep it small
    // Deterministic order: longest relator first, then lexicographic.
    std::vector<std::size_t> order(relators.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (relators[a].size() != relators[b].size())
        return relators[a].size() > relators[b].size();
      return relators[a] < relators[b];
    });
    for (std::size_t si : order) {
      for (std::size_t ri : order) {
        if (ri == si) continue;
        const auto& r = relators[ri];
        auto& sw = relators[si];
        if (r.size() > sw.size() || r.size() < 2) continue;
        // Search cyclic occurrences of subwords of r (or r^-1) in sw longer
        // than half of r; replacing them by the inverse complement shortens.
        for (const auto& base : {r, invert_word(r)}) {
          std::vector<std::int32_t> doubled = base;
          doubled.insert(doubled.end(), base.begin(), base.end());
          std::size_t min_len = base.size() / 2 + 1;
          for (std::size_t len = base.size(); len >= min_len; --len) {
            for (std::size_t start = 0; start < base.size(); ++start) {
              std::vector<std::int32_t> sub(doubled.begin() + start,
                                            doubled.begin() + start + len);
              auto it = std::search(sw.begin(), sw.end(), sub.begin(), sub.end());
              if (it == sw.end()) continue;
              // complement: the rest of the doubled relator after the match
              std::vector<std::int32_t> complement(
                  doubled.begin() + start + len,
                  doubled.begin() + start + base.size());
              std::vector<std::int32_t> repl = invert_word(complement);
              std::vector<std::int32_t> shorter(sw.begin(), it);
              shorter.insert(shorter.end(), repl.begin(), repl.end());
              shorter.insert(shorter.end(), it + static_cast<std::ptrdiff_t>(len),
                             sw.end());
              shorter = cyclic_reduce(std::move(shorter));
              if (shorter.size() < sw.size()) {
                sw = std::move(shorter);
                spend();
                return true;
              }
            }
          }
        }
      }
    }
    return false;
  }

  std::vector<std::uint32_t> eliminated;

  GroupPresentation finish() {
    // Live generators: roots that are not trivial.
    std::vector<std::int32_t> rename(gen_count + 1, 0);
    std::int32_t next_id = 1;
    for (std::uint32_t g = 1; g <= gen_count; ++g) {
      auto [root, s] = uf.find(g);
      (void)s;
      if (root == g && !uf.trivial[g]) rename[g] = next_id++;
    }
    GroupPresentation out;
    out.generator_count = static_cast<std::uint32_t>(next_id - 1);
    std::set<std::vector<std::int32_t>> seen;
    for (const auto& rel : relators) {
      std::vector<std::int32_t> w;
      for (std::int32_t letter : rel) {
        std::int32_t m = uf.map_letter(letter);
        if (m == 0) continue;
        std::int32_t renamed = rename[std::abs(m)];
        w.push_back(m > 0 ? renamed : -renamed);
      }
      w = cyclic_reduce(std::move(w));
      if (w.empty()) continue;
      auto key = cyclic_canonical(w);
      if (seen.insert(key).second) out.relators.push_back(std::move(w));
    }
    std::sort(out.relators.begin(), out.relators.end(),
              [](const auto& a, const auto& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
              });
    return out;
  }
};

}  // namespace

GroupPresentation tietze_simplify(const GroupPresentation& p,
                                  std::size_t effort) {
  for (const auto& rel : p.relators)
    for (std::int32_t letter : rel)
      if (letter == 0 ||
          static_cast<std::uint32_t>(std::abs(letter)) > p.generator_count)
        throw std::out_of_range("relator letter out of range");

  TietzeState st(p, effort);
  st.saturate_short_facts();
  while (st.budget > 0) {
    if (st.eliminate_once()) {
      st.saturate_short_facts();
      continue;
    }
    if (st.overlap_shorten()) {
      st.saturate_short_facts();
      continue;
    }
    break;
  }
  return st.finish();
}

// ---------------------------------------------------------------------------
// Abelianization via Smith normal form
// ---------------------------------------------------------------------------

namespace {

/// In-place Smith normal form; returns the diagonal entries (non-negative).
std::vector<Int> smith_diagonal(std::vector<std::vector<Int>> m) {
  std::vector<Int> diag;
  if (m.empty() || m[0].empty()) return diag;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t t = 0;

  auto nonzero_below = [&](std::size_t rt, std::size_t ct) {
    for (std::size_t i = rt; i < rows; ++i)
      for (std::size_t j = ct; j < cols; ++j)
        if (m[i][j] != 0) return std::make_pair(i, j);
    return std::make_pair(rows, cols);
  };

  while (t < rows && t < cols) {
    auto [pi, pj] = nonzero_below(t, t);
    if (pi == rows) break;
    std::swap(m[t], m[pi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

    bool clean = false;
    while (!clean) {
      // Choose the minimal |entry| in row/col t as the pivot.
      for (std::size_t i = t + 1; i < rows; ++i)
        if (m[i][t] != 0 && abs(m[i][t]) < abs(m[t][t])) std::swap(m[t], m[i]);
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m[t][j] != 0 && abs(m[t][j]) < abs(m[t][t]))
          for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);

      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        Int q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        Int q = m[t][j] / m[t][t];
        for (std::size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (clean) {
        // Divisibility: the pivot must divide the remaining submatrix.
        for (std::size_t i = t + 1; i < rows && clean; ++i)
          for (std::size_t j = t + 1; j < cols && clean; ++j)
            if (m[i][j] % m[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
              clean = false;
            }
      }
    }
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace

AbelianInvariants abelianization(const GroupPresentation& p) {
  AbelianInvariants inv;
  if (p.generator_count == 0) return inv;
  if (p.relators.empty()) {
    inv.betti = p.generator_count;
    return inv;
  }
  std::vector<std::vector<Int>> matrix(
      p.relators.size(), std::vector<Int>(p.generator_count, 0));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (std::int32_t letter : p.relators[r])
      matrix[r][static_cast<std::size_t>(std::abs(letter)) - 1] +=
          letter > 0 ? 1 : -1;

  std::vector<Int> diag = smith_diagonal(std::move(matrix));
  std::size_t rank = 0;
  for (const Int& d : diag)
    if (d != 0) ++rank;
  inv.betti = p.generator_count - rank;
  for (const Int& d : diag)
    if (d > 1) inv.torsion.push_back(d);
  return inv;
}

Classification classify(const GroupPresentation& p, std::size_t effort) {
  Classification c;
  c.simplified = tietze_simplify(p, effort);
  c.abelian = abelianization(c.simplified);
  if (c.simplified.generator_count == 0) {
    c.kind = GroupClass::Trivial;
  } else if (c.simplified.relators.empty()) {
    c.kind = GroupClass::Free;
    c.free_rank = c.simplified.generator_count;
  } else {
    c.kind = GroupClass::Unresolved;
  }
  return c;
}

GroupPresentation van_kampen_pushout(const GroupPresentation& u,
                                     const GroupPresentation& v,
                                     const IntersectionData& intersection) {
  if (!intersection.all_simply_connected)
    throw std::invalid_argument(
        "van Kampen pushout requires a discrete intersection groupoid");
  if (intersection.component_count == 0)
    throw std::invalid_argument("intersection must meet both parts");

  // Nerve of the cover: 2 part-nodes and one node per component, each
  // component incident to both parts. Its spanning tree uses k+1 of the 2k
  // edges, so k-1 connecting generators remain.
  GroupPresentation out;
  out.generator_count =
      u.generator_count + v.generator_count + intersection.component_count - 1;
  out.relators = u.relators;
  for (const auto& rel : v.relators) {
    std::vector<std::int32_t> shifted;
    shifted.reserve(rel.size());
    for (std::int32_t letter : rel) {
      std::int32_t g = std::abs(letter) + static_cast<std::int32_t>(u.generator_count);
      shifted.push_back(letter > 0 ? g : -g);
    }
    out.relators.push_back(std::move(shifted));
  }
  return out;
}

Complex2 strong_collapse_core(const Complex2& flag_complex) {
  const std::size_t n = flag_complex.vertex_count;
  const std::size_t words = flag_complex.adjacency_words();
  std::vector<std::uint64_t> closed = flag_complex.adjacency();
  if (closed.empty() && n > 0) closed.assign(n * words, 0);
  std::vector<bool> alive(n, true);
  for (std::size_t v = 0; v < n; ++v)
    closed[v * words + v / 64] |= std::uint64_t(1) << (v % 64);

  auto subset = [&](std::size_t a, std::size_t b) {
    for (std::size_t w = 0; w < words; ++w)
      if (closed[a * words + w] & ~closed[b * words + w]) return false;
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (!alive[u]) continue;
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || !alive[v]) continue;
        bool adjacent = (closed[u * words + v / 64] >> (v % 64)) & 1u;
        if (!adjacent || !subset(u, v)) continue;
        // u's neighbourhood is dominated by v: remove u.
        alive[u] = false;
        for (std::size_t w = 0; w < n; ++w)
          closed[w * words + u / 64] &= ~(std::uint64_t(1) << (u % 64));
        changed = true;
        break;
      }
    }
  }

  std::vector<VertexId> rename(n, 0);
  VertexId next = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v]) rename[v] = next++;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [a, b] : flag_complex.edges)
    if (alive[a] && alive[b]) edges.push_back({rename[a], rename[b]});
  Complex2 graph = make_complex2(next, std::move(edges), {});
  return tolerance_closure(graph);
}

Classification classify_complex_global(const Complex2& complex,
                                        std::size_t effort, bool flag) {
  if (complex.vertex_count == 0) return Classification{};
  const Complex2 work = flag ? strong_collapse_core(complex) : complex;

  // Spanning forest: BFS from every unvisited vertex, ascending roots.
  const std::size_t n = work.vertex_count;
  std::vector<std::vector<VertexId>> neighbors(n);
  for (auto [u, v] : work.edges) {
    neighbors[u].push_back(v);
    neighbors[v].push_back(u);
  }
  for (auto& ns : neighbors) std::sort(ns.begin(), ns.end());
  std::vector<std::int64_t> parent(n, -2);
  for (VertexId root = 0; root < n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::queue<VertexId> queue;
    queue.push(root);
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop();
      for (VertexId v : neighbors[u])
        if (parent[v] == -2) {
          parent[v] = u;
          queue.push(v);
        }
    }
  }

  auto is_tree_edge = [&](VertexId u, VertexId v) {
    return parent[u] == v || parent[v] == u;
  };
  std::vector<std::int32_t> edge_generator(work.edges.size(), 0);
  std::int32_t next_gen = 1;
  for (std::size_t e = 0; e < work.edges.size(); ++e) {
    auto [u, v] = work.edges[e];
    if (!is_tree_edge(u, v)) edge_generator[e] = next_gen++;
  }

  auto edge_index = [&](VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(work.edges.begin(), work.edges.end(),
                               std::make_pair(u, v));
    return static_cast<std::size_t>(it - work.edges.begin());
  };
  GroupPresentation pres;
  pres.generator_count = static_cast<std::uint32_t>(next_gen - 1);
  for (const auto& t : work.triangles) {
    std::vector<std::int32_t> word;
    for (auto [from, to] : {std::pair{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}}) {
      std::int32_t g = edge_generator[edge_index(from, to)];
      if (g != 0) word.push_back(from < to ? g : -g);
    }
    word = free_reduce(std::move(word));
    if (!word.empty()) pres.relators.push_back(std::move(word));
  }
  return classify(pres, effort);
}

Classification classify_complex(const Complex2& complex, VertexId base,
                                std::size_t effort, bool flag) {
  if (complex.vertex_count == 0) return Classification{};

  // Restrict to the base's component first so the collapse cannot migrate
  // the basepoint across components.
  Partition part = pi0(complex);
  VertexId rep = part.representative[base];
  std::vector<VertexId> rename(complex.vertex_count, 0);
  VertexId next = 0;
  VertexId new_base = 0;
  for (VertexId v = 0; v < complex.vertex_count; ++v)
    if (part.representative[v] == rep) {
      if (v == base) new_base = next;
      rename[v] = next++;
    }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [a, b] : complex.edges)
    if (part.representative[a] == rep)
      edges.push_back({rename[a], rename[b]});
  std::vector<std::array<VertexId, 3>> triangles;
  for (const auto& t : complex.triangles)
    if (part.representative[t[0]] == rep)
      triangles.push_back({rename[t[0]], rename[t[1]], rename[t[2]]});
  Complex2 comp = make_complex2(next, std::move(edges), std::move(triangles));

  if (flag) {
    Complex2 core = strong_collapse_core(comp);
    return classify(edge_path_presentation(core, 0).presentation, effort);
  }
  return classify(edge_path_presentation(comp, new_base).presentation, effort);
}

}  // namespace epsitop
