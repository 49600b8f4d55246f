#pragma once

#include <cstdint>
#include <vector>

#include "epsitop/complex.hpp"
#include "epsitop/paths.hpp"
#include "epsitop/rational.hpp"

namespace epsitop {

/// Connected components of the edge graph.
struct Partition {
  std::vector<VertexId> representative;  // fixed points of find()
  VertexId component_count = 0;

  bool same_component(VertexId a, VertexId b) const {
    return representative[a] == representative[b];
  }
};

Partition pi0(const Complex2& complex);

/// Relators are freely reduced words over signed generator letters:
/// +g stands for generator g (1-based), -g for its inverse.
struct GroupPresentation {
  std::uint32_t generator_count = 0;
  std::vector<std::vector<std::int32_t>> relators;

  bool operator==(const GroupPresentation&) const = default;
};

std::vector<std::int32_t> free_reduce(std::vector<std::int32_t> word);
std::vector<std::int32_t> invert_word(const std::vector<std::int32_t>& word);

enum class TreeOrder { BfsAscending, BfsDescending, DfsAscending };

/// Edge-path presentation data: spanning tree of the base component plus the
/// generator assignment for non-tree edges in that component.
struct EdgePathPresentation {
  GroupPresentation presentation;
  VertexId base = 0;
  std::vector<std::int64_t> parent;        // parent vertex in the tree, -1 = root/absent
  std::vector<std::int32_t> edge_generator;  // per complex edge: 0 tree/outside, else +id
};

/// One generator per non-tree edge of the base component, one relator per
/// triangle. Deterministic for a fixed tree order.
EdgePathPresentation edge_path_presentation(
    const Complex2& complex, VertexId base,
    TreeOrder order = TreeOrder::BfsAscending);

/// Reads a loop at the base through the tree-collapse map: the freely
/// reduced word of non-tree letters traversed.
std::vector<std::int32_t> loop_to_word(const Complex2& complex,
                                       const EdgePathPresentation& epp,
                                       const Path& loop);

/// Bounded Tietze simplification: free/cyclic reduction, empty-relator
/// removal, elimination of a generator occurring exactly once in some
/// relator, and overlap rewriting. Presents an isomorphic group; effort
/// bounds the number of rule applications.
GroupPresentation tietze_simplify(const GroupPresentation& p,
                                  std::size_t effort = 10000);

struct AbelianInvariants {
  std::uint64_t betti = 0;
  std::vector<Int> torsion;  // entries > 1 in divisibility order

  bool operator==(const AbelianInvariants&) const = default;
};

/// Smith normal form of the relator exponent matrix, in exact integers.
AbelianInvariants abelianization(const GroupPresentation& p);

enum class GroupClass { Trivial, Free, Unresolved };

struct Classification {
  GroupClass kind = GroupClass::Trivial;
  std::uint64_t free_rank = 0;           // meaningful for Free
  GroupPresentation simplified;          // carried for Unresolved
  AbelianInvariants abelian;

  bool label_equals(const Classification& other) const {
    if (kind != other.kind) return false;
    if (kind == GroupClass::Free && free_rank != other.free_rank) return false;
    if (kind == GroupClass::Unresolved) return abelian == other.abelian;
    return true;
  }
};

/// Sound labels only: Trivial / Free come from a fully simplified
/// presentation; everything else is honest ignorance.
Classification classify(const GroupPresentation& p, std::size_t effort = 10000);

struct IntersectionData {
  std::uint32_t component_count = 0;
  bool all_simply_connected = true;
};

/// Van Kampen pushout presentation for a cover U, V whose intersection
/// groupoid is discrete: generators of both parts plus one connecting
/// generator per intersection component beyond a spanning tree of the nerve.
/// Throws std::invalid_argument when the discreteness precondition is off.
GroupPresentation van_kampen_pushout(const GroupPresentation& u,
                                     const GroupPresentation& v,
                                     const IntersectionData& intersection);

/// Strong collapse of a flag complex: repeatedly removes vertices whose
/// closed neighbourhood is dominated by a neighbour. Valid only when the
/// complex equals the flag complex of its edge graph; preserves the homotopy
/// type, hence pi0/pi1. Returns the induced core complex.
Complex2 strong_collapse_core(const Complex2& flag_complex);

/// Classification of pi1 at `base` (pi1 of the base's component). When
/// `flag` is set the complex is reduced by strong collapse first.
Classification classify_complex(const Complex2& complex, VertexId base,
                                std::size_t effort, bool flag);

/// Whole-complex summary over all components: a spanning-forest presentation
/// whose classification is free(sum of component ranks) when every component
/// is free or trivial, and whose abelianization is the global H1. This is
/// what scan entries and the dilation comparison report.
Classification classify_complex_global(const Complex2& complex,
                                        std::size_t effort, bool flag);

}  // namespace epsitop
