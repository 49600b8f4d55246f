#pragma once

#include <string>
#include <vector>

#include "epsitop/groups.hpp"
#include "epsitop/metric.hpp"

namespace epsitop {

/// Sorted, deduplicated realized pairwise distances, in p-th-power space
/// (power 1 for l1/linf, 2 for l2, p for lp).
std::vector<Rational> breakpoints(const PointCloud& cloud);

enum class EntryKind { BelowAll, Breakpoint, Interval, Beyond };

/// One evaluation point of the sweep. Breakpoint entries evaluate the closed
/// structure exactly at eps_lo; Interval entries cover (eps_lo, eps_hi),
/// where the structure is the same complex as at the lower breakpoint.
struct ScanEntry {
  EntryKind kind = EntryKind::Breakpoint;
  Rational eps_lo;  // pow space; Breakpoint: the value, Interval: open lower end
  Rational eps_hi;  // Interval/BelowAll upper end; unused otherwise
  std::uint32_t components = 0;
  GroupClass group = GroupClass::Trivial;
  std::uint64_t free_rank = 0;
  AbelianInvariants abelian;

  bool invariants_equal(const ScanEntry& other) const {
    return components == other.components && group == other.group &&
           free_rank == other.free_rank && abelian == other.abelian;
  }
  bool dim1_equal(const ScanEntry& other) const {
    return group == other.group && free_rank == other.free_rank &&
           abelian == other.abelian;
  }
};

enum class CriticalKind { Left, Right, Bilateral };

struct CriticalValue {
  Rational eps_pow;
  CriticalKind kind = CriticalKind::Left;
  int dimension = 0;  // 0 or 1

  bool operator==(const CriticalValue&) const = default;
};

struct EpsilonScanReport {
  Metric metric;
  std::vector<Rational> breakpoint_list;  // pow space
  std::vector<ScanEntry> entries;
  std::vector<CriticalValue> critical_values;
  std::vector<std::string> warnings;
};

/// Full sweep: per-breakpoint invariants (components, pi1 classification,
/// abelian invariants) plus critical-value classification. The sweep is
/// complete for finite clouds because t_eps only changes at breakpoints.
EpsilonScanReport epsilon_scan(const PointCloud& cloud,
                               std::size_t effort = 200000);

/// True iff the invariants of the open structure at eps (built directly with
/// strict comparisons) equal those of the closed structure at the largest
/// breakpoint below eps.
bool open_closed_consistency(const PointCloud& cloud, const Rational& epsilon,
                             std::size_t effort = 200000);

}  // namespace epsitop
