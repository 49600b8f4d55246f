#include "epsitop/scan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace epsitop {

std::vector<Rational> breakpoints(const PointCloud& cloud) {
  if (!cloud.metric.exact())
    throw std::invalid_argument("breakpoint scan requires an exact metric");
  std::set<Rational> values;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j)
      values.insert(distance_pow(cloud, i, j));
  return {values.begin(), values.end()};
}

namespace {

ScanEntry evaluate(const PointCloud& cloud, const Rational& eps_pow,
                   std::size_t effort) {
  Complex2 complex = build_tolerance_graph_pow(cloud, eps_pow, true);
  ScanEntry entry;
  entry.components = pi0(complex).component_count;
  if (complex.vertex_count > 0) {
    Classification c = classify_complex_global(complex, effort, /*flag=*/true);
    entry.group = c.kind;
    entry.free_rank = c.free_rank;
    entry.abelian = c.abelian;
  }
  return entry;
}

ScanEntry discrete_entry(const PointCloud& cloud) {
  ScanEntry entry;
  entry.kind = EntryKind::BelowAll;
  entry.components = static_cast<std::uint32_t>(cloud.size());
  entry.group = GroupClass::Trivial;
  return entry;
}

}  // namespace

EpsilonScanReport epsilon_scan(const PointCloud& cloud, std::size_t effort) {
  EpsilonScanReport report;
  report.metric = cloud.metric;
  report.breakpoint_list = breakpoints(cloud);
  const auto& bps = report.breakpoint_list;

  if (bps.empty()) {
    ScanEntry only = discrete_entry(cloud);
    only.kind = EntryKind::Beyond;
    report.entries.push_back(only);
    return report;
  }

  // One group computation per breakpoint; intervals reuse it because the
  // closed structure is constant on [d_i, d_{i+1}).
  std::vector<ScanEntry> at_breakpoint;
  for (const Rational& d : bps)
    at_breakpoint.push_back(evaluate(cloud, d, effort));

  bool has_dead_zone = bps.front() > 0;
  if (has_dead_zone) {
    ScanEntry pre = discrete_entry(cloud);
    pre.eps_lo = 0;
    pre.eps_hi = bps.front();
    report.entries.push_back(pre);
  }
  for (std::size_t i = 0; i < bps.size(); ++i) {
    ScanEntry bp = at_breakpoint[i];
    bp.kind = EntryKind::Breakpoint;
    bp.eps_lo = bps[i];
    report.entries.push_back(bp);
    ScanEntry iv = at_breakpoint[i];
    iv.kind = i + 1 < bps.size() ? EntryKind::Interval : EntryKind::Beyond;
    iv.eps_lo = bps[i];
    if (i + 1 < bps.size()) iv.eps_hi = bps[i + 1];
    report.entries.push_back(iv);
  }

  // Critical values. The chain of states is: the dead zone [0, d_0) when it
  // exists, then one state per breakpoint. Per dimension, a value run that
  // begins at breakpoint d gets d marked left-critical, except the run that
  // leaves the dead zone: the dead zone discretizes the single resolution 0,
  // where the jump sits on the right side, so that birth is right-critical.
  // A run confined to a single breakpoint with a jump after it held only at
  // that realized scale, so its breakpoint is also right-critical.
  struct DimView {
    static bool equal(int dim, const ScanEntry& a, const ScanEntry& b) {
      return dim == 0 ? a.components == b.components : a.dim1_equal(b);
    }
  };
  std::map<std::pair<Rational, int>, CriticalKind> marks;
  auto add_mark = [&](const Rational& eps, int dim, CriticalKind kind) {
    auto key = std::make_pair(eps, dim);
    auto it = marks.find(key);
    if (it == marks.end()) {
      marks.emplace(key, kind);
    } else if (it->second != kind) {
      it->second = CriticalKind::Bilateral;
    }
  };

  ScanEntry dead = discrete_entry(cloud);
  for (int dim = 0; dim <= 1; ++dim) {
    // states[0] corresponds to the dead zone (or is absent).
    std::vector<const ScanEntry*> chain;
    if (has_dead_zone) chain.push_back(&dead);
    for (const auto& e : at_breakpoint) chain.push_back(&e);
    std::size_t first_bp_index = has_dead_zone ? 1 : 0;

    // Run starts: indices where the value differs from the previous state.
    std::vector<std::size_t> run_start{0};
    for (std::size_t i = 1; i < chain.size(); ++i)
      if (!DimView::equal(dim, *chain[i], *chain[i - 1])) run_start.push_back(i);

    for (std::size_t r = 1; r < run_start.size(); ++r) {
      std::size_t start = run_start[r];
      const Rational& eps = bps[start - first_bp_index];
      bool out_of_dead_zone = has_dead_zone && run_start[r - 1] == 0;
      add_mark(eps, dim,
               out_of_dead_zone ? CriticalKind::Right : CriticalKind::Left);
      // Single-breakpoint run with a further jump: also right-critical.
      std::size_t end = r + 1 < run_start.size() ? run_start[r + 1] : chain.size();
      if (end == start + 1 && r + 1 < run_start.size())
        add_mark(eps, dim, CriticalKind::Right);
    }
  }

  for (const auto& [key, kind] : marks) {
    CriticalValue cv;
    cv.eps_pow = key.first;
    cv.kind = kind;
    cv.dimension = key.second;
    report.critical_values.push_back(cv);
  }
  std::sort(report.critical_values.begin(), report.critical_values.end(),
            [](const CriticalValue& a, const CriticalValue& b) {
              if (a.eps_pow != b.eps_pow) return a.eps_pow < b.eps_pow;
              return a.dimension < b.dimension;
            });

  for (const auto& e : report.entries)
    if (e.group == GroupClass::Unresolved) {
      report.warnings.push_back(
          "unresolved pi1 classification present: critical values compare "
          "abelian invariants only");
      break;
    }
  return report;
}

bool open_closed_consistency(const PointCloud& cloud, const Rational& epsilon,
                             std::size_t effort) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be > 0");
  Rational eps_pow = rational_pow(epsilon, cloud.metric.power());

  // Direct route: strict comparisons.
  Complex2 open_direct = build_tolerance_graph_pow(cloud, eps_pow, false);
  // Breakpoint route: closed structure at the largest realized distance
  // strictly below eps.
  Complex2 via_breakpoint = open_structure_via_breakpoint(cloud, epsilon);

  auto invariants = [&](const Complex2& c) {
    ScanEntry e;
    e.components = pi0(c).component_count;
    if (c.vertex_count > 0) {
      Classification cl = classify_complex_global(c, effort, /*flag=*/true);
      e.group = cl.kind;
      e.free_rank = cl.free_rank;
      e.abelian = cl.abelian;
    }
    return e;
  };
  ScanEntry a = invariants(open_direct);
  ScanEntry b = invariants(via_breakpoint);
  return a.invariants_equal(b);
}

}  // namespace epsitop
