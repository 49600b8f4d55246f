#include <doctest.h>

#include <random>

#include "epsitop/scan.hpp"

using namespace epsitop;

namespace {

PointCloud cloud_from(std::initializer_list<std::pair<int, int>> pts,
                      const Metric& m) {
  PointCloud c;
  c.dimension = 2;
  c.metric = m;
  for (auto [x, y] : pts) c.points.push_back({Rational(x), Rational(y)});
  return c;
}

PointCloud random_cloud(std::mt19937_64& rng, std::size_t max_points,
                        const Metric& m, int span = 8) {
  std::uniform_int_distribution<std::size_t> np(2, max_points);
  std::uniform_int_distribution<int> coord(0, span);
  PointCloud c;
  c.dimension = 2;
  c.metric = m;
  std::size_t n = np(rng);
  for (std::size_t i = 0; i < n; ++i)
    c.points.push_back({Rational(coord(rng)), Rational(coord(rng))});
  return c;
}

const ScanEntry* entry_at(const EpsilonScanReport& r, const Rational& eps) {
  for (const auto& e : r.entries)
    if (e.kind == EntryKind::Breakpoint && e.eps_lo == eps) return &e;
  return nullptr;
}

bool has_critical(const EpsilonScanReport& r, const Rational& eps,
                  CriticalKind kind, int dim) {
  for (const auto& cv : r.critical_values)
    if (cv.eps_pow == eps && cv.kind == kind && cv.dimension == dim) return true;
  return false;
}

}  // namespace

TEST_CASE("breakpoints") {
  PointCloud square = cloud_from({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, Metric::l1());
  CHECK(breakpoints(square) == std::vector<Rational>{Rational(1), Rational(2)});

  PointCloud square_inf =
      cloud_from({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, Metric::linf());
  CHECK(breakpoints(square_inf) == std::vector<Rational>{Rational(1)});

  PointCloud line;
  line.dimension = 1;
  line.metric = Metric::linf();
  for (int x : {0, 1, 3}) line.points.push_back({Rational(x)});
  CHECK(breakpoints(line) ==
        std::vector<Rational>{Rational(1), Rational(2), Rational(3)});

  // l2 breakpoints are carried as exact squared distances.
  PointCloud l2sq = cloud_from({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, Metric::l2());
  CHECK(breakpoints(l2sq) == std::vector<Rational>{Rational(1), Rational(2)});
}

TEST_CASE("structure constancy between breakpoints") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 10; ++round) {
    PointCloud c = random_cloud(rng, 12, Metric::l1());
    auto bps = breakpoints(c);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
      Rational mid = (bps[i] + bps[i + 1]) / 2;
      CHECK(build_tolerance_pow(c, bps[i], true) ==
            build_tolerance_pow(c, mid, true));
    }
  }
}

TEST_CASE("epsilon_scan on the basins fixture") {
  Fixture f = region_fixture("basins", Rational(1, 2));
  EpsilonScanReport r = epsilon_scan(f.cloud, 500000);

  // Four regimes: free(1), free(2), free(1), trivial.
  auto expect = [&](const Rational& eps, GroupClass g, std::uint64_t rank) {
    const ScanEntry* e = entry_at(r, eps);
    REQUIRE(e != nullptr);
    CHECK(e->components == 1);
    CHECK(e->group == g);
    if (g == GroupClass::Free) CHECK(e->free_rank == rank);
  };
  expect(Rational(1, 2), GroupClass::Free, 1);
  expect(Rational(3, 2), GroupClass::Free, 2);
  expect(Rational(5, 2), GroupClass::Free, 1);
  expect(Rational(7, 2), GroupClass::Trivial, 0);

  // Dimension-1 critical values: rho right, then 1, 2, 3 left.
  std::vector<CriticalValue> dim1;
  for (const auto& cv : r.critical_values)
    if (cv.dimension == 1) dim1.push_back(cv);
  REQUIRE(dim1.size() == 4);
  CHECK(dim1[0].eps_pow == Rational(1, 2));
  CHECK(dim1[0].kind == CriticalKind::Right);
  CHECK(dim1[1].eps_pow == Rational(1));
  CHECK(dim1[1].kind == CriticalKind::Left);
  CHECK(dim1[2].eps_pow == Rational(2));
  CHECK(dim1[2].kind == CriticalKind::Left);
  CHECK(dim1[3].eps_pow == Rational(3));
  CHECK(dim1[3].kind == CriticalKind::Left);

  // Dimension 0: single right-critical birth at rho.
  CHECK(has_critical(r, Rational(1, 2), CriticalKind::Right, 0));

  // Above the diameter everything is chaotic.
  const ScanEntry& last = r.entries.back();
  CHECK(last.kind == EntryKind::Beyond);
  CHECK(last.components == 1);
  CHECK(last.group == GroupClass::Trivial);
}

TEST_CASE("epsilon_scan on the two_holes fixture") {
  Fixture f = region_fixture("two_holes", Rational(1, 2));
  EpsilonScanReport r = epsilon_scan(f.cloud, 500000);

  auto rank_of = [&](const Rational& eps) {
    const ScanEntry* e = entry_at(r, eps);
    REQUIRE(e != nullptr);
    return e->group == GroupClass::Free ? e->free_rank : std::uint64_t(0);
  };
  CHECK(rank_of(Rational(1)) == 2);
  CHECK(rank_of(Rational(3, 2)) == 2);
  CHECK(rank_of(Rational(2)) == 1);
  CHECK(rank_of(Rational(5, 2)) == 0);
  CHECK(entry_at(r, Rational(5, 2))->group == GroupClass::Trivial);

  // The hallmark: eps = 2 is bilateral critical in dimension 1.
  CHECK(has_critical(r, Rational(2), CriticalKind::Bilateral, 1));
}

TEST_CASE("epsilon_scan under l2 and lp metrics") {
  // Unit square, l2: breakpoints are the exact squared distances {1, 2}.
  PointCloud sq = cloud_from({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, Metric::l2());
  EpsilonScanReport r = epsilon_scan(sq, 100000);
  CHECK(r.breakpoint_list == std::vector<Rational>{Rational(1), Rational(2)});
  const ScanEntry* at1 = entry_at(r, Rational(1));
  REQUIRE(at1 != nullptr);
  CHECK(at1->group == GroupClass::Free);
  CHECK(at1->free_rank == 1);  // the 4-cycle below the diagonal scale
  const ScanEntry* at2 = entry_at(r, Rational(2));
  REQUIRE(at2 != nullptr);
  CHECK(at2->group == GroupClass::Trivial);
  CHECK(has_critical(r, Rational(1), CriticalKind::Right, 1));
  CHECK(has_critical(r, Rational(2), CriticalKind::Left, 1));

  // Cubes under lp:3: breakpoints are third powers.
  PointCloud line = cloud_from({{0, 0}, {1, 1}, {3, 1}}, Metric::lp(3));
  auto bps = breakpoints(line);
  CHECK(bps == std::vector<Rational>{Rational(2), Rational(8), Rational(28)});
}

TEST_CASE("epsilon_scan of an empty cloud") {
  PointCloud empty;
  empty.dimension = 2;
  empty.metric = Metric::linf();
  EpsilonScanReport r = epsilon_scan(empty);
  CHECK(r.breakpoint_list.empty());
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].components == 0);
  CHECK(r.critical_values.empty());
}

TEST_CASE("pi0 monotone along breakpoints") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 8; ++round) {
    PointCloud c = random_cloud(rng, 14, Metric::linf());
    EpsilonScanReport r = epsilon_scan(c, 100000);
    std::uint32_t prev = static_cast<std::uint32_t>(c.size());
    for (const auto& e : r.entries) {
      if (e.kind != EntryKind::Breakpoint) continue;
      CHECK(e.components <= prev);
      prev = e.components;
    }
  }
}

TEST_CASE("report determinism") {
  Fixture f = region_fixture("two_holes", Rational(1));
  EpsilonScanReport a = epsilon_scan(f.cloud, 300000);
  EpsilonScanReport b = epsilon_scan(f.cloud, 300000);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].invariants_equal(b.entries[i]));
    CHECK(a.entries[i].eps_lo == b.entries[i].eps_lo);
  }
  REQUIRE(a.critical_values.size() == b.critical_values.size());
  for (std::size_t i = 0; i < a.critical_values.size(); ++i)
    CHECK(a.critical_values[i] == b.critical_values[i]);
}

TEST_CASE("open_closed_consistency") {
  // Distances {1, 2}: open structure at 2 equals closed at 1.
  PointCloud c = cloud_from({{0, 0}, {1, 0}, {2, 0}}, Metric::linf());
  CHECK(open_closed_consistency(c, Rational(2)));
  CHECK(open_closed_consistency(c, Rational(1, 2)));  // below min: discrete

  // The two_holes fixture at the bilateral value.
  Fixture f = region_fixture("two_holes", Rational(1, 2));
  CHECK(open_closed_consistency(f.cloud, Rational(2), 400000));

  std::mt19937_64 rng(4242);
  for (int round = 0; round < 12; ++round) {
    PointCloud rc = random_cloud(rng, 10, round % 2 ? Metric::l1() : Metric::linf());
    for (const Rational& bp : breakpoints(rc))
      if (bp > 0)  // the open structure needs eps > 0
        CHECK(open_closed_consistency(rc, bp, 100000));
  }
}
