#include <doctest.h>

#include <random>

#include "epsitop/groups.hpp"
#include "epsitop/retracts.hpp"

using namespace epsitop;

namespace {

PointCloud rectangle_lattice(int w, int h, const Rational& pitch) {
  PointCloud c;
  c.dimension = 2;
  c.metric = Metric::linf();
  for (int j = 0; j <= h; ++j)
    for (int i = 0; i <= w; ++i)
      c.points.push_back({Rational(i) * pitch, Rational(j) * pitch});
  return c;
}

TelescopicSpec unit_spec_2d() {
  return {{TelescopicAxis::with_jumps(Rational(0), {Rational(1)}),
           TelescopicAxis::with_jumps(Rational(0), {Rational(1)})}};
}

}  // namespace

TEST_CASE("characteristic sequences") {
  auto axis = TelescopicAxis::with_jumps(Rational(0), {Rational(1)});
  CHECK(characteristic_value(axis, 0) == 0);
  CHECK(characteristic_value(axis, 3) == 3);
  CHECK(characteristic_value(axis, -2) == -2);

  auto jumps131 = TelescopicAxis::with_jumps(Rational(0),
                                             {Rational(1), Rational(3), Rational(1)});
  CHECK(characteristic_value(jumps131, 1) == 1);
  CHECK(characteristic_value(jumps131, 2) == 4);
  CHECK(characteristic_value(jumps131, 3) == 5);
  CHECK(characteristic_value(jumps131, 4) == 6);  // periodic extension

  CHECK_THROWS_AS(TelescopicAxis::with_jumps(Rational(0), {Rational(0)}),
                  std::invalid_argument);
}

TEST_CASE("telescopic_value lattice formula") {
  TelescopicSpec spec = unit_spec_2d();
  // Unit jumps, centre 0: the standard telescopic arms.
  CHECK(telescopic_value(spec, 2, {Rational(3), Rational(0)})[0] == 2);
  CHECK(telescopic_value(spec, 2, {Rational(-3), Rational(0)})[0] == -2);
  // i = 0 collapses to the centre projection.
  CHECK(telescopic_value(spec, 0, {Rational(5), Rational(-7)}) ==
        std::vector<Rational>{Rational(0), Rational(0)});
  // Negative instants stay at the centre.
  CHECK(telescopic_value(spec, -3, {Rational(5), Rational(2)}) ==
        std::vector<Rational>{Rational(0), Rational(0)});

  // Trivial x-axis plus jumps (1,3,1) on y: alpha(2, (x,5)) = (x, 4).
  TelescopicSpec mixed{{TelescopicAxis::trivial_axis(),
                        TelescopicAxis::with_jumps(
                            Rational(0), {Rational(1), Rational(3), Rational(1)})}};
  CHECK(telescopic_value(mixed, 2, {Rational(9), Rational(5)}) ==
        std::vector<Rational>{Rational(9), Rational(4)});
}

TEST_CASE("contraction bound on opposite-side pairs") {
  // For y <= a0 <= x the values stay between the inputs and the centre:
  // 0 <= alpha(i, x) - alpha(i', y) <= x - y for all instants.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coord(0, 6), instant(-2, 8);
  auto axis = TelescopicAxis::with_jumps(Rational(0), {Rational(1), Rational(2)});
  TelescopicSpec spec{{axis}};
  for (int round = 0; round < 300; ++round) {
    Rational x(coord(rng)), y(-coord(rng));
    std::int64_t i = instant(rng), j = instant(rng);
    Rational ax = telescopic_value(spec, i, {x})[0];
    Rational ay = telescopic_value(spec, j, {y})[0];
    CHECK(ax - ay >= 0);
    CHECK(ax - ay <= x - y);
  }
}

TEST_CASE("verify_telescopic_map") {
  PointCloud window = rectangle_lattice(4, 3, Rational(1));
  CHECK(verify_telescopic_map(unit_spec_2d(), window, Rational(1)));

  // A jump above eps breaks the map property.
  TelescopicSpec wide{{TelescopicAxis::with_jumps(Rational(0), {Rational(3)}),
                       TelescopicAxis::trivial_axis()}};
  CHECK_FALSE(verify_telescopic_map(wide, window, Rational(1)));

  // The scaling homotopy phi(t, x) = t.x is not a combinatorial mapping:
  // the square over the linked pair (1,1) ! (0,2) spreads beyond eps = 1.
  auto scale = [](int t, std::pair<int, int> x) {
    return std::pair<int, int>{t * x.first, t * x.second};
  };
  auto spread = [](std::pair<int, int> a, std::pair<int, int> b) {
    return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
  };
  std::pair<int, int> x0{1, 1}, x1{0, 2};
  CHECK(spread(x0, x1) <= 1);  // linked at eps = 1
  int worst = 0;
  for (auto a : {scale(1, x0), scale(2, x0), scale(1, x1), scale(2, x1)})
    for (auto b : {scale(1, x0), scale(2, x0), scale(1, x1), scale(2, x1)})
      worst = std::max(worst, spread(a, b));
  CHECK(worst > 1);  // the image square is not linked
}

TEST_CASE("maps with jumps below eps verify on any full window") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> size(1, 5), jump_count(1, 3);
  for (int round = 0; round < 15; ++round) {
    Rational eps(1 + static_cast<int>(rng() % 3));
    auto random_jumps = [&]() {
      std::vector<Rational> jumps;
      for (int j = jump_count(rng); j > 0; --j) {
        // Positive jumps <= eps, in quarters.
        int quarters = 1 + static_cast<int>(rng() % (4 * static_cast<int>(
                                Int(numerator_of(eps)).convert_to<int>())));
        jumps.push_back(Rational(quarters, 4));
      }
      return jumps;
    };
    TelescopicSpec spec{{TelescopicAxis::with_jumps(Rational(0), random_jumps()),
                         TelescopicAxis::with_jumps(Rational(0), random_jumps())}};
    PointCloud window = rectangle_lattice(size(rng), size(rng), Rational(1));
    CHECK(verify_telescopic_map(spec, window, eps));
  }
}

TEST_CASE("telescopic contractibility") {
  // A full rectangle contracts to an interior centre.
  PointCloud window = rectangle_lattice(3, 3, Rational(1));
  TelescopicSpec centered{{TelescopicAxis::with_jumps(Rational(1), {Rational(1)}),
                           TelescopicAxis::with_jumps(Rational(1), {Rational(1)})}};
  CHECK(is_telescopically_contractible(window, Rational(1), centered));

  // The 8-cycle ring has a hole at the centre: contraction paths leave it.
  std::vector<std::vector<bool>> ring = {
      {true, true, true}, {true, false, true}, {true, true, true}};
  PointCloud ring_cloud = load_image_grid(ring, Rational(1));
  TelescopicSpec to_center{{TelescopicAxis::with_jumps(Rational(1), {Rational(1)}),
                            TelescopicAxis::with_jumps(Rational(1), {Rational(1)})}};
  CHECK_FALSE(is_telescopically_contractible(ring_cloud, Rational(1), to_center));

  // The basins region at eps >= 3: trivial x-axis, jumps (1,3,1) on y.
  Fixture basins = region_fixture("basins", Rational(1, 2));
  TelescopicSpec onto_axis{
      {TelescopicAxis::trivial_axis(),
       TelescopicAxis::with_jumps(Rational(0),
                                  {Rational(1), Rational(3), Rational(1)})}};
  CHECK(is_telescopically_contractible(basins.cloud, Rational(3), onto_axis));
  CHECK(verify_telescopic_map(onto_axis, basins.cloud, Rational(3)));
}

TEST_CASE("grid_retract") {
  // Dense sampling retracts onto the integer sub-lattice.
  PointCloud dense = rectangle_lattice(6, 4, Rational(1, 2));
  PointCloud coarse = grid_retract(dense, Rational(1));
  CHECK(coarse.size() == 4 * 3);
  for (const auto& p : coarse.points) {
    CHECK(denominator_of(p[0]) == 1);
    CHECK(denominator_of(p[1]) == 1);
  }

  // Already on the grid: identity.
  PointCloud ints = rectangle_lattice(3, 2, Rational(1));
  PointCloud same = grid_retract(ints, Rational(1));
  CHECK(same.points == ints.points);

  // Missing grid image point: error.
  PointCloud off;
  off.dimension = 1;
  off.metric = Metric::linf();
  off.points = {{Rational(1, 2)}};
  CHECK_THROWS_AS(grid_retract(off, Rational(1)), GridRetractError);
}

TEST_CASE("grid_retract preserves invariants on the staircase pair") {
  // Two different half-integer samplings with the same 1-grid: a staircase
  // and a flat bar. Their tolerance complexes at eps=1 are homotopy
  // equivalent through the common retract.
  PointCloud staircase, bar;
  staircase.dimension = bar.dimension = 2;
  staircase.metric = bar.metric = Metric::linf();
  for (Rational x = 0; x <= 3; x += Rational(1, 2))
    for (Rational y = 0; y <= 1; y += Rational(1, 2)) {
      bar.points.push_back({x, y});
      staircase.points.push_back({x, y});
    }
  // The staircase adds half-step teeth above integer cells only.
  for (Rational x = 0; x <= 3; x += 1)
    staircase.points.push_back({x, Rational(3, 2)});

  PointCloud rx = grid_retract(staircase, Rational(1));
  PointCloud ry = grid_retract(bar, Rational(1));
  CHECK(rx.points == ry.points);

  auto invariants = [](const PointCloud& c) {
    Complex2 t = build_tolerance(c, {Rational(1), true});
    Classification cl = classify_complex(t, 0, 200000, true);
    return std::tuple(pi0(t).component_count, cl.kind,
                      cl.kind == GroupClass::Free ? cl.free_rank : 0,
                      cl.abelian.betti);
  };
  CHECK(invariants(staircase) == invariants(bar));
  CHECK(invariants(staircase) == invariants(rx));
}
