#pragma once

#include <cstdint>
#include <vector>

#include "epsitop/metric.hpp"

namespace epsitop {

/// One axis of a telescopic homotopy: either trivial (the coordinate is left
/// alone) or a centre with positive jump lists, extended periodically. The
/// negative side mirrors the positive jumps unless given explicitly.
struct TelescopicAxis {
  bool trivial = true;
  Rational center;
  std::vector<Rational> jumps_pos;
  std::vector<Rational> jumps_neg;  // empty = mirror jumps_pos

  static TelescopicAxis trivial_axis() { return {}; }
  static TelescopicAxis with_jumps(Rational center,
                                   std::vector<Rational> jumps_pos,
                                   std::vector<Rational> jumps_neg = {});
};

struct TelescopicSpec {
  std::vector<TelescopicAxis> axes;  // one per coordinate
};

/// Characteristic value a_i of one axis (a_0 = centre; jumps accumulate and
/// repeat periodically, mirrored on the negative side).
Rational characteristic_value(const TelescopicAxis& axis, std::int64_t i);

/// The lattice formula, per axis: a_0 v (a_i ^ x) above the centre and
/// a_0 ^ (a_{-i} v x) below it; trivial axes pass x through.
std::vector<Rational> telescopic_value(const TelescopicSpec& spec,
                                       std::int64_t i,
                                       const std::vector<Rational>& x);

/// Checks the combinatorial-map property of the telescopic homotopy on the
/// finite cloud: every elementary square over an edge of t_eps(cloud) must
/// have l_inf-coordinatewise spread <= eps. The instant range is derived
/// from the cloud's coordinate span.
bool verify_telescopic_map(const TelescopicSpec& spec, const PointCloud& cloud,
                           const Rational& epsilon);

/// True iff every intermediate value telescopic_value(spec, i, x) of every
/// cloud point lies in the cloud (exact membership).
bool is_telescopically_contractible(const PointCloud& cloud,
                                    const Rational& epsilon,
                                    const TelescopicSpec& spec);

struct GridRetractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The eps-grid retract: keeps the sub-cloud of points eps * floor(x / eps).
/// Throws GridRetractError when the grid image is not contained in the cloud.
PointCloud grid_retract(const PointCloud& cloud, const Rational& epsilon);

}  // namespace epsitop
