#include "epsitop/retracts.hpp"

#include <algorithm>
#include <set>

namespace epsitop {

TelescopicAxis TelescopicAxis::with_jumps(Rational center,
                                          std::vector<Rational> jumps_pos,
                                          std::vector<Rational> jumps_neg) {
  if (jumps_pos.empty())
    throw std::invalid_argument("telescopic axis needs at least one jump");
  for (const auto& j : jumps_pos)
    if (!(j > 0)) throw std::invalid_argument("jumps must be positive");
  for (const auto& j : jumps_neg)
    if (!(j > 0)) throw std::invalid_argument("jumps must be positive");
  TelescopicAxis axis;
  axis.trivial = false;
  axis.center = std::move(center);
  axis.jumps_pos = std::move(jumps_pos);
  axis.jumps_neg = std::move(jumps_neg);
  return axis;
}

Rational characteristic_value(const TelescopicAxis& axis, std::int64_t i) {
  if (axis.trivial)
    throw std::invalid_argument("trivial axis has no characteristic sequence");
  Rational value = axis.center;
  if (i >= 0) {
    for (std::int64_t k = 0; k < i; ++k)
      value += axis.jumps_pos[static_cast<std::size_t>(k) % axis.jumps_pos.size()];
  } else {
    const auto& jumps = axis.jumps_neg.empty() ? axis.jumps_pos : axis.jumps_neg;
    for (std::int64_t k = 0; k < -i; ++k)
      value -= jumps[static_cast<std::size_t>(k) % jumps.size()];
  }
  return value;
}

std::vector<Rational> telescopic_value(const TelescopicSpec& spec,
                                       std::int64_t i,
                                       const std::vector<Rational>& x) {
  if (spec.axes.size() != x.size())
    throw std::invalid_argument("spec axis count does not match point dimension");
  std::vector<Rational> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const TelescopicAxis& axis = spec.axes[k];
    if (axis.trivial) {
      out[k] = x[k];
    } else if (x[k] >= axis.center) {
      out[k] = std::max(axis.center,
                        std::min(characteristic_value(axis, i), x[k]));
    } else {
      out[k] = std::min(axis.center,
                        std::max(characteristic_value(axis, -i), x[k]));
    }
  }
  return out;
}

namespace {

/// First instant after which the homotopy is the identity on the cloud.
std::int64_t stabilization_instant(const TelescopicSpec& spec,
                                   const PointCloud& cloud) {
  std::int64_t instant = 0;
  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    const TelescopicAxis& axis = spec.axes[k];
    if (axis.trivial) continue;
    Rational lo = axis.center, hi = axis.center;
    for (const auto& p : cloud.points) {
      if (p[k] > hi) hi = p[k];
      if (p[k] < lo) lo = p[k];
    }
    std::int64_t i = 0;
    while (characteristic_value(axis, i) < hi ||
           characteristic_value(axis, -i) > lo)
      ++i;
    instant = std::max(instant, i);
  }
  return instant;
}

Rational linf_distance(const std::vector<Rational>& a,
                       const std::vector<Rational>& b) {
  Rational m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = abs(Rational(a[i] - b[i]));
    if (d > m) m = d;
  }
  return m;
}

}  // namespace

bool verify_telescopic_map(const TelescopicSpec& spec, const PointCloud& cloud,
                           const Rational& epsilon) {
  if (cloud.points.empty()) return true;
  const std::int64_t horizon = stabilization_instant(spec, cloud);
  Rational eps_pow = rational_pow(epsilon, cloud.metric.power());

  // Every elementary square over an edge of t_eps(cloud) (the degenerate
  // edge {x, x} included) must have l_inf spread <= eps.
  auto square_ok = [&](const std::vector<Rational>& x,
                       const std::vector<Rational>& y) {
    for (std::int64_t i = 0; i <= horizon; ++i) {
      std::vector<std::vector<Rational>> corners = {
          telescopic_value(spec, i, x), telescopic_value(spec, i, y),
          telescopic_value(spec, i + 1, x), telescopic_value(spec, i + 1, y)};
      for (std::size_t a = 0; a < corners.size(); ++a)
        for (std::size_t b = a + 1; b < corners.size(); ++b)
          if (linf_distance(corners[a], corners[b]) > epsilon) return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!square_ok(cloud.points[i], cloud.points[i])) return false;
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      Rational d = distance_pow(cloud, i, j);
      if (d > eps_pow) continue;
      if (!square_ok(cloud.points[i], cloud.points[j])) return false;
    }
  }
  return true;
}

bool is_telescopically_contractible(const PointCloud& cloud,
                                    const Rational& epsilon,
                                    const TelescopicSpec& spec) {
  (void)epsilon;  // membership is exact; eps already shaped the jump lists
  std::set<std::vector<Rational>> members(cloud.points.begin(),
                                          cloud.points.end());
  const std::int64_t horizon = stabilization_instant(spec, cloud);
  for (const auto& p : cloud.points)
    for (std::int64_t i = 0; i <= horizon; ++i)
      if (!members.count(telescopic_value(spec, i, p))) return false;
  return true;
}

PointCloud grid_retract(const PointCloud& cloud, const Rational& epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be > 0");
  std::set<std::vector<Rational>> members(cloud.points.begin(),
                                          cloud.points.end());
  std::set<std::vector<Rational>> image;
  for (const auto& p : cloud.points) {
    std::vector<Rational> g(p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
      g[k] = epsilon * Rational(rational_floor(p[k] / epsilon));
    if (!members.count(g))
      throw GridRetractError("grid image point not contained in the cloud");
    image.insert(std::move(g));
  }
  PointCloud out;
  out.dimension = cloud.dimension;
  out.metric = cloud.metric;
  for (std::size_t i = 0; i < cloud.points.size(); ++i)
    if (image.count(cloud.points[i])) {
      out.points.push_back(cloud.points[i]);
      if (i < cloud.labels.size()) out.labels.push_back(cloud.labels[i]);
    }
  return out;
}

}  // namespace epsitop
