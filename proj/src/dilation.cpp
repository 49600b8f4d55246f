#include "epsitop/dilation.hpp"

#include <algorithm>
#include <deque>

namespace epsitop {

namespace {

Int lcm_int(const Int& a, const Int& b) { return a / gcd(a, b) * b; }

}  // namespace

Rational default_dilation_pitch(const Rational& eps_pow, unsigned power) {
  Rational pitch = 8;
  while (rational_pow(8 * pitch, power) > eps_pow) pitch /= 2;
  return pitch;
}

RasterRegion rasterize_dilation(const PointCloud& cloud,
                                const Rational& eps_pow, bool closed,
                                const Rational& pitch) {
  if (cloud.dimension != 2)
    throw RasterError("spot dilation raster requires dimension 2");
  if (!cloud.metric.exact())
    throw RasterError("raster oracle requires an exact metric");
  if (!(eps_pow > 0) || !(pitch > 0))
    throw RasterError("eps and pitch must be positive");
  const unsigned power = cloud.metric.power();
  if (rational_pow(8 * pitch, power) > eps_pow)
    throw RasterError("pitch guard violated: need pitch <= eps/8");
  if (cloud.points.empty()) throw RasterError("empty cloud");

  // Inflate the bounding box by at least eps/2 plus one pitch ring:
  // k = least integer with (2 k pitch)^p >= eps^p.
  Int k = 1;
  while (rational_pow(2 * Rational(k) * pitch, power) < eps_pow) ++k;
  Rational inflate = (Rational(k) + 1) * pitch;

  Rational min_x = cloud.points[0][0], max_x = min_x;
  Rational min_y = cloud.points[0][1], max_y = min_y;
  for (const auto& p : cloud.points) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }

  RasterRegion region;
  region.pitch = pitch;
  region.origin_x = min_x - inflate;
  region.origin_y = min_y - inflate;
  region.width = static_cast<std::size_t>(
      rational_floor((max_x + inflate - region.origin_x) / pitch)) + 1;
  region.height = static_cast<std::size_t>(
      rational_floor((max_y + inflate - region.origin_y) / pitch)) + 1;
  region.cells.assign(region.width * region.height, 0);

  // Scale to a common denominator so every membership test is pure integer
  // arithmetic: exactness is what separates open from closed rasters.
  Int denom = denominator_of(pitch);
  denom = lcm_int(denom, denominator_of(region.origin_x));
  denom = lcm_int(denom, denominator_of(region.origin_y));
  for (const auto& p : cloud.points) {
    denom = lcm_int(denom, denominator_of(p[0]));
    denom = lcm_int(denom, denominator_of(p[1]));
  }
  auto scaled = [&](const Rational& r) {
    return numerator_of(r) * (denom / denominator_of(r));
  };
  std::vector<std::pair<Int, Int>> pts;
  pts.reserve(cloud.points.size());
  for (const auto& p : cloud.points) pts.push_back({scaled(p[0]), scaled(p[1])});
  Int sp = scaled(pitch), sox = scaled(region.origin_x), soy = scaled(region.origin_y);

  // Threshold: dist_pow(point, center) * 2^p * denom^p  vs  eps_pow * denom^p,
  // both integers after clearing eps_pow's denominator.
  Rational rhs_rational = eps_pow * rational_pow(Rational(denom), power);
  Int rhs_num = numerator_of(rhs_rational), rhs_den = denominator_of(rhs_rational);
  Int two_pow = 1;
  for (unsigned i = 0; i < power; ++i) two_pow *= 2;
  const Int lhs_scale = two_pow * rhs_den;

  auto int_pow = [&](Int v) {
    Int r = 1;
    for (unsigned i = 0; i < power; ++i) r *= v;
    return r;
  };

  const MetricKind kind = cloud.metric.kind;
  for (std::size_t row = 0; row < region.height; ++row) {
    Int cy = soy + Int(row) * sp;
    for (std::size_t col = 0; col < region.width; ++col) {
      Int cx = sox + Int(col) * sp;
      bool inside = false;
      for (const auto& [px, py] : pts) {
        Int dx = px > cx ? px - cx : cx - px;
        Int dy = py > cy ? py - cy : cy - py;
        Int lhs;
        switch (kind) {
          case MetricKind::L1: lhs = dx + dy; break;
          case MetricKind::Linf: lhs = dx > dy ? dx : dy; break;
          default: lhs = int_pow(dx) + int_pow(dy); break;
        }
        // d^p <= (eps/2)^p  <=>  d^p * 2^p * rhs_den <= rhs_num
        Int left = lhs * lhs_scale;
        if (closed ? left <= rhs_num : left < rhs_num) { inside = true; break; }
      }
      if (inside) region.cells[row * region.width + col] = 1;
    }
  }
  return region;
}

std::pair<std::uint32_t, std::uint32_t> count_components_and_holes(
    const RasterRegion& region) {
  const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(region.width);
  const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(region.height);
  // Work on a grid padded by one background ring so the outer background is
  // a single component.
  const std::ptrdiff_t pw = w + 2, ph = h + 2;
  auto fg = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    return x >= 1 && x <= w && y >= 1 && y <= h &&
           region.at(static_cast<std::size_t>(x - 1),
                     static_cast<std::size_t>(y - 1));
  };
  std::vector<std::int8_t> mark(static_cast<std::size_t>(pw * ph), 0);
  auto idx = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    return static_cast<std::size_t>(y * pw + x);
  };

  std::uint32_t components = 0, background = 0;
  for (std::ptrdiff_t y = 0; y < ph; ++y)
    for (std::ptrdiff_t x = 0; x < pw; ++x) {
      if (mark[idx(x, y)]) continue;
      bool foreground = fg(x, y);
      if (foreground)
        ++components;
      else
        ++background;
      std::deque<std::pair<std::ptrdiff_t, std::ptrdiff_t>> queue{{x, y}};
      mark[idx(x, y)] = 1;
      while (!queue.empty()) {
        auto [cx, cy] = queue.front();
        queue.pop_front();
        // Foreground spreads with 8-adjacency, background with 4-adjacency:
        // the Jordan-consistent pairing for l_inf-disc unions.
        for (std::ptrdiff_t dy = -1; dy <= 1; ++dy)
          for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!foreground && dx != 0 && dy != 0) continue;
            std::ptrdiff_t nx = cx + dx, ny = cy + dy;
            if (nx < 0 || nx >= pw || ny < 0 || ny >= ph) continue;
            if (mark[idx(nx, ny)] || fg(nx, ny) != foreground) continue;
            mark[idx(nx, ny)] = 1;
            queue.push_back({nx, ny});
          }
      }
    }
  // All off-grid cells are background and connected through the pad ring.
  return {components, background - 1};
}

namespace {

/// Rational lower bound of eps = eps_pow^(1/p), within 2^-20.
Rational root_lower_bound(const Rational& eps_pow, unsigned power) {
  if (power == 1) return eps_pow;
  Rational lo = 0, hi = 1;
  while (rational_pow(hi, power) < eps_pow) hi *= 2;
  for (int iter = 0; iter < 40; ++iter) {
    Rational mid = (lo + hi) / 2;
    (rational_pow(mid, power) <= eps_pow ? lo : hi) = mid;
  }
  return lo;
}

/// True when some realized distance sits within 2*pitch of the threshold, so
/// the raster cannot certify which side of eps a near-critical pair is on.
bool resolution_insufficient(const PointCloud& cloud, const Rational& eps_pow,
                             const Rational& pitch) {
  const unsigned power = cloud.metric.power();
  Rational eps_lo = root_lower_bound(eps_pow, power);
  Rational below = eps_lo - 2 * pitch;
  Rational below_pow =
      below > 0 ? rational_pow(below, power) : Rational(0);
  Rational above_pow = rational_pow(eps_lo + 2 * pitch, power);
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      Rational d = distance_pow(cloud, i, j);
      if (d > below_pow && d < above_pow && d != eps_pow) return true;
    }
  return false;
}

/// Checks the geometric hypothesis behind the spot comparison: the convex
/// hull of every linked part must be covered by the dilation. In the plane
/// it suffices to test linked triples; a background cell center inside such
/// a hull is an exact witness that the hypothesis fails (spurious raster
/// holes between fat l1/l2 discs).
bool hull_hypothesis_fails(const PointCloud& cloud, const Rational& eps_pow,
                           bool open_structure, const RasterRegion& raster) {
  Complex2 complex = tolerance_closure(
      build_tolerance_graph_pow(cloud, eps_pow, !open_structure));
  if (complex.triangles.empty()) return false;

  auto cell_center = [&](std::size_t col, std::size_t row) {
    return std::pair<Rational, Rational>{
        raster.origin_x + raster.pitch * Rational(col),
        raster.origin_y + raster.pitch * Rational(row)};
  };
  auto orient = [](const Rational& ax, const Rational& ay, const Rational& bx,
                   const Rational& by, const Rational& px, const Rational& py) {
    Rational value = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
    return value > 0 ? 1 : value < 0 ? -1 : 0;
  };

  for (const auto& t : complex.triangles) {
    const auto& a = cloud.points[t[0]];
    const auto& b = cloud.points[t[1]];
    const auto& c = cloud.points[t[2]];
    if (orient(a[0], a[1], b[0], b[1], c[0], c[1]) == 0) continue;  // collinear
    Rational min_x = std::min({a[0], b[0], c[0]});
    Rational max_x = std::max({a[0], b[0], c[0]});
    Rational min_y = std::min({a[1], b[1], c[1]});
    Rational max_y = std::max({a[1], b[1], c[1]});
    auto clamp_col = [&](const Rational& x) {
      Int idx = rational_floor((x - raster.origin_x) / raster.pitch);
      if (idx < 0) idx = 0;
      if (idx >= Int(raster.width)) idx = Int(raster.width) - 1;
      return static_cast<std::size_t>(idx);
    };
    auto clamp_row = [&](const Rational& y) {
      Int idx = rational_floor((y - raster.origin_y) / raster.pitch);
      if (idx < 0) idx = 0;
      if (idx >= Int(raster.height)) idx = Int(raster.height) - 1;
      return static_cast<std::size_t>(idx);
    };
    for (std::size_t row = clamp_row(min_y); row <= clamp_row(max_y) + 1 &&
                                             row < raster.height; ++row)
      for (std::size_t col = clamp_col(min_x); col <= clamp_col(max_x) + 1 &&
                                               col < raster.width; ++col) {
        if (raster.at(col, row)) continue;
        auto [px, py] = cell_center(col, row);
        int o1 = orient(a[0], a[1], b[0], b[1], px, py);
        int o2 = orient(b[0], b[1], c[0], c[1], px, py);
        int o3 = orient(c[0], c[1], a[0], a[1], px, py);
        bool inside = (o1 >= 0 && o2 >= 0 && o3 >= 0) ||
                      (o1 <= 0 && o2 <= 0 && o3 <= 0);
        if (inside) return true;
      }
  }
  return false;
}

}  // namespace

CompareResult compare_with_scan(const PointCloud& cloud,
                                const Rational& eps_pow, bool open_structure,
                                const ScanEntry& entry,
                                bool closure_hypothesis) {
  CompareResult result;
  if (cloud.dimension != 2) {
    result.detail = "dimension != 2";
    return result;
  }
  if (entry.group == GroupClass::Unresolved) {
    result.detail = "classification unresolved";
    return result;
  }
  if (!open_structure && !closure_hypothesis) {
    // Closed-spot comparison can genuinely fail at critical values; without
    // the closure hypothesis it stays advisory at breakpoints.
    for (std::size_t i = 0; i < cloud.size(); ++i)
      for (std::size_t j = i + 1; j < cloud.size(); ++j)
        if (distance_pow(cloud, i, j) == eps_pow) {
          result.detail = "closed comparison at a breakpoint is advisory";
          return result;
        }
  }

  Rational pitch = default_dilation_pitch(eps_pow, cloud.metric.power());
  RasterRegion raster =
      rasterize_dilation(cloud, eps_pow, /*closed=*/!open_structure, pitch);
  auto [components, holes] = count_components_and_holes(raster);
  result.raster_components = components;
  result.raster_holes = holes;

  std::uint64_t expected_rank =
      entry.group == GroupClass::Free ? entry.free_rank : 0;
  if (components == entry.components && holes == expected_rank) {
    result.outcome = CompareOutcome::Agree;
    return result;
  }

  if (!closure_hypothesis) {
    // Disagreements only count when the comparison theorem applies: spot
    // gaps must be resolvable at this pitch, and the dilation must cover
    // the hulls of linked parts.
    if (resolution_insufficient(cloud, eps_pow, pitch)) {
      result.detail = "raster pitch cannot separate near-threshold spots";
      return result;
    }
    if (hull_hypothesis_fails(cloud, eps_pow, open_structure, raster)) {
      result.detail = "closure hypothesis fails: linked hulls not covered";
      return result;
    }
  }

  result.outcome = CompareOutcome::Disagree;
  result.detail = "scan (components=" + std::to_string(entry.components) +
                  ", free rank=" + std::to_string(expected_rank) +
                  ") vs raster (components=" + std::to_string(components) +
                  ", holes=" + std::to_string(holes) + ")";
  return result;
}

std::string raster_to_pgm(const RasterRegion& region) {
  std::string out = "P1\n" + std::to_string(region.width) + " " +
                    std::to_string(region.height) + "\n";
  for (std::size_t row = 0; row < region.height; ++row) {
    // PGM rows run top to bottom; flip so larger y prints higher.
    std::size_t r = region.height - 1 - row;
    for (std::size_t col = 0; col < region.width; ++col) {
      out += region.at(col, r) ? '1' : '0';
      out += col + 1 == region.width ? '\n' : ' ';
    }
  }
  return out;
}

}  // namespace epsitop
