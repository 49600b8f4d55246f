#include "epsitop/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace epsitop {

Metric Metric::lp(unsigned p) {
  if (p == 0) throw std::invalid_argument("lp exponent must be >= 1");
  Metric m;
  m.kind = MetricKind::Lp;
  m.p = p;
  return m;
}

Metric Metric::lp_real(double p, double guard_band) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp exponent must be >= 1");
  Metric m;
  m.kind = MetricKind::Lp;
  m.p = 0;
  m.p_real = p;
  m.guard_band = guard_band;
  return m;
}

std::string Metric::name() const {
  switch (kind) {
    case MetricKind::L1: return "l1";
    case MetricKind::L2: return "l2";
    case MetricKind::Linf: return "linf";
    case MetricKind::Lp:
      if (exact()) return "lp:" + std::to_string(p);
      {
        std::ostringstream os;
        os << "lp:" << p_real;
        return os.str();
      }
  }
  return "?";
}

Rational distance_pow(const Metric& metric, const std::vector<Rational>& a,
                      const std::vector<Rational>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("points have different dimensions");
  if (!metric.exact())
    throw std::invalid_argument("exact distance undefined for real lp exponent");
  switch (metric.kind) {
    case MetricKind::L1: {
      Rational s = 0;
      for (std::size_t i = 0; i < a.size(); ++i)
        s += abs(Rational(a[i] - b[i]));
      return s;
    }
    case MetricKind::Linf: {
      Rational m = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        Rational d = abs(Rational(a[i] - b[i]));
        if (d > m) m = d;
      }
      return m;
    }
    case MetricKind::L2:
    case MetricKind::Lp: {
      unsigned p = metric.kind == MetricKind::L2 ? 2 : metric.p;
      Rational s = 0;
      for (std::size_t i = 0; i < a.size(); ++i)
        s += rational_pow(abs(Rational(a[i] - b[i])), p);
      return s;
    }
  }
  throw std::logic_error("unknown metric kind");
}

Rational distance_pow(const PointCloud& cloud, std::size_t i, std::size_t j) {
  return distance_pow(cloud.metric, cloud.points[i], cloud.points[j]);
}

namespace {

double distance_real(const Metric& metric, const std::vector<Rational>& a,
                     const std::vector<Rational>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(static_cast<double>(Rational(a[i] - b[i])));
    s += std::pow(d, metric.p_real);
  }
  return std::pow(s, 1.0 / metric.p_real);
}

/// Threshold test for one pair: d <= eps (closed) or d < eps (open).
bool pair_within(const PointCloud& cloud, std::size_t i, std::size_t j,
                 const Rational& eps_pow, bool closed) {
  if (cloud.metric.exact()) {
    Rational d = distance_pow(cloud, i, j);
    return closed ? d <= eps_pow : d < eps_pow;
  }
  // Guarded floating-point fallback; eps_pow carries plain eps here.
  double eps = static_cast<double>(eps_pow);
  double d = distance_real(cloud.metric, cloud.points[i], cloud.points[j]);
  double band = cloud.metric.guard_band * std::max(1.0, eps);
  if (std::abs(d - eps) < band)
    throw GuardBandError("distance within guard band of the threshold; "
                         "use an integral lp exponent for exact comparison");
  return closed ? d <= eps : d < eps;
}

Complex2 tolerance_graph(const PointCloud& cloud, const Rational& eps_pow,
                         bool closed) {
  const std::size_t n = cloud.size();
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pair_within(cloud, i, j, eps_pow, closed))
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
  return make_complex2(static_cast<VertexId>(n), std::move(edges), {});
}

}  // namespace

Complex2 build_tolerance(const PointCloud& cloud, const Resolution& res) {
  if (res.epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
  Rational eps_pow = cloud.metric.exact()
                         ? rational_pow(res.epsilon, cloud.metric.power())
                         : res.epsilon;
  return tolerance_closure(tolerance_graph(cloud, eps_pow, res.closed));
}

Complex2 build_tolerance_pow(const PointCloud& cloud, const Rational& eps_pow,
                             bool closed) {
  return tolerance_closure(tolerance_graph(cloud, eps_pow, closed));
}

Complex2 build_tolerance_graph_pow(const PointCloud& cloud,
                                   const Rational& eps_pow, bool closed) {
  return tolerance_graph(cloud, eps_pow, closed);
}

Complex2 open_structure_via_breakpoint(const PointCloud& cloud,
                                       const Rational& epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be > 0");
  Rational eps_pow = rational_pow(epsilon, cloud.metric.power());
  bool found = false;
  Rational best = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      Rational d = distance_pow(cloud, i, j);
      if (d < eps_pow && (!found || d > best)) {
        best = d;
        found = true;
      }
    }
  if (!found)
    return make_complex2(static_cast<VertexId>(cloud.size()), {}, {});
  return tolerance_closure(tolerance_graph(cloud, best, true));
}

PointCloud load_image_grid(const std::vector<std::vector<bool>>& grid,
                           const Rational& pitch, bool y_up,
                           const Metric& metric) {
  if (!(pitch > 0)) throw std::invalid_argument("pitch must be > 0");
  PointCloud cloud;
  cloud.dimension = 2;
  cloud.metric = metric;
  const std::size_t rows = grid.size();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      if (!grid[r][c]) continue;
      // Default keeps the visual orientation: the top file row gets the
      // largest y.
      std::size_t yi = y_up ? r : rows - 1 - r;
      cloud.points.push_back({pitch * Rational(c), pitch * Rational(yi)});
    }
  return cloud;
}

namespace {

struct HalfOpenBox {
  // Per axis: lo/hi bound with strictness flags. strict_lo means x > lo,
  // otherwise x >= lo; same on the high side.
  Rational lo_x, hi_x, lo_y, hi_y;
  bool strict_lo_x, strict_hi_x, strict_lo_y, strict_hi_y;

  bool contains(const Rational& x, const Rational& y) const {
    bool in_x = (strict_lo_x ? x > lo_x : x >= lo_x) &&
                (strict_hi_x ? x < hi_x : x <= hi_x);
    bool in_y = (strict_lo_y ? y > lo_y : y >= lo_y) &&
                (strict_hi_y ? y < hi_y : y <= hi_y);
    return in_x && in_y;
  }
};

PointCloud lattice_region(const Rational& pitch, const Rational& width,
                          const Rational& height,
                          const std::vector<HalfOpenBox>& holes) {
  PointCloud cloud;
  cloud.dimension = 2;
  cloud.metric = Metric::linf();
  for (Int j = 0; Rational(j) * pitch <= height; ++j)
    for (Int i = 0; Rational(i) * pitch <= width; ++i) {
      Rational x = Rational(i) * pitch, y = Rational(j) * pitch;
      bool excluded = false;
      for (const auto& hole : holes)
        if (hole.contains(x, y)) { excluded = true; break; }
      if (!excluded) cloud.points.push_back({x, y});
    }
  return cloud;
}

}  // namespace

Fixture region_fixture(const std::string& name, const Rational& pitch,
                       unsigned param) {
  if (!(pitch > 0)) throw std::invalid_argument("pitch must be > 0");
  if (name == "basins") {
    // Rectangle [0,11]x[0,5] minus three flush holes over the strip y in
    // (1,*): heights 3, 1, 2. Shared vertical edges belong to one hole each
    // so the obstacle is a single connected block at fine resolution.
    std::vector<HalfOpenBox> holes = {
        {Rational(1), Rational(4), Rational(1), Rational(4), true, false, true, true},
        {Rational(4), Rational(7), Rational(1), Rational(2), true, false, true, true},
        {Rational(7), Rational(10), Rational(1), Rational(3), false, true, true, true},
    };
    Fixture f;
    f.cloud = lattice_region(pitch, Rational(11), Rational(5), holes);
    f.parameters =
        "basins: lattice trace of [0,11]x[0,5] minus holes "
        "A=(1,4]x(1,4), B=(4,7]x(1,2), C=[7,10)x(1,3); pitch=" +
        format_rational(pitch) + "; metric=linf";
    return f;
  }
  if (name == "two_holes") {
    // Hole A is open with crossing gap exactly 2; hole B keeps its left edge
    // out of the region, so its lattice crossing gap is 2 + pitch.
    std::vector<HalfOpenBox> holes = {
        {Rational(3), Rational(5), Rational(1), Rational(4), true, true, true, true},
        {Rational(8), Rational(10), Rational(1), Rational(4), false, true, true, true},
    };
    Fixture f;
    f.cloud = lattice_region(pitch, Rational(11), Rational(5), holes);
    f.parameters =
        "two_holes: lattice trace of [0,11]x[0,5] minus holes "
        "A=(3,5)x(1,4), B=[8,10)x(1,4); pitch=" + format_rational(pitch) +
        "; metric=linf";
    return f;
  }
  if (name == "circle") {
    // param points spread along the boundary of an integer square ring,
    // scaled by pitch; a rational stand-in for a k-gon.
    unsigned k = param == 0 ? 12 : param;
    if (k < 3) throw std::invalid_argument("circle fixture needs k >= 3");
    Int side = (k + 3) / 4;
    Rational perimeter = Rational(4 * side);
    Fixture f;
    f.cloud.dimension = 2;
    f.cloud.metric = Metric::linf();
    for (unsigned i = 0; i < k; ++i) {
      Rational t = perimeter * Rational(i, k);  // arclength position
      Rational s(side);
      Rational x, y;
      if (t <= s) { x = t; y = 0; }
      else if (t <= 2 * s) { x = s; y = t - s; }
      else if (t <= 3 * s) { x = 3 * s - t; y = s; }
      else { x = 0; y = 4 * s - t; }
      f.cloud.points.push_back({x * pitch, y * pitch});
    }
    f.parameters = "circle: " + std::to_string(k) +
                   " points on the square ring of side " + side.str() +
                   " scaled by pitch=" + format_rational(pitch) +
                   "; metric=linf";
    return f;
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace epsitop
