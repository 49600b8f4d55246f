#pragma once

#include <string>
#include <vector>

#include "epsitop/complex.hpp"
#include "epsitop/rational.hpp"

namespace epsitop {

enum class MetricKind { L1, L2, Linf, Lp };

/// Metric selector. Distances are carried as exact p-th powers (power() says
/// which p), so comparisons against epsilon stay in rational arithmetic.
/// A non-integral Lp exponent falls back to guarded floating point; a
/// comparison landing inside the guard band throws GuardBandError.
struct Metric {
  MetricKind kind = MetricKind::Linf;
  unsigned p = 1;              // integral exponent for Lp
  double p_real = 0.0;         // non-integral exponent, 0 when unused
  double guard_band = 1e-9;

  static Metric l1() { return {MetricKind::L1, 1}; }
  static Metric l2() { return {MetricKind::L2, 2}; }
  static Metric linf() { return {MetricKind::Linf, 1}; }
  static Metric lp(unsigned p);
  static Metric lp_real(double p, double guard_band = 1e-9);

  bool exact() const { return p_real == 0.0; }
  /// Exponent applied to both distances and epsilon before comparing.
  unsigned power() const { return exact() ? p : 1; }
  std::string name() const;
};

struct GuardBandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Labeled points with exact rational coordinates and a metric selector.
struct PointCloud {
  std::size_t dimension = 0;
  Metric metric;
  std::vector<std::vector<Rational>> points;
  std::vector<std::string> labels;  // optional, empty or one per point

  std::size_t size() const { return points.size(); }
};

/// d(points[i], points[j])^power(), exact for exact metrics.
Rational distance_pow(const PointCloud& cloud, std::size_t i, std::size_t j);
Rational distance_pow(const Metric& metric, const std::vector<Rational>& a,
                      const std::vector<Rational>& b);

/// Resolution: closed means d <= eps, open means d < eps.
struct Resolution {
  Rational epsilon;
  bool closed = true;
};

/// Tolerance complex t_eps(cloud): edges where the distance test passes,
/// triangles = all triples whose pairs are edges.
Complex2 build_tolerance(const PointCloud& cloud, const Resolution& res);

/// Same, but thresholded directly in p-th-power space (pow = eps^power()).
/// This keeps l2/lp comparisons exact even when eps itself is irrational.
Complex2 build_tolerance_pow(const PointCloud& cloud, const Rational& eps_pow,
                             bool closed);

/// Edge graph of the tolerance complex without enumerating triangles. The
/// full complex is its flag closure; the pi0/pi1 pipeline rebuilds triangles
/// only after collapsing, which is far cheaper on dense structures.
Complex2 build_tolerance_graph_pow(const PointCloud& cloud,
                                   const Rational& eps_pow, bool closed);

/// t_eps^- computed through the breakpoint set: the closed structure at the
/// largest realized pairwise distance strictly below eps (discrete when
/// none). Equal to build_tolerance with an open resolution on finite clouds.
Complex2 open_structure_via_breakpoint(const PointCloud& cloud,
                                       const Rational& epsilon);

/// One point per true cell at lattice pitch rho. By default row 0 (the top
/// row of the file) maps to the largest y; y_up maps row r to y = rho * r.
PointCloud load_image_grid(const std::vector<std::vector<bool>>& grid,
                           const Rational& pitch, bool y_up = false,
                           const Metric& metric = Metric::linf());

/// Named point-cloud fixtures with pinned coordinates.
///   basins    - rectangle [0,11]x[0,5] minus three flush rectangular holes
///               of heights 3, 1, 2; lattice trace at the given pitch.
///   two_holes - rectangle [0,11]x[0,5] minus two holes of horizontal
///               crossing gaps 2 and 2 + pitch; lattice trace.
///   circle    - k points on a rational approximation of a radius-k polygon
///               (param = k).
struct Fixture {
  PointCloud cloud;
  std::string parameters;  // human-readable pinned-parameter record
};

Fixture region_fixture(const std::string& name, const Rational& pitch,
                       unsigned param = 0);

}  // namespace epsitop
