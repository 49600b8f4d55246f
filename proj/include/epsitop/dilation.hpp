#pragma once

#include <string>
#include <vector>

#include "epsitop/metric.hpp"
#include "epsitop/scan.hpp"

namespace epsitop {

/// Boolean raster; cell (col, row) center is origin + pitch * (col, row).
struct RasterRegion {
  std::size_t width = 0;
  std::size_t height = 0;
  Rational origin_x, origin_y;
  Rational pitch;
  std::vector<std::uint8_t> cells;  // row-major, 1 = foreground

  bool at(std::size_t col, std::size_t row) const {
    return cells[row * width + col] != 0;
  }
};

struct RasterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rasterizes the spot dilation D_eps(cloud): a cell is set iff some point
/// lies within eps/2 of its center (strictly for the open dilation). The
/// threshold arrives as eps^p ("pow space"), so membership is exact even for
/// irrational l2 radii. Requires dimension 2 and pitch <= eps/8.
RasterRegion rasterize_dilation(const PointCloud& cloud,
                                const Rational& eps_pow, bool closed,
                                const Rational& pitch);

/// Largest power-of-two pitch satisfying the eps/8 guard; keeps grids aligned
/// to the input lattice for rational eps.
Rational default_dilation_pitch(const Rational& eps_pow, unsigned power);

/// Foreground components under 8-adjacency; holes = background components
/// under 4-adjacency not touching the border (grid padded by one ring).
std::pair<std::uint32_t, std::uint32_t> count_components_and_holes(
    const RasterRegion& region);

enum class CompareOutcome { Agree, Disagree, NotApplicable };

struct CompareResult {
  CompareOutcome outcome = CompareOutcome::NotApplicable;
  std::uint32_t raster_components = 0;
  std::uint32_t raster_holes = 0;
  std::string detail;
};

/// Compares a scan entry against the raster oracle at eps (pow space).
/// Open structures compare pass/fail; the closed case at a breakpoint is
/// advisory unless the caller asserts the closure hypothesis.
CompareResult compare_with_scan(const PointCloud& cloud,
                                const Rational& eps_pow, bool open_structure,
                                const ScanEntry& entry,
                                bool closure_hypothesis = false);

/// Plain PGM (P1) dump, one character cell per pixel.
std::string raster_to_pgm(const RasterRegion& region);

}  // namespace epsitop
