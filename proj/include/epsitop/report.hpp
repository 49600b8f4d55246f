#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epsitop/dilation.hpp"
#include "epsitop/metric.hpp"
#include "epsitop/scan.hpp"

namespace epsitop {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Everything a run needs; built by the CLI from flags.
struct RunConfig {
  std::string input_path;           // "-" reads stdin
  Metric metric = Metric::linf();
  std::optional<Rational> epsilon;  // single-eps analysis when set
  bool scan = false;
  bool closed = true;
  Rational pitch = Rational(1);     // image lattice pitch rho
  bool y_up = false;
  std::size_t effort = 200000;
  bool oracle = false;
  std::string json_path;
  std::string csv_path;
  std::string raster_dump_path;
};

/// FNV-1a 64-bit digest, hex encoded.
std::string fnv1a_digest(std::string_view bytes);

/// Point-cloud CSV: header "x1,...,xn[,label]", '#' comments, exact decimal
/// or "p/q" literals. Throws std::runtime_error with a line diagnostic.
PointCloud parse_cloud_csv(const std::string& text, const Metric& metric);

std::string cloud_to_csv(const PointCloud& cloud);

/// Binary images: plain PGM (P1/P2, nonzero = foreground) or an ASCII grid
/// of '0'/'1' rows.
std::vector<std::vector<bool>> parse_image(const std::string& text);

struct OracleRow {
  Rational eps_pow;
  bool open_structure = true;
  CompareResult result;
};

/// Deterministic JSON report: sorted keys, exact numeric strings, schema 1.
struct ReportDocument {
  RunConfig config;
  std::string input_digest;
  std::size_t point_count = 0;
  std::size_t dimension = 0;
  std::optional<EpsilonScanReport> scan;
  // Single-eps analysis fields:
  std::optional<ScanEntry> analysis;
  std::size_t complex_vertices = 0, complex_edges = 0, complex_triangles = 0;
  std::vector<OracleRow> oracle_rows;
  std::vector<std::string> warnings;

  std::string to_json() const;
  std::string to_csv() const;
  /// 0 all conclusive, 2 when unresolved classifications are present.
  int exit_code() const;
};

ReportDocument run_scan(const RunConfig& config, const PointCloud& cloud,
                        const std::string& input_bytes);
ReportDocument run_analyze(const RunConfig& config, const PointCloud& cloud,
                           const std::string& input_bytes);

}  // namespace epsitop
