#include "epsitop/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace epsitop {

using nlohmann::json;

std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  for (auto& s : cells) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
      s.pop_back();
  }
  return cells;
}

}  // namespace

PointCloud parse_cloud_csv(const std::string& text, const Metric& metric) {
  PointCloud cloud;
  cloud.metric = metric;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  bool has_label = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    auto cells = split_csv_line(line);
    if (!header_seen) {
      header_seen = true;
      has_label = !cells.empty() && cells.back() == "label";
      cloud.dimension = cells.size() - (has_label ? 1 : 0);
      if (cloud.dimension == 0)
        throw std::runtime_error("csv line 1: no coordinate columns");
      continue;
    }
    std::size_t expect = cloud.dimension + (has_label ? 1 : 0);
    if (cells.size() != expect)
      throw std::runtime_error("csv line " + std::to_string(line_no) +
                               ": expected " + std::to_string(expect) +
                               " cells, got " + std::to_string(cells.size()));
    std::vector<Rational> point;
    for (std::size_t i = 0; i < cloud.dimension; ++i) {
      auto value = parse_rational(cells[i]);
      if (!value)
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": bad numeric literal '" + cells[i] + "'");
      point.push_back(*value);
    }
    cloud.points.push_back(std::move(point));
    if (has_label) cloud.labels.push_back(cells.back());
  }
  if (!header_seen) throw std::runtime_error("csv input has no header");
  return cloud;
}

std::string cloud_to_csv(const PointCloud& cloud) {
  std::string out;
  for (std::size_t d = 0; d < cloud.dimension; ++d) {
    if (d) out += ",";
    out += "x" + std::to_string(d + 1);
  }
  bool labels = cloud.labels.size() == cloud.points.size() && !cloud.labels.empty();
  if (labels) out += ",label";
  out += "\n";
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    for (std::size_t d = 0; d < cloud.dimension; ++d) {
      if (d) out += ",";
      out += format_rational(cloud.points[i][d]);
    }
    if (labels) out += "," + cloud.labels[i];
    out += "\n";
  }
  return out;
}

std::vector<std::vector<bool>> parse_image(const std::string& text) {
  std::istringstream in(text);
  std::string first;
  while (std::getline(in, first)) {
    if (!first.empty() && first[0] != '#' &&
        first.find_first_not_of(" \t\r") != std::string::npos)
      break;
  }
  auto read_tokens = [&](std::istream& is) {
    std::vector<long long> tokens;
    std::string tok;
    while (is >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(is, rest);
        continue;
      }
      tokens.push_back(std::stoll(tok));
    }
    return tokens;
  };

  if (first.rfind("P1", 0) == 0 || first.rfind("P2", 0) == 0) {
    bool p2 = first[1] == '2';
    auto tokens = read_tokens(in);
    if (tokens.size() < 2) throw std::runtime_error("truncated pgm header");
    std::size_t w = static_cast<std::size_t>(tokens[0]);
    std::size_t h = static_cast<std::size_t>(tokens[1]);
    std::size_t offset = 2 + (p2 ? 1 : 0);  // P2 carries maxval
    if (tokens.size() < offset + w * h)
      throw std::runtime_error("truncated pgm pixel data");
    std::vector<std::vector<bool>> grid(h, std::vector<bool>(w));
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c)
        grid[r][c] = tokens[offset + r * w + c] != 0;
    return grid;
  }

  // ASCII 0/1 grid, one row per line.
  std::vector<std::vector<bool>> grid;
  std::string line = first;
  do {
    std::vector<bool> row;
    for (char c : line) {
      if (c == '0') row.push_back(false);
      else if (c == '1') row.push_back(true);
      else if (c == '#') break;
      else if (c != ' ' && c != '\t' && c != '\r')
        throw std::runtime_error("unexpected character in image grid");
    }
    if (!row.empty()) grid.push_back(std::move(row));
  } while (std::getline(in, line));
  if (grid.empty()) throw std::runtime_error("empty image");
  std::size_t w = grid[0].size();
  for (const auto& row : grid)
    if (row.size() != w) throw std::runtime_error("ragged image rows");
  return grid;
}

namespace {

json metric_json(const Metric& m) {
  json j;
  j["name"] = m.name();
  j["power"] = m.power();
  return j;
}

std::string group_label(GroupClass g) {
  switch (g) {
    case GroupClass::Trivial: return "trivial";
    case GroupClass::Free: return "free";
    case GroupClass::Unresolved: return "unresolved";
  }
  return "?";
}

json entry_json(const ScanEntry& e) {
  json j;
  switch (e.kind) {
    case EntryKind::BelowAll:
      j["eps"] = json{{"kind", "interval"},
                      {"lo", format_rational(e.eps_lo)},
                      {"hi", format_rational(e.eps_hi)}};
      break;
    case EntryKind::Breakpoint:
      j["eps"] = json{{"kind", "breakpoint"}, {"at", format_rational(e.eps_lo)}};
      break;
    case EntryKind::Interval:
      j["eps"] = json{{"kind", "interval"},
                      {"lo", format_rational(e.eps_lo)},
                      {"hi", format_rational(e.eps_hi)}};
      break;
    case EntryKind::Beyond:
      j["eps"] = json{{"kind", "beyond"}, {"lo", format_rational(e.eps_lo)}};
      break;
  }
  j["components"] = e.components;
  json g;
  g["kind"] = group_label(e.group);
  if (e.group == GroupClass::Free) g["rank"] = e.free_rank;
  j["pi1"] = g;
  json ab;
  ab["betti"] = e.abelian.betti;
  json torsion = json::array();
  for (const auto& t : e.abelian.torsion) torsion.push_back(t.str());
  ab["torsion"] = torsion;
  j["abelian"] = ab;
  return j;
}

std::string critical_kind_label(CriticalKind k) {
  switch (k) {
    case CriticalKind::Left: return "left";
    case CriticalKind::Right: return "right";
    case CriticalKind::Bilateral: return "bilateral";
  }
  return "?";
}

json scan_json(const EpsilonScanReport& scan) {
  json j;
  j["metric"] = metric_json(scan.metric);
  json bps = json::array();
  for (const auto& b : scan.breakpoint_list) bps.push_back(format_rational(b));
  j["breakpoints"] = bps;
  json entries = json::array();
  for (const auto& e : scan.entries) entries.push_back(entry_json(e));
  j["entries"] = entries;
  json criticals = json::array();
  for (const auto& cv : scan.critical_values) {
    json c;
    c["eps"] = format_rational(cv.eps_pow);
    c["kind"] = critical_kind_label(cv.kind);
    c["dimension"] = cv.dimension;
    criticals.push_back(c);
  }
  j["critical_values"] = criticals;
  return j;
}

json oracle_json(const OracleRow& row) {
  json j;
  j["eps"] = format_rational(row.eps_pow);
  j["structure"] = row.open_structure ? "open" : "closed";
  switch (row.result.outcome) {
    case CompareOutcome::Agree: j["outcome"] = "agree"; break;
    case CompareOutcome::Disagree: j["outcome"] = "disagree"; break;
    case CompareOutcome::NotApplicable: j["outcome"] = "not_applicable"; break;
  }
  if (row.result.outcome != CompareOutcome::NotApplicable) {
    j["raster_components"] = row.result.raster_components;
    j["raster_holes"] = row.result.raster_holes;
  }
  if (!row.result.detail.empty()) j["detail"] = row.result.detail;
  return j;
}

}  // namespace

std::string ReportDocument::to_json() const {
  json j;
  j["schema"] = kReportSchemaVersion;
  j["tool"] = json{{"name", "epsitop"}, {"version", kToolVersion}};
  json input;
  input["path"] = config.input_path;
  input["digest"] = input_digest;
  input["points"] = point_count;
  input["dimension"] = dimension;
  j["input"] = input;
  json cfg;
  cfg["metric"] = metric_json(config.metric);
  cfg["structure"] = config.closed ? "closed" : "open";
  cfg["effort"] = config.effort;
  if (config.epsilon) cfg["eps"] = format_rational(*config.epsilon);
  cfg["pitch"] = format_rational(config.pitch);
  cfg["oracle"] = config.oracle;
  j["config"] = cfg;
  if (scan) j["scan"] = scan_json(*scan);
  if (analysis) {
    json a = entry_json(*analysis);
    a["complex"] = json{{"vertices", complex_vertices},
                        {"edges", complex_edges},
                        {"triangles", complex_triangles}};
    j["analysis"] = a;
  }
  if (!oracle_rows.empty()) {
    json rows = json::array();
    for (const auto& row : oracle_rows) rows.push_back(oracle_json(row));
    j["oracle"] = rows;
  }
  json warn = json::array();
  for (const auto& w : warnings) warn.push_back(w);
  if (scan)
    for (const auto& w : scan->warnings) warn.push_back(w);
  j["warnings"] = warn;
  return j.dump(2) + "\n";
}

std::string ReportDocument::to_csv() const {
  std::string out = "kind,eps_lo,eps_hi,components,pi1,rank,betti,torsion\n";
  auto emit = [&out](const ScanEntry& e) {
    switch (e.kind) {
      case EntryKind::BelowAll:
      case EntryKind::Interval:
        out += "interval," + format_rational(e.eps_lo) + "," +
               format_rational(e.eps_hi);
        break;
      case EntryKind::Breakpoint:
        out += "breakpoint," + format_rational(e.eps_lo) + ",";
        break;
      case EntryKind::Beyond:
        out += "beyond," + format_rational(e.eps_lo) + ",";
        break;
    }
    out += "," + std::to_string(e.components) + "," + group_label(e.group);
    out += "," + std::to_string(e.group == GroupClass::Free ? e.free_rank : 0);
    out += "," + std::to_string(e.abelian.betti) + ",";
    for (std::size_t i = 0; i < e.abelian.torsion.size(); ++i)
      out += (i ? ";" : "") + e.abelian.torsion[i].str();
    out += "\n";
  };
  if (scan)
    for (const auto& e : scan->entries) emit(e);
  if (analysis) emit(*analysis);
  return out;
}

int ReportDocument::exit_code() const {
  if (analysis && analysis->group == GroupClass::Unresolved) return 2;
  if (scan)
    for (const auto& e : scan->entries)
      if (e.group == GroupClass::Unresolved) return 2;
  return 0;
}

ReportDocument run_scan(const RunConfig& config, const PointCloud& cloud,
                        const std::string& input_bytes) {
  ReportDocument doc;
  doc.config = config;
  doc.input_digest = fnv1a_digest(input_bytes);
  doc.point_count = cloud.size();
  doc.dimension = cloud.dimension;
  doc.scan = epsilon_scan(cloud, config.effort);
  if (config.oracle && cloud.dimension == 2) {
    // Open-structure comparison at every interval midpoint (pow space).
    for (const auto& e : doc.scan->entries) {
      if (e.kind != EntryKind::Interval) continue;
      Rational mid = (e.eps_lo + e.eps_hi) / 2;
      OracleRow row;
      row.eps_pow = mid;
      row.open_structure = true;
      row.result = compare_with_scan(cloud, mid, true, e);
      doc.oracle_rows.push_back(std::move(row));
    }
  }
  return doc;
}

ReportDocument run_analyze(const RunConfig& config, const PointCloud& cloud,
                           const std::string& input_bytes) {
  if (!config.epsilon) throw std::runtime_error("analyze requires --eps");
  ReportDocument doc;
  doc.config = config;
  doc.input_digest = fnv1a_digest(input_bytes);
  doc.point_count = cloud.size();
  doc.dimension = cloud.dimension;

  Rational eps_pow = cloud.metric.exact()
                         ? rational_pow(*config.epsilon, cloud.metric.power())
                         : *config.epsilon;
  Complex2 complex = build_tolerance_pow(cloud, eps_pow, config.closed);
  doc.complex_vertices = complex.vertex_count;
  doc.complex_edges = complex.edges.size();
  doc.complex_triangles = complex.triangles.size();

  ScanEntry entry;
  entry.kind = EntryKind::Breakpoint;
  entry.eps_lo = eps_pow;
  entry.components = pi0(complex).component_count;
  if (complex.vertex_count > 0) {
    Classification c = classify_complex_global(complex, config.effort, true);
    entry.group = c.kind;
    entry.free_rank = c.free_rank;
    entry.abelian = c.abelian;
  }
  doc.analysis = entry;

  if (config.oracle && cloud.dimension == 2 && cloud.metric.exact()) {
    OracleRow row;
    row.eps_pow = eps_pow;
    row.open_structure = !config.closed;
    row.result = compare_with_scan(cloud, eps_pow, !config.closed, entry);
    doc.oracle_rows.push_back(std::move(row));
  }
  return doc;
}

}  // namespace epsitop
