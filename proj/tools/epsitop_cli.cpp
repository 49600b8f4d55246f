#include <CLI11.hpp>

#include <algorithm>

#include <fstream>
#include <iostream>
#include <sstream>

#include "epsitop/dilation.hpp"
#include "epsitop/report.hpp"

using namespace epsitop;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output: " + path);
  out << content;
}

Metric parse_metric(const std::string& name) {
  if (name == "l1") return Metric::l1();
  if (name == "l2") return Metric::l2();
  if (name == "linf") return Metric::linf();
  if (name.rfind("lp:", 0) == 0) {
    std::string arg = name.substr(3);
    if (arg.find('.') == std::string::npos)
      return Metric::lp(static_cast<unsigned>(std::stoul(arg)));
    return Metric::lp_real(std::stod(arg));
  }
  throw CLI::ValidationError("--metric", "expected l1, l2, linf or lp:<p>");
}

Rational parse_rational_flag(const std::string& text, const std::string& flag) {
  auto value = parse_rational(text);
  if (!value)
    throw CLI::ValidationError(flag, "expected an exact literal like 3/2 or 1.5");
  return *value;
}

bool is_image_input(const std::string& path, const std::string& bytes) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".pgm") return true;
  if (bytes.rfind("P1", 0) == 0 || bytes.rfind("P2", 0) == 0) return true;
  // A csv has a header line with commas; a raw grid has only 0/1 rows.
  auto eol = bytes.find('\n');
  std::string head = bytes.substr(0, eol == std::string::npos ? bytes.size() : eol);
  return head.find(',') == std::string::npos &&
         head.find_first_not_of("01 \t\r") == std::string::npos && !head.empty();
}

PointCloud load_cloud(const RunConfig& config, const std::string& bytes) {
  if (is_image_input(config.input_path, bytes)) {
    auto grid = parse_image(bytes);
    return load_image_grid(grid, config.pitch, config.y_up, config.metric);
  }
  return parse_cloud_csv(bytes, config.metric);
}

void emit_outputs(const ReportDocument& doc, const RunConfig& config) {
  std::string json = doc.to_json();
  if (!config.json_path.empty())
    write_file(config.json_path, json);
  else
    std::cout << json;
  if (!config.csv_path.empty()) write_file(config.csv_path, doc.to_csv());
}

int run_command(bool scan_mode, RunConfig& config,
                const std::string& metric_name, const std::string& eps_text,
                const std::string& pitch_text) {
  config.metric = parse_metric(metric_name);
  config.pitch = parse_rational_flag(pitch_text, "--pitch");
  if (!eps_text.empty())
    config.epsilon = parse_rational_flag(eps_text, "--eps");
  std::string bytes = read_input(config.input_path);
  PointCloud cloud = load_cloud(config, bytes);
  ReportDocument doc = scan_mode ? run_scan(config, cloud, bytes)
                                 : run_analyze(config, cloud, bytes);

  if (!config.raster_dump_path.empty() && config.epsilon &&
      cloud.dimension == 2 && config.metric.exact()) {
    Rational eps_pow = rational_pow(*config.epsilon, config.metric.power());
    RasterRegion raster = rasterize_dilation(
        cloud, eps_pow, config.closed,
        default_dilation_pitch(eps_pow, config.metric.power()));
    write_file(config.raster_dump_path, raster_to_pgm(raster));
  }
  emit_outputs(doc, config);
  return doc.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  // Flag-style invocation: "epsitop input --scan ..." or "--eps" without a
  // subcommand routes to scan/analyze.
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args[0] != "scan" && args[0] != "analyze" &&
      args[0] != "fixtures" && args[0] != "--help" && args[0] != "-h") {
    bool wants_scan = false, wants_eps = false;
    for (const auto& a : args) {
      if (a == "--scan") wants_scan = true;
      if (a == "--eps") wants_eps = true;
    }
    if (wants_scan || wants_eps) {
      args.erase(std::remove(args.begin(), args.end(), "--scan"), args.end());
      args.insert(args.begin(), wants_scan ? "scan" : "analyze");
    }
  }
  std::vector<char*> argv2{argv[0]};
  for (auto& a : args) argv2.push_back(a.data());

  CLI::App app{"epsitop: resolution-indexed connectivity and loop analysis "
               "of point clouds and binary images"};
  app.require_subcommand(1);

  RunConfig config;
  std::string metric_name = "linf";
  std::string eps_text, pitch_text = "1";
  bool open_flag = false, closed_flag = false;

  auto add_common = [&](CLI::App* cmd, bool needs_eps) {
    cmd->add_option("input", config.input_path,
                    "point-cloud CSV or binary image (PGM/ASCII grid); '-' for stdin")
        ->required();
    cmd->add_option("--metric", metric_name, "l1, l2, linf or lp:<p>");
    if (needs_eps)
      cmd->add_option("--eps", eps_text, "resolution (exact literal)");
    cmd->add_flag("--open", open_flag, "use the open structure d < eps");
    cmd->add_flag("--closed", closed_flag, "use the closed structure d <= eps (default)");
    cmd->add_option("--pitch", pitch_text, "image lattice pitch rho");
    cmd->add_flag("--y-up", config.y_up, "map image row r to y = rho*r instead of flipping");
    cmd->add_option("--effort", config.effort, "simplification budget");
    cmd->add_flag("--oracle", config.oracle, "run the raster dilation cross-check");
    cmd->add_option("--json", config.json_path, "write the JSON report here ('-' = stdout)");
    cmd->add_option("--csv", config.csv_path, "write plot-ready CSV here");
    cmd->add_option("--dump-raster", config.raster_dump_path,
                    "write the oracle raster as plain PGM (analyze only)");
  };

  CLI::App* scan = app.add_subcommand("scan", "sweep every resolution breakpoint");
  add_common(scan, false);
  CLI::App* analyze = app.add_subcommand("analyze", "analyse one resolution");
  add_common(analyze, true);

  CLI::App* fixtures = app.add_subcommand("fixtures", "emit a pinned fixture cloud");
  std::string fixture_name, out_path = "-";
  std::string fixture_pitch = "1/2";
  unsigned fixture_param = 0;
  fixtures->add_option("name", fixture_name, "basins, two_holes or circle")->required();
  fixtures->add_option("--pitch", fixture_pitch, "lattice pitch rho");
  fixtures->add_option("--param", fixture_param, "fixture parameter (circle: k)");
  fixtures->add_option("--out", out_path, "output CSV path ('-' = stdout)");

  CLI11_PARSE(app, static_cast<int>(argv2.size()), argv2.data());

  try {
    if (fixtures->parsed()) {
      Fixture f = region_fixture(fixture_name,
                                 parse_rational_flag(fixture_pitch, "--pitch"),
                                 fixture_param);
      write_file(out_path, cloud_to_csv(f.cloud));
      if (out_path != "-")
        write_file(out_path + ".params.txt", f.parameters + "\n");
      return 0;
    }
    if (open_flag && closed_flag)
      throw std::runtime_error("--open and --closed are mutually exclusive");
    config.closed = !open_flag;
    return run_command(scan->parsed(), config, metric_name, eps_text, pitch_text);
  } catch (const GuardBandError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
