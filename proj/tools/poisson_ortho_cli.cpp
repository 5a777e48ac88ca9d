#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "poisson_ortho/errors.hpp"
#include "poisson_ortho/scenario.hpp"

using namespace poisson_ortho;

namespace {

constexpr int kUsageError = 3;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("--center: '" + item + "' is not a number");
    }
    if (used != item.size()) throw ConfigError("--center: '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

// "P" or "P:H": points per axis, optional half width.
void apply_grid(ScenarioConfig& c, const std::string& spec) {
  const auto colon = spec.find(':');
  try {
    std::size_t used = 0;
    const std::string count = spec.substr(0, colon);
    const int points = std::stoi(count, &used);
    if (used != count.size()) throw std::invalid_argument(count);
    c.grid.points_per_axis.assign(static_cast<std::size_t>(c.dim), points);
    if (colon != std::string::npos) {
      const std::string width = spec.substr(colon + 1);
      const double h = std::stod(width, &used);
      if (used != width.size()) throw std::invalid_argument(width);
      c.grid.half_width.assign(static_cast<std::size_t>(c.dim), h);
    }
  } catch (const std::logic_error&) {
    throw ConfigError("--grid: expected POINTS or POINTS:HALF_WIDTH, got '" + spec + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrability checks for the metric-orthogonal distribution of a regular Poisson structure"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List built-in scenarios");

  auto* check = app.add_subcommand("check", "Run every criterion on a scenario");
  std::string scenario;
  std::string grid;
  std::string center;
  std::string scheme;
  std::string format = "text";
  std::string out_path;
  double step = 1e-5;
  std::optional<double> tolerance;
  check->add_option("scenario", scenario, "Built-in name or JSON config path")->required();
  check->add_option("--grid", grid, "Points per axis, optionally with half width: P or P:H");
  check->add_option("--center", center, "Grid center as comma-separated coordinates");
  check->add_option("--tol", tolerance, "Zero tolerance for residuals");
  check->add_option("--scheme", scheme, "symbolic, central4 or central2")
      ->check(CLI::IsMember({"symbolic", "central4", "central2"}));
  check->add_option("--step", step, "Relative finite-difference step");
  check->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  check->add_option("--out", out_path, "Write the report to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (list->parsed()) {
    for (const auto& name : builtin_scenario_names()) {
      std::cout << name << "  " << builtin_scenario(name).description << "\n";
    }
    return 0;
  }

  RunReport report;
  try {
    ScenarioConfig config = load_scenario(scenario);
    if (!center.empty()) {
      const std::vector<double> c = parse_list(center);
      if (static_cast<int>(c.size()) != config.dim) {
        throw ConfigError("--center: expected " + std::to_string(config.dim) + " coordinates");
      }
      config.grid.center = Point(c);
    }
    if (!grid.empty()) apply_grid(config, grid);
    if (!scheme.empty() || check->count("--step")) {
      config.scheme = DerivativeScheme::parse(scheme.empty() ? config.scheme.name() : scheme, step);
    }
    if (tolerance) config.tolerance = tolerance;
    config.validate();
    report = run(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const std::string text = format == "json" ? report_json(report) : report_text(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kUsageError;
    }
    out << text;
  }
  if (!report.message.empty() && report.status == RunStatus::ConfigError) std::cerr << "error: " << report.message << "\n";
  return report.exit_code();
}
