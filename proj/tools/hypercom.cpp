// hypercom: hyperbolic center of mass and relative equilibrium checks.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using hypercom::Model;
using hypercom::cli::Format;

const std::map<std::string, Format> kFormats{{"json", Format::json}, {"csv", Format::csv}};
const std::map<std::string, Model> kModels{
    {"line", Model::line}, {"disk", Model::disk}, {"hyperboloid", Model::hyperboloid}};

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<double> radii;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw hypercom::ValidationError("--sweep: \"" + item + "\" is not a number");
    }
    radii.push_back(v);
  }
  return radii;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw hypercom::ValidationError("cannot write \"" + output + "\"");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic center of mass on the hyperboloid and the Poincare disk"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string sweep = "10,20,40,80";
  std::string format_name = "json";
  std::string model_name;
  double radius = 1.0;
  std::vector<double> coords;
  hypercom::cli::EquilibriumOptions eq;
  hypercom::cli::KarcherOptions kc;
  double tol = 0.0;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", output, "Write the report here instead of stdout");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Report format: json or csv")
        ->capture_default_str()
        ->check(CLI::IsMember(kFormats));
  };

  auto* com = app.add_subcommand("com", "Center of mass of a system file");
  com->add_option("--input", input, "System file")->required();
  add_output(com);

  auto* equilibrium = app.add_subcommand("equilibrium", "Two-body relative equilibrium and rotation sweep");
  equilibrium->add_option("--m1", eq.m1, "Mass of body 1")->required();
  equilibrium->add_option("--m2", eq.m2, "Mass of body 2")->required();
  equilibrium->add_option("--alpha", eq.alpha, "Disk radius of body 1")->required();
  equilibrium->add_option("--radius", eq.radius, "Curvature radius R")->capture_default_str();
  equilibrium->add_option("--angles", eq.angles, "Number of sweep angles in [0, 2pi)")->capture_default_str();
  add_format(equilibrium);
  add_output(equilibrium);

  auto* limit = app.add_subcommand("limit-sweep", "Distance to the Euclidean center of mass as R grows");
  limit->add_option("--input", input, "System file")->required();
  limit->add_option("--sweep", sweep, "Comma separated radii")->capture_default_str();
  add_format(limit);
  add_output(limit);

  auto* karcher = app.add_subcommand("karcher-compare", "Compare with the Riemannian (Karcher) mean");
  karcher->add_option("--input", input, "System file")->required();
  karcher->add_option("--tol", tol, "Gradient norm tolerance (default 1e-12 R)");
  karcher->add_option("--max-iter", kc.max_iter, "Iteration cap")->capture_default_str();
  add_output(karcher);

  auto add_point_command = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("coords", coords, "Coordinates")->required()->allow_extra_args();
    sub->add_option("--radius", radius, "Curvature radius R")->capture_default_str();
    sub->add_option("--model", model_name, "Model of the coordinates: line, disk or hyperboloid")
        ->check(CLI::IsMember(kModels));
    return sub;
  };
  auto* project = add_point_command("project", "Project hyperboloid coordinates to the disk");
  auto* unproject = add_point_command("unproject", "Lift disk coordinates to the hyperboloid");
  auto* distance = add_point_command("distance", "Geodesic distance between two points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hypercom::cli::exit_ok : hypercom::cli::exit_validation;
  }

  const Format format = kFormats.at(format_name);
  auto model_or = [&](Model fallback) { return model_name.empty() ? fallback : kModels.at(model_name); };

  try {
    if (com->parsed()) {
      emit(hypercom::cli::cmd_com(input), output);
    } else if (equilibrium->parsed()) {
      eq.format = format;
      emit(hypercom::cli::cmd_equilibrium(eq), output);
    } else if (limit->parsed()) {
      emit(hypercom::cli::cmd_limit_sweep(input, parse_sweep(sweep), format), output);
    } else if (karcher->parsed()) {
      if (karcher->count("--tol") > 0) kc.tol = tol;
      emit(hypercom::cli::cmd_karcher_compare(input, kc), output);
    } else if (project->parsed()) {
      emit(hypercom::cli::cmd_project(model_or(Model::hyperboloid), coords, radius), "");
    } else if (unproject->parsed()) {
      emit(hypercom::cli::cmd_unproject(model_or(Model::disk), coords, radius), "");
    } else if (distance->parsed()) {
      emit(hypercom::cli::cmd_distance(model_or(Model::disk), coords, radius), "");
    }
  } catch (const hypercom::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hypercom::cli::exit_validation;
  } catch (const hypercom::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return hypercom::cli::exit_numerical;
  }
  return hypercom::cli::exit_ok;
}
