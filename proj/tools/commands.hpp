#pragma once

// Subcommands of the hypercom tool. Each returns the full text to emit and
// throws hypercom errors, which the driver maps to exit codes.

#include <openssl/evp.h>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hypercom/barycenter.hpp"
#include "hypercom/core.hpp"
#include "hypercom/equilibria.hpp"
#include "hypercom/io.hpp"
#include "hypercom/karcher.hpp"

namespace hypercom::cli {

using nlohmann::ordered_json;

enum class Format { json, csv };

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_numerical = 2;

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

inline double num(double v) { return io::canonical(v); }

inline ordered_json point_json(DPoint w) { return ordered_json::array({num(w.re()), num(w.im())}); }
inline ordered_json point_json(const HPoint& p) {
  return ordered_json::array({num(p.x), num(p.y), num(p.z)});
}

inline ordered_json check_json(const char* name, double value, double tolerance, bool pass) {
  return ordered_json{{"name", name}, {"value", num(value)}, {"tolerance", num(tolerance)}, {"pass", pass}};
}

inline ordered_json report_header(const char* command, const ordered_json& arguments,
                                  const std::string& digest_input) {
  return ordered_json{{"command", command},
                      {"arguments", arguments},
                      {"inputs_digest", sha256_hex(digest_input)}};
}

inline std::string dump(const ordered_json& report) { return report.dump(2) + "\n"; }

struct LoadedInput {
  io::AnySystem system;
  std::string canonical;  // digest input: the parsed document re-serialised
};

inline LoadedInput load_input(const std::string& path) {
  const nlohmann::json doc = io::parse_json_text(io::read_file(path));
  return {io::parse_system(doc), doc.dump()};
}

// ---------------------------------------------------------------- com

inline std::string cmd_com(const std::string& input) {
  const LoadedInput in = load_input(input);
  const DiskSystem disk = io::to_disk(in.system);
  const Radius radius = disk.radius();
  const double R = radius.value();
  const ComResult com = com_disk(disk);
  const HPoint lifted = unproject(com.w_c, radius);

  ordered_json results;
  results["model"] = to_string(io::model_of_system(in.system));
  results["radius"] = num(R);
  results["particles"] = disk.size();
  results["total_mass"] = num(com.total_mass);
  results["center_disk"] = point_json(com.w_c);
  results["center_hyperboloid"] = point_json(lifted);
  results["phi_average"] = point_json(DPoint{com.S});
  if (io::model_of_system(in.system) == Model::line) {
    results["center_line"] = num(com_1d(std::get<LineSystem>(in.system)));
  }

  const double containment = std::abs(com.w_c.w) / R;
  const double phi_defect = std::abs(phi(com.w_c, radius) - com.S);
  const double sheet_defect =
      std::abs(mink_inner(lifted, lifted) + R * R) / std::max(R * R, lifted.z * lifted.z);
  ordered_json checks = ordered_json::array();
  checks.push_back(check_json("containment |w_c|/R < 1 - margin", containment, 1.0 - boundary_margin,
                              containment < 1.0 - boundary_margin));
  checks.push_back(check_json("phi(w_c) = S", phi_defect, 1e-12, phi_defect <= 1e-12));
  checks.push_back(check_json("lift on sheet", sheet_defect, tol_construct, sheet_defect <= tol_construct));

  ordered_json report = report_header("com", ordered_json{{"input", input}}, in.canonical);
  report["results"] = results;
  report["checks"] = checks;
  report["tolerances"] = ordered_json{{"boundary_margin", boundary_margin},
                                      {"phi_roundtrip", 1e-12},
                                      {"construct", tol_construct}};
  return dump(report);
}

// ---------------------------------------------------------------- equilibrium

struct EquilibriumOptions {
  double m1 = 1.0;
  double m2 = 1.0;
  double alpha = 0.5;
  double radius = 1.0;
  int angles = default_sweep_angles;
  Format format = Format::json;
};

inline std::string cmd_equilibrium(const EquilibriumOptions& o) {
  const Radius radius(o.radius);
  const OrderingVerdict verdict = verify_mass_ordering(o.m1, o.m2, o.alpha, radius);
  const DiskSystem system = build_diametric_config(o.m1, o.m2, o.alpha, radius);
  const double s1 = arclength_from_pole(o.alpha, radius);
  const double s2 = arclength_from_pole(verdict.r, radius);
  const double arc_residual = o.m1 * s1 - o.m2 * s2;
  const double lever = lever_residual(o.m1, DPoint{o.alpha}, o.m2, DPoint{-verdict.r}, DPoint{0.0}, radius);
  const std::vector<double> thetas = uniform_angles(o.angles);
  const REReport sweep = com_under_rotation(system, thetas);

  if (o.format == Format::csv) {
    std::string out = "theta,re_wc,im_wc,defect\n";
    for (const auto& s : sweep.trace) {
      out += io::join_numbers({s.theta, s.com.w_c.re(), s.com.w_c.im(), s.defect}, ",") + "\n";
    }
    return out;
  }

  const ComResult at_rest = com_disk(system);
  const double R = radius.value();
  const double lever_tol = 1e-10 * std::max(1.0, o.m1 * std::abs(s1));
  ordered_json trace = ordered_json::array();
  for (const auto& s : sweep.trace) {
    trace.push_back(ordered_json{{"theta", num(s.theta)},
                                 {"re_wc", num(s.com.w_c.re())},
                                 {"im_wc", num(s.com.w_c.im())},
                                 {"defect", num(s.defect)}});
  }
  ordered_json results;
  results["r"] = num(verdict.r);
  results["ordering"] = to_string(verdict.ordering);
  results["expected_ordering"] = to_string(verdict.expected);
  results["verdict"] = to_string(verdict.ordering);
  results["matches_mass_ordering"] = verdict.matches;
  results["arclengths"] = ordered_json::array({num(s1), num(s2)});
  results["arc_lever_residual"] = num(arc_residual);
  results["lever_residual_at_pole"] = num(lever);
  results["center_at_rest"] = point_json(at_rest.w_c);
  results["max_defect"] = num(sweep.max_defect);
  results["trace"] = trace;

  ordered_json checks = ordered_json::array();
  checks.push_back(check_json("m1*s1 = m2*s2", std::abs(arc_residual), lever_tol,
                              std::abs(arc_residual) <= lever_tol));
  checks.push_back(check_json("|w_c| at rest", std::abs(at_rest.w_c.w), 1e-12 * R,
                              std::abs(at_rest.w_c.w) <= 1e-12 * R));
  checks.push_back(check_json("r vs alpha equality (relative)", std::abs(verdict.r - o.alpha) / o.alpha,
                              radius_equality_tol, verdict.matches));

  const ordered_json args{{"m1", num(o.m1)}, {"m2", num(o.m2)},         {"alpha", num(o.alpha)},
                          {"radius", num(R)}, {"angles", o.angles}};
  ordered_json report = report_header("equilibrium", args, args.dump());
  report["results"] = results;
  report["checks"] = checks;
  report["tolerances"] = ordered_json{{"radius_equality", radius_equality_tol},
                                      {"lever", lever_tol},
                                      {"center_at_rest", 1e-12 * R}};
  return dump(report);
}

// ---------------------------------------------------------------- limit-sweep

inline constexpr double limit_ratio_low = 3.5;
inline constexpr double limit_ratio_high = 4.5;

inline std::string cmd_limit_sweep(const std::string& input, const std::vector<double>& radii,
                                   Format format) {
  if (radii.empty()) throw ValidationError("--sweep needs at least one radius");
  const LoadedInput in = load_input(input);
  const DiskSystem disk = io::to_disk(in.system);
  std::vector<double> masses;
  std::vector<Complex> points;
  for (const auto& p : disk.particles()) {
    masses.push_back(p.mass);
    points.push_back(p.position.w);
  }
  std::vector<double> errors;
  for (const double R : radii) errors.push_back(euclidean_limit_error(masses, points, Radius(R)));

  if (format == Format::csv) {
    std::string out = "R,error\n";
    for (std::size_t k = 0; k < radii.size(); ++k) {
      out += io::join_numbers({radii[k], errors[k]}, ",") + "\n";
    }
    return out;
  }

  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < radii.size(); ++k) {
    rows.push_back(ordered_json{{"R", num(radii[k])}, {"error", num(errors[k])}});
  }
  bool decreasing = true;
  bool in_band = true;
  ordered_json ratios = ordered_json::array();
  for (std::size_t k = 1; k < radii.size(); ++k) {
    decreasing = decreasing && errors[k] < errors[k - 1];
    const double ratio = errors[k] > 0.0 ? errors[k - 1] / errors[k] : 0.0;
    in_band = in_band && ratio >= limit_ratio_low && ratio <= limit_ratio_high;
    ratios.push_back(num(ratio));
  }
  ordered_json args{{"input", input}, {"sweep", ordered_json::array()}};
  for (const double R : radii) args["sweep"].push_back(num(R));
  ordered_json report = report_header("limit-sweep", args, in.canonical + args["sweep"].dump());
  report["results"] = ordered_json{{"rows", rows},
                                   {"strictly_decreasing", decreasing},
                                   {"ratios", ratios},
                                   {"ratios_in_band", in_band}};
  report["tolerances"] = ordered_json{{"ratio_band", {limit_ratio_low, limit_ratio_high}}};
  return dump(report);
}

// ---------------------------------------------------------------- karcher-compare

struct KarcherOptions {
  std::optional<double> tol;
  int max_iter = 10000;
};

inline std::string cmd_karcher_compare(const std::string& input, const KarcherOptions& o) {
  const LoadedInput in = load_input(input);
  const DiskSystem disk = io::to_disk(in.system);
  const HyperboloidSystem hyp = io::to_hyperboloid(in.system);
  const Radius radius = disk.radius();
  KarcherSettings settings = KarcherSettings::for_radius(radius);
  if (o.tol) settings.tol = *o.tol;
  settings.max_iter = o.max_iter;

  const ComResult com = com_disk(disk);
  const HPoint karcher = karcher_mean(hyp, settings);
  const DPoint karcher_disk = project(karcher, radius);
  const double gap = dist_d(com.w_c, karcher_disk, radius);
  const double gradient = karcher_gradient_norm(hyp, karcher);

  ordered_json results;
  results["center_disk"] = point_json(com.w_c);
  results["karcher_disk"] = point_json(karcher_disk);
  results["karcher_hyperboloid"] = point_json(karcher);
  results["distance"] = num(gap);
  results["karcher_gradient_norm"] = num(gradient);
  ordered_json checks = ordered_json::array();
  checks.push_back(check_json("karcher gradient norm", gradient, settings.tol, gradient < settings.tol));
  if (disk.size() == 2) {
    const auto ps = disk.particles();
    const double m1 = ps[0].mass;
    const double m2 = ps[1].mass;
    const double com_res = lever_residual(m1, ps[0].position, m2, ps[1].position, com.w_c, radius);
    const double kar_res = lever_residual(m1, ps[0].position, m2, ps[1].position, karcher_disk, radius);
    results["lever_residual_center"] = num(com_res);
    results["lever_residual_karcher"] = num(kar_res);
    checks.push_back(check_json("karcher lever residual", std::abs(kar_res), 1e-8, std::abs(kar_res) <= 1e-8));
  }

  ordered_json args{{"input", input}, {"tol", num(settings.tol)}, {"max_iter", settings.max_iter}};
  ordered_json report = report_header("karcher-compare", args, in.canonical);
  report["results"] = results;
  report["checks"] = checks;
  report["tolerances"] = ordered_json{{"gradient", num(settings.tol)}, {"lever", 1e-8}};
  return dump(report);
}

// ---------------------------------------------------------------- thin wrappers

inline std::string cmd_project(Model model, const std::vector<double>& xs, double R) {
  const Radius radius(R);
  if (model == Model::line) {
    if (xs.size() != 2) throw ValidationError("project --model line needs x y");
    return io::format_number(project_1d(LPoint{xs[0], xs[1]}, radius)) + "\n";
  }
  if (xs.size() != 3) throw ValidationError("project needs x y z");
  const DPoint w = project(HPoint{xs[0], xs[1], xs[2]}, radius);
  return io::join_numbers({w.re(), w.im()}) + "\n";
}

inline std::string cmd_unproject(Model model, const std::vector<double>& xs, double R) {
  const Radius radius(R);
  if (model == Model::line) {
    if (xs.size() != 1) throw ValidationError("unproject --model line needs u");
    const LPoint p = unproject_1d(xs[0], radius);
    return io::join_numbers({p.x, p.y}) + "\n";
  }
  if (xs.size() != 2) throw ValidationError("unproject needs u v");
  const HPoint p = unproject(DPoint{xs[0], xs[1]}, radius);
  return io::join_numbers({p.x, p.y, p.z}) + "\n";
}

inline std::string cmd_distance(Model model, const std::vector<double>& xs, double R) {
  const Radius radius(R);
  switch (model) {
    case Model::line:
      if (xs.size() != 2) throw ValidationError("distance --model line needs u1 u2");
      return io::format_number(std::abs(arc_between(xs[0], xs[1], radius))) + "\n";
    case Model::disk:
      if (xs.size() != 4) throw ValidationError("distance needs u1 v1 u2 v2");
      return io::format_number(dist_d(DPoint{xs[0], xs[1]}, DPoint{xs[2], xs[3]}, radius)) + "\n";
    case Model::hyperboloid:
      if (xs.size() != 6) throw ValidationError("distance --model hyperboloid needs x1 y1 z1 x2 y2 z2");
      return io::format_number(
                 dist_h(HPoint{xs[0], xs[1], xs[2]}, HPoint{xs[3], xs[4], xs[5]}, radius)) +
             "\n";
  }
  throw ValidationError("unknown model");
}

}  // namespace hypercom::cli
