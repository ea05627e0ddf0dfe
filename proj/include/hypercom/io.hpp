#pragma once

// System files and number formatting for the command line front end.
//
// A system file is a JSON document
//
//   {
//     "radius": 1.0,
//     "model": "disk",                       // "line" | "disk" | "hyperboloid"
//     "particles": [
//       {"mass": 1.0, "coords": [0.5, 0.0]}  // 1, 2 or 3 coordinates
//     ]
//   }

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hypercom/barycenter.hpp"
#include "hypercom/core.hpp"
#include "hypercom/error.hpp"

namespace hypercom::io {

using AnySystem = std::variant<LineSystem, DiskSystem, HyperboloidSystem>;

inline std::size_t coordinate_count(Model m) {
  switch (m) {
    case Model::line:
      return 1;
    case Model::disk:
      return 2;
    case Model::hyperboloid:
      return 3;
  }
  return 0;
}

inline Model parse_model(const std::string& name) {
  if (name == "line") return Model::line;
  if (name == "disk") return Model::disk;
  if (name == "hyperboloid") return Model::hyperboloid;
  throw ValidationError("unknown model \"" + name + "\" (expected line, disk or hyperboloid)");
}

namespace detail {

inline double number_field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ValidationError(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace detail

/// Validates a parsed system document and builds the typed system.
inline AnySystem parse_system(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("system file must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "radius" && key != "model" && key != "particles") {
      throw ValidationError("unexpected key \"" + key + "\"");
    }
  }
  const Radius radius(detail::number_field(doc, "radius", "system"));
  if (!doc.contains("model") || !doc.at("model").is_string()) {
    throw ValidationError("system: \"model\" must be a string");
  }
  const Model model = parse_model(doc.at("model").get<std::string>());
  if (!doc.contains("particles") || !doc.at("particles").is_array()) {
    throw ValidationError("system: \"particles\" must be an array");
  }

  const std::size_t arity = coordinate_count(model);
  std::vector<double> masses;
  std::vector<std::vector<double>> coords;
  std::size_t index = 0;
  for (const auto& p : doc.at("particles")) {
    const std::string where = "particle " + std::to_string(index++);
    if (!p.is_object()) throw ValidationError(where + ": must be an object");
    masses.push_back(detail::number_field(p, "mass", where));
    if (!p.contains("coords") || !p.at("coords").is_array()) {
      throw ValidationError(where + ": \"coords\" must be an array");
    }
    const auto& c = p.at("coords");
    if (c.size() != arity) {
      throw ValidationError(where + ": " + to_string(model) + " model needs " +
                            std::to_string(arity) + " coordinates, got " +
                            std::to_string(c.size()));
    }
    std::vector<double> xs;
    for (const auto& x : c) {
      if (!x.is_number()) throw ValidationError(where + ": coordinates must be numbers");
      xs.push_back(x.get<double>());
    }
    coords.push_back(std::move(xs));
  }

  switch (model) {
    case Model::line: {
      std::vector<Particle<double>> ps;
      for (std::size_t k = 0; k < masses.size(); ++k) ps.push_back({masses[k], coords[k][0]});
      return LineSystem(radius, std::move(ps));
    }
    case Model::disk: {
      std::vector<Particle<DPoint>> ps;
      for (std::size_t k = 0; k < masses.size(); ++k) {
        ps.push_back({masses[k], DPoint{coords[k][0], coords[k][1]}});
      }
      return DiskSystem(radius, std::move(ps));
    }
    case Model::hyperboloid: {
      std::vector<Particle<HPoint>> ps;
      for (std::size_t k = 0; k < masses.size(); ++k) {
        ps.push_back({masses[k], HPoint{coords[k][0], coords[k][1], coords[k][2]}});
      }
      return HyperboloidSystem(radius, std::move(ps));
    }
  }
  throw ValidationError("unreachable model");
}

inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// The same system expressed on the disk (lines sit on the real diameter,
/// hyperboloid points are projected).
inline DiskSystem to_disk(const AnySystem& system) {
  return std::visit(
      [](const auto& s) -> DiskSystem {
        std::vector<Particle<DPoint>> ps;
        for (const auto& p : s.particles()) {
          using P = std::decay_t<decltype(p.position)>;
          if constexpr (std::is_same_v<P, double>) {
            ps.push_back({p.mass, DPoint{p.position}});
          } else if constexpr (std::is_same_v<P, DPoint>) {
            ps.push_back({p.mass, p.position});
          } else {
            ps.push_back({p.mass, project(p.position, s.radius())});
          }
        }
        return DiskSystem(s.radius(), std::move(ps));
      },
      system);
}

inline HyperboloidSystem to_hyperboloid(const AnySystem& system) {
  if (const auto* h = std::get_if<HyperboloidSystem>(&system)) return *h;
  const DiskSystem disk = to_disk(system);
  std::vector<Particle<HPoint>> ps;
  for (const auto& p : disk.particles()) ps.push_back({p.mass, unproject(p.position, disk.radius())});
  return HyperboloidSystem(disk.radius(), std::move(ps));
}

inline Model model_of_system(const AnySystem& system) {
  return std::visit([](const auto& s) { return std::decay_t<decltype(s)>::model; }, system);
}

inline Radius radius_of(const AnySystem& system) {
  return std::visit([](const auto& s) { return s.radius(); }, system);
}

/// −0 becomes 0 so that output does not depend on the sign of zero.
inline double canonical(double v) { return v == 0.0 ? 0.0 : v; }

/// Shortest decimal that reads back to the same double (at most 17 digits).
inline std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, canonical(v));
  return std::string(buf, res.ptr);
}

inline std::string join_numbers(std::initializer_list<double> vs, const char* sep = " ") {
  std::string out;
  for (const double v : vs) {
    if (!out.empty()) out += sep;
    out += format_number(v);
  }
  return out;
}

}  // namespace hypercom::io
