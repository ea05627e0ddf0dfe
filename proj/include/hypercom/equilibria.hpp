#pragma once

// Relative equilibria of the curved two- and three-body problems, encoded by
// the lever balance m₁·s₁ = m₂·s₂ of the arclengths from the south pole, and
// probes of where the hyperbolic center of mass sits for them.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "hypercom/barycenter.hpp"
#include "hypercom/core.hpp"
#include "hypercom/error.hpp"

namespace hypercom {

/// Two bodies on one diameter, body 1 at radius alpha, body 2 opposite at r.
struct TwoBodyRE {
  double m1 = 0.0;
  double m2 = 0.0;
  double alpha = 0.0;
  double r = 0.0;
  Radius radius;
};

/// Radius r of the second body balancing the first:
/// m₁·ln((R+α)/(R−α)) = m₂·ln((R+r)/(R−r)), i.e. r = R·tanh((m₁/m₂)·artanh(α/R)).
inline double solve_re_radius(double m1, double m2, double alpha, Radius radius) {
  detail::check_mass(m1);
  detail::check_mass(m2);
  const double R = radius.value();
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive, got " + detail::fmt(alpha));
  check_in_interval(alpha, radius);
  if (m1 == m2) return alpha;
  const double r = R * std::tanh((m1 / m2) * std::atanh(alpha / R));
  if (!(r > 0.0) || !(r < R * (1.0 - boundary_margin))) {
    throw NumericalError("balancing radius " + detail::fmt(r) +
                         " is indistinguishable from the disk boundary or the center");
  }
  return r;
}

inline TwoBodyRE make_two_body_re(double m1, double m2, double alpha, Radius radius) {
  return {m1, m2, alpha, solve_re_radius(m1, m2, alpha, radius), radius};
}

/// Relative tolerance under which r and alpha count as equal.
inline constexpr double radius_equality_tol = 1e-12;

enum class Ordering { less, equal, greater };

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::less:
      return "less";
    case Ordering::equal:
      return "equal";
    case Ordering::greater:
      return "greater";
  }
  return "?";
}

struct OrderingVerdict {
  double r = 0.0;
  Ordering ordering = Ordering::equal;  // of r relative to alpha
  Ordering expected = Ordering::equal;  // r < α iff m₂ > m₁, and so on
  bool matches = false;
};

/// Checks the ordering of the two radii against the ordering of the masses:
/// m₂ > m₁ gives r < α, equal masses give r = α, m₁ > m₂ gives r > α.
inline OrderingVerdict verify_mass_ordering(double m1, double m2, double alpha, Radius radius) {
  OrderingVerdict v;
  v.r = solve_re_radius(m1, m2, alpha, radius);
  if (std::abs(v.r - alpha) <= radius_equality_tol * alpha) {
    v.ordering = Ordering::equal;
  } else {
    v.ordering = v.r < alpha ? Ordering::less : Ordering::greater;
  }
  v.expected = m2 > m1 ? Ordering::less : (m1 > m2 ? Ordering::greater : Ordering::equal);
  v.matches = v.ordering == v.expected;
  return v;
}

/// Balanced pair on the real axis: m₁ at α, m₂ at −r.
inline DiskSystem build_diametric_config(double m1, double m2, double alpha, Radius radius) {
  const double r = solve_re_radius(m1, m2, alpha, radius);
  return DiskSystem(radius, {{m1, DPoint{alpha}}, {m2, DPoint{-r}}});
}

/// Copy of the system rotated rigidly by theta about the disk center.
inline DiskSystem rotate_system(const DiskSystem& system, double theta) {
  std::vector<Particle<DPoint>> rotated;
  rotated.reserve(system.size());
  for (const auto& p : system.particles()) rotated.push_back({p.mass, mobius_rotate(p.position, theta)});
  return DiskSystem(system.radius(), std::move(rotated));
}

/// Rotation sweeps default to this many uniform angles in [0, 2π).
inline constexpr int default_sweep_angles = 64;

inline std::vector<double> uniform_angles(int count = default_sweep_angles) {
  if (count < 1) throw ValidationError("angle count must be at least 1");
  std::vector<double> thetas(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) thetas[k] = 2.0 * std::numbers::pi * k / count;
  return thetas;
}

struct RotationSample {
  double theta = 0.0;
  ComResult com;
  double defect = 0.0;  // |com(rotated) − e^{iθ}·com(original)|
};

struct REReport {
  std::vector<RotationSample> trace;
  double max_defect = 0.0;
};

/// Center of mass of rigidly rotated copies of the system, and how far it is
/// from rotating along with them.
inline REReport com_under_rotation(const DiskSystem& system, std::span<const double> thetas) {
  const ComResult base = com_disk(system);
  REReport report;
  report.trace.reserve(thetas.size());
  for (const double theta : thetas) {
    const ComResult c = com_disk(rotate_system(system, theta));
    const double defect = std::abs(c.w_c.w - mobius_rotate(base.w_c, theta).w);
    report.trace.push_back({theta, c, defect});
    report.max_defect = std::max(report.max_defect, defect);
  }
  return report;
}

enum class TripleKind { eulerian, lagrangian };

struct TripleConfig {
  TripleKind kind = TripleKind::eulerian;
  std::array<double, 3> masses{};
  std::array<DPoint, 3> positions{};
  Radius radius;

  DiskSystem system() const {
    return DiskSystem(radius, {{masses[0], positions[0]},
                               {masses[1], positions[1]},
                               {masses[2], positions[2]}});
  }
};

struct TripleResult {
  TripleConfig config;
  ComResult com;
  bool balanced = false;  // Σ m_k φ(u_k) = 0, center at the pole
};

/// |S| below this counts as balanced.
inline constexpr double balance_tol = 1e-12;

/// Three bodies on the real diameter.
inline TripleResult eulerian_triple(std::array<double, 3> masses, std::array<double, 3> u,
                                    Radius radius) {
  const LineSystem line(radius, {{masses[0], u[0]}, {masses[1], u[1]}, {masses[2], u[2]}});
  const double uc = com_1d(line);
  detail::CompensatedSum sum;
  for (const auto& p : line.particles()) sum.add(p.mass * 2.0 * std::atanh(p.position / radius.value()));
  const double S = sum.value() / line.total_mass();

  TripleConfig config{TripleKind::eulerian, masses, {DPoint{u[0]}, DPoint{u[1]}, DPoint{u[2]}}, radius};
  return {config, ComResult{DPoint{uc}, Complex{S}, line.total_mass()}, std::abs(S) <= balance_tol};
}

/// φ-average of three equal masses at a·{1, e^{2πi/3}, e^{4πi/3}}, from
/// Π (R ± a·ω^k) = R³ ± a³: S = (1/3)·ln((R³ + a³)/(R³ − a³)).
inline double lagrangian_phi_average(double a, Radius radius) {
  const double R = radius.value();
  const double t = a / R;
  // ln((1 + t³)/(1 − t³)) = 2·artanh(t³)
  return 2.0 * std::atanh(t * t * t) / 3.0;
}

/// Equal unit masses at the vertices of the equilateral triangle a·{1, ω, ω²}.
inline TripleResult lagrangian_triple(double a, Radius radius) {
  if (!(a > 0.0)) throw DomainError("triangle radius must be positive, got " + detail::fmt(a));
  check_in_interval(a, radius);
  TripleConfig config{TripleKind::lagrangian,
                      {1.0, 1.0, 1.0},
                      {DPoint{a}, DPoint{std::polar(a, 2.0 * std::numbers::pi / 3.0)},
                       DPoint{std::polar(a, 4.0 * std::numbers::pi / 3.0)}},
                      radius};
  const ComResult com = com_disk(config.system());
  return {config, com, std::abs(com.S) <= balance_tol};
}

struct MirrorPair {
  DiskSystem system;
  ComResult com;
};

/// Equal masses at w and −w̄, mirror images under x ↦ −x. The center lies on
/// the imaginary axis, the image of the geodesic x = 0.
inline MirrorPair mirror_symmetric_pair(double m, DPoint w, Radius radius) {
  DiskSystem system(radius, {{m, w}, {m, DPoint{-std::conj(w.w)}}});
  const ComResult com = com_disk(system);
  return {std::move(system), com};
}

}  // namespace hypercom
