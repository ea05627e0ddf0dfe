#pragma once

// Hyperbolic center of mass.
//
// With φ(w) = Log((R + w)/(R − w)) the center w_c of masses m_k at disk
// points w_k is defined by
//
//   φ(w_c) = (1/m) Σ m_k φ(w_k),   m = Σ m_k,
//
// equivalently ((R + w_c)/(R − w_c))^m = Π ((R + w_k)/(R − w_k))^{m_k}.
// On a diameter φ(u) is the arclength from the south pole divided by R, so
// for two particles this is the lever rule m₁s₁ = m₂s₂. As R → ∞ it tends
// to the Euclidean weighted mean.
//
// Branch: for |w| < R the Möbius map w ↦ (R + w)/(R − w) sends the disk onto
// the right half plane, so Re((R + w)/(R − w)) > 0 and the principal Log is
// analytic there with |Im φ| < π/2. φ(w) = 2·artanh(w/R) on the whole disk,
// and that form is what is evaluated. A mass-weighted average of points of
// the strip |Im| < π/2 stays in the strip, and φ⁻¹(S) = R·tanh(S/2) maps the
// strip back into the disk, so the center always exists and is unique.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypercom/core.hpp"
#include "hypercom/error.hpp"

namespace hypercom {

enum class Model { line, disk, hyperboloid };

inline const char* to_string(Model m) {
  switch (m) {
    case Model::line:
      return "line";
    case Model::disk:
      return "disk";
    case Model::hyperboloid:
      return "hyperboloid";
  }
  return "?";
}

template <class Position>
struct model_of;
template <>
struct model_of<double> {
  static constexpr Model value = Model::line;
};
template <>
struct model_of<DPoint> {
  static constexpr Model value = Model::disk;
};
template <>
struct model_of<HPoint> {
  static constexpr Model value = Model::hyperboloid;
};

template <class Position>
struct Particle {
  double mass = 0.0;
  Position position{};
};

namespace detail {

inline void check_position(double u, Radius r) { check_in_interval(u, r); }
inline void check_position(DPoint w, Radius r) { check_in_disk(w, r); }
inline void check_position(const HPoint& p, Radius r) {
  check_on_sheet(p, r);
  check_in_disk(project_unchecked(p.vec(), r.value()), r);
}

inline void check_mass(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ValidationError("mass must be positive and finite, got " + fmt(m));
  }
}

/// Neumaier's compensated sum; order-dependent only at the level of the
/// final rounding.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(Complex v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// Evaluates an odd, conjugation-symmetric, quadrant-preserving function on
/// the first quadrant and restores the signs, so those symmetries hold
/// bit for bit.
template <class F>
Complex quadrant_fold(Complex z, F f) {
  const Complex v = f(Complex(std::abs(z.real()), std::abs(z.imag())));
  return {std::copysign(v.real(), z.real()), std::copysign(v.imag(), z.imag())};
}

}  // namespace detail

/// Nonempty list of positively massed particles in one model.
template <class Position>
class MassedSystem {
 public:
  using particle_type = Particle<Position>;
  static constexpr Model model = model_of<Position>::value;

  MassedSystem(Radius radius, std::vector<particle_type> particles)
      : radius_(radius), particles_(std::move(particles)) {
    if (particles_.empty()) throw ValidationError("a system needs at least one particle");
    detail::CompensatedSum total;
    for (const auto& p : particles_) {
      detail::check_mass(p.mass);
      detail::check_position(p.position, radius_);
      total.add(p.mass);
    }
    total_mass_ = total.value();
  }

  Radius radius() const { return radius_; }
  std::span<const particle_type> particles() const { return particles_; }
  std::size_t size() const { return particles_.size(); }
  double total_mass() const { return total_mass_; }

 private:
  Radius radius_;
  std::vector<particle_type> particles_;
  double total_mass_ = 0.0;
};

using LineSystem = MassedSystem<double>;
using DiskSystem = MassedSystem<DPoint>;
using HyperboloidSystem = MassedSystem<HPoint>;

/// Center of mass together with its φ-average.
struct ComResult {
  DPoint w_c;
  Complex S;
  double total_mass = 0.0;
};

/// φ(w) = Log((R + w)/(R − w)), principal branch. Exactly odd and
/// conjugation symmetric.
inline Complex phi(DPoint w, Radius radius) {
  check_in_disk(w, radius);
  const double r = radius.value();
  return detail::quadrant_fold(w.w, [r](Complex z) { return 2.0 * std::atanh(z / r); });
}

/// Inverse of φ: R·(e^S − 1)/(e^S + 1) = R·tanh(S/2). Needs |Im S| < π/2.
inline DPoint phi_inv(Complex S, Radius radius) {
  if (!std::isfinite(S.real()) || !std::isfinite(S.imag()) ||
      !(std::abs(S.imag()) < std::numbers::pi / 2)) {
    throw DomainError("phi_inv needs |Im S| < pi/2, got S = " + detail::fmt(S.real()) + " + " +
                      detail::fmt(S.imag()) + "i");
  }
  const double r = radius.value();
  const DPoint w{detail::quadrant_fold(S, [r](Complex z) { return r * std::tanh(z / 2.0); })};
  if (!(std::abs(w.w) < radius.value() * (1.0 - boundary_margin))) {
    throw NumericalError("center of mass is indistinguishable from the disk boundary");
  }
  return w;
}

/// Center of mass of particles on the diameter (−R, R).
inline double com_1d(const LineSystem& system) {
  const double r = system.radius().value();
  const auto particles = system.particles();
  const double first = particles.front().position;
  if (std::all_of(particles.begin(), particles.end(),
                  [&](const auto& p) { return p.position == first; })) {
    return first;
  }
  detail::CompensatedSum sum;
  for (const auto& p : system.particles()) sum.add(p.mass * 2.0 * std::atanh(p.position / r));
  const double s = sum.value() / system.total_mass();
  const double u = r * std::tanh(s / 2.0);
  if (!(std::abs(u) < r * (1.0 - boundary_margin))) {
    throw NumericalError("center of mass is indistinguishable from the interval end");
  }
  return u;
}

/// Center of mass on the disk. Weighted φ values are summed in input order.
inline ComResult com_disk(const DiskSystem& system) {
  const Radius radius = system.radius();
  const auto particles = system.particles();
  const DPoint first = particles.front().position;
  if (std::all_of(particles.begin(), particles.end(),
                  [&](const auto& p) { return p.position == first; })) {
    return {first, phi(first, radius), system.total_mass()};
  }
  detail::ComplexCompensatedSum sum;
  for (const auto& p : system.particles()) sum.add(p.mass * phi(p.position, radius));
  const Complex S = sum.value() / system.total_mass();
  return {phi_inv(S, radius), S, system.total_mass()};
}

/// Center of mass on the hyperboloid, computed through the disk.
inline HPoint com_hyperboloid(std::span<const double> masses, std::span<const HPoint> points,
                              Radius radius) {
  if (masses.size() != points.size()) {
    throw ValidationError("got " + std::to_string(masses.size()) + " masses for " +
                          std::to_string(points.size()) + " points");
  }
  if (points.size() == 1) {
    detail::check_mass(masses[0]);
    check_on_sheet(points[0], radius);
    return points[0];
  }
  std::vector<Particle<DPoint>> particles;
  particles.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    particles.push_back({masses[k], project(points[k], radius)});
  }
  return unproject(com_disk(DiskSystem(radius, std::move(particles))).w_c, radius);
}

inline HPoint com_hyperboloid(const HyperboloidSystem& system) {
  std::vector<double> masses;
  std::vector<HPoint> points;
  for (const auto& p : system.particles()) {
    masses.push_back(p.mass);
    points.push_back(p.position);
  }
  return com_hyperboloid(masses, points, system.radius());
}

/// Flat-space weighted mean (1/m) Σ m_k w_k.
inline Complex euclidean_com(std::span<const double> masses, std::span<const Complex> points) {
  if (masses.empty()) throw ValidationError("a system needs at least one particle");
  if (masses.size() != points.size()) throw ValidationError("masses and points differ in length");
  detail::CompensatedSum total;
  detail::ComplexCompensatedSum sum;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    detail::check_mass(masses[k]);
    total.add(masses[k]);
    sum.add(masses[k] * points[k]);
  }
  return sum.value() / total.value();
}

/// |hyperbolic center at radius R − Euclidean center| for fixed points.
inline double euclidean_limit_error(std::span<const double> masses,
                                    std::span<const Complex> points, Radius radius) {
  const Complex flat = euclidean_com(masses, points);
  std::vector<Particle<DPoint>> particles;
  for (std::size_t k = 0; k < points.size(); ++k) particles.push_back({masses[k], points[k]});
  const ComResult curved = com_disk(DiskSystem(radius, std::move(particles)));
  return std::abs(curved.w_c.w - flat);
}

/// m₁·d(p₁, c) − m₂·d(p₂, c).
inline double lever_residual(double m1, DPoint p1, double m2, DPoint p2, DPoint c,
                             Radius radius) {
  return m1 * dist_d(p1, c, radius) - m2 * dist_d(p2, c, radius);
}

inline constexpr int lever_max_iterations = 200;

/// Point c on the geodesic from p1 to p2 with m₁·d(p₁, c) = m₂·d(p₂, c).
///
/// Bisection over arclength from p1; the residual increases strictly from
/// −m₂·d to m₁·d along the segment. Stops once |residual| falls below
/// 1e−12·(m₁ + m₂)·d(p₁, p₂) or the bracket stops shrinking.
inline DPoint lever_point(double m1, DPoint p1, double m2, DPoint p2, Radius radius) {
  detail::check_mass(m1);
  detail::check_mass(m2);
  const GeodesicSegment seg = geodesic_between(p1, p2, radius);
  const double length = seg.length();
  const double target = 1e-12 * (m1 + m2) * length;

  double lo = 0.0;
  double hi = length;
  DPoint best = seg.at_arclength(0.5 * length);
  for (int it = 0; it < lever_max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    best = seg.at_arclength(mid);
    const double res = lever_residual(m1, p1, m2, p2, best, radius);
    if (std::abs(res) < target) break;
    (res < 0.0 ? lo : hi) = mid;
  }
  return best;
}

}  // namespace hypercom
