#pragma once

// Geometry of the constant negative curvature plane in two models:
//
//   hyperboloid  L²_R = {(x, y, z) : x² + y² − z² = −R², z > 0}
//   disk         D²_R = {w ∈ ℂ : |w| < R},  ds² = 4R⁴ |dw|² / (R² − |w|²)²
//
// related by the stereographic projection from (0, 0, −R). Both have
// Gaussian curvature −1/R². All functions are pure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>

#include "hypercom/error.hpp"

namespace hypercom {

using Complex = std::complex<double>;

/// Relative tolerance for accepting a point as lying on the hyperboloid.
inline constexpr double tol_construct = 1e-9;
/// Expected accuracy of projection round trips.
inline constexpr double tol_roundtrip = 1e-12;
/// Tolerance for comparing distances.
inline constexpr double tol_compare = 1e-9;
/// Disk points with |w| / R above 1 − boundary_margin are rejected.
inline constexpr double boundary_margin = 1e-12;
/// arccosh arguments in [1 − acosh_clamp, 1) are treated as 1.
inline constexpr double acosh_clamp = 1e-12;

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

/// Length scale of the surface; the curvature is −1/R².
class Radius {
 public:
  explicit Radius(double r) : r_(r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw ValidationError("radius must be positive and finite, got " + detail::fmt(r));
    }
  }

  double value() const { return r_; }
  double curvature() const { return -1.0 / (r_ * r_); }

  friend bool operator==(Radius, Radius) = default;

 private:
  double r_;
};

/// Ambient vector of Minkowski space ℝ^{2,1}.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// x₁x₂ + y₁y₂ − z₁z₂
inline double mink_dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y - a.z * b.z; }

inline double euclid_norm(const Vec3& a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

/// Point on the upper sheet of the hyperboloid.
struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 vec() const { return {x, y, z}; }
  static HPoint from(const Vec3& v) { return {v.x, v.y, v.z}; }
  friend bool operator==(const HPoint&, const HPoint&) = default;
};

/// Point on the upper branch of the hyperbola x² − y² = −R².
struct LPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const LPoint&, const LPoint&) = default;
};

/// Point of the Poincaré disk, w = u + iv.
struct DPoint {
  Complex w{};

  DPoint() = default;
  DPoint(Complex value) : w(value) {}  // NOLINT(google-explicit-constructor)
  DPoint(double re, double im = 0.0) : w(re, im) {}  // NOLINT(google-explicit-constructor)

  double re() const { return w.real(); }
  double im() const { return w.imag(); }
  friend bool operator==(const DPoint&, const DPoint&) = default;
};

/// Throws ValidationError unless p lies on the upper sheet for R.
///
/// The defect x² + y² − z² + R² is compared against tol_construct scaled by
/// max(R², z²), the magnitude of the largest term involved.
inline void check_on_sheet(const HPoint& p, Radius radius) {
  const double r = radius.value();
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw ValidationError("hyperboloid point has non-finite coordinates");
  }
  const double defect = p.x * p.x + p.y * p.y - p.z * p.z + r * r;
  const double scale = std::max(r * r, p.z * p.z);
  if (std::abs(defect) > tol_construct * scale || p.z < r * (1.0 - tol_construct)) {
    throw ValidationError("point (" + detail::fmt(p.x) + ", " + detail::fmt(p.y) + ", " +
                          detail::fmt(p.z) + ") is not on the upper sheet for R = " +
                          detail::fmt(r));
  }
}

inline void check_on_branch(const LPoint& p, Radius radius) {
  const double r = radius.value();
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw ValidationError("hyperbola point has non-finite coordinates");
  }
  const double defect = p.x * p.x - p.y * p.y + r * r;
  const double scale = std::max(r * r, p.y * p.y);
  if (std::abs(defect) > tol_construct * scale || p.y < r * (1.0 - tol_construct)) {
    throw ValidationError("point (" + detail::fmt(p.x) + ", " + detail::fmt(p.y) +
                          ") is not on the upper branch for R = " + detail::fmt(r));
  }
}

/// Throws DomainError unless |w| < R(1 − boundary_margin).
inline void check_in_disk(Complex w, Radius radius) {
  const double r = radius.value();
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw DomainError("disk point has non-finite coordinates");
  }
  if (!(std::abs(w) < r * (1.0 - boundary_margin))) {
    throw DomainError("disk point " + detail::fmt(w.real()) + " + " + detail::fmt(w.imag()) +
                      "i is not inside the disk of radius " + detail::fmt(r));
  }
}

inline void check_in_disk(DPoint p, Radius radius) { check_in_disk(p.w, radius); }

inline void check_in_interval(double u, Radius radius) {
  const double r = radius.value();
  if (!std::isfinite(u) || !(std::abs(u) < r * (1.0 - boundary_margin))) {
    throw DomainError("coordinate " + detail::fmt(u) + " is not inside (-R, R) for R = " +
                      detail::fmt(r));
  }
}

inline HPoint make_hpoint(double x, double y, double z, Radius radius) {
  HPoint p{x, y, z};
  check_on_sheet(p, radius);
  return p;
}

inline DPoint make_dpoint(Complex w, Radius radius) {
  check_in_disk(w, radius);
  return DPoint{w};
}

namespace detail {

inline DPoint project_unchecked(const Vec3& p, double r) {
  const double s = r / (r + p.z);
  return DPoint{p.x * s, p.y * s};
}

inline HPoint unproject_unchecked(Complex w, double r) {
  const double a = std::abs(w);
  const double denom = (r - a) * (r + a);
  const double k = 2.0 * r * r / denom;
  return HPoint{k * w.real(), k * w.imag(), r * (r * r + std::norm(w)) / denom};
}

}  // namespace detail

/// Stereographic projection L²_R → D²_R, w = R(x + iy) / (R + z).
inline DPoint project(const HPoint& p, Radius radius) {
  check_on_sheet(p, radius);
  const DPoint w = detail::project_unchecked(p.vec(), radius.value());
  check_in_disk(w, radius);
  return w;
}

/// Inverse projection D²_R → L²_R,
/// (2R²u, 2R²v, R(R² + |w|²)) / (R² − |w|²).
inline HPoint unproject(DPoint w, Radius radius) {
  check_in_disk(w, radius);
  return detail::unproject_unchecked(w.w, radius.value());
}

/// One-dimensional projection of the hyperbola onto (−R, R), u = Rx / (R + y).
inline double project_1d(const LPoint& p, Radius radius) {
  check_on_branch(p, radius);
  const double r = radius.value();
  const double u = r * p.x / (r + p.y);
  check_in_interval(u, radius);
  return u;
}

inline LPoint unproject_1d(double u, Radius radius) {
  check_in_interval(u, radius);
  const double r = radius.value();
  const double denom = (r - u) * (r + u);
  return LPoint{2.0 * r * r * u / denom, r * (r * r + u * u) / denom};
}

/// Minkowski bilinear form x₁x₂ + y₁y₂ − z₁z₂.
inline double mink_inner(const HPoint& p, const HPoint& q) { return mink_dot(p.vec(), q.vec()); }

/// Geodesic distance on the hyperboloid, R·arccosh(−⟨p,q⟩ / R²).
///
/// On the sheet −⟨p,q⟩/R² = 1 + ⟨p−q, p−q⟩/(2R²), and the second form is used
/// because it keeps full relative accuracy for nearby points.
inline double dist_h(const HPoint& p, const HPoint& q, Radius radius) {
  check_on_sheet(p, radius);
  check_on_sheet(q, radius);
  const double r = radius.value();
  const Vec3 chord = p.vec() - q.vec();
  const double excess = mink_dot(chord, chord) / (2.0 * r * r);
  if (excess < 0.0) {
    if (excess >= -acosh_clamp) return 0.0;
    throw NumericalError("arccosh argument below 1: 1 - " + detail::fmt(-excess));
  }
  // arccosh(1 + e) = log1p(e + sqrt(e (e + 2)))
  return r * std::log1p(excess + std::sqrt(excess * (excess + 2.0)));
}

/// Disk distance, defined as the hyperboloid distance of the lifted points.
inline double dist_d(DPoint a, DPoint b, Radius radius) {
  return dist_h(unproject(a, radius), unproject(b, radius), radius);
}

/// Arclength from the south pole to the point projecting to u:
/// R·ln((R + u)/(R − u)) = 2R·artanh(u/R). Signed, odd in u.
inline double arclength_from_pole(double u, Radius radius) {
  check_in_interval(u, radius);
  const double r = radius.value();
  return 2.0 * r * std::atanh(u / r);
}

/// Signed arclength along the diameter from u1 to u2.
inline double arc_between(double u1, double u2, Radius radius) {
  return arclength_from_pole(u2, radius) - arclength_from_pole(u1, radius);
}

/// Constant-speed geodesic segment from a to b.
///
/// Built on the hyperboloid: the chord q − p is made Minkowski-orthogonal to p
/// and normalised, giving γ(s) = cosh(s/R)·p + R·sinh(s/R)·e, which lies in the
/// plane through p, q and the origin.
class GeodesicSegment {
 public:
  GeodesicSegment(DPoint a, DPoint b, Radius radius)
      : a_(a), b_(b), radius_(radius), p_(unproject(a, radius)) {
    const HPoint q = unproject(b, radius);
    length_ = dist_h(p_, q, radius);
    if (a == b || length_ == 0.0) {
      throw DegenerateError("geodesic segment needs two distinct endpoints");
    }
    const double r = radius.value();
    const Vec3 chord = q.vec() - p_.vec();
    const Vec3 tangent = chord + (mink_dot(p_.vec(), chord) / (r * r)) * p_.vec();
    // ⟨tangent, tangent⟩ = R² sinh²(L/R); the closed form is more accurate than
    // re-evaluating the Minkowski norm.
    direction_ = tangent / (r * std::sinh(length_ / r));
  }

  DPoint a() const { return a_; }
  DPoint b() const { return b_; }
  Radius radius() const { return radius_; }
  double length() const { return length_; }

  /// Point at arclength s from a, on the hyperboloid.
  HPoint lifted_at_arclength(double s) const {
    const double r = radius_.value();
    const Vec3 v = std::cosh(s / r) * p_.vec() + (r * std::sinh(s / r)) * direction_;
    // pull rounding drift back onto the sheet
    return {v.x, v.y, std::sqrt(r * r + v.x * v.x + v.y * v.y)};
  }

  DPoint at_arclength(double s) const {
    return detail::project_unchecked(lifted_at_arclength(s).vec(), radius_.value());
  }

  /// Point at parameter t ∈ [0, 1]; arclength t·length() from a.
  DPoint operator()(double t) const {
    if (t == 0.0) return a_;
    if (t == 1.0) return b_;
    return at_arclength(t * length_);
  }

 private:
  DPoint a_;
  DPoint b_;
  Radius radius_;
  HPoint p_;
  Vec3 direction_;
  double length_ = 0.0;
};

inline GeodesicSegment geodesic_between(DPoint a, DPoint b, Radius radius) {
  return GeodesicSegment(a, b, radius);
}

/// Elliptic isometry w ↦ e^{iθ}·w fixing the origin.
inline DPoint mobius_rotate(DPoint w, double theta) { return DPoint{std::polar(1.0, theta) * w.w}; }

}  // namespace hypercom
