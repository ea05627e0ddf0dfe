#pragma once

// Weighted Fréchet (Karcher) mean on the hyperboloid, computed with the
// exponential and logarithm maps. Independent of the φ-average formula in
// barycenter.hpp and used to cross-check it.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "hypercom/barycenter.hpp"
#include "hypercom/core.hpp"
#include "hypercom/error.hpp"

namespace hypercom {

/// Vector v in the tangent plane at base, ⟨base, v⟩ = 0.
struct TangentVector {
  HPoint base;
  Vec3 v;
};

/// Minkowski length √⟨v, v⟩ (positive definite on tangent planes).
inline double tangent_norm(const TangentVector& t) {
  return std::sqrt(std::max(0.0, mink_dot(t.v, t.v)));
}

struct KarcherSettings {
  double tol = 0.0;  // on the gradient norm
  int max_iter = 10000;
  std::optional<HPoint> start;  // defaults to the normalised Minkowski average

  /// tol = 1e−12·R
  static KarcherSettings for_radius(Radius radius) { return {1e-12 * radius.value(), 10000, {}}; }
};

/// Raised when the iteration does not reach the gradient tolerance.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(HPoint last, double gradient_norm, int iterations)
      : NumericalError("Karcher iteration did not converge after " + std::to_string(iterations) +
                       " iterations (gradient norm " + detail::fmt(gradient_norm) + ")"),
        last_(last),
        gradient_norm_(gradient_norm),
        iterations_(iterations) {}

  HPoint last_iterate() const { return last_; }
  double gradient_norm() const { return gradient_norm_; }
  int iterations() const { return iterations_; }

 private:
  HPoint last_;
  double gradient_norm_;
  int iterations_;
};

namespace detail {

// Keeps x, y and recomputes z. Scaling by √(−⟨v,v⟩) instead cancels badly
// far from the pole.
inline HPoint renormalize(const Vec3& v, double r) {
  return {v.x, v.y, std::sqrt(r * r + v.x * v.x + v.y * v.y)};
}

inline HPoint exp_unchecked(const HPoint& p, const Vec3& v, double r) {
  const double n = std::sqrt(std::max(0.0, mink_dot(v, v)));
  if (n == 0.0) return p;
  return renormalize(std::cosh(n / r) * p.vec() + (r * std::sinh(n / r) / n) * v, r);
}

inline Vec3 log_unchecked(const HPoint& p, const HPoint& q, Radius radius) {
  const double r = radius.value();
  const double d = dist_h(p, q, radius);
  if (d == 0.0) return {};
  const Vec3 chord = q.vec() - p.vec();
  const Vec3 u = chord + (mink_dot(p.vec(), chord) / (r * r)) * p.vec();
  // ‖u‖ = R sinh(d/R)
  return (d / (r * std::sinh(d / r))) * u;
}

}  // namespace detail

/// exp_p(v) = cosh(‖v‖/R)·p + R·sinh(‖v‖/R)·v/‖v‖.
inline HPoint exp_map(const TangentVector& t, Radius radius) {
  check_on_sheet(t.base, radius);
  const double r = radius.value();
  const Vec3 b = t.base.vec();
  const double scale = std::max(r * r, euclid_norm(b) * euclid_norm(t.v));
  if (std::abs(mink_dot(b, t.v)) > 1e-10 * scale) {
    throw ValidationError("vector is not tangent to the hyperboloid at its base point");
  }
  return detail::exp_unchecked(t.base, t.v, r);
}

/// Inverse of exp_map: the tangent vector at p pointing at q with length d(p, q).
inline TangentVector log_map(const HPoint& p, const HPoint& q, Radius radius) {
  return {p, detail::log_unchecked(p, q, radius)};
}

/// Minimiser of Σ m_k d(x, x_k)².
///
/// Gradient iteration x ← exp_x(g / L) with g = (1/m) Σ m_k log_x(x_k) and
/// L = (1/m) Σ m_k (d_k/R) coth(d_k/R), the largest Hessian eigenvalue bound
/// at x. Starts from the Minkowski average pushed back onto the sheet.
inline HPoint karcher_mean(const HyperboloidSystem& system, const KarcherSettings& settings) {
  if (!(settings.tol > 0.0) || settings.max_iter < 1) {
    throw ValidationError("Karcher settings need tol > 0 and max_iter >= 1");
  }
  const Radius radius = system.radius();
  const double r = radius.value();
  const auto particles = system.particles();
  const double m = system.total_mass();

  const HPoint first = particles.front().position;
  if (std::all_of(particles.begin(), particles.end(),
                  [&](const auto& p) { return p.position == first; })) {
    return first;
  }

  HPoint x;
  if (settings.start) {
    check_on_sheet(*settings.start, radius);
    x = *settings.start;
  } else {
    Vec3 average;
    for (const auto& p : particles) average = average + (p.mass / m) * p.position.vec();
    x = HPoint::from((r / std::sqrt(-mink_dot(average, average))) * average);
  }

  double gnorm = 0.0;
  for (int it = 0; it < settings.max_iter; ++it) {
    Vec3 grad;
    double stiffness = 0.0;
    for (const auto& p : particles) {
      const Vec3 v = detail::log_unchecked(x, p.position, radius);
      grad = grad + (p.mass / m) * v;
      const double d = std::sqrt(std::max(0.0, mink_dot(v, v))) / r;
      stiffness += (p.mass / m) * (d > 1e-8 ? d / std::tanh(d) : 1.0);
    }
    gnorm = std::sqrt(std::max(0.0, mink_dot(grad, grad)));
    if (gnorm < settings.tol) return x;
    x = detail::exp_unchecked(x, (1.0 / stiffness) * grad, r);
  }
  throw ConvergenceError(x, gnorm, settings.max_iter);
}

inline HPoint karcher_mean(const HyperboloidSystem& system) {
  return karcher_mean(system, KarcherSettings::for_radius(system.radius()));
}

/// Norm of the mean log vector at x; zero exactly at the Karcher mean.
inline double karcher_gradient_norm(const HyperboloidSystem& system, const HPoint& x) {
  Vec3 grad;
  const double m = system.total_mass();
  for (const auto& p : system.particles()) {
    grad = grad + (p.mass / m) * detail::log_unchecked(x, p.position, system.radius());
  }
  return std::sqrt(std::max(0.0, mink_dot(grad, grad)));
}

}  // namespace hypercom
