// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hypercom/barycenter.hpp"
#include "hypercom/core.hpp"
#include "hypercom/equilibria.hpp"
#include "hypercom/karcher.hpp"
#include "support/cli_runner.hpp"
#include "support/oracles.hpp"

namespace {

using namespace hypercom;

constexpr double kPi = std::numbers::pi;
constexpr double kRadii[] = {0.5, 1.0, 10.0};

struct Outcome {
  Outcome() = default;
  Outcome(bool p, std::string d) : pass(p), detail(std::move(d)) {}

  bool pass = false;
  std::string detail;
  std::string note;
};

char buf[512];

template <class... Args>
std::string format(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(const HPoint& a, const HPoint& b) {
  return euclid_norm(a.vec() - b.vec()) / euclid_norm(b.vec());
}

Complex oracle_center(const DiskSystem& s) {
  std::vector<double> masses;
  std::vector<oracle::Complex50> points;
  for (const auto& p : s.particles()) {
    masses.push_back(p.mass);
    points.push_back(oracle::to50(p.position.w));
  }
  return oracle::to_double(oracle::center_of_mass(masses, points, oracle::Real50(s.radius().value())));
}

DiskSystem random_system(oracle::Sampler& rng, double R, double reach) {
  std::vector<Particle<DPoint>> ps;
  const int n = rng.integer(1, 10);
  for (int k = 0; k < n; ++k) ps.push_back({rng.uniform(1e-3, 10.0), DPoint{rng.disk_point(reach * R)}});
  return DiskSystem(Radius(R), std::move(ps));
}

// 1
Outcome projection_round_trips() {
  oracle::Sampler rng(1001);
  double worst_disk = 0, worst_sheet = 0, worst_line = 0;
  for (const double R : kRadii) {
    const Radius radius(R);
    for (int i = 0; i < 100000; ++i) {
      const DPoint w{rng.disk_point(0.999 * R)};
      const DPoint back = project(unproject(w, radius), radius);
      worst_disk = std::max(worst_disk, std::abs(back.w - w.w) / std::max(std::abs(w.w), 1e-300));

      const double rho = rng.uniform(0.0, 6.0);
      const double t = rng.uniform(0.0, 2 * kPi);
      const HPoint p{R * std::sinh(rho) * std::cos(t), R * std::sinh(rho) * std::sin(t), R * std::cosh(rho)};
      worst_sheet = std::max(worst_sheet, rel(unproject(project(p, radius), radius), p));

      const double s = rng.uniform(-6.0, 6.0);
      const LPoint l{R * std::sinh(s), R * std::cosh(s)};
      const LPoint lb = unproject_1d(project_1d(l, radius), radius);
      worst_line = std::max(worst_line, std::hypot(lb.x - l.x, lb.y - l.y) / std::hypot(l.x, l.y));
    }
  }
  const double worst = std::max({worst_disk, worst_sheet, worst_line});
  return {worst <= 1e-12,
          format("max rel error disk %.3g, hyperboloid %.3g, line %.3g (tol 1e-12, 1e5 points x 3 radii)",
                 worst_disk, worst_sheet, worst_line)};
}

// 2
Outcome metric_consistency() {
  oracle::Sampler rng(1002);
  double worst_arc = 0, worst_rot = 0;
  for (int i = 0; i < 10000; ++i) {
    const double R = kRadii[i % 3];
    const Radius radius(R);
    const double u = rng.uniform(-0.999, 0.999) * R;
    const double d = dist_d(DPoint{0.0}, DPoint{u}, radius);
    worst_arc = std::max(worst_arc, std::abs(d - std::abs(arclength_from_pole(u, radius))) / std::max(R, d));

    const DPoint a{rng.disk_point(0.99 * R)};
    const DPoint b{rng.disk_point(0.99 * R)};
    const double theta = rng.uniform(0, 2 * kPi);
    const double d0 = dist_d(a, b, radius);
    const double d1 = dist_d(mobius_rotate(a, theta), mobius_rotate(b, theta), radius);
    worst_rot = std::max(worst_rot, std::abs(d1 - d0) / std::max(R, d0));
  }
  return {worst_arc <= 1e-10 && worst_rot <= 1e-12,
          format("dist vs arclength %.3g (tol 1e-10), rotation %.3g (tol 1e-12), relative to max(R, d)",
                 worst_arc, worst_rot)};
}

// 3
Outcome lever_rule() {
  oracle::Sampler rng(1003);
  double worst_center = 0, worst_lever = 0;
  for (int i = 0; i < 1000; ++i) {
    const double R = rng.uniform(0.5, 10.0);
    const double m1 = rng.uniform(0.5, 5.0);
    const double m2 = rng.uniform(0.5, 5.0);
    const double alpha = rng.uniform(0.01, 0.5) * R;
    const DiskSystem s = build_diametric_config(m1, m2, alpha, Radius(R));
    worst_center = std::max(worst_center, std::abs(com_disk(s).w_c.w) / R);
    const double s1 = oracle::conformal_arclength(s.particles()[0].position.re(), R);
    const double s2 = oracle::conformal_arclength(-s.particles()[1].position.re(), R);
    worst_lever = std::max(worst_lever, std::abs(m1 * s1 - m2 * s2) / std::max(1.0, m1 * s1));
  }
  return {worst_center <= 1e-12 && worst_lever <= 1e-10,
          format("max |w_c|/R %.3g (tol 1e-12), max |m1 s1 - m2 s2| %.3g (tol 1e-10), 1e3 draws",
                 worst_center, worst_lever)};
}

// 4
Outcome trichotomy() {
  oracle::Sampler rng(1004);
  int mismatches = 0;
  double worst_equal = 0;
  for (int i = 0; i < 1000; ++i) {
    const double R = rng.uniform(0.5, 10.0);
    const double m1 = rng.uniform(0.5, 5.0);
    const double m2 = i % 10 == 0 ? m1 : rng.uniform(0.5, 5.0);
    const double alpha = rng.uniform(0.01, 0.5) * R;
    const double r = solve_re_radius(m1, m2, alpha, Radius(R));
    const int lhs = (alpha > r) - (alpha < r);
    const int rhs = (m2 > m1) - (m2 < m1);
    if (m1 == m2) {
      worst_equal = std::max(worst_equal, std::abs(r - alpha) / alpha);
      if (!(std::abs(r - alpha) <= 1e-12 * alpha)) ++mismatches;
    } else if (lhs != rhs) {
      ++mismatches;
    }
  }
  return {mismatches == 0, format("%d sign mismatches in 1e3 draws, equal-mass max |r - alpha|/alpha %.3g (tol 1e-12)",
                                  mismatches, worst_equal)};
}

// 5
Outcome containment() {
  oracle::Sampler rng(1005);
  int outside = 0;
  double largest = 0;
  for (int i = 0; i < 100000; ++i) {
    const double R = kRadii[i % 3];
    const double reach = std::vector{0.5, 0.999, 1.0 - 1e-9}[(i / 3) % 3];
    const DiskSystem s = random_system(rng, R, reach);
    const double w = std::abs(com_disk(s).w_c.w);
    if (!(w < R)) ++outside;
    largest = std::max(largest, w / R);
  }
  return {outside == 0, format("%d of 1e5 centers outside the disk, max |w_c|/R = %.17g", outside, largest)};
}

// 6
Outcome euclidean_limit() {
  const double masses[] = {1, 1};
  const Complex points[] = {0.3, 0.5};
  const double radii[] = {10, 20, 40, 80};
  double err[4];
  for (int k = 0; k < 4; ++k) err[k] = euclidean_limit_error(masses, points, Radius(radii[k]));
  bool decreasing = true, band = true;
  double ratios[3];
  for (int k = 0; k < 3; ++k) {
    decreasing = decreasing && err[k + 1] < err[k];
    ratios[k] = err[k] / err[k + 1];
    band = band && ratios[k] >= 3.5 && ratios[k] <= 4.5;
  }
  const double ms[] = {1, 1};
  const oracle::Complex50 pts[] = {oracle::Real50("0.3"), oracle::Real50("0.5")};
  const oracle::Complex50 c = oracle::center_of_mass(ms, pts, oracle::Real50(10));
  const double direct = static_cast<double>(abs(c - oracle::Real50("0.4")));
  const double agreement = std::abs(err[0] - direct) / direct;
  Outcome o{decreasing && band && agreement <= 1e-4,
            format("errors %.6g %.6g %.6g %.6g, ratios %.4f %.4f %.4f (band [3.5, 4.5]), "
                   "error(10) vs 50-digit evaluation %.9g: rel diff %.2g (tol 1e-4)",
                   err[0], err[1], err[2], err[3], ratios[0], ratios[1], ratios[2], direct, agreement)};
  o.note = format("the approximate figure 5.5e-05 quoted alongside this criterion does not match; "
                  "the direct evaluation gives %.6g", direct);
  return o;
}

// 7
Outcome karcher_two_body() {
  oracle::Sampler rng(1007);
  double worst_lever = 0, worst_geodesic = 0, worst_diametric = 0;
  for (int i = 0; i < 1000; ++i) {
    const double R = rng.uniform(0.5, 10.0);
    const Radius radius(R);
    const double m1 = rng.uniform(0.1, 10.0);
    const double m2 = rng.uniform(0.1, 10.0);
    const DPoint p1{rng.disk_point(0.95 * R)};
    const DPoint p2{rng.disk_point(0.95 * R)};
    const HyperboloidSystem s(radius, {{m1, unproject(p1, radius)}, {m2, unproject(p2, radius)}});
    const DPoint k = project(karcher_mean(s), radius);
    const double d12 = dist_d(p1, p2, radius);
    const double scale = std::max(R, d12);
    worst_geodesic = std::max(worst_geodesic, (dist_d(p1, k, radius) + dist_d(k, p2, radius) - d12) / scale);
    worst_lever = std::max(worst_lever, std::abs(lever_residual(m1, p1, m2, p2, k, radius)) / ((m1 + m2) * scale));

    const DPoint q1{rng.uniform(-0.95, 0.95) * R};
    const DPoint q2{rng.uniform(-0.95, 0.95) * R};
    const DiskSystem dia(radius, {{m1, q1}, {m2, q2}});
    const HyperboloidSystem lifted(radius, {{m1, unproject(q1, radius)}, {m2, unproject(q2, radius)}});
    const DPoint kd = project(karcher_mean(lifted), radius);
    worst_diametric = std::max(worst_diametric, dist_d(kd, com_disk(dia).w_c, radius) / R);
  }
  return {worst_lever <= 1e-8 && worst_geodesic <= 1e-8 && worst_diametric <= 1e-8,
          format("lever residual %.3g, off-geodesic %.3g, diametric distance to center %.3g (tol 1e-8, scaled), 1e3 systems",
                 worst_lever, worst_geodesic, worst_diametric)};
}

// 8
Outcome lagrangian() {
  const TripleResult r = lagrangian_triple(0.5, Radius(1));
  const double closed = std::tanh(std::log(1.125 / 0.875) / 6.0);
  const Complex direct = oracle_center(r.config.system());
  const double diff = std::abs(r.com.w_c.w - closed);
  const double diff_direct = std::abs(r.com.w_c.w - direct);
  Outcome o{diff <= 1e-10 && diff_direct <= 1e-10,
            format("w_c = %.17g%+.3gi, closed form %.17g (diff %.2g), 50-digit %.17g (diff %.2g), tol 1e-10",
                   r.com.w_c.re(), r.com.w_c.im(), closed, diff, direct.real(), diff_direct)};
  o.note = format("center is not at the pole: |w_c| = %.6g, contrary to the fixed-at-pole claim for this "
                  "configuration (documented discrepancy)",
                  std::abs(r.com.w_c.w));
  return o;
}

// 9
Outcome symmetry_suite() {
  oracle::Sampler rng(1009);
  double odd = 0, conj = 0, perm = 0, scale = 0, mirror = 0;
  for (int i = 0; i < 10000; ++i) {
    const double R = kRadii[i % 3];
    const DiskSystem s = random_system(rng, R, 0.999);
    const ComResult c = com_disk(s);
    std::vector<Particle<DPoint>> neg, cj, scaled, permuted;
    const double lambda = rng.uniform(0.01, 100);
    for (const auto& p : s.particles()) {
      neg.push_back({p.mass, DPoint{-p.position.w}});
      cj.push_back({p.mass, DPoint{std::conj(p.position.w)}});
      scaled.push_back({lambda * p.mass, p.position});
      permuted.push_back(p);
    }
    std::shuffle(permuted.begin(), permuted.end(), rng.engine());
    odd = std::max(odd, std::abs(com_disk(DiskSystem(s.radius(), neg)).w_c.w + c.w_c.w) / R);
    conj = std::max(conj, std::abs(com_disk(DiskSystem(s.radius(), cj)).w_c.w - std::conj(c.w_c.w)) / R);
    scale = std::max(scale, std::abs(com_disk(DiskSystem(s.radius(), scaled)).w_c.w - c.w_c.w) / R);
    perm = std::max(perm, std::abs(com_disk(DiskSystem(s.radius(), permuted)).w_c.w - c.w_c.w) / R);

    const MirrorPair mp = mirror_symmetric_pair(rng.uniform(0.01, 10), DPoint{rng.disk_point(0.999 * R)}, Radius(R));
    mirror = std::max(mirror, std::abs(mp.com.w_c.re()) / R);
  }
  const bool pass = odd <= 1e-14 && conj <= 1e-14 && perm <= 1e-14 && scale <= 1e-14 && mirror <= 1e-14;
  return {pass, format("odd %.2g, conjugation %.2g, permutation %.2g, mass scale %.2g, mirror Re(w_c) %.2g "
                       "(tol 1e-14 R, 1e4 systems each)",
                       odd, conj, perm, scale, mirror)};
}

// 10
Outcome rotation_sweep() {
  const DiskSystem s = build_diametric_config(1, 2, 0.5, Radius(1));
  const std::vector<double> thetas = uniform_angles(64);
  const REReport rep = com_under_rotation(s, thetas);
  const auto expected = oracle::rotated_pair_centers(1, 2, 0.5, 1, thetas);
  double worst = 0;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    worst = std::max(worst, std::abs(rep.trace[k].com.w_c.w - expected[k]));
  }
  Outcome o{worst <= 1e-10, format("64 angles, max pointwise diff vs 50-digit evaluation %.3g (tol 1e-10)", worst)};
  o.note = format("max equivariance defect %.6g: the center does not stay at the pole under rotation", rep.max_defect);
  return o;
}

// 11
Outcome cli_black_box() {
  const auto cases = cli_runner::load_cases();
  int bad_exit = 0, nondeterministic = 0, golden_mismatch = 0;
  std::string first_failure;
  for (const auto& c : cases) {
    const cli_runner::Run a = cli_runner::run(c.args);
    const cli_runner::Run b = cli_runner::run(c.args);
    const bool exit_ok = a.exit_code == c.exit_code && b.exit_code == c.exit_code;
    const bool same = a.out == b.out;
    const bool golden = a.out == cli_runner::golden(c.name);
    bad_exit += !exit_ok;
    nondeterministic += !same;
    golden_mismatch += !golden;
    if ((!exit_ok || !same || !golden) && first_failure.empty()) first_failure = c.name;
  }
  Outcome o{bad_exit == 0 && nondeterministic == 0 && golden_mismatch == 0,
            format("%zu cases: %d wrong exit codes, %d non-identical reruns, %d golden mismatches", cases.size(),
                   bad_exit, nondeterministic, golden_mismatch)};
  if (!first_failure.empty()) o.note = "first failing case: " + first_failure;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"projection round trips", projection_round_trips},
      {"metric consistency", metric_consistency},
      {"lever rule at rest", lever_rule},
      {"mass/radius trichotomy", trichotomy},
      {"containment", containment},
      {"Euclidean limit", euclidean_limit},
      {"Karcher two-body oracle", karcher_two_body},
      {"Lagrangian triangle", lagrangian},
      {"symmetry suite", symmetry_suite},
      {"rotation sweep reproducibility", rotation_sweep},
      {"CLI black box", cli_black_box},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%2d] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    if (!o.note.empty()) std::printf("          note: %s\n", o.note.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed;
}
