#include "selftest/oracles.hpp"

#include <cmath>
#include <numbers>

namespace hypdom::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

MoebiusMap draw(Rng& rng, double scale, double max_norm2, bool real) {
  for (;;) {
    auto entry = [&] { return real ? Complex(rng.uniform(-scale, scale), 0.0) : rng.complex(scale); };
    const Complex a = entry(), b = entry(), c = entry();
    if (std::abs(a) < 0.3) continue;
    const Complex d = (1.0 + b * c) / a;
    const MoebiusMap g = MoebiusMap::from_entries(a, b, c, d);
    const double n2 = g.norm2();
    if (n2 > 2.0 + 1e-3 && n2 < max_norm2) return g;
  }
}

}  // namespace

MoebiusMap random_element(Rng& rng, double scale, double max_norm2) { return draw(rng, scale, max_norm2, false); }

MoebiusMap random_real_element(Rng& rng, double scale, double max_norm2) { return draw(rng, scale, max_norm2, true); }

MoebiusMap random_real_trace(Rng& rng, int kind, double max_norm2) {
  const int k = kind < 0 ? rng.integer(0, 2) : kind;
  for (;;) {
    MoebiusMap core;
    if (k == 0) {
      const double theta = rng.uniform(0.1, kPi - 0.1);
      core = MoebiusMap::from_entries(std::polar(1.0, theta), 0.0, 0.0, std::polar(1.0, -theta));
    } else if (k == 1) {
      core = MoebiusMap::from_entries(1.0, std::polar(rng.uniform(0.3, 2.0), rng.uniform(0.0, 2.0 * kPi)), 0.0, 1.0);
    } else {
      const double lambda = rng.uniform(1.2, 3.0);
      core = MoebiusMap::from_entries(lambda, 0.0, 0.0, 1.0 / lambda);
    }
    const MoebiusMap h = draw(rng, 1.0, 6.0, false);
    const MoebiusMap g = h * core * h.inverse();
    if (g.norm2() > 2.0 + 1e-3 && g.norm2() < max_norm2) return g;
  }
}

HalfPoint random_half_point(Rng& rng) {
  return HalfPoint::at(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), std::exp(rng.uniform(-1.5, 1.5)));
}

BallPoint random_ball_point(Rng& rng, double max_radius) {
  for (;;) {
    const Vec3 v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    if (v.norm() <= 1.0) return BallPoint::at(max_radius * v);
  }
}

HalfPoint act_half(const MoebiusMap& g, const HalfPoint& p) {
  const Complex a = g.a(), b = g.b(), c = g.c(), d = g.d();
  const Complex z = p.z;
  const double r = p.r;
  const Complex czd = c * z + d;
  const double den = std::norm(czd) + std::norm(c) * r * r;
  const Complex w = ((a * z + b) * std::conj(czd) + a * std::conj(c) * r * r) / den;
  return HalfPoint::at(w, r / den);
}

BallPoint act_ball(const MoebiusMap& g, const BallPoint& u) { return cayley(oracle::act_half(g, cayley_inverse(u))); }

double dist_half(const HalfPoint& p, const HalfPoint& q) {
  return std::acosh(1.0 + (p.vec() - q.vec()).squaredNorm() / (2.0 * p.r * q.r));
}

double dist_ball(const BallPoint& u, const BallPoint& v) {
  return std::acosh(1.0 + 2.0 * (u.v - v.v).squaredNorm() / ((1.0 - u.v.squaredNorm()) * (1.0 - v.v.squaredNorm())));
}

std::vector<Vec3> surface_points(const GeneralizedSphere& s, int count, Rng& rng) {
  std::vector<Vec3> out;
  const bool flat = s.dim == 2;
  for (int k = 0; k < count; ++k) {
    if (s.model == Model::half) {
      if (s.is_sphere()) {
        const double psi = rng.uniform(0.0, 0.45 * kPi);
        const double phi = flat ? (rng.integer(0, 1) ? kPi : 0.0) : rng.uniform(0.0, 2.0 * kPi);
        out.push_back(s.center + s.radius * Vec3(std::sin(psi) * std::cos(phi), std::sin(psi) * std::sin(phi),
                                                 std::cos(psi)));
      } else {
        const Vec3 along(-s.normal.y(), s.normal.x(), 0.0);
        const double t = flat ? 0.0 : rng.uniform(-2.0, 2.0);
        out.push_back(s.offset * s.normal + t * along + rng.uniform(0.2, 3.0) * Vec3::UnitZ());
      }
      continue;
    }
    if (s.is_sphere()) {
      // Cap inside the ball: angle from the inward axis below acos(R/|c|).
      const Vec3 axis = -s.center.normalized();
      Vec3 u = Vec3::UnitY().cross(axis);
      if (u.norm() < 1e-8) u = axis.cross(Vec3::UnitX());
      u.normalize();
      const Vec3 w = axis.cross(u);
      const double limit = std::acos(s.radius / s.center.norm());
      const double polar = rng.uniform(0.0, 0.9 * limit);
      const double phi = flat ? (rng.integer(0, 1) ? kPi : 0.0) : rng.uniform(0.0, 2.0 * kPi);
      out.push_back(s.center + s.radius * (std::cos(polar) * axis +
                                           std::sin(polar) * (std::cos(phi) * u + std::sin(phi) * w)));
    } else {
      Vec3 u = Vec3::UnitY().cross(s.normal);
      if (u.norm() < 1e-8) u = s.normal.cross(Vec3::UnitX());
      u.normalize();
      const Vec3 w = s.normal.cross(u);
      const double rad = rng.uniform(0.0, 0.9);
      const double phi = flat ? (rng.integer(0, 1) ? kPi : 0.0) : rng.uniform(0.0, 2.0 * kPi);
      out.push_back(rad * (std::cos(phi) * u + std::sin(phi) * w));
    }
  }
  return out;
}

Vec3 reflect(const GeneralizedSphere& s, const Vec3& p) {
  if (s.is_plane()) return p - 2.0 * (s.normal.dot(p) - s.offset) * s.normal;
  const Vec3 d = p - s.center;
  return s.center + (s.radius * s.radius / d.squaredNorm()) * d;
}

}  // namespace hypdom::oracle
