#pragma once

// Independent reference computations and random generators used by the
// acceptance suite and the unit tests. Nothing here calls the quaternion
// arithmetic or the closed forms it checks.

#include <random>

#include "hypdom/algebra.hpp"
#include "hypdom/models.hpp"
#include "hypdom/sphere.hpp"

namespace hypdom::oracle {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Complex complex(double radius) { return {uniform(-radius, radius), uniform(-radius, radius)}; }

 private:
  std::mt19937_64 gen_;
};

/// Random element of SL(2,C) with entries of modulus <= ~scale, norm^2 in
/// (2 + 1e-3, max_norm2).
MoebiusMap random_element(Rng& rng, double scale = 1.5, double max_norm2 = 40.0);
/// Same, with real entries (a Fuchsian element).
MoebiusMap random_real_element(Rng& rng, double scale = 1.5, double max_norm2 = 40.0);
/// Non-unitary element with real trace: a random conjugate of a rotation,
/// translation or dilation (kind 0, 1, 2; -1 picks one at random).
MoebiusMap random_real_trace(Rng& rng, int kind = -1, double max_norm2 = 40.0);

/// Random interior points.
HalfPoint random_half_point(Rng& rng);
BallPoint random_ball_point(Rng& rng, double max_radius = 0.9);

/// Poincare extension from the explicit formula
///   g(z + rj) = [(az + b) conj(cz + d) + a conj(c) r^2 + r j] / (|cz + d|^2 + |c|^2 r^2).
HalfPoint act_half(const MoebiusMap& g, const HalfPoint& p);
/// Ball action through the Cayley transform and the formula above.
BallPoint act_ball(const MoebiusMap& g, const BallPoint& u);

/// arccosh(1 + |P - Q|^2 / (2 r r')).
double dist_half(const HalfPoint& p, const HalfPoint& q);
/// arccosh(1 + 2 |u - v|^2 / ((1 - |u|^2)(1 - |v|^2))).
double dist_ball(const BallPoint& u, const BallPoint& v);

/// Points of a geodesic surface of either model, `count` in total, drawn
/// from a fixed parametrization (interior only).
std::vector<Vec3> surface_points(const GeneralizedSphere& s, int count, Rng& rng);

/// Euclidean inversion / mirror reflection written out directly.
Vec3 reflect(const GeneralizedSphere& s, const Vec3& p);

}  // namespace hypdom::oracle
