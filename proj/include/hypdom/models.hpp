#pragma once

// Upper half-space and ball models of hyperbolic 3-space (and their y = 0
// slices for hyperbolic 2-space), the Cayley transform between them and the
// action of PSL(2,C).
//
// Upper half-space points are quaternions z + r j, stored as (x, y, r).
// Ball points are 3-vectors whose third coordinate is the j direction.
// The Cayley transform is fixed by eta(j) = 0 and
// eta(lambda j) = ((lambda - 1)/(lambda + 1)) e3; as a quaternion Moebius map
// it is x -> (x - j)(1 - j x)^{-1}, so infinity goes to e3 and 0 to -e3.

#include <optional>

#include "hypdom/algebra.hpp"
#include "hypdom/sphere.hpp"

namespace hypdom {

struct HalfPoint {
  Complex z{};
  double r = 0.0;
  bool infinite = false;

  /// Interior point z + r j; throws BoundaryPoint unless r > 0.
  static HalfPoint at(Complex z, double r);
  static HalfPoint at(double x, double y, double r) { return at(Complex(x, y), r); }
  static HalfPoint on_boundary(Complex z) { return {z, 0.0, false}; }
  static HalfPoint infinity() { return {Complex{}, 0.0, true}; }
  static HalfPoint from_vec(const Vec3& v) { return {Complex(v.x(), v.y()), v.z(), false}; }
  static HalfPoint j() { return {Complex{}, 1.0, false}; }

  bool is_interior() const { return !infinite && r > 0.0; }
  bool is_boundary() const { return infinite || r == 0.0; }
  Vec3 vec() const { return {z.real(), z.imag(), r}; }
  ExtPoint ext() const { return infinite ? ExtPoint::infinity() : ExtPoint::at(vec()); }
  std::optional<Complex> boundary_value() const;
};

struct BallPoint {
  Vec3 v = Vec3::Zero();

  static BallPoint at(const Vec3& v) { return {v}; }
  static BallPoint origin() { return {}; }
  bool is_interior(double tol = kDefaultTolerance.geo) const { return v.norm() < 1.0 - tol; }
};

/// Hyperbolic distance in the upper half-space. Throws BoundaryPoint.
double dist_half(const HalfPoint& p, const HalfPoint& q);
/// cosh of the distance, 1 + |P - Q|^2 / (2 r r').
double cosh_dist_half(const HalfPoint& p, const HalfPoint& q);
/// Hyperbolic distance in the ball. Throws BoundaryPoint.
double dist_ball(const BallPoint& u, const BallPoint& v);

/// Poincare extension of g: P -> (aP + b)(cP + d)^{-1}, with the boundary
/// and infinity handled by the Moebius action on C u {infinity}.
HalfPoint act_half(const MoebiusMap& g, const HalfPoint& p);
/// The same action on any point of R^3 (used for reflections and surface
/// images outside the model).
ExtPoint act_ext(const MoebiusMap& g, const ExtPoint& p);

enum class CayleyDirection { half_to_ball, ball_to_half };

struct ModelMap {
  CayleyDirection direction = CayleyDirection::half_to_ball;
  int dimension = 3;
};

/// eta: upper half-space -> ball (interior and boundary).
BallPoint cayley(const HalfPoint& p);
/// eta^{-1}: ball -> upper half-space; e3 maps to infinity.
HalfPoint cayley_inverse(const BallPoint& u);
/// Direction-tagged form; points are passed as ExtPoints in source-model
/// coordinates. In dimension 2 the y coordinate must be zero.
ExtPoint cayley(const ModelMap& m, const ExtPoint& p);

/// Ball action of g, eta o g o eta^{-1}.
BallPoint act_ball(const MoebiusMap& g, const BallPoint& u);

/// The quaternion matrix (A C'; C A') acting on the ball by
/// u -> (A u + C')(C u + A')^{-1}; conjugate of g by the Cayley transform.
struct QuatIsometry {
  Quaternion A, C_prime, C, A_prime;

  BallPoint apply(const BallPoint& u) const;
  /// Isometric sphere |C u + A'| = 1 (center -C^{-1} A', radius 1/|C|).
  /// Throws Unitary when C = 0.
  GeneralizedSphere isometric_sphere() const;
};

QuatIsometry psi(const MoebiusMap& g);

/// Reflection in a generalized sphere (inversion or mirror), extended to
/// infinity in the half model.
HalfPoint reflect_in(const GeneralizedSphere& s, const HalfPoint& p);
BallPoint reflect_in(const GeneralizedSphere& s, const BallPoint& u);

/// Half-model surface -> ball surface (and back), via the ideal boundary.
GeneralizedSphere to_ball(const GeneralizedSphere& s);
GeneralizedSphere to_half(const GeneralizedSphere& s);

}  // namespace hypdom
