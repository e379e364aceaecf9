#pragma once

// Poincare bisectors and isometric spheres in both models.
//
// The bisector of g with respect to a center is the set of points at equal
// distance from the center and from g^{-1}(center); g maps it onto the
// bisector of g^{-1}.

#include "hypdom/algebra.hpp"
#include "hypdom/models.hpp"
#include "hypdom/sphere.hpp"

namespace hypdom {

/// Bisector of j and g^{-1}(j) in the upper half-space: a hemisphere when
/// |a|^2 + |c|^2 != 1, otherwise the vertical plane Re(conj(v) z) + |v|^2/2 = 0
/// with v = conj(a) b + conj(c) d. Throws NoBisector when g fixes j.
GeneralizedSphere bisector_half(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

/// Bisector of 0 and Psi(g^{-1})(0) in the ball: center
/// [-2 v + (|b|^2+|d|^2 - |a|^2-|c|^2) j] / (|g|^2 - 2), radius^2 = 4/(|g|^2 - 2).
/// Throws Unitary when |g|^2 <= 2 + tol.
GeneralizedSphere bisector_ball(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

/// Isometric sphere |cz + d| = 1: center -d/c, radius 1/|c|.
GeneralizedSphere iso_sphere_half(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

/// |d - conj(a)| / (|c| (|a|^2 + |c|^2 - 1)), the distance between the centers
/// of the isometric sphere and the half-model bisector.
double center_offset(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

/// Unsigned inversive product: |d^2 - r^2 - s^2| / (2 r s) for spheres,
/// dist(center, plane)/r for a sphere and a plane, |cos| of the angle
/// between normals for two planes. The cosine of the intersection angle
/// when the surfaces meet, 1 when tangent or parallel, > 1 when disjoint.
double inversive_product(const GeneralizedSphere& s, const GeneralizedSphere& t);

/// Signed product (d^2 - r^2 - s^2) / (2 r s) of two spheres, each oriented
/// with its Euclidean exterior as positive side. For two ball-model
/// bisectors (the center 0 lies outside both) this is the cosine of the
/// angle between the exterior half-spaces. Throws InvalidArgument for planes.
double oriented_inversive_product(const GeneralizedSphere& s, const GeneralizedSphere& t);

/// Angle between the ball bisectors of g and h from
/// cos(theta) = |1 - <P_g, P_h>| / (R_g R_h). Throws Unitary, or Disjoint
/// when the cosine exceeds 1 + tol.geo.
double dihedral_angle_ball(const MoebiusMap& g, const MoebiusMap& h, const Tolerance& tol = kDefaultTolerance);

/// Bisector of the center and g^{-1}(center) in the half model, computed by
/// conjugating the center to j. Throws Fixes when g fixes the center.
GeneralizedSphere bisector_at_half(const MoebiusMap& g, const HalfPoint& center,
                                   const Tolerance& tol = kDefaultTolerance);

/// Ball-model version of bisector_at_half; z0 = 0 returns bisector_ball(g).
GeneralizedSphere bisector_at(const MoebiusMap& g, const BallPoint& z0, const Tolerance& tol = kDefaultTolerance);

/// Affine map of the half model sending j to `center`:
/// (sqrt(r), z/sqrt(r); 0, 1/sqrt(r)). Identity when center = j.
MoebiusMap center_mover(const HalfPoint& center);

/// Image of a half-model surface under an affine map z -> k z + t (c = 0,
/// |a| real-positive scaling only).
GeneralizedSphere affine_image(const GeneralizedSphere& s, const MoebiusMap& mover);

/// Orientation-preserving isometry of the ball written as
/// orthogonal o (reflection in mirror).
struct Involution {
  Mat3 orthogonal;
  GeneralizedSphere mirror;
  /// Half-model matrix with the same boundary action.
  MoebiusMap map;

  BallPoint apply(const BallPoint& u) const;
};

/// The order-two isometry A o sigma built from z0: sigma is the reflection
/// in the sphere S_R(z0*) with 1 + R^2 = |z0*|^2 (z0* = z0/|z0|^2) and A the
/// reflection in the plane spanned by e3 and z0. It swaps 0 and z0 and its
/// bisector with respect to 0 is the mirror. Throws CenterDegenerate at 0.
Involution involution_at(const BallPoint& z0);

/// A bisector together with its element and the center it was built from.
struct BisectorPair {
  MoebiusMap element;
  GeneralizedSphere surface;
  HalfPoint center_used;
};

}  // namespace hypdom
