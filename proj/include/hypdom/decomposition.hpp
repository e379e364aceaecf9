#pragma once

// Factorization of ball isometries as (orthogonal map) o (reflection in the
// bisector), boundary values and eigenstructure of the orthogonal part, and
// products of reflections in surfaces and of half-turns about lines.

#include <optional>
#include <string_view>

#include "hypdom/algebra.hpp"
#include "hypdom/bisectors.hpp"
#include "hypdom/models.hpp"

namespace hypdom {

/// g = A o sigma in the ball, sigma the reflection in the bisector of g.
struct IsometryFactorization {
  Mat3 orthogonal;
  GeneralizedSphere mirror;
  MoebiusMap source;
  /// Max pointwise residual of the fit before projection.
  double fit_residual = 0.0;

  BallPoint apply(const BallPoint& u) const;
};

/// Throws Unitary for unitary g, Inconsistent when the fitted orthogonal
/// part misses the ball action by more than 1e-9.
IsometryFactorization factor(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

/// Half-model boundary values of A_g.
struct BoundaryValues {
  HalfPoint image_of_infinity;
  HalfPoint image_of_zero;
  /// |A_g(j) - j|.
  double j_residual = 0.0;
  /// True when the closed forms were indeterminate (0/0) and the composition
  /// route supplied the values.
  bool indeterminate = false;
};

/// Closed forms: A(inf) = (b + conj(c)) / (d - conj(a)) when d != conj(a);
/// A(0) = (b s - conj(c) t) / (d s + conj(a) t) with s = |a|^2 + |c|^2 - 1,
/// t = |b|^2 + |d|^2 - 1; A(inf) = inf and A(0) = 0 when d = conj(a).
BoundaryValues a_boundary(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

/// A_g evaluated as g o sigma_g in the half model (sigma_g the reflection in
/// bisector_half(g)).
HalfPoint a_half(const MoebiusMap& g, const HalfPoint& p, const Tolerance& tol = kDefaultTolerance);

/// The plane W = span[i conj(c), j] in which A_g reflects when the bisector
/// is the isometric sphere.
struct ReflectionPlane {
  /// Ball-model plane through the origin with normal along conj(c).
  GeneralizedSphere plane;
  Vec3 normal;
  /// max of |A n + n|, |A w - w|, |A e3 - e3| for the fitted A.
  double residual = 0.0;
};

/// Throws NotDFShape unless d = conj(a) and c != 0.
ReflectionPlane reflection_plane(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

/// Angle in [0, pi/2] between two planes through the origin.
double plane_angle(const ReflectionPlane& p, const ReflectionPlane& q);

/// Factorization in the disk model B^2 for (a b; conj(b) conj(a)) acting by
/// z -> (a z + b)/(conj(b) z + conj(a)).
struct FuchsianFactorization {
  Mat2 orthogonal;
  Vec2 mirror_center;
  double mirror_radius = 0.0;
  /// P_g + P_{g^-1} or P_g - P_{g^-1}, whichever is nonzero.
  Vec2 eigenvector;
  double eigenvalue = 0.0;
  double fit_residual = 0.0;
};

/// Throws BadShape when the matrix is not of the disk form, Unitary when b = 0.
FuchsianFactorization fuchsian_factor(Complex a, Complex b, const Tolerance& tol = kDefaultTolerance);
FuchsianFactorization fuchsian_factor(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

struct ReflectionComposition {
  MoebiusMap map;
  IsometryClass cls;
  /// |inversive_product(S, T) - |tr|/2|.
  double product_residual = 0.0;
};

/// sigma_S o sigma_T for totally geodesic surfaces of one model. Throws
/// Equal for identical surfaces.
ReflectionComposition compose_reflections(const GeneralizedSphere& s, const GeneralizedSphere& t,
                                          const Tolerance& tol = kDefaultTolerance);

/// Geodesic of the upper half-space given by its two ideal endpoints.
struct HyperbolicLine {
  std::optional<Complex> p;
  std::optional<Complex> q;

  static HyperbolicLine from_endpoints(std::optional<Complex> p, std::optional<Complex> q);
  /// Semicircle from z0 to z0 + 2 R e^{i theta}.
  static HyperbolicLine from_circle(Complex z0, double theta, double radius);
  static HyperbolicLine j_axis() { return {Complex{}, std::nullopt}; }
};

/// The half-turn about a line: diag(i, -i) conjugated onto the line.
MoebiusMap half_turn(const HyperbolicLine& line);

enum class LineRelation { tangent, intersecting, disjoint, skew };

std::string_view to_string(LineRelation r);

/// Relative position of two lines from the cross-ratio of their endpoints.
LineRelation line_relation(const HyperbolicLine& l1, const HyperbolicLine& l2, double tol = 1e-9);

struct HalfTurnComposition {
  MoebiusMap map;
  /// tr real within tol.alg.
  bool coplanar = false;
  IsometryClass cls;
  LineRelation relation = LineRelation::skew;
};

/// sigma_1 o sigma_2 for the half-turns about two lines. Throws Equal.
HalfTurnComposition compose_line_halfturns(const HyperbolicLine& l1, const HyperbolicLine& l2,
                                           const Tolerance& tol = kDefaultTolerance);

}  // namespace hypdom
