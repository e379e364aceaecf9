#pragma once

// Canonical regions Canreg(g) = {P : sinh(rho(P, gP)/2) < |tr g|/2}.

#include <optional>

#include "hypdom/algebra.hpp"
#include "hypdom/decomposition.hpp"
#include "hypdom/models.hpp"

namespace hypdom {

/// sinh(rho(P, gP)/2) = |P - gP| / (2 sqrt(r r')), r' the height of gP.
double half_displacement(const MoebiusMap& g, const HalfPoint& p);

/// Direct test of the defining inequality (strict). For order-two elliptics
/// the region is the fixed line and membership means distance <= tol.geo to
/// it. Throws Identity for +-I.
bool canreg_contains(const MoebiusMap& g, const HalfPoint& p, const Tolerance& tol = kDefaultTolerance);

struct CanonicalRegion {
  enum class Shape { horoball, cone, fixset };

  Shape shape = Shape::horoball;
  MoebiusMap source;
  /// Sends the normal frame to the actual one: for horoballs the normal
  /// frame has the base point at infinity, for cones and fixed sets the
  /// axis is the j-axis.
  MoebiusMap normalizer;
  /// Horoball: base point, and the height (at infinity) or Euclidean
  /// diameter (finite base point).
  HalfPoint base;
  double size = 0.0;
  /// Height of the horosphere in the normal frame.
  double normal_height = 0.0;
  /// Cone and fixed set: the axis; cone: x^2 + y^2 < slope^2 r^2 in the
  /// normal frame, i.e. sinh(rho(P, axis)) < slope.
  HyperbolicLine axis;
  double slope = 0.0;

  bool contains(const HalfPoint& p, const Tolerance& tol = kDefaultTolerance) const;
  /// Signed value that vanishes on the boundary: normal-frame height minus
  /// horosphere height, or slope minus sinh(rho(P, axis)).
  double level(const HalfPoint& p) const;
  /// Point of the region boundary in the normal frame at parameters
  /// (u, v) (horizontal position for horoballs; height and angle for cones),
  /// mapped to the actual frame.
  HalfPoint boundary_point(double u, double v) const;
};

/// Throws Loxodromic or Identity.
CanonicalRegion canreg_region(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

/// Same descriptor within `tol` (shape, axis endpoints, slope, horoball data).
bool same_region(const CanonicalRegion& a, const CanonicalRegion& b, double tol = 1e-8);

/// Whether h is g or g^{-1} given equal regions; nullopt when the regions
/// differ. Throws ClassMismatch unless both are elliptic or both hyperbolic.
std::optional<bool> canreg_equal_implies(const MoebiusMap& g, const MoebiusMap& h,
                                         const Tolerance& tol = kDefaultTolerance);

struct TangencyResidual {
  /// Distance from the circle center to the cone line minus the radius.
  double analytic = 0.0;
  /// Same quantity from a golden-section search over the circle.
  double searched = 0.0;
};

/// For hyperbolic g and boundary point z != 0 of the normal frame: the
/// geodesic surface through z and g(z) against the cone boundary.
TangencyResidual tangency_residual(const MoebiusMap& g, Complex z, const Tolerance& tol = kDefaultTolerance);

}  // namespace hypdom
