#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hypdom/algebra.hpp"

namespace hypdom {

enum class Model { half, ball };

/// Extended point of R^3 (upper half-space coordinates (x, y, r) or ball
/// coordinates); `infinite` marks the point at infinity.
struct ExtPoint {
  Vec3 v = Vec3::Zero();
  bool infinite = false;

  static ExtPoint at(const Vec3& p) { return {p, false}; }
  static ExtPoint infinity() { return {Vec3::Zero(), true}; }
};

/// A Euclidean sphere or plane in R^3 tagged with the model it lives in.
///
/// Planes are stored as normal . p = offset with a unit normal. In the
/// half model geodesic surfaces are hemispheres centered on the boundary
/// plane r = 0 or vertical planes; in the ball model they are spheres
/// orthogonal to the unit sphere or planes through the origin. `dim` is 2
/// when the surface is used as a geodesic of the slice y = 0.
struct GeneralizedSphere {
  enum class Kind { sphere, plane };

  Kind kind = Kind::sphere;
  Model model = Model::half;
  int dim = 3;
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
  Vec3 normal = Vec3::UnitX();
  double offset = 0.0;

  static GeneralizedSphere sphere(Model model, const Vec3& center, double radius, int dim = 3);
  /// Normalizes `normal`; throws InvalidArgument for a zero normal.
  static GeneralizedSphere plane(Model model, const Vec3& normal, double offset, int dim = 3);

  bool is_sphere() const { return kind == Kind::sphere; }
  bool is_plane() const { return kind == Kind::plane; }

  /// |p - c|^2 - R^2 for spheres, normal . p - offset for planes. Zero on
  /// the surface; positive on the exterior / positive side.
  double power(const Vec3& p) const;
  /// Unsigned Euclidean distance from p to the surface.
  double distance(const Vec3& p) const;
};

/// Same surface within `tol` on centers and radii (or normals and offsets,
/// up to the sign of the plane equation).
bool same_surface(const GeneralizedSphere& s, const GeneralizedSphere& t, double tol = 1e-7);

/// Euclidean inversion in a sphere / mirror reflection in a plane, extended
/// to infinity.
ExtPoint reflect_point(const GeneralizedSphere& s, const ExtPoint& p);

/// A half-space bounded by a generalized sphere: {p : sign * power(p) >= 0}.
struct HalfSpace {
  GeneralizedSphere surface;
  int sign = 1;

  bool contains(const Vec3& p, double margin = 0.0) const { return sign * surface.power(p) >= margin; }
};

/// Three distinct ideal points of a geodesic surface. Half model: points of
/// C (nullopt is infinity). Ball model: unit vectors.
std::array<std::optional<Complex>, 3> boundary_points_half(const GeneralizedSphere& s);
std::array<Vec3, 3> boundary_points_ball(const GeneralizedSphere& s);

/// The geodesic surface of the half model whose ideal boundary passes
/// through the three given points.
GeneralizedSphere geodesic_surface_half(std::span<const std::optional<Complex>, 3> pts, int dim = 3);
/// The geodesic surface of the ball whose ideal boundary passes through
/// three points of the unit sphere.
GeneralizedSphere geodesic_surface_ball(std::span<const Vec3, 3> pts, int dim = 3);

/// Image of a half-model geodesic surface under g.
GeneralizedSphere image(const GeneralizedSphere& s, const MoebiusMap& g);

/// Sample points on a geodesic surface (interior of the model): `n` points
/// per parameter direction, deterministic. In dim 2 only points of the
/// slice y = 0 are produced.
std::vector<Vec3> sample_surface(const GeneralizedSphere& s, int n);

}  // namespace hypdom
