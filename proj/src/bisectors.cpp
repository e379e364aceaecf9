#include "hypdom/bisectors.hpp"

#include <algorithm>
#include <cmath>

namespace hypdom {

namespace {

struct EntryData {
  Complex v;       // conj(a) b + conj(c) d
  double col1;     // |a|^2 + |c|^2
  double col2;     // |b|^2 + |d|^2
  double norm2;    // col1 + col2
};

EntryData entry_data(const MoebiusMap& g) {
  const Complex a = g.a(), b = g.b(), c = g.c(), d = g.d();
  EntryData e;
  e.v = std::conj(a) * b + std::conj(c) * d;
  e.col1 = std::norm(a) + std::norm(c);
  e.col2 = std::norm(b) + std::norm(d);
  e.norm2 = e.col1 + e.col2;
  return e;
}

}  // namespace

GeneralizedSphere bisector_half(const MoebiusMap& g, const Tolerance& tol) {
  if (g.is_unitary(tol.alg)) throw Error(ErrorCode::NoBisector, "element fixes j");
  const EntryData e = entry_data(g);
  const double s = e.col1 - 1.0;
  if (std::abs(s) <= tol.alg) {
    const double vn = std::abs(e.v);
    // Re(conj(v) z) + |v|^2/2 = 0  <=>  (v/|v|) . (x, y) = -|v|/2
    return GeneralizedSphere::plane(Model::half, Vec3(e.v.real() / vn, e.v.imag() / vn, 0.0), -vn / 2.0);
  }
  const Complex center = -e.v / s;
  const double r2 = (1.0 + std::norm(center)) / e.col1;
  return GeneralizedSphere::sphere(Model::half, Vec3(center.real(), center.imag(), 0.0), std::sqrt(r2));
}

GeneralizedSphere bisector_ball(const MoebiusMap& g, const Tolerance& tol) {
  const EntryData e = entry_data(g);
  if (e.norm2 <= 2.0 + tol.alg) throw Error(ErrorCode::Unitary, "unitary element has no bisector at 0");
  const double k = 1.0 / (e.norm2 - 2.0);
  const Vec3 center(-2.0 * e.v.real() * k, -2.0 * e.v.imag() * k, (e.col2 - e.col1) * k);
  return GeneralizedSphere::sphere(Model::ball, center, std::sqrt(4.0 * k));
}

GeneralizedSphere iso_sphere_half(const MoebiusMap& g, const Tolerance& tol) {
  const double cn = std::abs(g.c());
  if (cn <= tol.alg) throw Error(ErrorCode::NoIsometricSphere, "c = 0");
  const Complex center = -g.d() / g.c();
  return GeneralizedSphere::sphere(Model::half, Vec3(center.real(), center.imag(), 0.0), 1.0 / cn);
}

double center_offset(const MoebiusMap& g, const Tolerance& tol) {
  const double cn = std::abs(g.c());
  if (cn <= tol.alg) throw Error(ErrorCode::NoIsometricSphere, "c = 0");
  const double s = std::norm(g.a()) + std::norm(g.c()) - 1.0;
  if (std::abs(s) <= tol.alg) throw Error(ErrorCode::PlaneBisector, "|a|^2 + |c|^2 = 1");
  return std::abs(g.d() - std::conj(g.a())) / (cn * std::abs(s));
}

double inversive_product(const GeneralizedSphere& s, const GeneralizedSphere& t) {
  if (s.model != t.model || s.dim != t.dim)
    throw Error(ErrorCode::InvalidArgument, "inversive product needs surfaces of one model and dimension");
  if (s.is_sphere() && t.is_sphere()) {
    const double d2 = (s.center - t.center).squaredNorm();
    return std::abs(d2 - s.radius * s.radius - t.radius * t.radius) / (2.0 * s.radius * t.radius);
  }
  if (s.is_plane() && t.is_plane()) return std::abs(s.normal.dot(t.normal));
  const GeneralizedSphere& sp = s.is_sphere() ? s : t;
  const GeneralizedSphere& pl = s.is_sphere() ? t : s;
  return pl.distance(sp.center) / sp.radius;
}

double oriented_inversive_product(const GeneralizedSphere& s, const GeneralizedSphere& t) {
  if (!s.is_sphere() || !t.is_sphere())
    throw Error(ErrorCode::InvalidArgument, "oriented product is defined for spheres");
  const double d2 = (s.center - t.center).squaredNorm();
  return (d2 - s.radius * s.radius - t.radius * t.radius) / (2.0 * s.radius * t.radius);
}

double dihedral_angle_ball(const MoebiusMap& g, const MoebiusMap& h, const Tolerance& tol) {
  const GeneralizedSphere sg = bisector_ball(g, tol);
  const GeneralizedSphere sh = bisector_ball(h, tol);
  const double cosine = std::abs(1.0 - sg.center.dot(sh.center)) / (sg.radius * sh.radius);
  if (cosine > 1.0 + tol.geo) throw Error(ErrorCode::Disjoint, "bisectors do not intersect");
  return std::acos(std::min(1.0, cosine));
}

MoebiusMap center_mover(const HalfPoint& center) {
  if (!center.is_interior()) throw Error(ErrorCode::BoundaryPoint, "center must be an interior point");
  const double s = std::sqrt(center.r);
  return MoebiusMap::from_entries(s, center.z / s, 0.0, 1.0 / s);
}

GeneralizedSphere affine_image(const GeneralizedSphere& s, const MoebiusMap& mover) {
  if (mover.c() != Complex{}) throw Error(ErrorCode::InvalidArgument, "affine_image needs c = 0");
  const Complex k = mover.a() / mover.d();
  const Complex t = mover.b() / mover.d();
  if (std::abs(k.imag()) > 1e-12 * std::abs(k))
    throw Error(ErrorCode::InvalidArgument, "affine_image supports real scalings only");
  const double scale = k.real();
  const Vec3 shift(t.real(), t.imag(), 0.0);
  GeneralizedSphere out = s;
  if (s.is_sphere()) {
    out.center = scale * s.center + shift;
    out.radius = scale * s.radius;
  } else {
    out.offset = scale * s.offset + s.normal.dot(shift);
  }
  return out;
}

GeneralizedSphere bisector_at_half(const MoebiusMap& g, const HalfPoint& center, const Tolerance& tol) {
  const MoebiusMap m = center_mover(center);
  const MoebiusMap h = m.inverse() * g * m;
  if (h.is_unitary(tol.alg)) throw Error(ErrorCode::Fixes, "element fixes the center");
  return affine_image(bisector_half(h, tol), m);
}

GeneralizedSphere bisector_at(const MoebiusMap& g, const BallPoint& z0, const Tolerance& tol) {
  if (z0.v.norm() == 0.0) {
    if (g.is_unitary(tol.alg)) throw Error(ErrorCode::Fixes, "element fixes the center");
    return bisector_ball(g, tol);
  }
  return to_ball(bisector_at_half(g, cayley_inverse(z0), tol));
}

BallPoint Involution::apply(const BallPoint& u) const {
  return {orthogonal * reflect_in(mirror, u).v};
}

Involution involution_at(const BallPoint& z0) {
  const double n2 = z0.v.squaredNorm();
  if (n2 <= kDefaultTolerance.geo * kDefaultTolerance.geo)
    throw Error(ErrorCode::CenterDegenerate, "the origin has no involution");
  if (!z0.is_interior()) throw Error(ErrorCode::BoundaryPoint, "z0 must be interior");
  const Vec3 inv_point = z0.v / n2;
  const double r = std::sqrt(inv_point.squaredNorm() - 1.0);

  // Reflection in span[e3, z0]; any vertical plane when z0 is on the e3 axis.
  Vec3 normal = Vec3::UnitZ().cross(z0.v);
  if (normal.norm() <= 1e-12 * z0.v.norm()) normal = Vec3::UnitX();
  normal.normalize();

  Involution inv{Mat3::Identity() - 2.0 * normal * normal.transpose(),
                 GeneralizedSphere::sphere(Model::ball, inv_point, r), MoebiusMap{}};

  const std::array<std::optional<Complex>, 3> from{Complex(0.0), Complex(1.0), Complex(0.0, 1.0)};
  std::array<std::optional<Complex>, 3> to;
  for (int k = 0; k < 3; ++k) {
    const BallPoint x = cayley(HalfPoint::on_boundary(*from[k]));
    const ExtPoint y = reflect_point(inv.mirror, ExtPoint::at(x.v));
    to[k] = cayley_inverse(BallPoint::at(inv.orthogonal * y.v)).boundary_value();
  }
  inv.map = mobius_from_points(from, to);
  return inv;
}

}  // namespace hypdom
