#include "hypdom/models.hpp"

#include <cmath>

namespace hypdom {

namespace {

Quaternion quat(const Vec3& v) { return {v.x(), v.y(), v.z(), 0.0}; }
Vec3 vec(const Quaternion& q) { return {q.w, q.x, q.y}; }

// (a x + b)(c x + d)^{-1} for quaternion entries.
Quaternion mobius(const Quaternion& a, const Quaternion& b, const Quaternion& c, const Quaternion& d,
                  const Quaternion& x) {
  return (a * x + b) * (c * x + d).inverse();
}

const Quaternion kOne{1.0, 0.0, 0.0, 0.0};
const Quaternion kJ = Quaternion::j();

}  // namespace

HalfPoint HalfPoint::at(Complex z, double r) {
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorCode::BoundaryPoint, "upper half-space point needs finite z and r > 0");
  return {z, r, false};
}

std::optional<Complex> HalfPoint::boundary_value() const {
  if (infinite) return std::nullopt;
  return z;
}

double cosh_dist_half(const HalfPoint& p, const HalfPoint& q) {
  if (!p.is_interior() || !q.is_interior())
    throw Error(ErrorCode::BoundaryPoint, "distance needs interior points");
  return 1.0 + (p.vec() - q.vec()).squaredNorm() / (2.0 * p.r * q.r);
}

double dist_half(const HalfPoint& p, const HalfPoint& q) {
  const double delta = cosh_dist_half(p, q);
  // acosh(delta) written as 2 asinh(sqrt((delta - 1)/2)) with delta - 1
  // taken from the Euclidean distance directly; exact near zero.
  if (delta < 2.0) {
    const double e = (p.vec() - q.vec()).norm();
    return 2.0 * std::asinh(e / (2.0 * std::sqrt(p.r * q.r)));
  }
  return std::acosh(delta);
}

double dist_ball(const BallPoint& u, const BallPoint& v) {
  const double nu = 1.0 - u.v.squaredNorm();
  const double nv = 1.0 - v.v.squaredNorm();
  if (!(nu > 0.0) || !(nv > 0.0)) throw Error(ErrorCode::BoundaryPoint, "distance needs interior points");
  const double e = (u.v - v.v).norm();
  return 2.0 * std::asinh(e / std::sqrt(nu * nv));
}

ExtPoint act_ext(const MoebiusMap& g, const ExtPoint& p) {
  if (p.infinite) {
    if (g.c() == Complex{}) return ExtPoint::infinity();
    const Complex w = g.a() / g.c();
    return ExtPoint::at(Vec3(w.real(), w.imag(), 0.0));
  }
  const Quaternion x = quat(p.v);
  const Quaternion den = Quaternion::from(g.c()) * x + Quaternion::from(g.d());
  if (den.norm2() == 0.0) return ExtPoint::infinity();
  const Quaternion num = Quaternion::from(g.a()) * x + Quaternion::from(g.b());
  return ExtPoint::at(vec(num * den.inverse()));
}

HalfPoint act_half(const MoebiusMap& g, const HalfPoint& p) {
  if (p.infinite || p.r == 0.0) {
    const auto w = apply_boundary(g, p.boundary_value());
    return w ? HalfPoint::on_boundary(*w) : HalfPoint::infinity();
  }
  const ExtPoint q = act_ext(g, p.ext());
  return {Complex(q.v.x(), q.v.y()), q.v.z(), false};
}

BallPoint cayley(const HalfPoint& p) {
  if (p.infinite) return {Vec3::UnitZ()};
  return {vec(mobius(kOne, -kJ, -kJ, kOne, quat(p.vec())))};
}

HalfPoint cayley_inverse(const BallPoint& u) {
  const Quaternion x = quat(u.v);
  const Quaternion den = kJ * x + kOne;
  if (den.norm2() <= 1e-300) return HalfPoint::infinity();
  const Vec3 h = vec((x + kJ) * den.inverse());
  // Boundary points of the ball land on r = 0 up to rounding.
  const double r = std::abs(u.v.squaredNorm() - 1.0) <= 1e-14 ? 0.0 : h.z();
  return {Complex(h.x(), h.y()), r, false};
}

ExtPoint cayley(const ModelMap& m, const ExtPoint& p) {
  if (m.dimension == 2 && !p.infinite && std::abs(p.v.y()) > kDefaultTolerance.geo)
    throw Error(ErrorCode::InvalidArgument, "2-D mode points must lie in the slice y = 0");
  if (m.direction == CayleyDirection::half_to_ball) {
    const HalfPoint h = p.infinite ? HalfPoint::infinity() : HalfPoint::from_vec(p.v);
    return ExtPoint::at(cayley(h).v);
  }
  return cayley_inverse(BallPoint::at(p.v)).ext();
}

BallPoint act_ball(const MoebiusMap& g, const BallPoint& u) {
  return cayley(act_half(g, cayley_inverse(u)));
}

QuatIsometry psi(const MoebiusMap& g) {
  // (1 -j; -j 1) (a b; c d) (1 j; j 1) / 2
  const Quaternion a = Quaternion::from(g.a()), b = Quaternion::from(g.b());
  const Quaternion c = Quaternion::from(g.c()), d = Quaternion::from(g.d());
  const Quaternion r00 = a + b * kJ, r01 = a * kJ + b;
  const Quaternion r10 = c + d * kJ, r11 = c * kJ + d;
  QuatIsometry q;
  q.A = 0.5 * (r00 - kJ * r10);
  q.C_prime = 0.5 * (r01 - kJ * r11);
  q.C = 0.5 * (r10 - kJ * r00);
  q.A_prime = 0.5 * (r11 - kJ * r01);
  return q;
}

BallPoint QuatIsometry::apply(const BallPoint& u) const {
  return {vec(mobius(A, C_prime, C, A_prime, quat(u.v)))};
}

GeneralizedSphere QuatIsometry::isometric_sphere() const {
  if (C.norm2() <= 1e-24) throw Error(ErrorCode::Unitary, "C = 0: no isometric sphere");
  const Quaternion center = -(C.inverse() * A_prime);
  return GeneralizedSphere::sphere(Model::ball, vec(center), 1.0 / C.norm());
}

HalfPoint reflect_in(const GeneralizedSphere& s, const HalfPoint& p) {
  const ExtPoint q = reflect_point(s, p.ext());
  if (q.infinite) return HalfPoint::infinity();
  return {Complex(q.v.x(), q.v.y()), q.v.z(), false};
}

BallPoint reflect_in(const GeneralizedSphere& s, const BallPoint& u) {
  const ExtPoint q = reflect_point(s, ExtPoint::at(u.v));
  if (q.infinite) throw Error(ErrorCode::InvalidArgument, "reflection sends the ball point to infinity");
  return {q.v};
}

GeneralizedSphere to_ball(const GeneralizedSphere& s) {
  if (s.model == Model::ball) return s;
  const auto pts = boundary_points_half(s);
  std::array<Vec3, 3> out;
  for (int k = 0; k < 3; ++k)
    out[k] = cayley(pts[k] ? HalfPoint::on_boundary(*pts[k]) : HalfPoint::infinity()).v;
  return geodesic_surface_ball(out, s.dim);
}

GeneralizedSphere to_half(const GeneralizedSphere& s) {
  if (s.model == Model::half) return s;
  const auto pts = boundary_points_ball(s);
  std::array<std::optional<Complex>, 3> out;
  for (int k = 0; k < 3; ++k) out[k] = cayley_inverse(BallPoint::at(pts[k])).boundary_value();
  return geodesic_surface_half(out, s.dim);
}

}  // namespace hypdom
