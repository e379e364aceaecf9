#include "hypdom/canreg.hpp"

#include <cmath>

namespace hypdom {

namespace {

// Fixed points of g on the boundary; the second is nullopt (infinity) when
// c = 0. For parabolics both coincide.
std::pair<std::optional<Complex>, std::optional<Complex>> fixed_points(const MoebiusMap& g, const Tolerance& tol) {
  const Complex a = g.a(), b = g.b(), c = g.c(), d = g.d();
  if (std::abs(c) <= tol.alg) {
    if (std::abs(d - a) <= tol.alg) return {std::nullopt, std::nullopt};
    return {b / (d - a), std::nullopt};
  }
  // c z^2 + (d - a) z - b = 0; a parabolic double root is taken directly,
  // the rounded discriminant would leave a sqrt(eps) error.
  if (classify(g, tol).kind == IsometryKind::parabolic) {
    const Complex z = (a - d) / (2.0 * c);
    return {z, z};
  }
  const Complex disc = std::sqrt((d - a) * (d - a) + 4.0 * b * c);
  return {(a - d + disc) / (2.0 * c), (a - d - disc) / (2.0 * c)};
}

// Map sending 0 to p and infinity to q.
MoebiusMap axis_mover(std::optional<Complex> p, std::optional<Complex> q) {
  if (!p) return MoebiusMap::from_entries(*q, 1.0, 1.0, 0.0);
  if (!q) return MoebiusMap::from_entries(1.0, *p, 0.0, 1.0);
  return MoebiusMap::from_entries(*q, *p, 1.0, 1.0);
}

bool is_order_two(const IsometryClass& c) { return c.kind == IsometryKind::elliptic && c.order && *c.order == 2; }

bool same_ideal(std::optional<Complex> p, std::optional<Complex> q, double tol) {
  if (!p || !q) return !p && !q;
  return std::abs(*p - *q) <= tol * (1.0 + std::abs(*p));
}

}  // namespace

double half_displacement(const MoebiusMap& g, const HalfPoint& p) {
  const HalfPoint q = act_half(g, p);
  return (p.vec() - q.vec()).norm() / (2.0 * std::sqrt(p.r * q.r));
}

bool canreg_contains(const MoebiusMap& g, const HalfPoint& p, const Tolerance& tol) {
  if (!p.is_interior()) throw Error(ErrorCode::BoundaryPoint, "membership needs an interior point");
  const IsometryClass cls = classify(g, tol);
  if (cls.kind == IsometryKind::identity) throw Error(ErrorCode::Identity, "the identity has no canonical region");
  if (is_order_two(cls)) return canreg_region(g, tol).contains(p, tol);
  return half_displacement(g, p) < 0.5 * std::abs(g.trace());
}

double CanonicalRegion::level(const HalfPoint& p) const {
  const HalfPoint q = act_half(normalizer.inverse(), p);
  if (shape == Shape::horoball) return q.r - normal_height;
  return slope - std::abs(q.z) / q.r;
}

bool CanonicalRegion::contains(const HalfPoint& p, const Tolerance& tol) const {
  if (shape == Shape::fixset) return std::asinh(-level(p)) <= tol.geo;
  return level(p) > 0.0;
}

HalfPoint CanonicalRegion::boundary_point(double u, double v) const {
  HalfPoint q;
  if (shape == Shape::horoball) {
    q = HalfPoint::at(u, v, normal_height);
  } else {
    // Height u > 0, angle v around the axis.
    q = HalfPoint::at(std::polar(slope * u, v), u);
  }
  return act_half(normalizer, q);
}

CanonicalRegion canreg_region(const MoebiusMap& g, const Tolerance& tol) {
  const IsometryClass cls = classify(g, tol);
  if (cls.kind == IsometryKind::identity) throw Error(ErrorCode::Identity, "the identity has no canonical region");
  if (cls.kind == IsometryKind::loxodromic)
    throw Error(ErrorCode::Loxodromic, "no normal-form region for loxodromic elements");

  CanonicalRegion r;
  r.source = g;
  const auto [p, q] = fixed_points(g, tol);

  if (cls.kind == IsometryKind::parabolic) {
    r.shape = CanonicalRegion::Shape::horoball;
    if (!p) {
      r.normalizer = MoebiusMap::identity();
      r.base = HalfPoint::infinity();
    } else {
      // (p -1; 1 0) sends infinity to p.
      r.normalizer = MoebiusMap::from_entries(*p, -1.0, 1.0, 0.0);
      r.base = HalfPoint::on_boundary(*p);
    }
    const MoebiusMap t = r.normalizer.inverse() * g * r.normalizer;
    const double beta = std::abs(t.b() / t.d());
    r.normal_height = beta / 2.0;
    r.size = p ? 2.0 / beta : beta / 2.0;
    return r;
  }

  r.normalizer = axis_mover(p, q);
  r.axis = {p, q};
  if (!p) r.axis = {q, p};
  const MoebiusMap n = r.normalizer.inverse() * g * r.normalizer;
  if (is_order_two(cls)) {
    r.shape = CanonicalRegion::Shape::fixset;
    return r;
  }
  r.shape = CanonicalRegion::Shape::cone;
  if (cls.kind == IsometryKind::hyperbolic) {
    const double la = std::log(std::abs(n.a()));
    r.slope = 1.0 / std::abs(std::sinh(la));
  } else {
    // tr = 2 cos(theta), theta in (0, pi/2] after the g / g^-1 symmetry.
    const double half_tr = std::abs(g.trace().real()) / 2.0;
    r.slope = half_tr / std::sqrt(std::max(0.0, 1.0 - half_tr * half_tr));
  }
  return r;
}

bool same_region(const CanonicalRegion& a, const CanonicalRegion& b, double tol) {
  if (a.shape != b.shape) return false;
  if (a.shape == CanonicalRegion::Shape::horoball) {
    if (a.base.infinite != b.base.infinite) return false;
    return std::abs(a.base.z - b.base.z) <= tol && std::abs(a.size - b.size) <= tol * (1.0 + a.size);
  }
  const bool axes = (same_ideal(a.axis.p, b.axis.p, tol) && same_ideal(a.axis.q, b.axis.q, tol)) ||
                    (same_ideal(a.axis.p, b.axis.q, tol) && same_ideal(a.axis.q, b.axis.p, tol));
  return axes && std::abs(a.slope - b.slope) <= tol * (1.0 + a.slope);
}

std::optional<bool> canreg_equal_implies(const MoebiusMap& g, const MoebiusMap& h, const Tolerance& tol) {
  const IsometryKind kg = classify(g, tol).kind;
  const IsometryKind kh = classify(h, tol).kind;
  const bool ok = kg == kh && (kg == IsometryKind::elliptic || kg == IsometryKind::hyperbolic);
  if (!ok) throw Error(ErrorCode::ClassMismatch, "both elements must be elliptic or both hyperbolic");
  if (!same_region(canreg_region(g, tol), canreg_region(h, tol), tol.geo)) return std::nullopt;
  return same_element(h, g, tol.geo) || same_element(h, g.inverse(), tol.geo);
}

TangencyResidual tangency_residual(const MoebiusMap& g, Complex z, const Tolerance& tol) {
  const CanonicalRegion r = canreg_region(g, tol);
  if (classify(g, tol).kind != IsometryKind::hyperbolic)
    throw Error(ErrorCode::InvalidArgument, "tangency criterion applies to hyperbolic elements");
  if (std::abs(z) <= tol.alg) throw Error(ErrorCode::InvalidArgument, "z must differ from the fixed point 0");
  const MoebiusMap n = r.normalizer.inverse() * g * r.normalizer;
  const double a2 = std::norm(n.a());
  // Vertical half-plane through z: circle center at distance (1 + a^2)|z|/2
  // from the axis, radius |1 - a^2||z|/2; the cone boundary is the line
  // r = x / slope, at angle phi to the boundary plane.
  const double center = (1.0 + a2) * std::abs(z) / 2.0;
  const double radius = std::abs(1.0 - a2) * std::abs(z) / 2.0;
  const double phi = std::atan(1.0 / r.slope);

  TangencyResidual out;
  out.analytic = center * std::sin(phi) - radius;

  // Signed distance from circle points to the line, minimized over t.
  auto signed_distance = [&](double t) {
    const double x = center + radius * std::cos(t);
    const double y = radius * std::sin(t);
    return x * std::sin(phi) - y * std::cos(phi);
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 3.141592653589793;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = signed_distance(x1), f2 = signed_distance(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = signed_distance(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = signed_distance(x2);
    }
  }
  out.searched = std::min(f1, f2);
  return out;
}

}  // namespace hypdom
