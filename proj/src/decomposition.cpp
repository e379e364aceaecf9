#include "hypdom/decomposition.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hypdom {

namespace {

// Interior sample points of the ball used to fit the orthogonal part; spread
// out so that the reflected points span R^3.
const std::array<Vec3, 8> kBallSamples{
    Vec3(0.0, 0.0, 0.0),   Vec3(0.5, 0.0, 0.0),   Vec3(0.0, 0.5, 0.0),    Vec3(0.0, 0.0, 0.5),
    Vec3(-0.3, 0.2, 0.1),  Vec3(0.1, -0.4, 0.3),  Vec3(0.2, 0.3, -0.45),  Vec3(-0.25, -0.25, -0.25)};

Mat3 nearest_orthogonal(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

Mat2 nearest_orthogonal(const Mat2& m) {
  Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

std::optional<Complex> to_boundary(const ExtPoint& p) {
  if (p.infinite) return std::nullopt;
  return Complex(p.v.x(), p.v.y());
}

ExtPoint from_boundary(std::optional<Complex> z) {
  if (!z) return ExtPoint::infinity();
  return ExtPoint::at(Vec3(z->real(), z->imag(), 0.0));
}

bool same_ideal(std::optional<Complex> p, std::optional<Complex> q, double tol) {
  if (!p || !q) return !p && !q;
  return std::abs(*p - *q) <= tol;
}

}  // namespace

BallPoint IsometryFactorization::apply(const BallPoint& u) const {
  return {orthogonal * reflect_in(mirror, u).v};
}

IsometryFactorization factor(const MoebiusMap& g, const Tolerance& tol) {
  const GeneralizedSphere mirror = bisector_ball(g, tol);
  const QuatIsometry q = psi(g);

  Eigen::Matrix<double, 3, Eigen::Dynamic> x(3, kBallSamples.size()), y(3, kBallSamples.size());
  for (std::size_t k = 0; k < kBallSamples.size(); ++k) {
    x.col(k) = reflect_in(mirror, BallPoint::at(kBallSamples[k])).v;
    y.col(k) = q.apply(BallPoint::at(kBallSamples[k])).v;
  }
  const Mat3 ls = y * x.transpose() * (x * x.transpose()).inverse();
  const Mat3 a = nearest_orthogonal(ls);
  const double residual = (a * x - y).colwise().norm().maxCoeff();
  if (!(residual <= 1e-9 * std::max(1.0, x.norm())))
    throw Error(ErrorCode::Inconsistent, "orthogonal part does not reproduce the ball action");
  return {a, mirror, g, residual};
}

HalfPoint a_half(const MoebiusMap& g, const HalfPoint& p, const Tolerance& tol) {
  return act_half(g, reflect_in(bisector_half(g, tol), p));
}

BoundaryValues a_boundary(const MoebiusMap& g, const Tolerance& tol) {
  if (g.is_unitary(tol.alg)) throw Error(ErrorCode::Unitary, "unitary element has no bisector at j");
  const Complex a = g.a(), b = g.b(), c = g.c(), d = g.d();
  auto point = [](std::optional<Complex> z) { return z ? HalfPoint::on_boundary(*z) : HalfPoint::infinity(); };

  BoundaryValues out;
  const HalfPoint aj = a_half(g, HalfPoint::j(), tol);
  out.j_residual = (aj.vec() - HalfPoint::j().vec()).norm();

  const Complex gap = d - std::conj(a);
  if (std::abs(gap) <= tol.alg) {
    out.image_of_infinity = HalfPoint::infinity();
    out.image_of_zero = HalfPoint::on_boundary(0.0);
    return out;
  }
  out.image_of_infinity = HalfPoint::on_boundary((b + std::conj(c)) / gap);

  const double s = std::norm(a) + std::norm(c) - 1.0;
  const double t = std::norm(b) + std::norm(d) - 1.0;
  const Complex num = b * s - std::conj(c) * t;
  const Complex den = d * s + std::conj(a) * t;
  if (std::abs(num) <= tol.alg && std::abs(den) <= tol.alg) {
    out.indeterminate = true;
    out.image_of_zero = point(a_half(g, HalfPoint::on_boundary(0.0), tol).boundary_value());
  } else if (std::abs(den) <= tol.alg) {
    out.image_of_zero = HalfPoint::infinity();
  } else {
    out.image_of_zero = HalfPoint::on_boundary(num / den);
  }
  return out;
}

ReflectionPlane reflection_plane(const MoebiusMap& g, const Tolerance& tol) {
  const Complex c = g.c();
  if (std::abs(c) <= tol.alg) throw Error(ErrorCode::NotDFShape, "c = 0");
  if (std::abs(g.d() - std::conj(g.a())) > tol.alg) throw Error(ErrorCode::NotDFShape, "d != conj(a)");

  const Vec3 n = Vec3(c.real(), -c.imag(), 0.0) / std::abs(c);
  const Vec3 w(-n.y(), n.x(), 0.0);
  const IsometryFactorization f = factor(g, tol);
  ReflectionPlane out{GeneralizedSphere::plane(Model::ball, n, 0.0), n, 0.0};
  out.residual = std::max({(f.orthogonal * n + n).norm(), (f.orthogonal * w - w).norm(),
                           (f.orthogonal * Vec3::UnitZ() - Vec3::UnitZ()).norm()});
  return out;
}

double plane_angle(const ReflectionPlane& p, const ReflectionPlane& q) {
  return std::acos(std::clamp(std::abs(p.normal.dot(q.normal)), 0.0, 1.0));
}

FuchsianFactorization fuchsian_factor(Complex a, Complex b, const Tolerance& tol) {
  if (std::abs(std::norm(a) - std::norm(b) - 1.0) > tol.alg)
    throw Error(ErrorCode::BadShape, "disk form needs |a|^2 - |b|^2 = 1");
  if (std::abs(b) <= tol.alg) throw Error(ErrorCode::Unitary, "b = 0 fixes the origin");

  const Complex center = -std::conj(a) / std::conj(b);
  const double radius = 1.0 / std::abs(b);
  auto act = [&](Complex z) { return (a * z + b) / (std::conj(b) * z + std::conj(a)); };
  auto sigma = [&](Complex z) {
    const Complex d = z - center;
    return center + radius * radius / std::conj(d);
  };

  const std::array<Complex, 6> samples{Complex(0.0), Complex(0.5, 0.0), Complex(0.0, 0.5),
                                       Complex(-0.3, 0.2), Complex(0.1, -0.4), Complex(-0.2, -0.3)};
  Eigen::Matrix<double, 2, Eigen::Dynamic> x(2, samples.size()), y(2, samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Complex s = sigma(samples[k]);
    const Complex t = act(samples[k]);
    x.col(k) = Vec2(s.real(), s.imag());
    y.col(k) = Vec2(t.real(), t.imag());
  }
  const Mat2 ls = y * x.transpose() * (x * x.transpose()).inverse();
  FuchsianFactorization out;
  out.orthogonal = nearest_orthogonal(ls);
  out.fit_residual = (out.orthogonal * x - y).colwise().norm().maxCoeff();
  if (!(out.fit_residual <= 1e-9 * std::max(1.0, x.norm())))
    throw Error(ErrorCode::Inconsistent, "orthogonal part does not reproduce the disk action");
  out.mirror_center = Vec2(center.real(), center.imag());
  out.mirror_radius = radius;

  // P_{g^-1} = a / conj(b).
  const Complex inv_center = a / std::conj(b);
  const Complex sum = center + inv_center;
  const Complex diff = center - inv_center;
  const Complex v = std::abs(sum) >= std::abs(diff) ? sum : diff;
  out.eigenvector = Vec2(v.real(), v.imag()).normalized();
  out.eigenvalue = out.eigenvector.dot(out.orthogonal * out.eigenvector);
  return out;
}

FuchsianFactorization fuchsian_factor(const MoebiusMap& g, const Tolerance& tol) {
  if (std::abs(g.d() - std::conj(g.a())) > tol.alg || std::abs(g.c() - std::conj(g.b())) > tol.alg)
    throw Error(ErrorCode::BadShape, "matrix is not of the form (a b; conj(b) conj(a))");
  return fuchsian_factor(g.a(), g.b(), tol);
}

ReflectionComposition compose_reflections(const GeneralizedSphere& s, const GeneralizedSphere& t,
                                          const Tolerance& tol) {
  if (s.model != t.model) throw Error(ErrorCode::InvalidArgument, "surfaces of different models");
  if (same_surface(s, t)) throw Error(ErrorCode::Equal, "reflections in one surface compose to the identity");
  const GeneralizedSphere hs = to_half(s);
  const GeneralizedSphere ht = to_half(t);

  const std::array<std::optional<Complex>, 3> from{Complex(0.0), Complex(1.0), Complex(0.0, 1.0)};
  std::array<std::optional<Complex>, 3> to;
  for (int k = 0; k < 3; ++k) to[k] = to_boundary(reflect_point(hs, reflect_point(ht, from_boundary(from[k]))));

  ReflectionComposition out{mobius_from_points(from, to), {}, 0.0};
  out.cls = classify(out.map, tol);
  out.product_residual = std::abs(inversive_product(s, t) - 0.5 * std::abs(out.map.trace()));
  return out;
}

HyperbolicLine HyperbolicLine::from_endpoints(std::optional<Complex> p, std::optional<Complex> q) {
  if (same_ideal(p, q, 0.0)) throw Error(ErrorCode::InvalidArgument, "line endpoints must differ");
  return {p, q};
}

HyperbolicLine HyperbolicLine::from_circle(Complex z0, double theta, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "line radius must be positive");
  return {z0, z0 + 2.0 * radius * std::polar(1.0, theta)};
}

MoebiusMap half_turn(const HyperbolicLine& line) {
  const MoebiusMap axis = MoebiusMap::from_entries(Complex(0.0, 1.0), 0.0, 0.0, Complex(0.0, -1.0));
  std::optional<Complex> p = line.p, q = line.q;
  if (!p) std::swap(p, q);
  // m sends 0 to p and infinity to q.
  const MoebiusMap m = q ? MoebiusMap::from_entries(*q, *p, 1.0, 1.0) : MoebiusMap::from_entries(1.0, *p, 0.0, 1.0);
  return m * axis * m.inverse();
}

std::string_view to_string(LineRelation r) {
  switch (r) {
    case LineRelation::tangent: return "tangent";
    case LineRelation::intersecting: return "intersecting";
    case LineRelation::disjoint: return "disjoint";
    case LineRelation::skew: return "skew";
  }
  return "?";
}

LineRelation line_relation(const HyperbolicLine& l1, const HyperbolicLine& l2, double tol) {
  if (same_ideal(l1.p, l2.p, tol) || same_ideal(l1.p, l2.q, tol) || same_ideal(l1.q, l2.p, tol) ||
      same_ideal(l1.q, l2.q, tol))
    return LineRelation::tangent;
  // Cross-ratio (p1, q1; p2, q2); factors containing infinity cancel in pairs.
  Complex num = 1.0, den = 1.0;
  auto factor_in = [](Complex& acc, std::optional<Complex> u, std::optional<Complex> v) {
    if (u && v) acc *= *u - *v;
  };
  factor_in(num, l1.p, l2.p);
  factor_in(num, l1.q, l2.q);
  factor_in(den, l1.p, l2.q);
  factor_in(den, l1.q, l2.p);
  const Complex cr = num / den;
  if (std::abs(cr.imag()) > tol * (1.0 + std::abs(cr))) return LineRelation::skew;
  return cr.real() < 0.0 ? LineRelation::intersecting : LineRelation::disjoint;
}

HalfTurnComposition compose_line_halfturns(const HyperbolicLine& l1, const HyperbolicLine& l2,
                                           const Tolerance& tol) {
  const bool same = (same_ideal(l1.p, l2.p, tol.alg) && same_ideal(l1.q, l2.q, tol.alg)) ||
                    (same_ideal(l1.p, l2.q, tol.alg) && same_ideal(l1.q, l2.p, tol.alg));
  if (same) throw Error(ErrorCode::Equal, "half-turns about one line compose to the identity");
  HalfTurnComposition out{half_turn(l1) * half_turn(l2), false, {}, LineRelation::skew};
  out.coplanar = std::abs(out.map.trace().imag()) <= tol.alg;
  out.cls = classify(out.map, tol);
  out.relation = line_relation(l1, l2, tol.alg);
  return out;
}

}  // namespace hypdom
