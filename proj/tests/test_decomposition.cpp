#include <cmath>
#include <numbers>

#include "doctest.h"

#include "hypdom/decomposition.hpp"
#include "hypdom/error.hpp"
#include "selftest/oracles.hpp"

using namespace hypdom;

namespace {
const Complex I(0, 1);
const MoebiusMap T = MoebiusMap::from_entries(1.0, 1.0, 0.0, 1.0);
const MoebiusMap D = MoebiusMap::from_entries(2.0, 0.0, 0.0, 0.5);
const MoebiusMap G = MoebiusMap::from_entries(2.0, 1.0, 3.0, 2.0);
const MoebiusMap H = MoebiusMap::from_entries(2.0, 1.0, 1.0, 1.0);

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

double tr_gap(const MoebiusMap& g, Complex t) { return std::min(std::abs(g.trace() - t), std::abs(g.trace() + t)); }
}  // namespace

TEST_CASE("factorization of sample elements") {
  CHECK((factor(D).orthogonal - Vec3(1, 1, -1).asDiagonal().toDenseMatrix()).norm() < 1e-9);
  CHECK((factor(G).orthogonal - Vec3(-1, 1, 1).asDiagonal().toDenseMatrix()).norm() < 1e-9);
  // Half-model counterpart: A_G acts as z + rj -> -conj(z) + rj.
  const HalfPoint p = a_half(G, HalfPoint::at(0.4, 0.3, 0.8));
  CHECK((p.vec() - Vec3(-0.4, 0.3, 0.8)).norm() < 1e-12);
  // A_D is the inversion in the unit hemisphere.
  const HalfPoint q = a_half(D, HalfPoint::at(0.0, 0.0, 2.0));
  CHECK((q.vec() - Vec3(0, 0, 0.5)).norm() < 1e-12);
  CHECK(code_of([] { factor(MoebiusMap::identity()); }) == ErrorCode::Unitary);
}

TEST_CASE("factorization invariants on random elements") {
  oracle::Rng rng(41);
  for (int k = 0; k < 100; ++k) {
    const MoebiusMap g = oracle::random_element(rng);
    const IsometryFactorization f = factor(g);
    CHECK(f.orthogonal.determinant() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK((f.orthogonal.transpose() * f.orthogonal - Mat3::Identity()).norm() < 1e-9);
    const BallPoint u = oracle::random_ball_point(rng);
    CHECK((f.apply(u).v - oracle::act_ball(g, u).v).norm() < 1e-8);
  }
}

TEST_CASE("boundary values of the orthogonal part") {
  const BoundaryValues h = a_boundary(H);
  CHECK(std::abs(*h.image_of_infinity.boundary_value() - Complex(-2.0)) < 1e-12);
  CHECK(std::abs(*h.image_of_zero.boundary_value() - Complex(0.5)) < 1e-12);
  // Oracle: reflect in the bisector, then apply the map.
  const GeneralizedSphere s = bisector_half(H);
  CHECK(std::abs(s.center.x() + 0.75) < 1e-12);
  const Vec3 zero_image = oracle::reflect(s, Vec3::Zero());
  CHECK(zero_image.x() == doctest::Approx(-1.0 / 3.0));
  CHECK(std::abs(*apply_boundary(H, Complex(-0.75)) - Complex(-2.0)) < 1e-12);
  CHECK(std::abs(*apply_boundary(H, Complex(-1.0 / 3.0)) - Complex(0.5)) < 1e-12);

  const BoundaryValues g = a_boundary(G);
  CHECK(g.image_of_infinity.infinite);
  CHECK(std::abs(*g.image_of_zero.boundary_value()) < 1e-12);

  // diag(2, 1/2): both closed forms are 0/0 for A(0); the composition gives infinity.
  const BoundaryValues d = a_boundary(D);
  CHECK(d.indeterminate);
  CHECK(d.image_of_zero.infinite);

  oracle::Rng rng(42);
  for (int k = 0; k < 100; ++k) {
    const MoebiusMap m = oracle::random_element(rng);
    const BoundaryValues bv = a_boundary(m);
    const GeneralizedSphere sigma = bisector_half(m);
    // Oracle route for A(inf): sigma(inf) is the center (or inf for planes).
    std::optional<Complex> inf_image;
    if (sigma.is_sphere()) inf_image = apply_boundary(m, Complex(sigma.center.x(), sigma.center.y()));
    const auto got = bv.image_of_infinity.boundary_value();
    if (inf_image && got) CHECK(std::abs(*inf_image - *got) < 1e-7 * (1.0 + std::abs(*got)));
  }
}

TEST_CASE("reflection planes") {
  const ReflectionPlane w = reflection_plane(G);
  CHECK(std::abs(std::abs(w.normal.x()) - 1.0) < 1e-12);
  CHECK(w.residual < 1e-9);
  const MoebiusMap g2 = MoebiusMap::from_entries(2.0, -I, 3.0 * I, 2.0);
  CHECK(plane_angle(w, reflection_plane(g2)) == doctest::Approx(std::numbers::pi / 2));
  CHECK(code_of([] { reflection_plane(T); }) == ErrorCode::NotDFShape);
}

TEST_CASE("disk factorization") {
  const FuchsianFactorization f = fuchsian_factor(std::sqrt(2.0), 1.0);
  CHECK((f.orthogonal - Mat2(Vec2(-1, 1).asDiagonal())).norm() < 1e-9);
  CHECK(std::abs(f.eigenvector.y()) < 1e-12);
  CHECK(std::abs(f.eigenvector.x()) > 0.1);
  CHECK(f.eigenvalue == doctest::Approx(-1.0));
  CHECK(code_of([] { fuchsian_factor(1.0, 0.0); }) == ErrorCode::Unitary);
}

TEST_CASE("products of reflections") {
  const auto x0 = GeneralizedSphere::plane(Model::half, Vec3::UnitX(), 0.0);
  const auto x1 = GeneralizedSphere::plane(Model::half, Vec3::UnitX(), 1.0);
  const ReflectionComposition p = compose_reflections(x0, x1);
  CHECK(same_element(p.map, MoebiusMap::from_entries(1.0, -2.0, 0.0, 1.0)));
  CHECK(p.cls.kind == IsometryKind::parabolic);
  CHECK(p.product_residual < 1e-12);

  const auto s1 = GeneralizedSphere::sphere(Model::half, Vec3::Zero(), 1.0);
  const auto s2 = GeneralizedSphere::sphere(Model::half, Vec3::Zero(), 2.0);
  const ReflectionComposition c = compose_reflections(s1, s2);
  CHECK(same_element(c.map, MoebiusMap::from_entries(0.5, 0.0, 0.0, 2.0)));
  CHECK(std::abs(c.map.trace()) == doctest::Approx(2.5));
  CHECK(c.cls.kind == IsometryKind::hyperbolic);

  const auto y0 = GeneralizedSphere::plane(Model::half, Vec3::UnitY(), 0.0);
  const ReflectionComposition e = compose_reflections(x0, y0);
  CHECK(std::abs(e.map.trace()) < 1e-12);
  CHECK(e.cls.kind == IsometryKind::elliptic);
  CHECK(code_of([&] { compose_reflections(x0, x0); }) == ErrorCode::Equal);
}

TEST_CASE("half-turns about lines") {
  const HyperbolicLine axis = HyperbolicLine::j_axis();
  const HalfTurnComposition v = compose_line_halfturns(axis, HyperbolicLine::from_endpoints(1.0, std::nullopt));
  CHECK(same_element(v.map, MoebiusMap::from_entries(1.0, -2.0, 0.0, 1.0)));
  CHECK(v.cls.kind == IsometryKind::parabolic);
  CHECK(v.coplanar);
  CHECK(v.relation == LineRelation::tangent);

  const HalfTurnComposition l = compose_line_halfturns(axis, HyperbolicLine::from_circle(I, 0.0, 1.0));
  CHECK(tr_gap(l.map, -2.0 * (1.0 + I)) < 1e-12);
  CHECK(l.cls.kind == IsometryKind::loxodromic);
  CHECK(!l.coplanar);
  CHECK(l.relation == LineRelation::skew);

  const HalfTurnComposition h = compose_line_halfturns(axis, HyperbolicLine::from_circle(1.0, 0.0, 1.0));
  CHECK(h.cls.kind == IsometryKind::hyperbolic);
  CHECK(std::abs(h.map.trace()) == doctest::Approx(4.0));
  CHECK(h.relation == LineRelation::disjoint);

  CHECK(code_of([&] { compose_line_halfturns(axis, axis); }) == ErrorCode::Equal);

  oracle::Rng rng(43);
  for (int k = 0; k < 50; ++k) {
    const HyperbolicLine line = HyperbolicLine::from_endpoints(rng.complex(2.0), rng.complex(2.0));
    const MoebiusMap ht = half_turn(line);
    CHECK(same_element(ht * ht, MoebiusMap::identity(), 1e-9));
    CHECK(std::abs(*apply_boundary(ht, line.p) - *line.p) < 1e-9);
    CHECK(std::abs(*apply_boundary(ht, line.q) - *line.q) < 1e-9);
  }
}
