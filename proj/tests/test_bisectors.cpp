#include <cmath>
#include <numbers>

#include "doctest.h"

#include "hypdom/bisectors.hpp"
#include "hypdom/error.hpp"
#include "selftest/oracles.hpp"

using namespace hypdom;

namespace {
const MoebiusMap T = MoebiusMap::from_entries(1.0, 1.0, 0.0, 1.0);
const MoebiusMap Ti = MoebiusMap::from_entries(1.0, Complex(0, 1), 0.0, 1.0);
const MoebiusMap S = MoebiusMap::from_entries(0.0, -1.0, 1.0, 0.0);
const MoebiusMap D = MoebiusMap::from_entries(2.0, 0.0, 0.0, 0.5);
const MoebiusMap G = MoebiusMap::from_entries(2.0, 1.0, 3.0, 2.0);
const MoebiusMap H = MoebiusMap::from_entries(2.0, 1.0, 1.0, 1.0);

GeneralizedSphere half_sphere(double x, double r) { return GeneralizedSphere::sphere(Model::half, Vec3(x, 0, 0), r); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST_CASE("half-model bisectors") {
  CHECK(same_surface(bisector_half(T), GeneralizedSphere::plane(Model::half, Vec3::UnitX(), -0.5)));
  CHECK(same_surface(bisector_half(D), half_sphere(0.0, 0.5)));
  CHECK(same_surface(bisector_half(G), half_sphere(-2.0 / 3.0, 1.0 / 3.0)));
  CHECK(code_of([] { bisector_half(S); }) == ErrorCode::NoBisector);
}

TEST_CASE("ball-model bisectors") {
  const GeneralizedSphere t = bisector_ball(T);
  CHECK((t.center - Vec3(-2, 0, 1)).norm() < 1e-14);
  CHECK(t.radius * t.radius == doctest::Approx(4.0));
  const GeneralizedSphere d = bisector_ball(D);
  CHECK((d.center - Vec3(0, 0, -5.0 / 3.0)).norm() < 1e-14);
  CHECK(d.radius * d.radius == doctest::Approx(16.0 / 9.0));
  CHECK(d.center.squaredNorm() == doctest::Approx(25.0 / 9.0));
  CHECK(code_of([] { bisector_ball(MoebiusMap::identity()); }) == ErrorCode::Unitary);
  // The two models agree through the Cayley transform.
  oracle::Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    const MoebiusMap g = oracle::random_element(rng);
    CHECK(same_surface(to_ball(bisector_half(g)), bisector_ball(g), 1e-7));
  }
}

TEST_CASE("isometric spheres and center offset") {
  CHECK(same_surface(iso_sphere_half(G), half_sphere(-2.0 / 3.0, 1.0 / 3.0)));
  CHECK(same_surface(iso_sphere_half(S), half_sphere(0.0, 1.0)));
  CHECK(code_of([] { iso_sphere_half(T); }) == ErrorCode::NoIsometricSphere);
  CHECK(center_offset(G) == doctest::Approx(0.0));
  CHECK(center_offset(H) == doctest::Approx(0.25));
  // Direct route: bisector center -3/4 against isometric sphere center -1.
  CHECK(std::abs(bisector_half(H).center.x() - iso_sphere_half(H).center.x()) == doctest::Approx(0.25));
  CHECK(code_of([] { center_offset(T); }) == ErrorCode::NoIsometricSphere);
}

TEST_CASE("inversive product") {
  const auto px = GeneralizedSphere::plane(Model::half, Vec3::UnitX(), -0.5);
  const auto py = GeneralizedSphere::plane(Model::half, Vec3::UnitY(), -0.5);
  const auto px2 = GeneralizedSphere::plane(Model::half, Vec3::UnitX(), 0.5);
  CHECK(inversive_product(px, py) == doctest::Approx(0.0));
  CHECK(inversive_product(px, px2) == doctest::Approx(1.0));
  CHECK(inversive_product(half_sphere(0, 1), half_sphere(0, 2)) == doctest::Approx(1.25));
}

TEST_CASE("dihedral angles") {
  CHECK(dihedral_angle_ball(T, Ti) == doctest::Approx(std::numbers::pi / 2));
  CHECK(dihedral_angle_ball(G, G) == doctest::Approx(0.0));
  CHECK(inversive_product(bisector_ball(T), bisector_ball(T.inverse())) == doctest::Approx(1.0));
  CHECK(oriented_inversive_product(bisector_ball(T), bisector_ball(T.inverse())) == doctest::Approx(1.0));
}

TEST_CASE("bisectors about other centers") {
  CHECK(same_surface(bisector_at(G, BallPoint::origin()), bisector_ball(G)));
  for (double lambda : {0.3, 2.0, 5.0})
    CHECK(same_surface(bisector_at(T, cayley(HalfPoint::at(0, 0, lambda))), bisector_ball(T), 1e-9));
  CHECK(code_of([] { bisector_at(S, BallPoint::origin()); }) == ErrorCode::Fixes);

  oracle::Rng rng(32);
  for (int k = 0; k < 100; ++k) {
    const MoebiusMap g = oracle::random_element(rng);
    const HalfPoint c = oracle::random_half_point(rng);
    const BallPoint z0 = cayley(c);
    const GeneralizedSphere s = bisector_at(g, z0);
    const BallPoint other = oracle::act_ball(g.inverse(), z0);
    for (const Vec3& p : oracle::surface_points(s, 10, rng))
      CHECK(oracle::dist_ball(z0, BallPoint::at(p)) == doctest::Approx(oracle::dist_ball(BallPoint::at(p), other)).epsilon(1e-8));
  }
}

TEST_CASE("involution at a point") {
  const BallPoint z0 = BallPoint::at(Vec3(0.5, 0, 0));
  const Involution inv = involution_at(z0);
  CHECK((inv.mirror.center - Vec3(2, 0, 0)).norm() < 1e-14);
  CHECK(inv.mirror.radius == doctest::Approx(std::sqrt(3.0)));
  CHECK(inv.apply(BallPoint::origin()).v.isApprox(z0.v, 1e-14));
  CHECK(inv.apply(z0).v.norm() < 1e-14);
  CHECK(same_element(inv.map * inv.map, MoebiusMap::identity()));
  CHECK(code_of([] { involution_at(BallPoint::origin()); }) == ErrorCode::CenterDegenerate);

  oracle::Rng rng(33);
  for (int k = 0; k < 50; ++k) {
    const BallPoint u = oracle::random_ball_point(rng);
    const Involution i = involution_at(u);
    const BallPoint w = oracle::random_ball_point(rng);
    CHECK((i.apply(i.apply(w)).v - w.v).norm() < 1e-10);
    CHECK((i.apply(w).v - oracle::act_ball(i.map, w).v).norm() < 1e-10);
  }
}
