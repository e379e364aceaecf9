#include <cmath>

#include "doctest.h"

#include "hypdom/models.hpp"
#include "hypdom/sphere.hpp"
#include "selftest/oracles.hpp"

using namespace hypdom;

namespace {
const MoebiusMap T = MoebiusMap::from_entries(1.0, 1.0, 0.0, 1.0);
const MoebiusMap S = MoebiusMap::from_entries(0.0, -1.0, 1.0, 0.0);
const MoebiusMap D = MoebiusMap::from_entries(2.0, 0.0, 0.0, 0.5);

double gap(const HalfPoint& p, const HalfPoint& q) { return (p.vec() - q.vec()).norm(); }
}  // namespace

TEST_CASE("half-space distance") {
  CHECK(dist_half(HalfPoint::j(), HalfPoint::j()) == doctest::Approx(0.0));
  CHECK(dist_half(HalfPoint::j(), HalfPoint::at(0, 0, 4)) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(dist_half(HalfPoint::j(), HalfPoint::at(1, 0, 1)) == doctest::Approx(std::acosh(1.5)).epsilon(1e-14));
  CHECK(dist_half(HalfPoint::j(), HalfPoint::at(1, 0, 1)) == doctest::Approx(0.962424).epsilon(1e-6));
}

TEST_CASE("half-plane distance against path length") {
  // Length of the Euclidean segment from j to 1 + j is an upper bound, and
  // the geodesic arc of the circle |z - 1/2| = sqrt(5)/2 gives the value.
  const double c = 0.5, rad = std::sqrt(5.0) / 2.0;
  const double t0 = std::atan2(1.0, -c), t1 = std::atan2(1.0, 1.0 - c);
  double length = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double t = t0 + (t1 - t0) * (k + 0.5) / n;
    length += rad * std::abs(t1 - t0) / n / (rad * std::sin(t));
  }
  CHECK(length == doctest::Approx(dist_half(HalfPoint::j(), HalfPoint::at(1, 0, 1))).epsilon(1e-8));
  CHECK(dist_half(HalfPoint::j(), HalfPoint::at(1, 0, 1)) < 1.0);
}

TEST_CASE("ball distance") {
  CHECK(dist_ball(BallPoint::origin(), BallPoint::origin()) == doctest::Approx(0.0));
  CHECK(dist_ball(BallPoint::origin(), BallPoint::at(Vec3(0, 0, 0.6))) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
}

TEST_CASE("action on the upper half-space") {
  CHECK(gap(act_half(T, HalfPoint::j()), HalfPoint::at(1, 0, 1)) < 1e-15);
  CHECK(gap(act_half(D, HalfPoint::at(0.3, -0.2, 0.7)), HalfPoint::at(1.2, -0.8, 2.8)) < 1e-14);
  CHECK(gap(act_half(S, HalfPoint::j()), HalfPoint::j()) < 1e-15);

  oracle::Rng rng(21);
  for (int k = 0; k < 300; ++k) {
    const MoebiusMap g = oracle::random_element(rng), h = oracle::random_element(rng);
    const HalfPoint p = oracle::random_half_point(rng), q = oracle::random_half_point(rng);
    CHECK(gap(act_half(g, p), oracle::act_half(g, p)) < 1e-10 * (1.0 + p.vec().norm()));
    CHECK(gap(act_half(g * h, p), act_half(g, act_half(h, p))) < 1e-9);
    CHECK(dist_half(act_half(g, p), act_half(g, q)) == doctest::Approx(dist_half(p, q)).epsilon(1e-9));
  }
}

TEST_CASE("Cayley normalization") {
  CHECK(cayley(HalfPoint::j()).v.norm() < 1e-15);
  for (double lambda : {0.25, 0.5, 2.0, 7.0}) {
    const Vec3 v = cayley(HalfPoint::at(0, 0, lambda)).v;
    CHECK((v - Vec3(0, 0, (lambda - 1) / (lambda + 1))).norm() < 1e-14);
  }
  CHECK((cayley(HalfPoint::at(0, 0, 0.25)).v - Vec3(0, 0, -0.6)).norm() < 1e-15);
  const ModelMap m;
  CHECK((cayley(m, ExtPoint::infinity()).v - Vec3::UnitZ()).norm() < 1e-15);
  CHECK((cayley(m, ExtPoint::at(Vec3::Zero())).v + Vec3::UnitZ()).norm() < 1e-15);
  CHECK((cayley(m, ExtPoint::at(Vec3::UnitX())).v - Vec3::UnitX()).norm() < 1e-15);
  CHECK((cayley(m, ExtPoint::at(Vec3::UnitY())).v - Vec3::UnitY()).norm() < 1e-15);

  oracle::Rng rng(22);
  for (int k = 0; k < 200; ++k) {
    const HalfPoint p = oracle::random_half_point(rng), q = oracle::random_half_point(rng);
    CHECK(gap(cayley_inverse(cayley(p)), p) < 1e-12 * (1.0 + p.vec().norm()));
    CHECK(dist_ball(cayley(p), cayley(q)) == doctest::Approx(dist_half(p, q)).epsilon(1e-9));
  }
}

TEST_CASE("quaternion ball action") {
  const QuatIsometry id = psi(MoebiusMap::identity());
  CHECK(id.A.norm2() == doctest::Approx(1.0));
  CHECK(id.C.norm2() == doctest::Approx(0.0));
  const QuatIsometry t = psi(T);
  CHECK(t.A.norm2() == doctest::Approx(1.25));
  CHECK(t.C.norm2() == doctest::Approx(0.25));
  CHECK((psi(D.inverse()).apply(BallPoint::origin()).v - Vec3(0, 0, -0.6)).norm() < 1e-14);

  oracle::Rng rng(23);
  for (int k = 0; k < 300; ++k) {
    const MoebiusMap g = oracle::random_element(rng);
    const BallPoint u = oracle::random_ball_point(rng);
    CHECK((psi(g).apply(u).v - oracle::act_ball(g, u).v).norm() < 1e-10);
  }
}

TEST_CASE("reflections") {
  const GeneralizedSphere half_sphere = GeneralizedSphere::sphere(Model::half, Vec3::Zero(), 0.5);
  const ExtPoint r = reflect_point(half_sphere, ExtPoint::infinity());
  CHECK(!r.infinite);
  CHECK(r.v.norm() < 1e-15);
  const GeneralizedSphere plane = GeneralizedSphere::plane(Model::half, Vec3::UnitX(), -0.5);
  CHECK(gap(reflect_in(plane, HalfPoint::j()), HalfPoint::at(-1, 0, 1)) < 1e-15);

  // Reflections are isometries of both models.
  oracle::Rng rng(24);
  const GeneralizedSphere hemi = GeneralizedSphere::sphere(Model::half, Vec3(0.3, -0.1, 0), 1.2);
  const GeneralizedSphere ball = to_ball(hemi);
  for (int k = 0; k < 100; ++k) {
    const HalfPoint p = oracle::random_half_point(rng), q = oracle::random_half_point(rng);
    CHECK(dist_half(reflect_in(hemi, p), reflect_in(hemi, q)) == doctest::Approx(dist_half(p, q)).epsilon(1e-9));
    CHECK((reflect_in(ball, cayley(p)).v - cayley(reflect_in(hemi, p)).v).norm() < 1e-10);
  }
  CHECK(same_surface(to_half(ball), hemi));
}
