#include <cmath>
#include <numbers>

#include "doctest.h"

#include "hypdom/canreg.hpp"
#include "hypdom/error.hpp"
#include "selftest/oracles.hpp"

using namespace hypdom;

namespace {
const double kPi = std::numbers::pi;
const MoebiusMap T = MoebiusMap::from_entries(1.0, 1.0, 0.0, 1.0);
const MoebiusMap D = MoebiusMap::from_entries(2.0, 0.0, 0.0, 0.5);

MoebiusMap rotation(double theta) {
  return MoebiusMap::from_entries(std::polar(1.0, theta), 0.0, 0.0, std::polar(1.0, -theta));
}

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

TEST_CASE("membership") {
  CHECK(half_displacement(T, HalfPoint::j()) == doctest::Approx(0.5));
  CHECK(canreg_contains(T, HalfPoint::j()));
  CHECK(half_displacement(D, HalfPoint::j()) == doctest::Approx(0.75));
  CHECK(canreg_contains(D, HalfPoint::j()));
  // a = e^{i pi/4} at 1 + j sits on the boundary: |z| |sin theta| / r = |tr| / 2.
  const MoebiusMap e = rotation(kPi / 4);
  CHECK(half_displacement(e, HalfPoint::at(1, 0, 1)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(0.5 * std::abs(e.trace()) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(!canreg_contains(e, HalfPoint::at(1, 0, 0.5)));
  CHECK(canreg_contains(e, HalfPoint::at(1, 0, 2)));
  CHECK(code_of([] { canreg_contains(MoebiusMap::identity(), HalfPoint::j()); }) == ErrorCode::Identity);
}

TEST_CASE("region descriptors") {
  const CanonicalRegion h = canreg_region(T);
  CHECK(h.shape == CanonicalRegion::Shape::horoball);
  CHECK(h.base.infinite);
  CHECK(h.size == doctest::Approx(0.5));

  const CanonicalRegion c = canreg_region(D);
  CHECK(c.shape == CanonicalRegion::Shape::cone);
  CHECK(c.slope == doctest::Approx(1.0 / std::sinh(std::log(2.0))));
  CHECK(c.slope == doctest::Approx(4.0 / 3.0));

  CHECK(canreg_region(rotation(kPi / 4)).slope == doctest::Approx(1.0));
  const CanonicalRegion f = canreg_region(rotation(kPi / 2));
  CHECK(f.shape == CanonicalRegion::Shape::fixset);
  CHECK(f.contains(HalfPoint::at(0, 0, 3)));
  CHECK(!f.contains(HalfPoint::at(0.1, 0, 3)));

  CHECK(code_of([] { canreg_region(MoebiusMap::from_entries(Complex(2, 1), 0.0, 0.0, 1.0 / Complex(2, 1))); }) ==
        ErrorCode::Loxodromic);
}

TEST_CASE("equal regions") {
  CHECK(canreg_equal_implies(D, D.inverse()) == true);
  CHECK(!canreg_equal_implies(D, MoebiusMap::from_entries(3.0, 0.0, 0.0, 1.0 / 3.0)).has_value());
  CHECK(canreg_equal_implies(rotation(0.7), rotation(-0.7)) == true);
  CHECK(code_of([] { canreg_equal_implies(D, rotation(0.7)); }) == ErrorCode::ClassMismatch);
}

TEST_CASE("membership agrees with the descriptor on conjugates") {
  oracle::Rng rng(51);
  for (int k = 0; k < 60; ++k) {
    const MoebiusMap g = oracle::random_real_trace(rng, k % 3);
    const CanonicalRegion r = canreg_region(g);
    for (int m = 0; m < 100; ++m) {
      const HalfPoint p = oracle::random_half_point(rng);
      if (std::abs(r.level(p)) < 1e-9) continue;
      CHECK(r.contains(p) == canreg_contains(g, p));
    }
  }
}

TEST_CASE("tangency of the surface through z and g(z)") {
  oracle::Rng rng(52);
  for (double lambda : {1.5, 2.0, 4.0}) {
    const MoebiusMap g = MoebiusMap::from_entries(lambda, 0.0, 0.0, 1.0 / lambda);
    for (int k = 0; k < 10; ++k) {
      const TangencyResidual t = tangency_residual(g, std::polar(std::exp(rng.uniform(-1, 1)), rng.uniform(0, 2 * kPi)));
      CHECK(std::abs(t.analytic) < 1e-7);
      CHECK(std::abs(t.searched) < 1e-7);
    }
  }
}
