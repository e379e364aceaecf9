#include <cmath>
#include <numbers>

#include "doctest.h"

#include "hypdom/algebra.hpp"
#include "hypdom/error.hpp"
#include "selftest/oracles.hpp"

using namespace hypdom;

namespace {
const MoebiusMap T = MoebiusMap::from_entries(1.0, 1.0, 0.0, 1.0);
const MoebiusMap S = MoebiusMap::from_entries(0.0, -1.0, 1.0, 0.0);
const MoebiusMap D = MoebiusMap::from_entries(2.0, 0.0, 0.0, 0.5);
}  // namespace

TEST_CASE("compose") {
  CHECK(same_element(T * T, MoebiusMap::from_entries(1.0, 2.0, 0.0, 1.0)));
  CHECK(same_element(D * MoebiusMap::identity(), D));
  const MoebiusMap s2 = S * S;
  CHECK(s2.a() == Complex(1.0));
  CHECK(s2.d() == Complex(1.0));
  CHECK(std::abs(s2.b()) == 0.0);
}

TEST_CASE("normalization picks determinant one and a canonical sign") {
  const MoebiusMap g = MoebiusMap::from_entries(-4.0, -2.0, -6.0, -4.0);
  CHECK(std::abs(g.det() - 1.0) < 1e-14);
  CHECK(g.a().real() > 0.0);
  CHECK_THROWS_AS(MoebiusMap::from_entries(1.0, 2.0, 2.0, 4.0), Error);
}

TEST_CASE("classify") {
  CHECK(classify(T).kind == IsometryKind::parabolic);
  CHECK(classify(D).kind == IsometryKind::hyperbolic);
  const Complex w = std::polar(1.0, std::numbers::pi / 4);
  CHECK(classify(MoebiusMap::from_entries(2.0 * w, 0.0, 0.0, std::conj(w) / 2.0)).kind == IsometryKind::loxodromic);
  CHECK(classify(MoebiusMap::identity()).kind == IsometryKind::identity);
  const IsometryClass s = classify(S);
  CHECK(s.kind == IsometryKind::elliptic);
  CHECK(s.order == 2);
  CHECK(classify(MoebiusMap::from_entries(0.0, -1.0, 1.0, 1.0)).order == 3);
}

TEST_CASE("entry identity") {
  CHECK(entry_identity_check(T) == doctest::Approx(0.0));
  CHECK(entry_identity_check(MoebiusMap::identity()) == doctest::Approx(0.0));
  CHECK(std::abs(entry_identity_check(MoebiusMap::from_entries(2.0, 1.0, 3.0, 2.0))) < 1e-12);

  oracle::Rng rng(11);
  for (int k = 0; k < 500; ++k) CHECK(std::abs(entry_identity_check(oracle::random_element(rng))) < 1e-9);
}

TEST_CASE("group laws on random elements") {
  oracle::Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const MoebiusMap g = oracle::random_element(rng), h = oracle::random_element(rng), f = oracle::random_element(rng);
    CHECK(same_element((g * h) * f, g * (h * f), 1e-9));
    CHECK(same_element(g * g.inverse(), MoebiusMap::identity(), 1e-9));
    // Trace is a conjugacy invariant up to sign.
    const Complex t = (h * g * h.inverse()).trace();
    CHECK(std::min(std::abs(t - g.trace()), std::abs(t + g.trace())) < 1e-9);
  }
}

TEST_CASE("boundary action and three-point maps") {
  CHECK(*apply_boundary(T, Complex(2.0)) == Complex(3.0));
  CHECK(!apply_boundary(S, Complex(0.0)));
  CHECK(*apply_boundary(S, std::nullopt) == Complex(0.0));

  oracle::Rng rng(13);
  for (int k = 0; k < 100; ++k) {
    const MoebiusMap g = oracle::random_element(rng);
    const std::array<std::optional<Complex>, 3> from{rng.complex(2.0), rng.complex(2.0), std::nullopt};
    std::array<std::optional<Complex>, 3> to;
    for (int m = 0; m < 3; ++m) to[m] = apply_boundary(g, from[m]);
    CHECK(same_element(mobius_from_points(from, to), g, 1e-7));
  }
}
