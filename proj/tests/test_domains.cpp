#include <cmath>

#include "doctest.h"

#include "hypdom/domains.hpp"
#include "hypdom/error.hpp"
#include "hypdom/io.hpp"
#include "hypdom/selftest.hpp"

using namespace hypdom;

namespace {
const MoebiusMap T = MoebiusMap::from_entries(1.0, 1.0, 0.0, 1.0);

GroupSpec fixture(const std::string& name) { return load_group_spec(default_fixture_dir() + "/" + name); }

GroupSpec cyclic(const MoebiusMap& g) {
  GroupSpec spec;
  spec.name = "cyclic";
  spec.generators.push_back({"G", g});
  return spec;
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

TEST_CASE("words") {
  const std::vector<NamedGenerator> gens{{"S", MoebiusMap::from_entries(0.0, -1.0, 1.0, 0.0)}, {"T", T}};
  CHECK(word_text({}, gens) == "1");
  CHECK(word_text({0, 3, 3}, gens) == "S*T^-2");
  CHECK(shortlex_less({1}, {0, 0}));
  CHECK(shortlex_less({0, 1}, {0, 2}));
  CHECK(same_element(evaluate({2, 2}, gens), T * T));
}

TEST_CASE("enumeration") {
  const WordBall b = enumerate(cyclic(T), 3, HalfPoint::j());
  CHECK(b.elements.size() == 6);
  CHECK(b.stabilizer.empty());
  CHECK(b.distinct_elements == 6);

  const WordBall m = enumerate(fixture("modular.json"), 3, HalfPoint::j());
  bool has_s = false;
  for (const auto& e : m.stabilizer) has_s = has_s || same_element(e.map, MoebiusMap::from_entries(0.0, -1.0, 1.0, 0.0));
  CHECK(has_s);
}

TEST_CASE("modular group") {
  const GroupSpec spec = fixture("modular.json");
  const DomainApprox d = dirichlet(spec, HalfPoint::at(0, 0, 2), 6);
  REQUIRE(d.faces.size() == 3);
  for (const Face& f : d.faces) CHECK(face_equidistance_residual(d, f) < 1e-8);
  CHECK(pairing_consistency(d).consistent);
  const DomainApprox f = ford(spec, 6);
  CHECK(same_faces(d, f));
  const DfVerdict v = df_check(d);
  CHECK(v.is_df);
  for (const auto& c : v.checks) CHECK(c.passes);
  // Torsion: the probe refuses.
  DomainApprox copy = d;
  CHECK(code_of([&] { cocompact_probe(copy, v, false); }) == ErrorCode::NotApplicable);
  // S fixes j; without an F0 region the center is rejected.
  CHECK(code_of([&] { dirichlet(spec, HalfPoint::j(), 3); }) == ErrorCode::CenterFixedByGenerator);
}

TEST_CASE("parabolic lattice") {
  const GroupSpec spec = fixture("lattice.json");
  DomainApprox d = dirichlet(spec, HalfPoint::j(), 4);
  CHECK(d.faces.size() == 4);
  const DfVerdict v = df_check(d);
  CHECK(v.is_df);
  REQUIRE(v.common_direction);
  CHECK(std::abs(std::abs(v.common_direction->z()) - 1.0) < 1e-9);
  REQUIRE(v.ideal_vertex);
  CHECK(v.ideal_vertex->infinite);
  const CocompactReport r = cocompact_probe(d, v, true);
  REQUIRE(!r.uncovered_ideal_points.empty());
  CHECK(r.uncovered_ideal_points.front().infinite);
  CHECK(d.bounded == Boundedness::unbounded);

  // Ford mode: only the slab.
  const DomainApprox f = ford(spec, 3);
  CHECK(f.faces.size() == 4);
  CHECK(same_faces(d, f));
}

TEST_CASE("ford needs peripheral data") {
  CHECK(code_of([] { ford(cyclic(MoebiusMap::from_entries(2.0, 1.0, 1.0, 1.0)), 3); }) == ErrorCode::MissingPeripheral);
}

TEST_CASE("a pairing with d != conj(a) is not DF") {
  const DomainApprox d = dirichlet(cyclic(MoebiusMap::from_entries(2.0, 1.0, 1.0, 1.0)), HalfPoint::j(), 3);
  const DfVerdict v = df_check(d);
  CHECK(!v.is_df);
  bool seen = false;
  for (const auto& c : v.checks)
    if (c.label == "G") {
      seen = true;
      CHECK(std::abs(c.d_minus_abar - 1.0) < 1e-12);
    }
  CHECK(seen);
}

TEST_CASE("figure-eight knot group") {
  const DomainApprox d = dirichlet(fixture("figure8.json"), HalfPoint::j(), 4);
  CHECK(!d.faces.empty());
  CHECK(pairing_consistency(d).consistent);
  for (const Face& f : d.faces) CHECK(face_equidistance_residual(d, f) < 1e-8);
}

TEST_CASE("domains are deterministic") {
  const GroupSpec spec = fixture("figure8.json");
  const DomainApprox a = dirichlet(spec, HalfPoint::j(), 3), b = dirichlet(spec, HalfPoint::j(), 3);
  REQUIRE(a.faces.size() == b.faces.size());
  for (std::size_t k = 0; k < a.faces.size(); ++k) CHECK(a.faces[k].label == b.faces[k].label);
}
