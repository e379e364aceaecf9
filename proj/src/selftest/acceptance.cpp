#include "hypdom/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "hypdom/bisectors.hpp"
#include "hypdom/canreg.hpp"
#include "hypdom/decomposition.hpp"
#include "hypdom/domains.hpp"
#include "hypdom/io.hpp"
#include "selftest/oracles.hpp"

#ifndef HYPDOM_FIXTURE_DIR
#define HYPDOM_FIXTURE_DIR "fixtures"
#endif

namespace hypdom {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::scientific << v;
  return ss.str();
}

GeneralizedSphere flat(GeneralizedSphere s) {
  s.dim = 2;
  return s;
}

// Criterion 1: bisectors are equidistant surfaces in all four models.
CriterionResult bisector_equidistance() {
  oracle::Rng rng(1001);
  double worst = 0.0;
  int points = 0;
  const HalfPoint j = HalfPoint::j();
  const BallPoint origin = BallPoint::origin();
  for (int model = 0; model < 4; ++model) {
    const bool two_d = model % 2 == 1;
    for (int k = 0; k < 100; ++k) {
      const MoebiusMap g = two_d ? oracle::random_real_element(rng) : oracle::random_element(rng);
      if (model < 2) {
        // Upper half-space / half-plane, center j and a random center.
        GeneralizedSphere s = bisector_half(g);
        if (two_d) s = flat(s);
        const HalfPoint other = oracle::act_half(g.inverse(), j);
        for (const Vec3& p : oracle::surface_points(s, 50, rng)) {
          const HalfPoint u = HalfPoint::from_vec(p);
          worst = std::max(worst, std::abs(oracle::dist_half(j, u) - oracle::dist_half(u, other)));
          ++points;
        }
        HalfPoint c = oracle::random_half_point(rng);
        if (two_d) c.z = c.z.real();
        GeneralizedSphere sc = bisector_at_half(g, c);
        if (two_d) sc = flat(sc);
        const HalfPoint other_c = oracle::act_half(g.inverse(), c);
        for (const Vec3& p : oracle::surface_points(sc, 50, rng)) {
          const HalfPoint u = HalfPoint::from_vec(p);
          worst = std::max(worst, std::abs(oracle::dist_half(c, u) - oracle::dist_half(u, other_c)));
          ++points;
        }
      } else {
        GeneralizedSphere s = bisector_ball(g);
        if (two_d) s = flat(s);
        const BallPoint other = oracle::act_ball(g.inverse(), origin);
        for (const Vec3& p : oracle::surface_points(s, 50, rng)) {
          const BallPoint u = BallPoint::at(p);
          worst = std::max(worst, std::abs(oracle::dist_ball(origin, u) - oracle::dist_ball(u, other)));
          ++points;
        }
      }
    }
  }
  return {1, "bisector equidistance (H2, H3, B2, B3)", worst <= 1e-8,
          "worst |rho(c,u) - rho(u,g^-1 c)| = " + sci(worst) + " over " + std::to_string(points) + " points", 0.0};
}

// Criterion 2: ball-model closed forms.
CriterionResult ball_closed_forms() {
  oracle::Rng rng(1002);
  double worst = 0.0;
  int count = 0;
  while (count < 1000) {
    const MoebiusMap g = oracle::random_element(rng);
    const double n2 = g.norm2();
    if (n2 < 2.5) continue;
    ++count;
    const Complex a = g.a(), b = g.b(), c = g.c(), d = g.d();
    const QuatIsometry q = psi(g);
    const double a2 = q.A.norm2(), c2 = q.C.norm2();
    worst = std::max({worst, std::abs(a2 - (2.0 + n2) / 4.0), std::abs(c2 - (n2 - 2.0) / 4.0), std::abs(a2 - c2 - 1.0)});

    const Complex v = std::conj(a) * b + std::conj(c) * d;
    const double lift = (std::norm(b) + std::norm(d)) - (std::norm(a) + std::norm(c));
    const Vec3 numer(-2.0 * v.real(), -2.0 * v.imag(), lift);
    const Vec3 p = numer / (n2 - 2.0);
    const GeneralizedSphere iso = q.isometric_sphere();
    const GeneralizedSphere sigma = bisector_ball(g);
    // Item 1 (ISO = Sigma) and item 3 (center formula).
    worst = std::max({worst, (iso.center - p).norm(), std::abs(iso.radius - sigma.radius), (sigma.center - p).norm()});
    // Item 4: Psi(g^-1)(0) is the inverse point of P.
    const Vec3 star = numer / (2.0 + n2);
    worst = std::max(worst, (oracle::act_ball(g.inverse(), BallPoint::origin()).v - star).norm());
    worst = std::max(worst, (q.isometric_sphere().center / q.isometric_sphere().center.squaredNorm() - star).norm());
    // Items 5 and 6, and 1 + 1/|C|^2 = |P|^2.
    worst = std::max({worst, std::abs(p.squaredNorm() - (2.0 + n2) / (n2 - 2.0)),
                      std::abs(iso.radius * iso.radius - 4.0 / (n2 - 2.0)), std::abs(1.0 + 1.0 / c2 - p.squaredNorm())});
  }
  return {2, "ball-model closed forms", worst <= 1e-9,
          "worst residual " + sci(worst) + " over " + std::to_string(count) + " elements", 0.0};
}

// Criterion 3: factorization and the order-two facts for real traces.
CriterionResult factorization() {
  oracle::Rng rng(1003);
  double pointwise = 0.0, ortho = 0.0, square = 0.0, sigma2 = 0.0;
  for (int k = 0; k < 200; ++k) {
    const MoebiusMap g = oracle::random_element(rng);
    const IsometryFactorization f = factor(g);
    ortho = std::max({ortho, std::abs(f.orthogonal.determinant() + 1.0),
                      (f.orthogonal.transpose() * f.orthogonal - Mat3::Identity()).norm()});
    for (int m = 0; m < 30; ++m) {
      const BallPoint u = oracle::random_ball_point(rng);
      const Vec3 lhs = oracle::act_ball(g, u).v;
      const Vec3 rhs = f.orthogonal * oracle::reflect(f.mirror, u.v);
      pointwise = std::max(pointwise, (lhs - rhs).norm());
    }
  }
  for (int k = 0; k < 200; ++k) {
    const MoebiusMap g = oracle::random_real_trace(rng);
    const IsometryFactorization f = factor(g);
    square = std::max(square, (f.orthogonal * f.orthogonal - Mat3::Identity()).norm());
    const GeneralizedSphere s = bisector_ball(g), s_inv = bisector_ball(g.inverse());
    for (int m = 0; m < 30; ++m) {
      const BallPoint u = oracle::random_ball_point(rng);
      const Vec3 lhs = oracle::reflect(s_inv, oracle::reflect(s, u.v));
      sigma2 = std::max(sigma2, (lhs - oracle::act_ball(g * g, u).v).norm());
    }
  }
  const bool pass = pointwise <= 1e-8 && ortho <= 1e-9 && square <= 1e-9 && sigma2 <= 1e-8;
  return {3, "factorization g = A o sigma", pass,
          "pointwise " + sci(pointwise) + ", det/orthogonality " + sci(ortho) + ", A^2 - I " + sci(square) +
              ", sigma2 " + sci(sigma2),
          0.0};
}

// Criterion 4: angle identities.
CriterionResult angle_identities() {
  oracle::Rng rng(1004);
  double dihedral = 0.0, inverse_pair = 0.0, reflections = 0.0, concentric = 0.0;
  int pairs = 0;
  while (pairs < 200) {
    const MoebiusMap g = oracle::random_element(rng), h = oracle::random_element(rng);
    const GeneralizedSphere sg = bisector_ball(g), sh = bisector_ball(h);
    const double product = inversive_product(sg, sh);
    if (product > 1.0 - 1e-6) continue;
    ++pairs;
    dihedral = std::max(dihedral, std::abs(std::cos(dihedral_angle_ball(g, h)) - product));
  }
  for (int k = 0; k < 200; ++k) {
    const MoebiusMap g = oracle::random_real_trace(rng);
    const double tr = g.trace().real();
    inverse_pair = std::max(inverse_pair, std::abs(oriented_inversive_product(bisector_ball(g), bisector_ball(g.inverse())) -
                                                   (-1.0 + 0.5 * tr * tr)));
  }
  int loxodromic = 0;
  for (int k = 0; k < 200; ++k) {
    GeneralizedSphere s, t;
    if (k == 0) {
      s = GeneralizedSphere::sphere(Model::half, Vec3::Zero(), 1.0);
      t = GeneralizedSphere::sphere(Model::half, Vec3::Zero(), 2.0);
    } else {
      auto draw = [&] {
        if (rng.integer(0, 3) == 0) {
          const double phi = rng.uniform(0.0, 2.0 * kPi);
          return GeneralizedSphere::plane(Model::half, Vec3(std::cos(phi), std::sin(phi), 0.0), rng.uniform(-1.0, 1.0));
        }
        const Complex c = rng.complex(1.5);
        return GeneralizedSphere::sphere(Model::half, Vec3(c.real(), c.imag(), 0.0), rng.uniform(0.3, 2.0));
      };
      s = draw();
      t = draw();
    }
    const ReflectionComposition rc = compose_reflections(s, t);
    reflections = std::max(reflections, rc.product_residual);
    if (rc.cls.kind == IsometryKind::loxodromic) ++loxodromic;
    // The fitted map reproduces the reflections at further boundary points.
    for (Complex z : {Complex(0.3, -0.7), Complex(-1.1, 0.4)}) {
      const Vec3 w = oracle::reflect(s, oracle::reflect(t, Vec3(z.real(), z.imag(), 0.0)));
      const auto fz = apply_boundary(rc.map, z);
      if (fz) reflections = std::max(reflections, std::abs(*fz - Complex(w.x(), w.y())) / (1.0 + w.norm()));
    }
    if (k == 0) concentric = std::max(std::abs(inversive_product(s, t) - 1.25), std::abs(0.5 * std::abs(rc.map.trace()) - 1.25));
  }
  const bool pass = dihedral <= 1e-8 && inverse_pair <= 1e-8 && reflections <= 1e-9 && concentric <= 1e-9 && loxodromic == 0;
  return {4, "angle identities", pass,
          "dihedral " + sci(dihedral) + ", (S_g, S_g^-1) " + sci(inverse_pair) + ", reflections " + sci(reflections) +
              ", concentric 5/4 " + sci(concentric) + ", loxodromic products " + std::to_string(loxodromic),
          0.0};
}

// Criterion 5: half-turn products about two lines.
CriterionResult line_dichotomy() {
  oracle::Rng rng(1005);
  const HyperbolicLine axis = HyperbolicLine::j_axis();
  int wrong = 0, cases = 0;
  for (int k = 0; k < 50; ++k) {
    Complex z0;
    double theta, radius = rng.uniform(0.3, 2.0);
    if (k % 2 == 0) {
      const double alpha = rng.uniform(0.0, 2.0 * kPi);
      z0 = std::polar(rng.uniform(-3.0, 3.0), alpha);
      theta = alpha + (rng.integer(0, 1) ? kPi : 0.0);
    } else {
      do {
        z0 = rng.complex(3.0);
        theta = rng.uniform(0.0, 2.0 * kPi);
      } while (std::abs(std::imag(std::conj(z0) * (z0 + 2.0 * radius * std::polar(1.0, theta)))) < 1e-2);
    }
    const HyperbolicLine line = HyperbolicLine::from_circle(z0, theta, radius);
    const Complex z1 = *line.q;
    // Coplanar with the j-axis iff 0, z0, z1 are collinear.
    const bool expected = std::abs(std::imag(std::conj(z0) * z1)) <= 1e-9 * (1.0 + std::abs(z0) * std::abs(z1));
    const HalfTurnComposition h = compose_line_halfturns(axis, line);
    ++cases;
    if (h.coplanar != expected) ++wrong;
    // Trace from the explicit product: -2 (z0 e^{-i theta} + R) / R.
    const Complex tr = -2.0 * (z0 * std::polar(1.0, -theta) + radius) / radius;
    if (std::min(std::abs(h.map.trace() - tr), std::abs(h.map.trace() + tr)) > 1e-9) ++wrong;
  }
  for (double radius : {0.5, 1.0}) {
    for (double t : {-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0, 3.0}) {
      t *= radius;
      const HalfTurnComposition h = compose_line_halfturns(axis, HyperbolicLine::from_circle(t, 0.0, radius));
      IsometryKind expected = IsometryKind::hyperbolic;
      LineRelation relation = LineRelation::disjoint;
      if (t == 0.0 || t == -2.0 * radius) {
        expected = IsometryKind::parabolic;
        relation = LineRelation::tangent;
      } else if (t > -2.0 * radius && t < 0.0) {
        expected = IsometryKind::elliptic;
        relation = LineRelation::intersecting;
      }
      ++cases;
      if (classify(h.map).kind != expected || h.relation != relation || !h.coplanar) ++wrong;
    }
  }
  return {5, "half-turn dichotomy for two lines", wrong == 0,
          std::to_string(wrong) + " misclassified of " + std::to_string(cases), 0.0};
}

bool has_face(const DomainApprox& d, const GeneralizedSphere& s) {
  return std::any_of(d.faces.begin(), d.faces.end(), [&](const Face& f) { return same_surface(f.surface(), s, 1e-7); });
}

// Criterion 6: the modular group.
CriterionResult modular(const std::string& dir) {
  const GroupSpec spec = load_group_spec(dir + "/modular.json");
  const DomainApprox d = dirichlet(spec, HalfPoint::at(0.0, 0.0, 2.0), 6);
  const std::array<GeneralizedSphere, 3> expected{
      GeneralizedSphere::sphere(Model::half, Vec3::Zero(), 1.0, 2),
      GeneralizedSphere::plane(Model::half, Vec3::UnitX(), -0.5, 2),
      GeneralizedSphere::plane(Model::half, Vec3::UnitX(), 0.5, 2)};
  bool faces_ok = d.faces.size() == 3;
  for (const auto& s : expected) faces_ok = faces_ok && has_face(d, s);
  const DomainApprox f = ford(spec, 6);
  const bool ford_ok = same_faces(d, f);
  const DfVerdict v = df_check(d);
  std::string words;
  for (const Face& face : d.faces) words += (words.empty() ? "" : ", ") + face.label;
  return {6, "modular group domain", faces_ok && ford_ok && v.is_df,
          "faces {" + words + "}, ford " + (ford_ok ? "equal" : "different") + ", is_df " + (v.is_df ? "true" : "false"),
          0.0};
}

// Criterion 7: the rank-two parabolic lattice.
CriterionResult lattice(const std::string& dir) {
  const GroupSpec spec = load_group_spec(dir + "/lattice.json");
  DomainApprox d = dirichlet(spec, HalfPoint::j(), 4);
  bool faces_ok = d.faces.size() == 4;
  for (const Vec3& n : {Vec3::UnitX(), Vec3::UnitY()})
    for (double off : {-0.5, 0.5}) faces_ok = faces_ok && has_face(d, GeneralizedSphere::plane(Model::half, n, off));
  const DfVerdict v = df_check(d);
  const bool vertex_ok = v.ideal_vertex && v.ideal_vertex->infinite;
  const CocompactReport r = cocompact_probe(d, v, spec.torsion_free.value_or(false));
  const bool probe_ok = d.bounded == Boundedness::unbounded && !r.uncovered_ideal_points.empty() &&
                        r.uncovered_ideal_points.front().infinite;
  return {7, "parabolic lattice slab", faces_ok && v.is_df && vertex_ok && probe_ok,
          std::to_string(d.faces.size()) + " faces, is_df " + (v.is_df ? "true" : "false") + ", ideal vertex " +
              (vertex_ok ? "infinity" : "missing") + ", " + std::string(to_string(d.bounded)),
          0.0};
}

// Criterion 8: a pairing with d != conj(a) fails the certifier.
CriterionResult negative_control(const std::string& dir) {
  const MoebiusMap g = MoebiusMap::from_entries(2.0, 1.0, 1.0, 1.0);
  GroupSpec spec;
  spec.name = "cyclic";
  spec.generators.push_back({"G", g});
  const DfVerdict cyclic = df_check(dirichlet(spec, HalfPoint::j(), 3));

  // The modular domain with that pairing added.
  const GroupSpec modular = load_group_spec(dir + "/modular.json");
  DomainApprox d = dirichlet(modular, HalfPoint::at(0.0, 0.0, 2.0), 3);
  const MoebiusMap m = center_mover(d.center);
  d.faces.push_back({{bisector_at_half(g, d.center), 1}, {}, "G", g});
  (void)m;
  const DfVerdict extended = df_check(d);

  double worst = 0.0;
  bool found = false;
  for (const DfVerdict* v : {&cyclic, &extended})
    for (const FaceCheck& c : v->checks)
      if (c.label == "G") {
        found = true;
        worst = std::max(worst, std::abs(c.d_minus_abar - 1.0));
      }
  const bool pass = found && !cyclic.is_df && !extended.is_df && worst <= 1e-12;
  return {8, "negative control (2 1; 1 1)", pass, "| |d - conj(a)| - 1 | = " + sci(worst), 0.0};
}

// Criterion 9: canonical regions.
CriterionResult canonical_regions() {
  oracle::Rng rng(1009);
  int disagreements = 0, samples = 0;
  double boundary = 0.0, equivariance = 0.0, tangency = 0.0;
  for (int k = 0; k < 30; ++k) {
    const MoebiusMap g = oracle::random_real_trace(rng, k % 3);
    const CanonicalRegion r = canreg_region(g);
    const double half_tr = 0.5 * std::abs(g.trace());
    for (int m = 0; m < 1000; ++m) {
      HalfPoint p;
      if (m % 2 == 0) {
        p = oracle::random_half_point(rng);
      } else {
        // Near the region: normal-frame samples mapped back.
        const double height = std::exp(rng.uniform(-2.0, 2.0));
        const double spread = r.shape == CanonicalRegion::Shape::horoball ? 3.0 : 2.0 * r.slope * height;
        const HalfPoint q = r.shape == CanonicalRegion::Shape::horoball
                                ? HalfPoint::at(rng.complex(3.0), r.normal_height * std::exp(rng.uniform(-1.0, 1.0)))
                                : HalfPoint::at(std::polar(rng.uniform(0.0, spread), rng.uniform(0.0, 2.0 * kPi)), height);
        p = act_half(r.normalizer, q);
      }
      ++samples;
      if (r.contains(p) != canreg_contains(g, p)) ++disagreements;
    }
    const MoebiusMap h = oracle::random_element(rng, 1.0, 6.0);
    const MoebiusMap conj = h * g * h.inverse();
    const CanonicalRegion rc = canreg_region(conj);
    for (int m = 0; m < 50; ++m) {
      const HalfPoint b = r.shape == CanonicalRegion::Shape::horoball
                              ? r.boundary_point(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
                              : r.boundary_point(std::exp(rng.uniform(-1.5, 1.5)), rng.uniform(0.0, 2.0 * kPi));
      boundary = std::max(boundary, std::abs(half_displacement(g, b) - half_tr) / std::max(1.0, half_tr));
      // h maps the boundary of Canreg(g) onto the boundary of Canreg(h g h^-1),
      // and g preserves its own region.
      const HalfPoint hb = oracle::act_half(h, b);
      equivariance = std::max(equivariance, std::abs(half_displacement(conj, hb) - half_tr) / std::max(1.0, half_tr));
      equivariance = std::max(equivariance, std::abs(rc.level(hb)) / std::max(1.0, std::abs(rc.level(HalfPoint::j())) + 1.0));
      equivariance = std::max(equivariance, std::abs(r.level(oracle::act_half(g, b))));
    }
    if (k % 3 == 2) {
      for (int m = 0; m < 5; ++m) {
        const Complex z = std::polar(std::exp(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2.0 * kPi));
        const TangencyResidual t = tangency_residual(g, z);
        tangency = std::max({tangency, std::abs(t.analytic), std::abs(t.searched)});
      }
    }
  }
  const bool pass = disagreements == 0 && boundary <= 1e-8 && equivariance <= 1e-7 && tangency <= 1e-7;
  return {9, "canonical regions", pass,
          std::to_string(disagreements) + " disagreements in " + std::to_string(samples) + " samples, boundary " +
              sci(boundary) + ", equivariance " + sci(equivariance) + ", tangency " + sci(tangency),
          0.0};
}

// Criterion 10: figure-eight knot group smoke test.
CriterionResult figure_eight(const std::string& dir) {
  const GroupSpec spec = load_group_spec(dir + "/figure8.json");
  const auto start = std::chrono::steady_clock::now();
  const DomainApprox d = dirichlet(spec, HalfPoint::j(), 4);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const PairingReport pr = pairing_consistency(d);
  double equi = 0.0;
  for (const Face& f : d.faces) equi = std::max(equi, face_equidistance_residual(d, f));
  const bool pass = !d.faces.empty() && secs < 10.0 && pr.consistent && equi <= 1e-8;
  std::string detail = std::to_string(d.faces.size()) + " faces in " + sci(secs) + " s, pairing " +
                       (pr.consistent ? "consistent" : "inconsistent") + ", equidistance " + sci(equi);
  for (const auto& u : pr.unmatched) detail += " [unmatched " + u + "]";
  return {10, "figure-eight knot group", pass, detail, secs};
}

}  // namespace

std::string default_fixture_dir() { return HYPDOM_FIXTURE_DIR; }

std::vector<CriterionResult> run_acceptance(const std::string& fixture_dir, std::ostream& log) {
  const std::vector<std::function<CriterionResult()>> criteria{
      bisector_equidistance,
      ball_closed_forms,
      factorization,
      angle_identities,
      line_dichotomy,
      [&] { return modular(fixture_dir); },
      [&] { return lattice(fixture_dir); },
      [&] { return negative_control(fixture_dir); },
      canonical_regions,
      [&] { return figure_eight(fixture_dir); },
  };
  std::vector<CriterionResult> out;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = criteria[k]();
    } catch (const std::exception& e) {
      r = {static_cast<int>(k + 1), "criterion " + std::to_string(k + 1), false, std::string("threw: ") + e.what(), 0.0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.id == 6 && r.seconds >= 5.0) {
      r.pass = false;
      r.detail += " (over the 5 s budget)";
    }
    log << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " -- " << r.detail << " ["
        << sci(r.seconds) << " s]\n"
        << std::flush;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hypdom
