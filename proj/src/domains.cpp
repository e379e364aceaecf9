#include "hypdom/domains.hpp"

#include "hypdom/decomposition.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <thread>

namespace hypdom {

namespace {

constexpr double kPi = std::numbers::pi;
// Strict-exterior margin for the redundancy test; samples closer than this
// to another surface count as covered (tangencies, shared edges).
constexpr double kMargin = 1e-10;

MoebiusMap letter_map(const std::vector<NamedGenerator>& alphabet, int letter) {
  const MoebiusMap& g = alphabet.at(static_cast<std::size_t>(letter / 2)).map;
  return letter % 2 == 0 ? g : g.inverse();
}

// Exact-match key for group elements: entries rounded to 1e-6. A pair of
// equal elements split by a rounding boundary only costs a repeated
// extension; the coset index below catches it.
using ElementKey = std::array<long long, 8>;

ElementKey element_key(const MoebiusMap& g) {
  ElementKey k{};
  const auto e = g.entries();
  for (int i = 0; i < 4; ++i) {
    k[2 * i] = std::llround(e[i].real() * 1e6);
    k[2 * i + 1] = std::llround(e[i].imag() * 1e6);
  }
  return k;
}

// Interior points of the upper half-space indexed for near-duplicate
// lookup: cells in (log r, x / r, y / r), with neighbors searched.
class PointIndex {
 public:
  /// Index of a stored point within hyperbolic distance ~1e-6 of p.
  std::optional<std::size_t> find(const Vec3& p) const {
    const long long b = std::llround(std::log(p.z()) / kStep);
    for (long long db = -1; db <= 1; ++db) {
      const double rb = std::exp(static_cast<double>(b + db) * kStep);
      const long long kx = std::llround(p.x() / (rb * kStep));
      const long long ky = std::llround(p.y() / (rb * kStep));
      for (long long dx = -1; dx <= 1; ++dx)
        for (long long dy = -1; dy <= 1; ++dy) {
          const auto it = cells_.find({b + db, kx + dx, ky + dy});
          if (it == cells_.end()) continue;
          for (std::size_t idx : it->second) {
            const Vec3& q = points_[idx];
            if ((p - q).squaredNorm() / (2.0 * p.z() * q.z()) <= 5e-13) return idx;
          }
        }
    }
    return std::nullopt;
  }

  std::size_t insert(const Vec3& p) {
    const long long b = std::llround(std::log(p.z()) / kStep);
    const double rb = std::exp(static_cast<double>(b) * kStep);
    const std::array<long long, 3> key{b, std::llround(p.x() / (rb * kStep)), std::llround(p.y() / (rb * kStep))};
    points_.push_back(p);
    cells_[key].push_back(points_.size() - 1);
    return points_.size() - 1;
  }

 private:
  static constexpr double kStep = 1e-5;
  std::vector<Vec3> points_;
  std::map<std::array<long long, 3>, std::vector<std::size_t>> cells_;
};

// Distinct nontrivial elements of word length <= max_length in shortlex
// order of their first words.
std::vector<WordElement> bfs_elements(const std::vector<NamedGenerator>& alphabet, int max_length) {
  const int letters = 2 * static_cast<int>(alphabet.size());
  std::vector<MoebiusMap> maps;
  for (int l = 0; l < letters; ++l) maps.push_back(letter_map(alphabet, l));

  std::map<ElementKey, std::size_t> seen;
  seen[element_key(MoebiusMap::identity())] = 0;
  std::vector<WordElement> out;
  std::vector<WordElement> frontier{WordElement{{}, MoebiusMap::identity()}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<WordElement> next;
    for (const WordElement& w : frontier) {
      for (int l = 0; l < letters; ++l) {
        if (!w.word.empty() && l == (w.word.back() ^ 1)) continue;
        WordElement e{w.word, w.map * maps[l]};
        e.word.push_back(l);
        if (!seen.emplace(element_key(e.map), out.size() + 1).second) continue;
        next.push_back(e);
        out.push_back(std::move(e));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Samples of the part of a ball-model sphere inside the unit ball; `step` is
// the arc-length spacing. In dim 2 only points of the slice y = 0.
std::vector<Vec3> cap_samples(const GeneralizedSphere& s, double step, int max_rings) {
  const Vec3 axis = -s.center.normalized();
  const double max_angle = std::acos(std::clamp(s.radius / s.center.norm(), -1.0, 1.0));
  Vec3 u = Vec3::UnitY().cross(axis);
  if (u.norm() < 1e-8) u = axis.cross(Vec3::UnitX());
  u.normalize();
  const Vec3 w = axis.cross(u).normalized();

  const int rings = std::clamp(static_cast<int>(std::ceil(s.radius * max_angle / step)), 2, max_rings);
  std::vector<Vec3> out;
  for (int k = 0; k < rings; ++k) {
    const double polar = max_angle * (k + 0.5) / rings;
    if (s.dim == 2) {
      for (double sign : {1.0, -1.0})
        out.push_back(s.center + s.radius * (std::cos(polar) * axis + sign * std::sin(polar) * u));
      continue;
    }
    const int az = std::clamp(static_cast<int>(std::ceil(2.0 * kPi * s.radius * std::sin(polar) / step)), 6,
                              4 * max_rings);
    for (int m = 0; m < az; ++m) {
      const double phi = 2.0 * kPi * (m + 0.25) / az;
      out.push_back(s.center + s.radius * (std::cos(polar) * axis +
                                           std::sin(polar) * (std::cos(phi) * u + std::sin(phi) * w)));
    }
  }
  return out;
}

// Samples of a half-model hemisphere; `step` is the angular spacing.
std::vector<Vec3> hemisphere_samples(const GeneralizedSphere& s, double step, int max_rings) {
  std::vector<Vec3> out;
  const int rings = std::clamp(static_cast<int>(std::ceil(0.5 * kPi / step)), 2, max_rings);
  for (int k = 0; k < rings; ++k) {
    const double psi = 0.5 * kPi * (k + 0.5) / rings;
    if (s.dim == 2) {
      for (double sign : {1.0, -1.0})
        out.push_back(s.center + s.radius * Vec3(sign * std::sin(psi), 0.0, std::cos(psi)));
      continue;
    }
    const int az = std::clamp(static_cast<int>(std::ceil(2.0 * kPi * std::sin(psi) / step)), 6, 4 * max_rings);
    for (int m = 0; m < az; ++m) {
      const double phi = 2.0 * kPi * (m + 0.25) / az;
      out.push_back(s.center + s.radius * Vec3(std::cos(phi) * std::sin(psi), std::sin(phi) * std::sin(psi),
                                               std::cos(psi)));
    }
  }
  return out;
}

// Signed clearance of p from the closed half-space "inside" of a candidate:
// positive when p lies strictly on the domain side.
double clearance(const HalfSpace& h, const Vec3& p) {
  const GeneralizedSphere& s = h.surface;
  if (s.is_sphere()) return h.sign * ((p - s.center).norm() - s.radius);
  return h.sign * (s.normal.dot(p) - s.offset);
}

// keep[i] is true when some sample of candidate i clears every other
// candidate and the extra constraint. Coarse samples first, then fine.
// Candidates are processed concurrently; the result does not depend on
// scheduling.
std::vector<bool> prune(const std::vector<HalfSpace>& cands, const std::vector<bool>& active,
                        const std::function<std::vector<Vec3>(std::size_t, bool)>& samples,
                        const std::function<bool(const Vec3&)>& extra) {
  const std::size_t n = cands.size();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (active[i]) order.push_back(i);

  auto survives = [&](std::size_t i, const Vec3& p, std::size_t& cache) {
    if (cache != i && active[cache] && clearance(cands[cache], p) <= kMargin) return false;
    for (std::size_t j : order) {
      if (j == i) continue;
      if (clearance(cands[j], p) <= kMargin) {
        cache = j;
        return false;
      }
    }
    return extra(p);
  };

  std::vector<char> keep(n, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) {
      const std::size_t i = order[k];
      std::size_t cache = i;
      for (bool fine : {false, true}) {
        for (const Vec3& p : samples(i, fine))
          if (survives(i, p, cache)) {
            keep[i] = 1;
            break;
          }
        if (keep[i]) break;
      }
    }
  };
  const unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  const unsigned threads = order.size() > 16 ? hw : 1;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return {keep.begin(), keep.end()};
}

GeneralizedSphere with_dim(GeneralizedSphere s, int dim) {
  s.dim = dim;
  if (dim == 2) {
    if (s.is_sphere()) s.center.y() = 0.0;
  }
  return s;
}

// Surface of a half-model face in the ball frame centered at `center`.
GeneralizedSphere centered_ball_surface(const GeneralizedSphere& s, const MoebiusMap& mover) {
  return to_ball(affine_image(s, mover.inverse()));
}

void check_center(const HalfPoint& center, int dim) {
  if (!center.is_interior()) throw Error(ErrorCode::BoundaryPoint, "domain center must be an interior point");
  if (dim == 2 && std::abs(center.z.imag()) > 0.0)
    throw Error(ErrorCode::InvalidArgument, "2-D centers lie in the slice y = 0");
}

std::optional<std::string> find_torsion(const std::vector<WordElement>& elems,
                                        const std::vector<NamedGenerator>& alphabet, const Tolerance& tol) {
  for (const WordElement& e : elems)
    if (classify(e.map, tol).kind == IsometryKind::elliptic) return word_text(e.word, alphabet);
  return std::nullopt;
}

}  // namespace

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u < v;
}

std::string word_text(const Word& w, const std::vector<NamedGenerator>& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < w.size();) {
    std::size_t run = 1;
    while (k + run < w.size() && w[k + run] == w[k]) ++run;
    if (!out.empty()) out += '*';
    out += alphabet.at(static_cast<std::size_t>(w[k] / 2)).name;
    const long long power = (w[k] % 2 == 0 ? 1 : -1) * static_cast<long long>(run);
    if (power != 1) out += "^" + std::to_string(power);
    k += run;
  }
  return out;
}

MoebiusMap evaluate(const Word& w, const std::vector<NamedGenerator>& alphabet) {
  MoebiusMap m;
  for (int l : w) m = m * letter_map(alphabet, l);
  return m;
}

std::string_view to_string(Boundedness b) {
  switch (b) {
    case Boundedness::bounded: return "bounded";
    case Boundedness::unbounded: return "unbounded";
    case Boundedness::unknown: return "unknown";
  }
  return "?";
}

WordBall enumerate(const GroupSpec& spec, int max_length, const HalfPoint& center, const Tolerance& tol) {
  if (max_length < 1) throw Error(ErrorCode::InvalidArgument, "max_length must be at least 1");
  check_center(center, 3);
  const MoebiusMap m = center_mover(center);
  const MoebiusMap m_inv = m.inverse();

  WordBall ball;
  ball.max_length = max_length;
  const auto elems = bfs_elements(spec.generators, max_length);
  ball.distinct_elements = elems.size();
  PointIndex index;
  for (const WordElement& e : elems) {
    const MoebiusMap h = m_inv * e.map * m;
    if (h.is_unitary(tol.alg)) {
      ball.stabilizer.push_back(e);
      continue;
    }
    const Vec3 p = act_half(h.inverse(), HalfPoint::j()).vec();
    if (index.find(p)) {
      ++ball.coset_duplicates;
      continue;
    }
    index.insert(p);
    ball.elements.push_back(e);
  }
  return ball;
}

DomainApprox dirichlet(const GroupSpec& spec, const HalfPoint& center, int max_length, const Tolerance& tol) {
  const int dim = spec.model_dim;
  check_center(center, dim);
  const MoebiusMap m = center_mover(center);
  const MoebiusMap m_inv = m.inverse();

  if (spec.stabilizer_region.empty())
    for (const NamedGenerator& g : spec.generators)
      if ((m_inv * g.map * m).is_unitary(tol.alg))
        throw Error(ErrorCode::CenterFixedByGenerator,
                    "generator " + g.name + " fixes the center; supply stabilizer_region or move the center");

  const WordBall ball = enumerate(spec, max_length, center, tol);

  DomainApprox d;
  d.kind = DomainApprox::Kind::dirichlet;
  d.center = center;
  d.model_dim = dim;
  d.max_length = max_length;
  d.torsion_free = spec.torsion_free;
  for (const WordElement& e : ball.stabilizer) d.stabilizer_words.push_back(word_text(e.word, spec.generators));
  d.stabilizer_nontrivial = !ball.stabilizer.empty();
  if (d.stabilizer_nontrivial && spec.stabilizer_region.empty())
    d.notes.push_back("center has a nontrivial stabilizer; faces are reported without F0, "
                      "a center moved along the vertical axis avoids this");
  std::vector<WordElement> all = ball.elements;
  all.insert(all.end(), ball.stabilizer.begin(), ball.stabilizer.end());
  d.torsion_witness = find_torsion(all, spec.generators, tol);

  const std::size_t n = ball.elements.size();
  std::vector<HalfSpace> ball_cands;
  std::vector<GeneralizedSphere> half_surfaces;
  for (const WordElement& e : ball.elements) {
    const MoebiusMap h = m_inv * e.map * m;
    ball_cands.push_back({with_dim(bisector_ball(h, tol), dim), 1});
    half_surfaces.push_back(with_dim(affine_image(bisector_half(h, tol), m), dim));
  }

  auto samples = [&](std::size_t i, bool fine) {
    return fine ? cap_samples(ball_cands[i].surface, 1e-2, 300) : cap_samples(ball_cands[i].surface, 0.1, 12);
  };
  auto extra = [&](const Vec3& p) {
    if (spec.stabilizer_region.empty()) return true;
    const Vec3 q = act_half(m, cayley_inverse(BallPoint::at(p))).vec();
    return std::all_of(spec.stabilizer_region.begin(), spec.stabilizer_region.end(),
                       [&](const HalfSpace& h) { return h.contains(q, kMargin); });
  };

  const std::vector<bool> keep = prune(ball_cands, std::vector<bool>(n, true), samples, extra);
  if (max_length >= 2) {
    std::vector<bool> shorter(n);
    for (std::size_t i = 0; i < n; ++i)
      shorter[i] = static_cast<int>(ball.elements[i].word.size()) <= max_length - 1;
    d.possibly_incomplete = prune(ball_cands, shorter, samples, extra) != keep;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    const WordElement& e = ball.elements[i];
    const GeneralizedSphere& s = half_surfaces[i];
    const int sign = s.is_plane() && s.power(center.vec()) < 0.0 ? -1 : 1;
    d.faces.push_back({{s, sign}, e.word, word_text(e.word, spec.generators), e.map});
  }
  return d;
}

DomainApprox ford(const GroupSpec& spec, int max_length, const Tolerance& tol) {
  if (spec.peripheral.empty())
    throw Error(ErrorCode::MissingPeripheral, "Ford mode needs generators of the stabilizer of infinity");
  if (max_length < 1) throw Error(ErrorCode::InvalidArgument, "max_length must be at least 1");
  const int dim = spec.model_dim;

  // Alphabet: the main generators, then peripheral generators not among them.
  std::vector<NamedGenerator> alphabet = spec.generators;
  std::vector<int> peripheral_slot;
  for (const NamedGenerator& p : spec.peripheral) {
    const Complex a = p.map.a(), d = p.map.d();
    if (std::abs(p.map.c()) > tol.alg || std::abs(a - d) > tol.alg || std::abs(a * a - 1.0) > tol.alg)
      throw Error(ErrorCode::InvalidArgument, "peripheral generator " + p.name + " is not a translation");
    if (dim == 2 && std::abs(p.map.b().imag()) > tol.alg)
      throw Error(ErrorCode::InvalidArgument, "2-D peripheral translations must be real");
    auto it = std::find_if(alphabet.begin(), alphabet.end(), [&](const NamedGenerator& g) { return g.name == p.name; });
    if (it == alphabet.end()) {
      alphabet.push_back(p);
      it = alphabet.end() - 1;
    }
    peripheral_slot.push_back(static_cast<int>(it - alphabet.begin()));
  }

  DomainApprox d;
  d.kind = DomainApprox::Kind::ford;
  d.model_dim = dim;
  d.max_length = max_length;
  d.torsion_free = spec.torsion_free;

  // Slab: Voronoi cell about 0 of the translation lattice.
  std::vector<HalfSpace> slab_cands;
  std::vector<WordElement> slab_elems;
  double max_shift = 0.0;
  for (WordElement e : bfs_elements(spec.peripheral, 4)) {
    const Complex tau = e.map.b() / e.map.d();
    if (std::abs(tau) <= tol.alg) continue;
    for (int& l : e.word) l = 2 * peripheral_slot[static_cast<std::size_t>(l / 2)] + (l % 2);
    const double t = std::abs(tau);
    max_shift = std::max(max_shift, t);
    slab_cands.push_back({GeneralizedSphere::plane(Model::half, Vec3(tau.real() / t, tau.imag() / t, 0.0), -t / 2.0, dim), 1});
    slab_elems.push_back(std::move(e));
  }
  const double window = 4.0 * max_shift;
  auto slab_samples = [&](std::size_t i, bool fine) {
    const GeneralizedSphere& s = slab_cands[i].surface;
    const Vec3 base = s.offset * s.normal;
    if (dim == 2) return std::vector<Vec3>{base + Vec3::UnitZ()};
    const Vec3 along(-s.normal.y(), s.normal.x(), 0.0);
    const int count = fine ? 2000 : 40;
    std::vector<Vec3> out;
    for (int k = 0; k < count; ++k) out.push_back(base + (-window + 2.0 * window * (k + 0.5) / count) * along + Vec3::UnitZ());
    return out;
  };
  const std::vector<bool> slab_keep =
      prune(slab_cands, std::vector<bool>(slab_cands.size(), true), slab_samples, [](const Vec3&) { return true; });
  std::vector<HalfSpace> slab;
  for (std::size_t i = 0; i < slab_cands.size(); ++i)
    if (slab_keep[i]) slab.push_back(slab_cands[i]);

  // Isometric spheres, one per surface.
  const auto elems = bfs_elements(spec.generators, max_length);
  d.torsion_witness = find_torsion(elems, spec.generators, tol);
  std::vector<HalfSpace> iso_cands;
  std::vector<WordElement> iso_elems;
  PointIndex index;
  double max_radius = 1.0;
  for (const WordElement& e : elems) {
    if (std::abs(e.map.c()) <= tol.alg) continue;
    const GeneralizedSphere s = with_dim(iso_sphere_half(e.map, tol), dim);
    const Vec3 top = s.center + s.radius * Vec3::UnitZ();
    if (index.find(top)) continue;
    index.insert(top);
    max_radius = std::max(max_radius, s.radius);
    iso_cands.push_back({s, 1});
    iso_elems.push_back(e);
  }
  auto iso_samples = [&](std::size_t i, bool fine) {
    return fine ? hemisphere_samples(iso_cands[i].surface, 1e-2, 300)
                : hemisphere_samples(iso_cands[i].surface, 0.1, 16);
  };
  auto in_slab = [&](const Vec3& p) {
    return std::all_of(slab.begin(), slab.end(), [&](const HalfSpace& h) { return clearance(h, p) > kMargin; });
  };
  const std::size_t n = iso_cands.size();
  const std::vector<bool> keep = prune(iso_cands, std::vector<bool>(n, true), iso_samples, in_slab);
  if (max_length >= 2) {
    std::vector<bool> shorter(n);
    for (std::size_t i = 0; i < n; ++i) shorter[i] = static_cast<int>(iso_elems[i].word.size()) <= max_length - 1;
    d.possibly_incomplete = prune(iso_cands, shorter, iso_samples, in_slab) != keep;
  }

  d.center = HalfPoint::at(0.0, 0.0, 2.0 * max_radius);
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i])
      d.faces.push_back({iso_cands[i], iso_elems[i].word, word_text(iso_elems[i].word, alphabet), iso_elems[i].map});
  for (std::size_t i = 0; i < slab_cands.size(); ++i)
    if (slab_keep[i])
      d.faces.push_back({slab_cands[i], slab_elems[i].word, word_text(slab_elems[i].word, alphabet), slab_elems[i].map});
  std::stable_sort(d.faces.begin(), d.faces.end(),
                   [](const Face& a, const Face& b) { return shortlex_less(a.word, b.word); });
  return d;
}

bool same_faces(const DomainApprox& a, const DomainApprox& b, double tol) {
  if (a.faces.size() != b.faces.size()) return false;
  auto covered = [&](const DomainApprox& x, const DomainApprox& y) {
    return std::all_of(x.faces.begin(), x.faces.end(), [&](const Face& f) {
      return std::any_of(y.faces.begin(), y.faces.end(),
                         [&](const Face& g) { return same_surface(f.surface(), g.surface(), tol); });
    });
  };
  return covered(a, b) && covered(b, a);
}

double face_equidistance_residual(const DomainApprox& d, const Face& f, int samples) {
  const HalfPoint other = act_half(f.pairing.inverse(), d.center);
  double worst = 0.0;
  for (const Vec3& p : sample_surface(f.surface(), samples)) {
    if (!(p.z() > 0.0)) continue;
    const HalfPoint u = HalfPoint::from_vec(p);
    worst = std::max(worst, std::abs(dist_half(d.center, u) - dist_half(u, other)));
  }
  return worst;
}

PairingReport pairing_consistency(const DomainApprox& d, double tol) {
  PairingReport r;
  for (const Face& f : d.faces) {
    const GeneralizedSphere img = image(f.surface(), f.pairing);
    const bool found = std::any_of(d.faces.begin(), d.faces.end(),
                                   [&](const Face& g) { return same_surface(img, g.surface(), tol); });
    if (!found) {
      r.consistent = false;
      r.unmatched.push_back(f.label);
    }
  }
  return r;
}

DfVerdict df_check(const DomainApprox& domain, const Tolerance& tol) {
  if (domain.faces.empty()) throw Error(ErrorCode::EmptyDomain, "domain has no faces");
  const MoebiusMap m = center_mover(domain.center);
  const MoebiusMap m_inv = m.inverse();

  DfVerdict v;
  v.is_df = true;
  std::vector<MoebiusMap> conjugated;
  for (const Face& f : domain.faces) {
    const MoebiusMap h = m_inv * f.pairing * m;
    FaceCheck c;
    c.label = f.label;
    c.d_minus_abar = std::abs(h.d() - std::conj(h.a()));
    c.plane_at_infinity = std::abs(h.c()) <= tol.alg && f.surface().is_plane();
    c.passes = c.plane_at_infinity || c.d_minus_abar <= tol.alg;
    v.is_df = v.is_df && c.passes;
    v.checks.push_back(c);
    conjugated.push_back(h);
  }
  if (!v.is_df) return v;

  // Common +1 eigenvector: null space of the stacked A_g - I.
  Eigen::MatrixXd stack(3 * conjugated.size(), 3);
  for (std::size_t k = 0; k < conjugated.size(); ++k)
    stack.block<3, 3>(3 * static_cast<Eigen::Index>(k), 0) = factor(conjugated[k], tol).orthogonal - Mat3::Identity();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeFullV);
  if (svd.singularValues()(2) > 1e-7) {
    v.notes.push_back("the orthogonal parts share no fixed direction");
    return v;
  }
  Vec3 dir = svd.matrixV().col(2);
  if (dir.z() < 0.0 || (dir.z() == 0.0 && dir.x() + dir.y() < 0.0)) dir = -dir;
  if ((dir - Vec3::UnitZ()).norm() <= 1e-9) dir = Vec3::UnitZ();
  v.common_direction = dir;

  for (double t : {1.0 / 3.0, 0.5}) v.second_centers.push_back(act_half(m, cayley_inverse(BallPoint::at(t * dir))));

  const bool torsion_free = domain.torsion_free.value_or(false) && !domain.torsion_witness;
  if (!torsion_free) {
    v.notes.push_back("ideal vertex reported for torsion-free groups only");
    return v;
  }
  std::vector<GeneralizedSphere> surfaces;
  for (const Face& f : domain.faces) surfaces.push_back(centered_ball_surface(f.surface(), m));
  for (double sign : {1.0, -1.0}) {
    const Vec3 p = sign * dir;
    const bool covered = std::any_of(surfaces.begin(), surfaces.end(), [&](const GeneralizedSphere& s) {
      return s.is_sphere() && (p - s.center).norm() < s.radius - tol.geo;
    });
    if (!covered) {
      v.ideal_vertex = act_half(m, cayley_inverse(BallPoint::at(p)));
      break;
    }
  }
  return v;
}

CocompactReport cocompact_probe(DomainApprox& domain, const DfVerdict& verdict, bool torsion_free,
                                const Tolerance& tol) {
  if (!torsion_free) throw Error(ErrorCode::NotApplicable, "the probe needs a torsion-free group");
  if (domain.torsion_witness)
    throw Error(ErrorCode::NotApplicable, "torsion element " + *domain.torsion_witness + " in the word ball");
  if (!verdict.is_df) throw Error(ErrorCode::NotApplicable, "domain is not Dirichlet-Ford");
  if (!verdict.common_direction) throw Error(ErrorCode::NotApplicable, "no common fixed direction");

  const MoebiusMap m = center_mover(domain.center);
  const Vec3 dir = *verdict.common_direction;
  CocompactReport r;
  std::vector<GeneralizedSphere> surfaces;
  for (const Face& f : domain.faces) {
    const GeneralizedSphere s = centered_ball_surface(f.surface(), m);
    // A face meeting the line through the center along dir would carry a
    // fixed point of its pairing.
    if (s.is_plane() || std::abs(dir.dot(s.center)) > 1.0 + tol.geo)
      throw Error(ErrorCode::Inconsistent, "face " + f.label + " meets the line through the center");
    surfaces.push_back(s);
  }
  for (double sign : {1.0, -1.0}) {
    const Vec3 p = sign * dir;
    const bool covered = std::any_of(surfaces.begin(), surfaces.end(), [&](const GeneralizedSphere& s) {
      return (p - s.center).norm() < s.radius - tol.geo;
    });
    if (!covered) r.uncovered_ideal_points.push_back(act_half(m, cayley_inverse(BallPoint::at(p))));
  }
  if (r.uncovered_ideal_points.empty())
    throw Error(ErrorCode::Inconsistent, "both ends of the line are covered by faces");
  domain.bounded = Boundedness::unbounded;
  r.notes.push_back("uncovered ideal points lie in the closure of the domain; it is not compact");
  return r;
}

}  // namespace hypdom
