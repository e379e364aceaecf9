#pragma once

// Word-ball enumeration, approximate Dirichlet and Ford domains, and the
// Dirichlet-Ford certifier.

#include <optional>
#include <string>
#include <vector>

#include "hypdom/algebra.hpp"
#include "hypdom/bisectors.hpp"
#include "hypdom/models.hpp"
#include "hypdom/sphere.hpp"

namespace hypdom {

struct NamedGenerator {
  std::string name;
  MoebiusMap map;
};

struct GroupSpec {
  std::string name;
  int model_dim = 3;
  std::vector<NamedGenerator> generators;
  /// Generators of the stabilizer of infinity (translations), for Ford mode.
  std::vector<NamedGenerator> peripheral;
  /// Fundamental region of the center stabilizer, as half-model half-spaces.
  std::vector<HalfSpace> stabilizer_region;
  /// Caller's assertion; unset when unknown.
  std::optional<bool> torsion_free;
};

/// Letter 2k is generator k, letter 2k + 1 its inverse.
using Word = std::vector<int>;

/// Shortlex order: shorter first, then lexicographic on letters.
bool shortlex_less(const Word& u, const Word& v);

/// Renders a word over the given names as "S*T^-1"; the empty word is "1".
std::string word_text(const Word& w, const std::vector<NamedGenerator>& alphabet);

MoebiusMap evaluate(const Word& w, const std::vector<NamedGenerator>& alphabet);

struct WordElement {
  Word word;
  MoebiusMap map;
};

struct WordBall {
  /// One representative per bisector (coset of the center stabilizer), in
  /// shortlex order.
  std::vector<WordElement> elements;
  /// Nontrivial elements fixing the center.
  std::vector<WordElement> stabilizer;
  int max_length = 0;
  /// Distinct group elements reached (identity excluded).
  std::size_t distinct_elements = 0;
  /// Elements dropped because an earlier element has the same bisector.
  std::size_t coset_duplicates = 0;
};

/// All elements of word length 1..max_length, deduplicated. The elements
/// are reached breadth-first; each is extended only from its shortlex-first
/// word, which yields the same element set as evaluating every reduced word.
WordBall enumerate(const GroupSpec& spec, int max_length, const HalfPoint& center,
                   const Tolerance& tol = kDefaultTolerance);

enum class Boundedness { bounded, unbounded, unknown };

std::string_view to_string(Boundedness b);

struct Face {
  /// Half-model surface together with the side containing the domain.
  HalfSpace side;
  Word word;
  std::string label;
  MoebiusMap pairing;

  const GeneralizedSphere& surface() const { return side.surface; }
};

struct DomainApprox {
  enum class Kind { dirichlet, ford };

  Kind kind = Kind::dirichlet;
  HalfPoint center;
  int model_dim = 3;
  int max_length = 0;
  std::vector<Face> faces;
  bool stabilizer_nontrivial = false;
  bool possibly_incomplete = true;
  Boundedness bounded = Boundedness::unknown;
  std::vector<std::string> stabilizer_words;
  /// First elliptic element met in the word ball, if any.
  std::optional<std::string> torsion_witness;
  std::optional<bool> torsion_free;
  std::vector<std::string> notes;
};

/// Dirichlet domain with the given half-model center. Candidate faces are
/// the bisectors of the word-ball elements; a candidate is kept when some
/// sample of its surface (grid step 1e-2 in centered ball coordinates) lies
/// strictly outside every other candidate and inside the F0 region.
/// Throws CenterFixedByGenerator when a generator fixes the center and the
/// spec carries no F0 region.
DomainApprox dirichlet(const GroupSpec& spec, const HalfPoint& center, int max_length,
                       const Tolerance& tol = kDefaultTolerance);

/// Ford domain: isometric spheres of the word-ball elements with c != 0
/// inside the Voronoi cell (about 0) of the translation lattice generated by
/// the peripheral generators. Throws MissingPeripheral.
DomainApprox ford(const GroupSpec& spec, int max_length, const Tolerance& tol = kDefaultTolerance);

/// Same surfaces (as sets, order ignored).
bool same_faces(const DomainApprox& a, const DomainApprox& b, double tol = 1e-7);

/// Distance between the center and a sampled point of the face, minus the
/// distance to the paired image of the center; max over samples.
double face_equidistance_residual(const DomainApprox& d, const Face& f, int samples = 8);

/// Whether each pairing element maps its face onto a listed face surface.
struct PairingReport {
  bool consistent = true;
  std::vector<std::string> unmatched;
};
PairingReport pairing_consistency(const DomainApprox& d, double tol = 1e-7);

struct FaceCheck {
  std::string label;
  /// |d - conj(a)| after conjugating the center to j.
  double d_minus_abar = 0.0;
  bool plane_at_infinity = false;
  bool passes = false;
};

struct DfVerdict {
  bool is_df = false;
  std::vector<FaceCheck> checks;
  /// Common +1 eigenvector of all A_g, in the ball frame centered at the
  /// domain center.
  std::optional<Vec3> common_direction;
  std::optional<HalfPoint> ideal_vertex;
  /// Further centers with the same Dirichlet domain (DC property).
  std::vector<HalfPoint> second_centers;
  std::vector<std::string> notes;
};

/// Throws EmptyDomain for a domain without faces.
DfVerdict df_check(const DomainApprox& domain, const Tolerance& tol = kDefaultTolerance);

struct CocompactReport {
  std::vector<HalfPoint> uncovered_ideal_points;
  std::vector<std::string> notes;
};

/// For a DF domain of a torsion-free group: checks that no face meets the
/// line through the center along the common direction and reports the
/// ideal endpoints of that line not covered by any face; sets
/// domain.bounded = unbounded. Throws NotApplicable or Inconsistent.
CocompactReport cocompact_probe(DomainApprox& domain, const DfVerdict& verdict, bool torsion_free,
                                const Tolerance& tol = kDefaultTolerance);

}  // namespace hypdom
