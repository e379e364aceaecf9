#include "hypdom/algebra.hpp"

#include <cmath>
#include <numbers>

namespace hypdom {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::NoBisector: return "NoBisector";
    case ErrorCode::Unitary: return "Unitary";
    case ErrorCode::NoIsometricSphere: return "NoIsometricSphere";
    case ErrorCode::PlaneBisector: return "PlaneBisector";
    case ErrorCode::Disjoint: return "Disjoint";
    case ErrorCode::Fixes: return "Fixes";
    case ErrorCode::CenterDegenerate: return "CenterDegenerate";
    case ErrorCode::NotDFShape: return "NotDFShape";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::Equal: return "Equal";
    case ErrorCode::CenterFixedByGenerator: return "CenterFixedByGenerator";
    case ErrorCode::MissingPeripheral: return "MissingPeripheral";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::Identity: return "Identity";
    case ErrorCode::Loxodromic: return "Loxodromic";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DeterminantError: return "DeterminantError";
  }
  return "Unknown";
}

// --- Quaternion -----------------------------------------------------------

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw Error(ErrorCode::NonInvertible, "zero quaternion has no inverse");
  const double s = 1.0 / n2;
  return {w * s, -x * s, -y * s, -z * s};
}

Quaternion& Quaternion::operator+=(const Quaternion& o) {
  w += o.w;
  x += o.x;
  y += o.y;
  z += o.z;
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o) {
  w -= o.w;
  x -= o.x;
  y -= o.y;
  z -= o.z;
  return *this;
}

Quaternion& Quaternion::operator*=(double s) {
  w *= s;
  x *= s;
  y *= s;
  z *= s;
  return *this;
}

Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
Quaternion operator-(const Quaternion& p) { return {-p.w, -p.x, -p.y, -p.z}; }
Quaternion operator*(double s, Quaternion p) { return p *= s; }

Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "(" << q.w << " + " << q.x << "i + " << q.y << "j + " << q.z << "k)";
}

// --- MoebiusMap -----------------------------------------------------------

namespace {

// Sign rule: the first entry of modulus above tol must have argument in
// (-pi/2, pi/2]. Near-imaginary entries are decided by the imaginary part so
// rounding noise in the real part cannot flip the choice.
bool needs_flip(const std::array<Complex, 4>& e, double tol) {
  for (const Complex& x : e) {
    const double m = std::abs(x);
    if (m <= tol) continue;
    if (std::abs(x.real()) > 1e-9 * m) return x.real() < 0.0;
    return x.imag() < 0.0;
  }
  return false;
}

}  // namespace

MoebiusMap MoebiusMap::from_entries(Complex a, Complex b, Complex c, Complex d, double tol) {
  const Complex det = a * d - b * c;
  if (!std::isfinite(det.real()) || !std::isfinite(det.imag()) || std::abs(det) < tol)
    throw Error(ErrorCode::NonInvertible, "matrix determinant is (numerically) zero");
  const Complex s = std::sqrt(det);
  a /= s;
  b /= s;
  c /= s;
  d /= s;
  if (needs_flip({a, b, c, d}, tol)) {
    a = -a;
    b = -b;
    c = -c;
    d = -d;
  }
  return {a, b, c, d};
}

double MoebiusMap::norm2() const {
  return std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_);
}

MoebiusMap MoebiusMap::inverse() const { return from_entries(d_, -b_, -c_, a_); }

MoebiusMap MoebiusMap::negated() const { return {-a_, -b_, -c_, -d_}; }

MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h) {
  return MoebiusMap::from_entries(g.a() * h.a() + g.b() * h.c(), g.a() * h.b() + g.b() * h.d(),
                                  g.c() * h.a() + g.d() * h.c(), g.c() * h.b() + g.d() * h.d());
}

std::ostream& operator<<(std::ostream& os, const MoebiusMap& g) {
  return os << "[" << g.a() << " " << g.b() << "; " << g.c() << " " << g.d() << "]";
}

double psl_distance(const MoebiusMap& g, const MoebiusMap& h) {
  const auto ge = g.entries();
  const auto he = h.entries();
  double plus = 0.0, minus = 0.0;
  for (int k = 0; k < 4; ++k) {
    plus = std::max(plus, std::abs(ge[k] - he[k]));
    minus = std::max(minus, std::abs(ge[k] + he[k]));
  }
  return std::min(plus, minus);
}

std::optional<Complex> apply_boundary(const MoebiusMap& g, std::optional<Complex> z) {
  if (!z) {
    if (g.c() == Complex{}) return std::nullopt;
    return g.a() / g.c();
  }
  const Complex den = g.c() * *z + g.d();
  if (den == Complex{}) return std::nullopt;
  return (g.a() * *z + g.b()) / den;
}

namespace {

// Matrix of the map sending p[0] -> 0, p[1] -> 1, p[2] -> infinity.
std::array<Complex, 4> cross_ratio_matrix(std::span<const std::optional<Complex>, 3> p) {
  const auto& z1 = p[0];
  const auto& z2 = p[1];
  const auto& z3 = p[2];
  if (!z1) return {0.0, *z2 - *z3, 1.0, -*z3};
  if (!z2) return {1.0, -*z1, 1.0, -*z3};
  if (!z3) return {1.0, -*z1, 0.0, *z2 - *z1};
  return {*z2 - *z3, -*z1 * (*z2 - *z3), *z2 - *z1, -*z3 * (*z2 - *z1)};
}

bool same_point(const std::optional<Complex>& p, const std::optional<Complex>& q) {
  if (!p || !q) return !p && !q;
  return std::abs(*p - *q) <= 1e-14 * (1.0 + std::abs(*p));
}

}  // namespace

MoebiusMap mobius_from_points(std::span<const std::optional<Complex>, 3> from,
                              std::span<const std::optional<Complex>, 3> to) {
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)
      if (same_point(from[i], from[k]) || same_point(to[i], to[k]))
        throw Error(ErrorCode::InvalidArgument, "three distinct points are required");
  const auto f = cross_ratio_matrix(from);
  const auto t = cross_ratio_matrix(to);
  // to^{-1} * from, using the adjugate for the inverse.
  const MoebiusMap ti = MoebiusMap::from_entries(t[3], -t[1], -t[2], t[0], 0.0);
  const MoebiusMap fm = MoebiusMap::from_entries(f[0], f[1], f[2], f[3], 0.0);
  return compose(ti, fm);
}

// --- Classification -------------------------------------------------------

std::string_view to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::identity: return "identity";
    case IsometryKind::elliptic: return "elliptic";
    case IsometryKind::parabolic: return "parabolic";
    case IsometryKind::hyperbolic: return "hyperbolic";
    case IsometryKind::loxodromic: return "loxodromic";
  }
  return "unknown";
}

IsometryClass classify(const MoebiusMap& g, const Tolerance& tol) {
  if (same_element(g, MoebiusMap::identity(), tol.alg)) return {IsometryKind::identity, 1};
  const Complex tr = g.trace();
  if (std::abs(tr.imag()) > tol.alg) return {IsometryKind::loxodromic, std::nullopt};
  const double t = std::abs(tr.real());
  if (std::abs(t - 2.0) <= tol.alg) return {IsometryKind::parabolic, std::nullopt};
  if (t > 2.0) return {IsometryKind::hyperbolic, std::nullopt};

  // Rotation angle phi = 2 acos(t/2) in (0, pi]; order n when n phi is a
  // multiple of 2 pi.
  const double turns = std::acos(t / 2.0) / std::numbers::pi;  // phi / (2 pi)
  for (int n = 2; n <= 64; ++n) {
    const double k = n * turns;
    if (std::abs(k - std::round(k)) <= 1e-9 * n) return {IsometryKind::elliptic, n};
  }
  return {IsometryKind::elliptic, std::nullopt};
}

double entry_identity_check(const MoebiusMap& g) {
  const Complex a = g.a(), b = g.b(), c = g.c(), d = g.d();
  const double lhs = std::norm(std::conj(a) * b + std::conj(c) * d);
  const double rhs = (std::norm(a) + std::norm(c)) * (std::norm(b) + std::norm(d)) - 1.0;
  return std::abs(lhs - rhs);
}

}  // namespace hypdom
