#pragma once

// Numeric kernel: complex numbers, quaternions, SL(2,C) representatives of
// PSL(2,C) and trace classification.

#include <array>
#include <complex>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "hypdom/error.hpp"

namespace hypdom {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Comparison thresholds. `alg` bounds algebraic identities on double
/// input; `geo` bounds geometric comparisons (looser because arccosh
/// amplifies error near zero).
struct Tolerance {
  double alg = 1e-9;
  double geo = 1e-8;
};

inline constexpr Tolerance kDefaultTolerance{};

/// Quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  static Quaternion from(Complex c) { return {c.real(), c.imag(), 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const;
  /// Throws NonInvertible for the zero quaternion.
  Quaternion inverse() const;

  Quaternion& operator+=(const Quaternion& o);
  Quaternion& operator-=(const Quaternion& o);
  Quaternion& operator*=(double s);
};

Quaternion operator+(Quaternion p, const Quaternion& q);
Quaternion operator-(Quaternion p, const Quaternion& q);
Quaternion operator-(const Quaternion& p);
Quaternion operator*(const Quaternion& p, const Quaternion& q);
Quaternion operator*(double s, Quaternion p);
std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// A determinant-one representative of an element of PSL(2,C).
///
/// Construction normalizes any invertible matrix to determinant one and
/// fixes the sign: the first entry (row-major) whose modulus exceeds the
/// algebraic tolerance has argument in (-pi/2, pi/2].
class MoebiusMap {
 public:
  MoebiusMap() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

  /// Throws NonInvertible when |ad - bc| < tol.
  static MoebiusMap from_entries(Complex a, Complex b, Complex c, Complex d,
                                 double tol = kDefaultTolerance.alg);
  static MoebiusMap identity() { return {}; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  std::array<Complex, 4> entries() const { return {a_, b_, c_, d_}; }

  Complex det() const { return a_ * d_ - b_ * c_; }
  Complex trace() const { return a_ + d_; }
  /// |a|^2 + |b|^2 + |c|^2 + |d|^2.
  double norm2() const;
  MoebiusMap inverse() const;
  MoebiusMap negated() const;

  /// True when the map lies in SU(2), i.e. fixes j in the upper half-space.
  bool is_unitary(double tol = kDefaultTolerance.alg) const { return norm2() <= 2.0 + tol; }

 private:
  MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {}

  Complex a_, b_, c_, d_;
};

/// g o h, renormalized and sign-canonicalized.
MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h);
inline MoebiusMap operator*(const MoebiusMap& g, const MoebiusMap& h) { return compose(g, h); }
std::ostream& operator<<(std::ostream& os, const MoebiusMap& g);

/// Max entrywise distance between g and +-h (PSL comparison).
double psl_distance(const MoebiusMap& g, const MoebiusMap& h);
inline bool same_element(const MoebiusMap& g, const MoebiusMap& h, double tol = 1e-9) {
  return psl_distance(g, h) <= tol;
}

/// Apply g to a point of the extended complex plane; nullopt is infinity.
std::optional<Complex> apply_boundary(const MoebiusMap& g, std::optional<Complex> z);

/// The unique Moebius map sending from[k] to to[k]; nullopt entries are
/// infinity. Throws InvalidArgument when points repeat.
MoebiusMap mobius_from_points(std::span<const std::optional<Complex>, 3> from,
                              std::span<const std::optional<Complex>, 3> to);

enum class IsometryKind { identity, elliptic, parabolic, hyperbolic, loxodromic };

std::string_view to_string(IsometryKind kind);

struct IsometryClass {
  IsometryKind kind;
  /// Order in PSL(2,C) for elliptics of finite order (searched up to 64).
  std::optional<int> order;

  bool operator==(const IsometryClass&) const = default;
};

/// Trace classification. Hyperbolic means real trace with |tr| > 2,
/// loxodromic means non-real trace.
IsometryClass classify(const MoebiusMap& g, const Tolerance& tol = kDefaultTolerance);

/// Residual of |conj(a) b + conj(c) d|^2 = (|a|^2+|c|^2)(|b|^2+|d|^2) - 1.
double entry_identity_check(const MoebiusMap& g);

}  // namespace hypdom
