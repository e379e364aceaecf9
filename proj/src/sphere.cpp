#include "hypdom/sphere.hpp"

#include <cmath>
#include <numbers>

namespace hypdom {

namespace {

constexpr double kPi = std::numbers::pi;

// Orthonormal pair spanning the plane orthogonal to unit vector n. In the
// 2-D slice setting (n in the e1e3 plane) the first vector also lies in
// that plane.
std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& n) {
  Vec3 u = Vec3::UnitY().cross(n);
  if (u.norm() < 1e-8) u = n.cross(Vec3::UnitX());
  u.normalize();
  Vec3 w = n.cross(u).normalized();
  return {u, w};
}

Complex as_complex(const Vec3& v) { return {v.x(), v.y()}; }

}  // namespace

GeneralizedSphere GeneralizedSphere::sphere(Model model, const Vec3& center, double radius, int dim) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::InvalidArgument, "sphere radius must be positive and finite");
  GeneralizedSphere s;
  s.kind = Kind::sphere;
  s.model = model;
  s.dim = dim;
  s.center = center;
  s.radius = radius;
  return s;
}

GeneralizedSphere GeneralizedSphere::plane(Model model, const Vec3& normal, double offset, int dim) {
  const double n = normal.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::InvalidArgument, "plane normal must be nonzero");
  GeneralizedSphere s;
  s.kind = Kind::plane;
  s.model = model;
  s.dim = dim;
  s.normal = normal / n;
  s.offset = offset / n;
  return s;
}

double GeneralizedSphere::power(const Vec3& p) const {
  if (is_sphere()) return (p - center).squaredNorm() - radius * radius;
  return normal.dot(p) - offset;
}

double GeneralizedSphere::distance(const Vec3& p) const {
  if (is_sphere()) return std::abs((p - center).norm() - radius);
  return std::abs(normal.dot(p) - offset);
}

bool same_surface(const GeneralizedSphere& s, const GeneralizedSphere& t, double tol) {
  if (s.kind != t.kind || s.model != t.model) return false;
  if (s.is_sphere()) return (s.center - t.center).norm() <= tol && std::abs(s.radius - t.radius) <= tol;
  if ((s.normal - t.normal).norm() <= tol && std::abs(s.offset - t.offset) <= tol) return true;
  return (s.normal + t.normal).norm() <= tol && std::abs(s.offset + t.offset) <= tol;
}

ExtPoint reflect_point(const GeneralizedSphere& s, const ExtPoint& p) {
  if (s.is_plane()) {
    if (p.infinite) return p;
    return ExtPoint::at(p.v - 2.0 * (s.normal.dot(p.v) - s.offset) * s.normal);
  }
  if (p.infinite) return ExtPoint::at(s.center);
  const Vec3 d = p.v - s.center;
  const double d2 = d.squaredNorm();
  if (d2 == 0.0) return ExtPoint::infinity();
  return ExtPoint::at(s.center + (s.radius * s.radius / d2) * d);
}

std::array<std::optional<Complex>, 3> boundary_points_half(const GeneralizedSphere& s) {
  if (s.model != Model::half) throw Error(ErrorCode::InvalidArgument, "expected a half-model surface");
  if (s.is_sphere()) {
    const Complex c = as_complex(s.center);
    return {c + s.radius, c + Complex(0.0, s.radius), c - s.radius};
  }
  const Complex n = as_complex(s.normal);
  const Complex base = s.offset * n / std::norm(n);
  const Complex along = Complex(0.0, 1.0) * n;
  return {base, base + along, std::nullopt};
}

std::array<Vec3, 3> boundary_points_ball(const GeneralizedSphere& s) {
  if (s.model != Model::ball) throw Error(ErrorCode::InvalidArgument, "expected a ball-model surface");
  Vec3 axis, base;
  double rho;
  if (s.is_sphere()) {
    const double pn = s.center.norm();
    axis = s.center / pn;
    base = axis / pn;
    rho = s.radius / pn;
  } else {
    axis = s.normal;
    base = Vec3::Zero();
    rho = 1.0;
  }
  const auto [u, w] = orthonormal_complement(axis);
  std::array<Vec3, 3> out;
  for (int k = 0; k < 3; ++k) {
    const double phi = 2.0 * kPi * k / 3.0;
    out[k] = base + rho * (std::cos(phi) * u + std::sin(phi) * w);
  }
  return out;
}

GeneralizedSphere geodesic_surface_half(std::span<const std::optional<Complex>, 3> pts, int dim) {
  std::array<Complex, 3> finite{};
  int n_finite = 0;
  for (const auto& p : pts)
    if (p) finite[n_finite++] = *p;

  auto line_through = [&](Complex p, Complex q) {
    const Complex t = q - p;
    if (std::abs(t) == 0.0) throw Error(ErrorCode::InvalidArgument, "degenerate boundary points");
    Complex n = Complex(0.0, -1.0) * t / std::abs(t);
    if (dim == 2) n = Complex(n.real() >= 0 ? 1.0 : -1.0, 0.0);
    const double off = (std::conj(n) * p).real();
    return GeneralizedSphere::plane(Model::half, Vec3(n.real(), n.imag(), 0.0), off, dim);
  };

  if (n_finite < 2) throw Error(ErrorCode::InvalidArgument, "degenerate boundary points");
  if (n_finite == 2) return line_through(finite[0], finite[1]);

  const Complex a = finite[0];
  const Complex b = finite[1] - a;
  const Complex c = finite[2] - a;
  const double den = 2.0 * (b.real() * c.imag() - b.imag() * c.real());
  if (std::abs(den) <= 1e-12 * std::abs(b) * std::abs(c)) return line_through(finite[0], finite[1]);
  const Complex o(
      (c.imag() * std::norm(b) - b.imag() * std::norm(c)) / den,
      (b.real() * std::norm(c) - c.real() * std::norm(b)) / den);
  const Complex center = a + o;
  const double y = dim == 2 ? 0.0 : center.imag();
  return GeneralizedSphere::sphere(Model::half, Vec3(center.real(), y, 0.0), std::abs(o), dim);
}

GeneralizedSphere geodesic_surface_ball(std::span<const Vec3, 3> pts, int dim) {
  Vec3 n = (pts[1] - pts[0]).cross(pts[2] - pts[0]);
  const double nn = n.norm();
  if (nn == 0.0) throw Error(ErrorCode::InvalidArgument, "degenerate boundary points");
  n /= nn;
  double h = n.dot(pts[0]);
  if (h < 0.0) {
    n = -n;
    h = -h;
  }
  if (h <= 1e-12) return GeneralizedSphere::plane(Model::ball, n, 0.0, dim);
  const Vec3 center = n / h;
  return GeneralizedSphere::sphere(Model::ball, center, std::sqrt(std::max(0.0, 1.0 / (h * h) - 1.0)), dim);
}

GeneralizedSphere image(const GeneralizedSphere& s, const MoebiusMap& g) {
  auto pts = boundary_points_half(s);
  for (auto& p : pts) p = apply_boundary(g, p);
  return geodesic_surface_half(pts, s.dim);
}

std::vector<Vec3> sample_surface(const GeneralizedSphere& s, int n) {
  std::vector<Vec3> out;
  if (s.model == Model::half) {
    if (s.is_sphere()) {
      if (s.dim == 2) {
        for (int k = 0; k < n; ++k) {
          const double psi = -kPi / 2 + kPi * (k + 0.5) / n;
          out.push_back(s.center + s.radius * Vec3(std::sin(psi), 0.0, std::cos(psi)));
        }
        return out;
      }
      for (int k = 0; k < n; ++k) {
        const double psi = 0.5 * kPi * (k + 0.5) / n;
        for (int m = 0; m < n; ++m) {
          const double phi = 2.0 * kPi * (m + 0.25) / n;
          out.push_back(s.center + s.radius * Vec3(std::cos(phi) * std::sin(psi),
                                                   std::sin(phi) * std::sin(psi), std::cos(psi)));
        }
      }
      return out;
    }
    const Vec3 base = s.offset * s.normal;
    const Vec3 along = Vec3::UnitZ().cross(s.normal);
    for (int k = 0; k < n; ++k) {
      const double height = 0.1 + 3.0 * (k + 0.5) / n;
      if (s.dim == 2) {
        out.push_back(base + height * Vec3::UnitZ());
        continue;
      }
      for (int m = 0; m < n; ++m) {
        const double t = -2.0 + 4.0 * (m + 0.5) / n;
        out.push_back(base + t * along + height * Vec3::UnitZ());
      }
    }
    return out;
  }

  // Ball: points of the cap inside the unit ball.
  if (s.is_sphere()) {
    const Vec3 axis = -s.center.normalized();
    const double max_angle = std::acos(std::clamp(s.radius / s.center.norm(), -1.0, 1.0));
    const auto [u, w] = orthonormal_complement(axis);
    const int rings = n;
    for (int k = 0; k < rings; ++k) {
      const double polar = max_angle * (k + 0.5) / rings;
      const int az = s.dim == 2 ? 2 : n;
      for (int m = 0; m < az; ++m) {
        const double phi = s.dim == 2 ? kPi * m : 2.0 * kPi * (m + 0.25) / az;
        const Vec3 dir = std::cos(polar) * axis + std::sin(polar) * (std::cos(phi) * u + std::sin(phi) * w);
        out.push_back(s.center + s.radius * dir);
      }
    }
    return out;
  }
  // Plane through the origin: disk of radius 1.
  const auto [u, w] = orthonormal_complement(s.normal);
  for (int k = 0; k < n; ++k) {
    const double rad = (k + 0.5) / n;
    const int az = s.dim == 2 ? 2 : n;
    for (int m = 0; m < az; ++m) {
      const double phi = s.dim == 2 ? kPi * m : 2.0 * kPi * (m + 0.25) / az;
      out.push_back(rad * (std::cos(phi) * u + std::sin(phi) * w));
    }
  }
  return out;
}

}  // namespace hypdom
