#ifndef BOHM_VEC_HPP
#define BOHM_VEC_HPP

#include <cmath>

namespace bohm {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 &operator+=(const Vec3 &o) noexcept { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3 &operator-=(const Vec3 &o) noexcept { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3 &operator*=(double s) noexcept { x *= s; y *= s; z *= s; return *this; }

  constexpr double operator[](int i) const noexcept { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double &operator[](int i) noexcept { return i == 0 ? x : (i == 1 ? y : z); }

  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3 &b) noexcept { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3 &b) noexcept { return a -= b; }
constexpr Vec3 operator-(const Vec3 &a) noexcept { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) noexcept { return a *= (1.0 / s); }

constexpr double dot(const Vec3 &a, const Vec3 &b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3 &a, const Vec3 &b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
constexpr double norm2(const Vec3 &a) noexcept { return dot(a, a); }
inline double norm(const Vec3 &a) noexcept { return std::sqrt(norm2(a)); }
inline bool is_finite(const Vec3 &a) noexcept {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

struct Vec2 {
  double u = 0.0;
  double v = 0.0;
  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

/// Two unit vectors spanning the plane orthogonal to `axis` (need not be unit).
struct TransverseBasis {
  Vec3 e1;
  Vec3 e2;

  explicit TransverseBasis(const Vec3 &axis) {
    const Vec3 n = axis / norm(axis);
    const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    e1 = cross(n, helper);
    e1 = e1 / norm(e1);
    e2 = cross(n, e1);
  }

  [[nodiscard]] Vec3 embed(const Vec2 &p) const noexcept { return p.u * e1 + p.v * e2; }
  [[nodiscard]] Vec2 project(const Vec3 &p) const noexcept { return {dot(p, e1), dot(p, e2)}; }
};

} // namespace bohm

#endif // BOHM_VEC_HPP
