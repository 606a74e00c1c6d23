#pragma once

#include <cmath>

namespace umbra {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm_squared(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return {v.x / n, v.y / n, v.z / n};
}

inline double norm_l1(const Vec3& v) {
  return std::abs(v.x) + std::abs(v.y) + std::abs(v.z);
}

inline double norm_inf(const Vec3& v) {
  return std::max(std::abs(v.x), std::max(std::abs(v.y), std::abs(v.z)));
}

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Row-major 3x3 matrix. Rows are directly addressable so a camera rotation
// can expose its basis vectors without copies.
struct Mat3 {
  Vec3 r0, r1, r2;

  static Mat3 identity() { return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}; }

  static Mat3 from_rows(const Vec3& a, const Vec3& b, const Vec3& c) {
    return {a, b, c};
  }

  Vec3 operator*(const Vec3& v) const {
    return {dot(r0, v), dot(r1, v), dot(r2, v)};
  }

  // R^T v without forming the transpose.
  Vec3 transpose_mul(const Vec3& v) const {
    return {r0.x * v.x + r1.x * v.y + r2.x * v.z,
            r0.y * v.x + r1.y * v.y + r2.y * v.z,
            r0.z * v.x + r1.z * v.y + r2.z * v.z};
  }

  const Vec3& row(int i) const { return i == 0 ? r0 : (i == 1 ? r1 : r2); }
};

// Max deviation of R^T R from the identity.
inline double orthonormality_error(const Mat3& m) {
  double err = 0.0;
  const Vec3 rows[3] = {m.r0, m.r1, m.r2};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // (R R^T)_ij must also be identity for square orthonormal R.
      const double want = (i == j) ? 1.0 : 0.0;
      err = std::max(err, std::abs(dot(rows[i], rows[j]) - want));
    }
  }
  return err;
}

}  // namespace umbra
