#pragma once

// Test-only reference computations. Nothing here calls into the library's
// arithmetic beyond reading components, so they can check it independently.

#include <array>
#include <cmath>

#include "qwahba/quaternion.hpp"
#include "qwahba/rng.hpp"

namespace oracle {

using Vec4 = std::array<double, 4>;

// e_r e_c = kSign[r][c] * e_{kIndex[r][c]} over the basis (1, i, j, k).
inline constexpr int kIndex[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
inline constexpr double kSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};

/// Hamilton product by distributing over the basis multiplication table.
inline Vec4 table_product(const Vec4& a, const Vec4& b) {
  Vec4 r{};
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) r[kIndex[p][q]] += kSign[p][q] * a[p] * b[q];
  }
  return r;
}

inline Vec4 as_vec(const qwahba::Quaternion& q) { return q.components(); }
inline qwahba::Quaternion as_quat(const Vec4& v) { return qwahba::Quaternion::from_array(v); }

/// q^-1 a q for pure a via the rotation matrix R(q): the result is R^T a.
inline qwahba::Quaternion matrix_conjugation(const qwahba::Quaternion& q, const qwahba::Quaternion& a) {
  const double n = std::sqrt(q.w() * q.w() + q.x() * q.x() + q.y() * q.y() + q.z() * q.z());
  const double w = q.w() / n, x = q.x() / n, y = q.y() / n, z = q.z() / n;
  const double r[3][3] = {
      {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
      {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
      {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)},
  };
  const double v[3] = {a.x(), a.y(), a.z()};
  double out[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i] += r[j][i] * v[j];
  }
  return qwahba::Quaternion(a.w(), out[0], out[1], out[2]);
}

/// Residual of the best approximation of target by lambda * s + mu * t
/// (4x2 linear least squares through the normal equations).
inline double span_residual(const qwahba::Quaternion& target, const qwahba::Quaternion& s,
                            const qwahba::Quaternion& t) {
  const Vec4 a = s.components(), b = t.components(), y = target.components();
  double ss = 0, st = 0, tt = 0, sy = 0, ty = 0;
  for (int i = 0; i < 4; ++i) {
    ss += a[i] * a[i];
    st += a[i] * b[i];
    tt += b[i] * b[i];
    sy += a[i] * y[i];
    ty += b[i] * y[i];
  }
  const double det = ss * tt - st * st;
  double lambda = 0, mu = 0;
  if (std::abs(det) > 1e-300) {
    lambda = (sy * tt - ty * st) / det;
    mu = (ss * ty - st * sy) / det;
  } else if (ss > 0) {
    lambda = sy / ss;
  }
  double r2 = 0;
  for (int i = 0; i < 4; ++i) {
    const double d = y[i] - lambda * a[i] - mu * b[i];
    r2 += d * d;
  }
  return std::sqrt(r2);
}

/// Component-wise closeness after optional sign normalization.
inline bool close_up_to_sign(const qwahba::Quaternion& a, const qwahba::Quaternion& b, double tol) {
  const Vec4 x = a.components(), y = b.components();
  bool plus = true, minus = true;
  for (int i = 0; i < 4; ++i) {
    plus = plus && std::abs(x[i] - y[i]) <= tol;
    minus = minus && std::abs(x[i] + y[i]) <= tol;
  }
  return plus || minus;
}

inline bool close(const qwahba::Quaternion& a, const qwahba::Quaternion& b, double tol) {
  const Vec4 x = a.components(), y = b.components();
  for (int i = 0; i < 4; ++i) {
    if (std::abs(x[i] - y[i]) > tol) return false;
  }
  return true;
}

/// Random quaternion with components uniform in [-range, range].
inline qwahba::Quaternion random_quaternion(qwahba::SplitMix64& rng, double range = 2.0) {
  return {rng.uniform(-range, range), rng.uniform(-range, range), rng.uniform(-range, range),
          rng.uniform(-range, range)};
}

inline qwahba::Quaternion random_pure(qwahba::SplitMix64& rng, double range = 2.0) {
  return qwahba::Quaternion::pure(rng.uniform(-range, range), rng.uniform(-range, range),
                                  rng.uniform(-range, range));
}

}  // namespace oracle
