#include <algorithm>
#include <cmath>

#include "qwahba/oracle.hpp"

namespace qwahba {

namespace {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

constexpr int kMaxIterations = 500;
constexpr double kResidualTolerance = 1e-13;
constexpr double kSecondResidualTolerance = 1e-8;
constexpr double kGapTolerance = 1e-9;
// P = M^(2^kSquarings) before iterating; turns a spectral ratio r into r^256.
constexpr int kSquarings = 8;

Vec4 mat_vec(const Mat4& m, const Vec4& v) {
  Vec4 r{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
  }
  return r;
}

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double length(const Vec4& v) { return std::sqrt(dot(v, v)); }

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

// Normalized high power of a positive semidefinite matrix. Returns false when
// the matrix is zero.
bool high_power(const Mat4& m, Mat4& p) {
  p = m;
  for (int s = 0; s < kSquarings; ++s) {
    p = multiply(p, p);
    double peak = 0.0;
    for (const auto& row : p) {
      for (double x : row) peak = std::max(peak, std::abs(x));
    }
    if (peak == 0.0) return false;
    for (auto& row : p) {
      for (double& x : row) x /= peak;
    }
  }
  return true;
}

Vec4 largest_column(const Mat4& p) {
  Vec4 best{};
  double best_norm = -1.0;
  for (int j = 0; j < 4; ++j) {
    const Vec4 c{p[0][j], p[1][j], p[2][j], p[3][j]};
    const double n = length(c);
    if (n > best_norm) {
      best_norm = n;
      best = c;
    }
  }
  for (double& x : best) x /= best_norm;
  return best;
}

struct Eigenpair {
  Vec4 vector{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Dominant eigenpair of a symmetric positive semidefinite matrix m; `target`
// is the matrix whose residual decides convergence (m minus its shift).
Eigenpair dominant(const Mat4& m, const Mat4& target, double residual_bound) {
  Eigenpair e;
  Mat4 p;
  if (!high_power(m, p)) {
    e.vector = {0.0, 0.0, 0.0, 1.0};
    e.value = dot(e.vector, mat_vec(target, e.vector));
    e.converged = true;
    return e;
  }
  Vec4 v = largest_column(p);
  for (e.iterations = 1; e.iterations <= kMaxIterations; ++e.iterations) {
    Vec4 next = mat_vec(p, v);
    const double n = length(next);
    if (n == 0.0) break;
    for (double& x : next) x /= n;
    v = next;

    const Vec4 kv = mat_vec(target, v);
    const double rho = dot(v, kv);
    double residual = 0.0;
    for (int i = 0; i < 4; ++i) residual += (kv[i] - rho * v[i]) * (kv[i] - rho * v[i]);
    e.value = rho;
    if (std::sqrt(residual) <= residual_bound) {
      e.converged = true;
      break;
    }
  }
  e.vector = v;
  return e;
}

}  // namespace

DavenportMatrix davenport_matrix(std::span<const Correspondence> pairs) {
  // Attitude profile B = sum b a^T, so that the attitude matrix A = R(q)^T
  // maximizes tr(A B^T).
  std::array<std::array<double, 3>, 3> b{};
  for (const auto& [qa, qb] : pairs) {
    const std::array<double, 3> u{qa.x(), qa.y(), qa.z()};
    const std::array<double, 3> v{qb.x(), qb.y(), qb.z()};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) b[i][j] += v[i] * u[j];
    }
  }
  const double sigma = b[0][0] + b[1][1] + b[2][2];
  const std::array<double, 3> z{b[1][2] - b[2][1], b[2][0] - b[0][2], b[0][1] - b[1][0]};

  DavenportMatrix k;
  auto& e = k.entries;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      e[i][j] = e[j][i] = b[i][j] + b[j][i] - (i == j ? sigma : 0.0);
    }
    e[i][3] = e[3][i] = z[i];
  }
  e[3][3] = sigma;
  return k;
}

DavenportResult davenport_eigen(std::span<const Correspondence> pairs) {
  const Mat4 k = davenport_matrix(pairs).entries;

  // Gershgorin: every eigenvalue lies in [-shift, shift], so K + shift I is
  // positive semidefinite and its dominant eigenvalue is K's largest.
  double shift = 0.0;
  for (const auto& row : k) {
    double r = 0.0;
    for (double x : row) r += std::abs(x);
    shift = std::max(shift, r);
  }
  const double scale = std::max(1.0, shift);

  Mat4 m = k;
  for (int i = 0; i < 4; ++i) m[i][i] += shift;
  const Eigenpair top = dominant(m, k, kResidualTolerance * scale);

  // Deflate: the remaining spectrum of K + shift I stays nonnegative.
  Mat4 deflated = m;
  Mat4 k2 = k;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      deflated[i][j] -= (top.value + shift) * top.vector[i] * top.vector[j];
      k2[i][j] -= (top.value + shift) * top.vector[i] * top.vector[j];
    }
  }
  // Only the eigenvalue is needed here, and it converges quadratically in
  // the vector residual.
  const Eigenpair second = dominant(deflated, k2, kSecondResidualTolerance * scale);
  const double second_value = second.value;

  if (top.value - second_value <= kGapTolerance * std::max(1.0, std::abs(top.value))) {
    throw Error(ErrorKind::DegenerateSpectrum, "two largest eigenvalues coincide; attitude is ambiguous");
  }
  if (!top.converged) {
    throw Error(ErrorKind::NoConvergence, "power iteration did not reach the residual bound");
  }

  const Vec4& v = top.vector;
  return {canonical_sign(normalized(Quaternion(v[3], v[0], v[1], v[2]))), top.value, second_value,
          top.iterations};
}

Quaternion davenport_solve(std::span<const Correspondence> pairs) { return davenport_eigen(pairs).q; }

}  // namespace qwahba
