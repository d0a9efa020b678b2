#pragma once

#include <array>
#include <cmath>
#include <iosfwd>

#include "qwahba/error.hpp"

namespace qwahba {

/// Relative tolerance used by every predicate unless the caller supplies one.
inline constexpr double kDefaultTolerance = 1e-9;

/// Real quaternion w + x i + y j + z k.
///
/// Components are always finite: the constructor rejects NaN and infinity,
/// so every value reachable through the public API is a valid operand.
class Quaternion {
 public:
  Quaternion() = default;
  Quaternion(double w, double x, double y, double z);

  static Quaternion real(double w) { return {w, 0.0, 0.0, 0.0}; }
  static Quaternion pure(double x, double y, double z) { return {0.0, x, y, z}; }
  static Quaternion from_array(const std::array<double, 4>& c) { return {c[0], c[1], c[2], c[3]}; }

  double w() const noexcept { return w_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double z() const noexcept { return z_; }

  double scalar() const noexcept { return w_; }
  /// Imaginary part as a pure quaternion.
  Quaternion imag() const noexcept;
  std::array<double, 4> components() const noexcept { return {w_, x_, y_, z_}; }

  Quaternion operator-() const noexcept;
  Quaternion& operator+=(const Quaternion& o);
  Quaternion& operator-=(const Quaternion& o);
  Quaternion& operator*=(double s);

  friend bool operator==(const Quaternion&, const Quaternion&) = default;

 private:
  double w_ = 0.0;
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

Quaternion operator+(Quaternion a, const Quaternion& b);
Quaternion operator-(Quaternion a, const Quaternion& b);
Quaternion operator*(Quaternion a, double s);
Quaternion operator*(double s, Quaternion a);
Quaternion operator/(const Quaternion& a, double s);
/// Hamilton product.
Quaternion operator*(const Quaternion& a, const Quaternion& b);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

inline Quaternion quat_mul(const Quaternion& a, const Quaternion& b) { return a * b; }

Quaternion conj(const Quaternion& q) noexcept;
double norm_squared(const Quaternion& q) noexcept;
/// Modulus |q|, computed without intermediate overflow.
double norm(const Quaternion& q) noexcept;
/// Four-dimensional Euclidean inner product.
double dot4(const Quaternion& a, const Quaternion& b) noexcept;
/// Inner product of the imaginary parts.
double dot3(const Quaternion& a, const Quaternion& b) noexcept;
/// Cross product of the imaginary parts, returned as a pure quaternion.
Quaternion cross(const Quaternion& a, const Quaternion& b);

/// Throws ZeroQuaternion for q = 0.
Quaternion inverse(const Quaternion& q);
/// Throws ZeroQuaternion for q = 0.
Quaternion normalized(const Quaternion& q);

/// q^-1 a q. Preserves Re a and |a|; for unit q and pure a this rotates Im a.
/// Throws ZeroQuaternion for q = 0.
Quaternion conjugate_by(const Quaternion& q, const Quaternion& a);

/// Representative of {q, -q}: nonnegative scalar part, and when the scalar
/// part is exactly zero the first nonzero imaginary component is positive.
Quaternion canonical_sign(const Quaternion& q) noexcept;

/// min(|a - b|, |a + b|): distance modulo the double cover.
double sign_normalized_distance(const Quaternion& a, const Quaternion& b) noexcept;

/// Angle in radians of the relative rotation between two nonzero quaternions.
double rotation_angle_between(const Quaternion& a, const Quaternion& b);

/// True when |Im q| <= tol * max(1, |q|).
bool is_real(const Quaternion& q, double tol = kDefaultTolerance) noexcept;

/// Unit vector, as a pure quaternion, orthogonal to Im v: Im v crossed with
/// the coordinate axis it is least aligned with. Throws ZeroQuaternion when
/// Im v = 0.
Quaternion orthogonal_direction(const Quaternion& v);

// ---------------------------------------------------------------------------
// Square roots

/// Solutions of r^2 = a.
///
/// For a nonreal or positive real a there are exactly two roots, +root and
/// -root, where root has positive scalar part. For a negative real a the
/// solutions form the 2-sphere { magnitude * p / |p| : p pure, p != 0 }; in
/// that case `negative_real_branch` is set, `root` is zero and members are
/// obtained with `sample`.
struct SqrtResult {
  bool negative_real_branch = false;
  /// a lies within tol * |a| of the negative real axis without being on it.
  /// The isolated roots are still exact to rounding, but they change rapidly
  /// with a, so callers that care about continuity should know.
  bool near_branch_ambiguity = false;
  double magnitude = 0.0;
  Quaternion root;

  /// Both roots, "+" first. Throws DegenerateParameters on the family branch.
  std::array<Quaternion, 2> roots() const;
  /// Family member along a pure direction. Throws DegenerateParameters when
  /// not on the family branch or when Im direction = 0, ConstraintViolated
  /// when direction is not pure within tol.
  Quaternion sample(const Quaternion& direction, double tol = kDefaultTolerance) const;
};

/// Throws ZeroQuaternion for a = 0.
SqrtResult quat_sqrt(const Quaternion& a, double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Similarity

struct SimilarityReport {
  double scalar_residual = 0.0;
  double modulus_residual = 0.0;
  /// |Re(a1 a2) - Re(b1 b2)|; only meaningful when `pairwise` is set.
  double inner_residual = 0.0;
  bool pairwise = false;
  double tolerance_used = kDefaultTolerance;
  /// max(1, involved moduli and, for pairwise checks, |a1||a2| and |b1||b2|).
  double scale = 1.0;
  bool verdict = false;
};

/// a ~ b iff Re a = Re b and |a| = |b|. Throws NotNonreal when either input
/// is real within tolerance.
SimilarityReport is_similar(const Quaternion& a, const Quaternion& b, double tol = kDefaultTolerance);

/// (a1, a2) ~ (b1, b2) iff a1 ~ b1, a2 ~ b2 and Re(a1 a2) = Re(b1 b2).
/// For the pairwise report scalar_residual and modulus_residual hold the
/// larger of the two component residuals.
SimilarityReport is_pairwise_similar(const Quaternion& a1, const Quaternion& a2, const Quaternion& b1,
                                     const Quaternion& b2, double tol = kDefaultTolerance);

}  // namespace qwahba
