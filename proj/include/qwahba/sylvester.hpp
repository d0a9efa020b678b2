#pragma once

#include <optional>

#include "qwahba/quaternion.hpp"

namespace qwahba {

/// All nonzero solutions q of a q - q b = 0 for similar nonreal a, b.
///
/// Generic case: q = lambda * sqrt_part + mu * sum_part for real lambda, mu
/// with |lambda| + |mu * sum_part| != 0, where sqrt_part is the "+" root of
/// (Im a)(Im b)* and sum_part = Im(a + b).
///
/// Antipodal case (Im a = -Im b within tolerance): (Im a)(Im b)* is a
/// negative real, sum_part vanishes, and the solutions are the pure
/// quaternions orthogonal to constraint_normal = Im a. sqrt_part is zero.
struct SylvesterFamily {
  Quaternion sqrt_part;
  /// sqrt(|Im a| |Im b|), the modulus of any root of (Im a)(Im b)*.
  double sqrt_magnitude = 0.0;
  Quaternion sum_part;
  bool antipodal = false;
  Quaternion constraint_normal;
};

/// Throws NotNonreal or NotSimilar.
SylvesterFamily sylvester_solve(const Quaternion& a, const Quaternion& b, double tol = kDefaultTolerance);

/// Evaluate one family member.
///
/// Generic family: lambda * sqrt_part + mu * sum_part; `direction` is ignored.
/// Antipodal family: lambda * direction, where direction must be pure and
/// orthogonal to constraint_normal within tol; `mu` multiplies the vanishing
/// sum part and is ignored.
///
/// Throws DegenerateParameters when the member would be zero (or when an
/// antipodal family gets no direction) and ConstraintViolated when the
/// direction is not an admissible pure quaternion.
Quaternion family_sample(const SylvesterFamily& f, double lambda, double mu,
                         const std::optional<Quaternion>& direction = std::nullopt,
                         double tol = kDefaultTolerance);

/// Deterministic unit member: normalized sqrt_part, or for an antipodal family
/// the unit direction orthogonal_direction(constraint_normal).
Quaternion family_representative(const SylvesterFamily& f);

}  // namespace qwahba
