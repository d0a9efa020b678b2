#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>

#include "qwahba/quaternion.hpp"
#include "qwahba/sylvester.hpp"

namespace qwahba {

/// One vector observation: (frame-A quaternion, frame-B quaternion).
using Correspondence = std::pair<Quaternion, Quaternion>;

/// Two observations a1 -> b1, a2 -> b2. All four quaternions are nonreal;
/// the constructor throws NotNonreal otherwise. The pairwise similarity
/// report is computed once at construction with the given tolerance.
class ObservationPair {
 public:
  ObservationPair(const Quaternion& a1, const Quaternion& a2, const Quaternion& b1, const Quaternion& b2,
                  double tol = kDefaultTolerance);

  const Quaternion& a1() const noexcept { return a1_; }
  const Quaternion& a2() const noexcept { return a2_; }
  const Quaternion& b1() const noexcept { return b1_; }
  const Quaternion& b2() const noexcept { return b2_; }
  const SimilarityReport& report() const noexcept { return report_; }

  std::array<Correspondence, 2> correspondences() const { return {{{a1_, b1_}, {a2_, b2_}}}; }

 private:
  Quaternion a1_, a2_, b1_, b2_;
  SimilarityReport report_;
};

/// sum over pairs of |q^-1 a q - b|^2. Invariant under real scaling of q.
/// Throws ZeroQuaternion for q = 0.
double wahba_cost(const Quaternion& q, std::span<const Correspondence> pairs);
double wahba_cost(const Quaternion& q, const ObservationPair& pair);

/// |a1|^2 + |a2|^2, the natural magnitude of the cost for this pair.
double cost_scale(const ObservationPair& pair) noexcept;

/// Drop the (matching) scalar parts. The cost is unchanged for every q.
/// Throws NotPairwiseSimilar when the pair fails the similarity check at tol.
ObservationPair reduce_to_pure(const ObservationPair& pair, double tol = kDefaultTolerance);

/// Closed-form zero-cost solution set q = q1 q2 of the two-observation problem.
///
/// q1 ranges over `q1_family` (the single alignment a1 -> b1). For a given q1
/// the second factor is lambda2 * sqrt(q1* (a1 x a2) q1 (b2 x b1)) with
/// lambda2 != 0 and either root. When q1^-1 (a1 x a2) q1 = -(b1 x b2) the
/// square root degenerates to a sphere of pure quaternions; the members that
/// keep a1 -> b1 intact are the multiples of b1, so the second factor is
/// restricted to that axis (`q2_commutant_axis`).
///
/// Everything below refers to the pure-reduced observations in `reduced`.
/// The q2 fields describe the canonical first factor `q1`.
struct WahbaFamily {
  ObservationPair reduced;
  SylvesterFamily q1_family{};
  Quaternion q1{};
  /// q1^-1 (a1 x a2) q1 and b1 x b2.
  Quaternion a3{};
  Quaternion b3{};
  Quaternion q2_sqrt_arg{};
  bool q2_antipodal = false;
  Quaternion q2_constraint_normal{};
  Quaternion q2_commutant_axis{};
  Quaternion q2{};
  /// a1 x a2 = 0 within tolerance: the second observation adds nothing and
  /// every member of q1_family already has zero cost. q2 is then 1.
  bool collinear = false;
  Quaternion canonical{};
  double tolerance = kDefaultTolerance;
};

/// Throws NotPairwiseSimilar (no zero-cost quaternion exists) or NotNonreal.
WahbaFamily solve_two_obs(const ObservationPair& pair, double tol = kDefaultTolerance);

/// Unit, sign-canonical q1 q2.
Quaternion canonicalize(const WahbaFamily& family);

/// Selects one member of a WahbaFamily.
struct WahbaParameters {
  double lambda1 = 1.0;
  double mu1 = 0.0;
  /// Required pure direction when q1_family is antipodal.
  std::optional<Quaternion> q1_direction;
  double lambda2 = 1.0;
  /// +1 or -1: which square root of the second factor.
  int root = 1;
  /// Used when the second factor is degenerate; projected onto the admissible
  /// axis. Defaults to that axis.
  std::optional<Quaternion> q2_direction;
};

/// Throws DegenerateParameters (lambda2 = 0, zero first factor, root not +-1)
/// or ConstraintViolated (inadmissible or near-zero projected direction).
Quaternion family_member(const WahbaFamily& family, const WahbaParameters& params);

/// Opt-in noise projection for inputs that are not pairwise similar: copy the
/// scalar parts of a1, a2 onto b1, b2, rescale Im b1, Im b2 to |Im a1|, |Im a2|
/// and open or close the angle between them symmetrically about their
/// bisector until it matches the angle between Im a1 and Im a2. This is a
/// heuristic, not a least-squares estimate.
ObservationPair project_to_pairwise_similar(const ObservationPair& pair, double tol = kDefaultTolerance);

}  // namespace qwahba
