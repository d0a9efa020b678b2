#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "qwahba/rng.hpp"
#include "qwahba/wahba.hpp"

namespace qwahba {

// Baselines that share no code path with the closed-form solver: an
// eigenvector solver for the classical 4x4 formulation and a sampler.

/// Symmetric 4x4 matrix K with q^T K q = sum_l Im b_l . R(q)^T Im a_l for
/// unit q = (w, x, y, z), R(q) the rotation matrix of q. Rows and columns are
/// ordered (x, y, z, w).
struct DavenportMatrix {
  std::array<std::array<double, 4>, 4> entries{};
};

DavenportMatrix davenport_matrix(std::span<const Correspondence> pairs);

struct DavenportResult {
  Quaternion q;
  double eigenvalue = 0.0;
  double second_eigenvalue = 0.0;
  int iterations = 0;
};

/// Dominant eigenvector of K by shifted power iteration. Imaginary parts of
/// the inputs are used as 3-vectors; scalar parts are ignored.
///
/// Throws NoConvergence when the eigenvector residual does not reach 1e-13
/// relative within 500 iterations, and DegenerateSpectrum when the two
/// largest eigenvalues agree to 1e-9 relative (the attitude is ambiguous).
DavenportResult davenport_eigen(std::span<const Correspondence> pairs);

/// Sign-canonical unit quaternion of davenport_eigen.
Quaternion davenport_solve(std::span<const Correspondence> pairs);

/// The 24 Hurwitz units: +-1, +-i, +-j, +-k and (+-1 +-i +-j +-k) / 2.
const std::array<Quaternion, 24>& hurwitz_units();

struct BruteForceResult {
  Quaternion q;
  double cost = 0.0;
};

/// Lowest-cost quaternion among hurwitz_units() and n_samples uniform unit
/// quaternions drawn from SplitMix64(seed). Throws DegenerateParameters for
/// n_samples < 1.
BruteForceResult brute_force_min(std::span<const Correspondence> pairs, std::int64_t n_samples,
                                 std::uint64_t seed);

enum class InstanceKind { Generic, AntipodalFirst, AntipodalCross, Collinear };

std::string_view to_string(InstanceKind kind) noexcept;
std::optional<InstanceKind> parse_instance_kind(std::string_view name) noexcept;

struct GeneratedInstance {
  ObservationPair pair;
  /// A unit quaternion achieving zero cost; unique up to sign unless collinear.
  Quaternion truth;
  InstanceKind kind;
  std::uint64_t seed;
};

/// Uniform on the unit 3-sphere: four standard normals, normalized.
Quaternion random_unit_quaternion(SplitMix64& rng);

/// Deterministic pairwise-similar instance of the requested kind. Frame-A
/// vectors are pure with moduli in [0.5, 2]; non-collinear kinds keep the
/// angle between them in [~5.7deg, ~174.3deg].
///
///   Generic         b_l = truth^-1 a_l truth for a uniform random truth.
///   AntipodalFirst  Im b1 = -Im a1 exactly.
///   AntipodalCross  the canonical first factor q1 of the solver gives
///                   q1^-1 (a1 x a2) q1 = -(b1 x b2).
///   Collinear       a2 = s a1 and b2 = s b1 with s in {-2, -1/2, 1/2, 2},
///                   so both cross products vanish exactly.
GeneratedInstance random_instance(std::uint64_t seed, InstanceKind kind);

}  // namespace qwahba
