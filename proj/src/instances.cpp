#include <cmath>

#include "qwahba/oracle.hpp"

namespace qwahba {

const std::array<Quaternion, 24>& hurwitz_units() {
  static const std::array<Quaternion, 24> units = [] {
    std::array<Quaternion, 24> u;
    std::size_t n = 0;
    for (double s : {1.0, -1.0}) {
      u[n++] = Quaternion(s, 0, 0, 0);
      u[n++] = Quaternion(0, s, 0, 0);
      u[n++] = Quaternion(0, 0, s, 0);
      u[n++] = Quaternion(0, 0, 0, s);
    }
    for (int mask = 0; mask < 16; ++mask) {
      const auto sign = [mask](int bit) { return (mask >> bit) & 1 ? -0.5 : 0.5; };
      u[n++] = Quaternion(sign(0), sign(1), sign(2), sign(3));
    }
    return u;
  }();
  return units;
}

Quaternion random_unit_quaternion(SplitMix64& rng) {
  for (;;) {
    const Quaternion q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    const double n = norm(q);
    if (n > 1e-12) return q / n;
  }
}

BruteForceResult brute_force_min(std::span<const Correspondence> pairs, std::int64_t n_samples,
                                 std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorKind::DegenerateParameters, "n_samples must be at least 1");

  BruteForceResult best{hurwitz_units()[0], wahba_cost(hurwitz_units()[0], pairs)};
  const auto consider = [&](const Quaternion& q) {
    const double c = wahba_cost(q, pairs);
    if (c < best.cost) best = {q, c};
  };
  for (const Quaternion& u : hurwitz_units()) consider(u);

  SplitMix64 rng(seed);
  for (std::int64_t i = 0; i < n_samples; ++i) consider(random_unit_quaternion(rng));
  best.q = canonical_sign(best.q);
  return best;
}

std::string_view to_string(InstanceKind kind) noexcept {
  switch (kind) {
    case InstanceKind::Generic: return "generic";
    case InstanceKind::AntipodalFirst: return "antipodal_first";
    case InstanceKind::AntipodalCross: return "antipodal_cross";
    case InstanceKind::Collinear: return "collinear";
  }
  return "generic";
}

std::optional<InstanceKind> parse_instance_kind(std::string_view name) noexcept {
  for (InstanceKind k : {InstanceKind::Generic, InstanceKind::AntipodalFirst, InstanceKind::AntipodalCross,
                         InstanceKind::Collinear}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

constexpr double kMinModulus = 0.5;
constexpr double kMaxModulus = 2.0;
constexpr double kMinSine = 0.1;

Quaternion random_direction(SplitMix64& rng) {
  for (;;) {
    const Quaternion v = Quaternion::pure(rng.normal(), rng.normal(), rng.normal());
    const double n = norm(v);
    if (n > 1e-12) return v / n;
  }
}

Quaternion random_vector(SplitMix64& rng) {
  return random_direction(rng) * rng.uniform(kMinModulus, kMaxModulus);
}

// a2 with |sin(angle(a1, a2))| >= kMinSine.
Quaternion random_non_parallel(SplitMix64& rng, const Quaternion& a1) {
  for (;;) {
    const Quaternion a2 = random_vector(rng);
    if (norm(cross(a1, a2)) >= kMinSine * norm(a1) * norm(a2)) return a2;
  }
}

Quaternion rotate_pure(const Quaternion& q, const Quaternion& a) { return conjugate_by(q, a).imag(); }

}  // namespace

GeneratedInstance random_instance(std::uint64_t seed, InstanceKind kind) {
  SplitMix64 rng(seed);
  const Quaternion a1 = random_vector(rng);

  switch (kind) {
    case InstanceKind::Generic: {
      const Quaternion a2 = random_non_parallel(rng, a1);
      const Quaternion truth = random_unit_quaternion(rng);
      return {ObservationPair(a1, a2, rotate_pure(truth, a1), rotate_pure(truth, a2)), truth, kind, seed};
    }
    case InstanceKind::AntipodalFirst: {
      const Quaternion a2 = random_non_parallel(rng, a1);
      // A half turn about any axis orthogonal to a1 sends a1 to -a1.
      Quaternion axis;
      do {
        axis = cross(a1, random_direction(rng));
      } while (norm(axis) < 1e-3 * norm(a1));
      const Quaternion truth = normalized(axis);
      return {ObservationPair(a1, a2, -a1, rotate_pure(truth, a2)), truth, kind, seed};
    }
    case InstanceKind::AntipodalCross: {
      const Quaternion a2 = random_non_parallel(rng, a1);
      const Quaternion b1 = rotate_pure(random_unit_quaternion(rng), a1);
      // Follow the solver's first factor with a half turn about b1: b1 stays
      // put and everything orthogonal to b1, including a3, flips sign.
      const Quaternion q1 = family_representative(sylvester_solve(a1, b1));
      const Quaternion truth = canonical_sign(normalized(q1 * normalized(b1)));
      return {ObservationPair(a1, a2, b1, rotate_pure(truth, a2)), truth, kind, seed};
    }
    case InstanceKind::Collinear: {
      static constexpr std::array<double, 4> kScales{-2.0, -0.5, 0.5, 2.0};
      const double s = kScales[rng() >> 62];
      const Quaternion truth = random_unit_quaternion(rng);
      const Quaternion b1 = rotate_pure(truth, a1);
      return {ObservationPair(a1, s * a1, b1, s * b1), truth, kind, seed};
    }
  }
  throw Error(ErrorKind::DegenerateParameters, "unknown instance kind");
}

}  // namespace qwahba
