#include "qwahba/wahba.hpp"

#include <algorithm>
#include <cmath>

namespace qwahba {

ObservationPair::ObservationPair(const Quaternion& a1, const Quaternion& a2, const Quaternion& b1,
                                 const Quaternion& b2, double tol)
    : a1_(a1), a2_(a2), b1_(b1), b2_(b2), report_(is_pairwise_similar(a1, a2, b1, b2, tol)) {}

double wahba_cost(const Quaternion& q, std::span<const Correspondence> pairs) {
  const double n2 = norm_squared(q);
  if (n2 == 0.0) throw Error(ErrorKind::ZeroQuaternion, "cost is undefined at q = 0");
  const Quaternion qc = conj(q);
  double cost = 0.0;
  for (const auto& [a, b] : pairs) {
    cost += norm_squared((qc * a * q) / n2 - b);
  }
  return cost;
}

double wahba_cost(const Quaternion& q, const ObservationPair& pair) {
  const auto c = pair.correspondences();
  return wahba_cost(q, std::span<const Correspondence>(c));
}

double cost_scale(const ObservationPair& pair) noexcept {
  return norm_squared(pair.a1()) + norm_squared(pair.a2());
}

ObservationPair reduce_to_pure(const ObservationPair& pair, double tol) {
  const SimilarityReport report =
      is_pairwise_similar(pair.a1(), pair.a2(), pair.b1(), pair.b2(), tol);
  if (!report.verdict) {
    throw Error(ErrorKind::NotPairwiseSimilar, "no quaternion maps (a1, a2) onto (b1, b2)");
  }
  return ObservationPair(pair.a1().imag(), pair.a2().imag(), pair.b1().imag(), pair.b2().imag(), tol);
}

namespace {

struct SecondFactor {
  Quaternion a3;
  Quaternion b3;
  Quaternion sqrt_arg;
  bool antipodal = false;
  Quaternion constraint_normal;
  Quaternion commutant_axis;
  SqrtResult root;
};

// Second factor for a given first factor q1 of the pure-reduced pair.
SecondFactor second_factor(const ObservationPair& r, const Quaternion& q1, double tol) {
  const Quaternion ca = cross(r.a1(), r.a2());
  const Quaternion rotated = (conj(q1) * ca * q1).imag();

  SecondFactor s;
  s.a3 = conjugate_by(q1, ca).imag();
  s.b3 = cross(r.b1(), r.b2());
  s.sqrt_arg = rotated * cross(r.b2(), r.b1());
  s.commutant_axis = normalized(r.b1());

  const double scale = std::max({1.0, norm(s.a3), norm(s.b3)});
  s.antipodal = norm(s.a3 + s.b3) <= tol * scale;
  if (!s.antipodal) {
    s.root = quat_sqrt(s.sqrt_arg, tol);
    s.antipodal = s.root.negative_real_branch;
  }
  if (s.antipodal) {
    s.constraint_normal = rotated;
    s.root = SqrtResult{};
    s.root.negative_real_branch = true;
    s.root.magnitude = std::sqrt(norm(s.sqrt_arg));
  }
  return s;
}

bool is_collinear(const ObservationPair& r, double tol) {
  return norm(cross(r.a1(), r.a2())) <= tol * std::max(1.0, norm(r.a1()) * norm(r.a2()));
}

}  // namespace

WahbaFamily solve_two_obs(const ObservationPair& pair, double tol) {
  WahbaFamily f{.reduced = reduce_to_pure(pair, tol)};
  f.tolerance = tol;
  f.q1_family = sylvester_solve(f.reduced.a1(), f.reduced.b1(), tol);
  f.q1 = family_representative(f.q1_family);
  f.collinear = is_collinear(f.reduced, tol);

  if (f.collinear) {
    f.a3 = conjugate_by(f.q1, cross(f.reduced.a1(), f.reduced.a2())).imag();
    f.b3 = cross(f.reduced.b1(), f.reduced.b2());
    f.q2 = Quaternion::real(1.0);
  } else {
    const SecondFactor s = second_factor(f.reduced, f.q1, tol);
    f.a3 = s.a3;
    f.b3 = s.b3;
    f.q2_sqrt_arg = s.sqrt_arg;
    f.q2_antipodal = s.antipodal;
    f.q2_commutant_axis = s.commutant_axis;
    if (s.antipodal) {
      f.q2_constraint_normal = s.constraint_normal;
      f.q2 = s.commutant_axis;
    } else {
      f.q2 = normalized(s.root.root);
    }
  }
  f.canonical = canonicalize(f);
  return f;
}

Quaternion canonicalize(const WahbaFamily& family) {
  return canonical_sign(normalized(family.q1 * family.q2));
}

Quaternion family_member(const WahbaFamily& family, const WahbaParameters& params) {
  if (params.lambda2 == 0.0) throw Error(ErrorKind::DegenerateParameters, "lambda2 must be nonzero");
  if (params.root != 1 && params.root != -1) {
    throw Error(ErrorKind::DegenerateParameters, "root selector must be +1 or -1");
  }
  const double tol = family.tolerance;
  const Quaternion q1 =
      family_sample(family.q1_family, params.lambda1, params.mu1, params.q1_direction, tol);
  const double scale2 = params.lambda2 * params.root;

  if (family.collinear) return q1 * scale2;

  const SecondFactor s = second_factor(family.reduced, q1, tol);
  if (!s.antipodal) return q1 * (scale2 * s.root.root);

  const Quaternion d = params.q2_direction.value_or(s.commutant_axis);
  const double dn = norm(d);
  if (dn == 0.0 || std::abs(d.w()) > tol * dn) {
    throw Error(ErrorKind::ConstraintViolated, "second-factor direction must be a nonzero pure quaternion");
  }
  const double along = dot3(d, s.commutant_axis);
  if (std::abs(along) <= tol * dn) {
    throw Error(ErrorKind::ConstraintViolated, "second-factor direction has no component along b1");
  }
  const Quaternion axis = along > 0.0 ? s.commutant_axis : -s.commutant_axis;
  return q1 * (scale2 * s.root.magnitude * axis);
}

ObservationPair project_to_pairwise_similar(const ObservationPair& pair, double tol) {
  const Quaternion u1 = pair.a1().imag();
  const Quaternion u2 = pair.a2().imag();
  const Quaternion e1 = normalized(pair.b1().imag());
  const Quaternion e2 = normalized(pair.b2().imag());

  // Orthonormal frame (m, n) of the plane through e1, e2: m bisects them and
  // n points from e2 towards e1. Degenerate planes get a fixed completion.
  constexpr double kSmall = 1e-12;
  const Quaternion sum = e1 + e2;
  const Quaternion m = norm(sum) > kSmall ? normalized(sum) : orthogonal_direction(e1);
  const Quaternion diff = e1 - e2;
  const Quaternion off = diff - dot3(diff, m) * m;
  const Quaternion n = norm(off) > kSmall ? normalized(off) : orthogonal_direction(m);

  const double half = 0.5 * std::atan2(norm(cross(u1, u2)), dot3(u1, u2));
  const Quaternion f1 = std::cos(half) * m + std::sin(half) * n;
  const Quaternion f2 = std::cos(half) * m - std::sin(half) * n;

  const Quaternion b1 = Quaternion::real(pair.a1().w()) + norm(u1) * f1;
  const Quaternion b2 = Quaternion::real(pair.a2().w()) + norm(u2) * f2;
  return ObservationPair(pair.a1(), pair.a2(), b1, b2, tol);
}

}  // namespace qwahba
