#include "qwahba/sylvester.hpp"

#include <algorithm>

namespace qwahba {

SylvesterFamily sylvester_solve(const Quaternion& a, const Quaternion& b, double tol) {
  const SimilarityReport report = is_similar(a, b, tol);
  if (!report.verdict) {
    throw Error(ErrorKind::NotSimilar, "a q = q b has only the zero solution");
  }

  const Quaternion u = a.imag();
  const Quaternion v = b.imag();

  SylvesterFamily f;
  f.sum_part = u + v;
  f.sqrt_magnitude = std::sqrt(norm(u) * norm(v));

  const bool antipodal_band = norm(f.sum_part) <= tol * report.scale;
  SqrtResult root;
  if (!antipodal_band) root = quat_sqrt(u * conj(v), tol);

  if (antipodal_band || root.negative_real_branch) {
    f.antipodal = true;
    f.constraint_normal = u;
    return f;
  }
  f.sqrt_part = root.root;
  return f;
}

Quaternion family_sample(const SylvesterFamily& f, double lambda, double mu,
                         const std::optional<Quaternion>& direction, double tol) {
  if (!f.antipodal) {
    if (std::abs(lambda) + std::abs(mu) * norm(f.sum_part) == 0.0) {
      throw Error(ErrorKind::DegenerateParameters, "|lambda| + |mu Im(a + b)| must be nonzero");
    }
    return lambda * f.sqrt_part + mu * f.sum_part;
  }

  if (!direction) {
    throw Error(ErrorKind::DegenerateParameters, "antipodal family needs a pure direction");
  }
  const double dn = norm(*direction);
  if (lambda == 0.0 || dn == 0.0) {
    throw Error(ErrorKind::DegenerateParameters, "antipodal member would be zero");
  }
  if (std::abs(direction->w()) > tol * dn) {
    throw Error(ErrorKind::ConstraintViolated, "antipodal members are pure quaternions");
  }
  if (std::abs(dot3(*direction, f.constraint_normal)) > tol * dn * std::max(1.0, norm(f.constraint_normal))) {
    throw Error(ErrorKind::ConstraintViolated, "direction must be orthogonal to Im a");
  }
  return lambda * direction->imag();
}

Quaternion family_representative(const SylvesterFamily& f) {
  if (f.antipodal) return orthogonal_direction(f.constraint_normal);
  return normalized(f.sqrt_part);
}

}  // namespace qwahba
