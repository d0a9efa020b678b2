#include "qwahba/quaternion.hpp"

#include <algorithm>
#include <ostream>

namespace qwahba {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroQuaternion: return "ZeroQuaternion";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotNonreal: return "NotNonreal";
    case ErrorKind::NotSimilar: return "NotSimilar";
    case ErrorKind::NotPairwiseSimilar: return "NotPairwiseSimilar";
    case ErrorKind::DegenerateParameters: return "DegenerateParameters";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Quaternion::Quaternion(double w, double x, double y, double z) : w_(w), x_(x), y_(y), z_(z) {
  if (!(std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z))) {
    throw Error(ErrorKind::NonFinite, "quaternion components must be finite");
  }
}

Quaternion Quaternion::imag() const noexcept {
  Quaternion r;
  r.x_ = x_;
  r.y_ = y_;
  r.z_ = z_;
  return r;
}

Quaternion Quaternion::operator-() const noexcept {
  Quaternion r;
  r.w_ = -w_;
  r.x_ = -x_;
  r.y_ = -y_;
  r.z_ = -z_;
  return r;
}

Quaternion& Quaternion::operator+=(const Quaternion& o) {
  *this = Quaternion(w_ + o.w_, x_ + o.x_, y_ + o.y_, z_ + o.z_);
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o) {
  *this = Quaternion(w_ - o.w_, x_ - o.x_, y_ - o.y_, z_ - o.z_);
  return *this;
}

Quaternion& Quaternion::operator*=(double s) {
  *this = Quaternion(w_ * s, x_ * s, y_ * s, z_ * s);
  return *this;
}

Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
Quaternion operator*(Quaternion a, double s) { return a *= s; }
Quaternion operator*(double s, Quaternion a) { return a *= s; }
Quaternion operator/(const Quaternion& a, double s) {
  return {a.w() / s, a.x() / s, a.y() / s, a.z() / s};
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  // (a0 + va)(b0 + vb) = a0 b0 - va.vb + a0 vb + b0 va + va x vb
  return {a.w() * b.w() - a.x() * b.x() - a.y() * b.y() - a.z() * b.z(),
          a.w() * b.x() + a.x() * b.w() + a.y() * b.z() - a.z() * b.y(),
          a.w() * b.y() - a.x() * b.z() + a.y() * b.w() + a.z() * b.x(),
          a.w() * b.z() + a.x() * b.y() - a.y() * b.x() + a.z() * b.w()};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.w() << ", " << q.x() << ", " << q.y() << ", " << q.z() << ']';
}

Quaternion conj(const Quaternion& q) noexcept {
  return Quaternion(q.w(), -q.x(), -q.y(), -q.z());
}

double norm_squared(const Quaternion& q) noexcept {
  return q.w() * q.w() + q.x() * q.x() + q.y() * q.y() + q.z() * q.z();
}

double norm(const Quaternion& q) noexcept {
  const double s = norm_squared(q);
  if (s > 1e-290 && s < 1e290) return std::sqrt(s);
  // Rescale only when the squares would underflow or overflow.
  const double m = std::max({std::abs(q.w()), std::abs(q.x()), std::abs(q.y()), std::abs(q.z())});
  if (m == 0.0) return 0.0;
  return m * std::sqrt(norm_squared(q / m));
}

double dot4(const Quaternion& a, const Quaternion& b) noexcept {
  return a.w() * b.w() + a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

double dot3(const Quaternion& a, const Quaternion& b) noexcept {
  return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

Quaternion cross(const Quaternion& a, const Quaternion& b) {
  return Quaternion::pure(a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
                          a.x() * b.y() - a.y() * b.x());
}

Quaternion inverse(const Quaternion& q) {
  const double n2 = norm_squared(q);
  if (n2 == 0.0) throw Error(ErrorKind::ZeroQuaternion, "inverse of zero quaternion");
  return conj(q) / n2;
}

Quaternion normalized(const Quaternion& q) {
  const double n = norm(q);
  if (n == 0.0) throw Error(ErrorKind::ZeroQuaternion, "cannot normalize zero quaternion");
  return q / n;
}

Quaternion conjugate_by(const Quaternion& q, const Quaternion& a) {
  const double n2 = norm_squared(q);
  if (n2 == 0.0) throw Error(ErrorKind::ZeroQuaternion, "conjugation by zero quaternion");
  return (conj(q) * a * q) / n2;
}

Quaternion canonical_sign(const Quaternion& q) noexcept {
  for (double c : q.components()) {
    if (c > 0.0) return q;
    if (c < 0.0) return -q;
  }
  return q;
}

double sign_normalized_distance(const Quaternion& a, const Quaternion& b) noexcept {
  return std::min(norm(a - b), norm(a + b));
}

double rotation_angle_between(const Quaternion& a, const Quaternion& b) {
  const Quaternion ua = normalized(a);
  Quaternion ub = normalized(b);
  if (dot4(ua, ub) < 0.0) ub = -ub;
  // The half-angle between the 4-vectors is half the rotation angle; atan2
  // keeps full precision for nearly equal inputs.
  return 4.0 * std::atan2(norm(ua - ub), norm(ua + ub));
}

bool is_real(const Quaternion& q, double tol) noexcept {
  return norm(q.imag()) <= tol * std::max(1.0, norm(q));
}

Quaternion orthogonal_direction(const Quaternion& v) {
  const std::array<double, 3> c{std::abs(v.x()), std::abs(v.y()), std::abs(v.z())};
  if (c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0) {
    throw Error(ErrorKind::ZeroQuaternion, "no orthogonal direction to a zero vector");
  }
  const auto axis = std::min_element(c.begin(), c.end()) - c.begin();
  const Quaternion e = axis == 0 ? Quaternion::pure(1, 0, 0)
                       : axis == 1 ? Quaternion::pure(0, 1, 0)
                                   : Quaternion::pure(0, 0, 1);
  return normalized(cross(v, e));
}

std::array<Quaternion, 2> SqrtResult::roots() const {
  if (negative_real_branch) {
    throw Error(ErrorKind::DegenerateParameters, "negative real argument has a family of roots; use sample()");
  }
  return {root, -root};
}

Quaternion SqrtResult::sample(const Quaternion& direction, double tol) const {
  if (!negative_real_branch) {
    throw Error(ErrorKind::DegenerateParameters, "sample() only applies to the negative real branch");
  }
  const Quaternion v = direction.imag();
  const double n = norm(v);
  if (n == 0.0) throw Error(ErrorKind::DegenerateParameters, "direction must have a nonzero imaginary part");
  if (std::abs(direction.w()) > tol * norm(direction)) {
    throw Error(ErrorKind::ConstraintViolated, "direction must be a pure quaternion");
  }
  return v * (magnitude / n);
}

SqrtResult quat_sqrt(const Quaternion& a, double tol) {
  const double m = norm(a);
  if (m == 0.0) throw Error(ErrorKind::ZeroQuaternion, "square root of zero");

  const Quaternion v = a.imag();
  const double vn2 = norm_squared(v);
  SqrtResult result;
  result.magnitude = std::sqrt(m);

  if (vn2 == 0.0 && a.w() < 0.0) {
    result.negative_real_branch = true;
    return result;
  }

  // p = a + |a|. Its scalar part |a| + Re a cancels when Re a < 0; the
  // equivalent form |Im a|^2 / (|a| - Re a) does not.
  const double ps = a.w() >= 0.0 ? a.w() + m : vn2 / (m - a.w());
  const Quaternion p(ps, v.x(), v.y(), v.z());
  result.root = canonical_sign(p * (result.magnitude / norm(p)));
  result.near_branch_ambiguity = a.w() < 0.0 && std::sqrt(vn2) <= tol * m;
  return result;
}

namespace {

void require_nonreal(const Quaternion& q, double tol, const char* name) {
  if (is_real(q, tol)) {
    throw Error(ErrorKind::NotNonreal, std::string(name) + " is real within tolerance");
  }
}

}  // namespace

SimilarityReport is_similar(const Quaternion& a, const Quaternion& b, double tol) {
  require_nonreal(a, tol, "a");
  require_nonreal(b, tol, "b");
  const double na = norm(a);
  const double nb = norm(b);

  SimilarityReport r;
  r.scalar_residual = std::abs(a.w() - b.w());
  r.modulus_residual = std::abs(na - nb);
  r.tolerance_used = tol;
  r.scale = std::max({1.0, na, nb});
  r.verdict = r.scalar_residual <= tol * r.scale && r.modulus_residual <= tol * r.scale;
  return r;
}

SimilarityReport is_pairwise_similar(const Quaternion& a1, const Quaternion& a2, const Quaternion& b1,
                                     const Quaternion& b2, double tol) {
  require_nonreal(a1, tol, "a1");
  require_nonreal(a2, tol, "a2");
  require_nonreal(b1, tol, "b1");
  require_nonreal(b2, tol, "b2");
  const SimilarityReport first = is_similar(a1, b1, tol);
  const SimilarityReport second = is_similar(a2, b2, tol);

  SimilarityReport r;
  r.pairwise = true;
  r.tolerance_used = tol;
  r.scalar_residual = std::max(first.scalar_residual, second.scalar_residual);
  r.modulus_residual = std::max(first.modulus_residual, second.modulus_residual);
  r.inner_residual = std::abs((a1 * a2).w() - (b1 * b2).w());
  r.scale = std::max({first.scale, second.scale, norm(a1) * norm(a2), norm(b1) * norm(b2)});
  const double bound = tol * r.scale;
  r.verdict = r.scalar_residual <= bound && r.modulus_residual <= bound && r.inner_residual <= bound;
  return r;
}

}  // namespace qwahba
