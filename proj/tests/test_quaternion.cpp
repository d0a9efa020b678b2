#include <doctest.h>

#include <cmath>

#include "qwahba/quaternion.hpp"
#include "support/oracles.hpp"

using namespace qwahba;

namespace {

const Quaternion kOne = Quaternion::real(1);
const Quaternion kI = Quaternion::pure(1, 0, 0);
const Quaternion kJ = Quaternion::pure(0, 1, 0);
const Quaternion kK = Quaternion::pure(0, 0, 1);

}  // namespace

TEST_CASE("constructor rejects non-finite components") {
  CHECK_THROWS_AS(Quaternion(NAN, 0, 0, 0), Error);
  CHECK_THROWS_AS(Quaternion(0, INFINITY, 0, 0), Error);
  try {
    Quaternion(0, 0, 0, -INFINITY);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
}

TEST_CASE("hamilton product") {
  CHECK(kI * kJ == kK);
  CHECK(kJ * kI == -kK);
  CHECK(kJ * kK == kI);
  CHECK(kK * kI == kJ);
  CHECK(kI * kI == Quaternion::real(-1));

  const Quaternion a(0.3, -1.2, 2.5, 0.7);
  CHECK(kOne * a == a);
  CHECK(a * kOne == a);

  // (1 + i)(1 + j) expanded term by term.
  CHECK(oracle::table_product({1, 1, 0, 0}, {1, 0, 1, 0}) == oracle::Vec4{1, 1, 1, 1});
  CHECK((kOne + kI) * (kOne + kJ) == Quaternion(1, 1, 1, 1));

  SplitMix64 rng(11);
  for (int n = 0; n < 200; ++n) {
    const Quaternion x = oracle::random_quaternion(rng), y = oracle::random_quaternion(rng);
    CHECK(oracle::close(x * y, oracle::as_quat(oracle::table_product(x.components(), y.components())), 1e-14));
  }
}

TEST_CASE("conjugate, modulus and inverse") {
  const Quaternion a(1, -2, 3, -4);
  CHECK(conj(a) == Quaternion(1, 2, -3, 4));
  CHECK(norm(a) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
  CHECK(norm(Quaternion()) == 0.0);
  CHECK(norm(Quaternion(3e200, 0, -4e200, 0)) == doctest::Approx(5e200));
  CHECK(norm(Quaternion(0, 3e-200, 0, 4e-200)) == doctest::Approx(5e-200));

  CHECK(inverse(kI) == -kI);
  CHECK(inverse(kOne) == kOne);
  const Quaternion q(1, 1, 1, 1);
  CHECK(oracle::close(inverse(q), Quaternion(0.25, -0.25, -0.25, -0.25), 1e-16));
  CHECK(oracle::close(q * inverse(q), kOne, 1e-15));
  CHECK(oracle::close(inverse(q) * q, kOne, 1e-15));

  try {
    inverse(Quaternion());
    FAIL("expected ZeroQuaternion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroQuaternion);
  }
}

TEST_CASE("conjugate_by follows q^-1 a q") {
  const Quaternion a(0.5, 1, -2, 0.25);
  CHECK(conjugate_by(kOne, a) == a);
  CHECK(conjugate_by(kI, kJ) == -kJ);

  // q = (1 + i + j + k)/2 is a 120 degree turn about (1, 1, 1); q a q^-1
  // cycles i -> j -> k, so q^-1 a q runs the cycle backwards.
  const Quaternion q(0.5, 0.5, 0.5, 0.5);
  CHECK(oracle::close(conjugate_by(q, kI), kK, 1e-15));
  CHECK(oracle::close(conjugate_by(q, kJ), kI, 1e-15));
  CHECK(oracle::close(conjugate_by(conj(q), kI), kJ, 1e-15));
  CHECK(oracle::close(oracle::matrix_conjugation(q, kI), kK, 1e-15));

  CHECK_THROWS_AS(conjugate_by(Quaternion(), a), Error);

  SplitMix64 rng(5);
  for (int n = 0; n < 200; ++n) {
    const Quaternion r = oracle::random_quaternion(rng), v = oracle::random_pure(rng);
    const Quaternion c = conjugate_by(r, v);
    CHECK(oracle::close(c, oracle::matrix_conjugation(r, v), 1e-13));
    CHECK(norm(c) == doctest::Approx(norm(v)).epsilon(1e-13));
  }
}

TEST_CASE("algebraic identities") {
  SplitMix64 rng(2024);
  for (int n = 0; n < 500; ++n) {
    const Quaternion a = oracle::random_quaternion(rng), b = oracle::random_quaternion(rng);
    const double scale = norm(a) * norm(b);
    CHECK(std::abs(norm(a * b) - scale) <= 1e-14 * scale);
    CHECK(std::abs((a * b).w() - (b * a).w()) <= 1e-14 * scale);
    // |a +- b|^2 = |a|^2 +- 2 Re(a b*) + |b|^2
    const double cross_term = 2.0 * (a * conj(b)).w();
    const double sum_scale = norm_squared(a) + norm_squared(b);
    CHECK(std::abs(norm_squared(a + b) - (norm_squared(a) + cross_term + norm_squared(b))) <= 1e-13 * sum_scale);
    CHECK(std::abs(norm_squared(a - b) - (norm_squared(a) - cross_term + norm_squared(b))) <= 1e-13 * sum_scale);

    const Quaternion u = a.imag(), v = b.imag();
    CHECK(oracle::close(u * u, Quaternion::real(-norm_squared(u)), 1e-14 * std::max(1.0, norm_squared(u))));
    CHECK(oracle::close(u * v + v * u, Quaternion::real(2.0 * (u * v).w()), 1e-13 * std::max(1.0, scale)));
    // u anticommutes with c = Im(u v) = u x v.
    const Quaternion c = (u * v).imag();
    CHECK(oracle::close(c, cross(u, v), 1e-14 * std::max(1.0, scale)));
    CHECK(oracle::close(u * c, -(c * u), 1e-13 * std::max(1.0, norm(u) * norm(c))));
  }
}

TEST_CASE("square roots") {
  SUBCASE("positive real") {
    const SqrtResult r = quat_sqrt(Quaternion::real(4));
    CHECK_FALSE(r.negative_real_branch);
    CHECK(r.root == Quaternion::real(2));
    CHECK(r.roots()[1] == Quaternion::real(-2));
  }
  SUBCASE("negative real is a family") {
    const SqrtResult r = quat_sqrt(Quaternion::real(-1));
    CHECK(r.negative_real_branch);
    CHECK(r.magnitude == 1.0);
    CHECK_THROWS_AS(r.roots(), Error);
    SplitMix64 rng(3);
    for (int n = 0; n < 100; ++n) {
      const Quaternion m = r.sample(oracle::random_pure(rng));
      CHECK(oracle::close(m * m, Quaternion::real(-1), 1e-15));
    }
    CHECK_THROWS_AS(r.sample(Quaternion(1, 1, 0, 0)), Error);
    CHECK_THROWS_AS(r.sample(Quaternion::real(2)), Error);
    CHECK(quat_sqrt(Quaternion::real(-9)).sample(kK) == Quaternion::pure(0, 0, 3));
  }
  SUBCASE("pure argument") {
    // sqrt(2i) = +-(1 + i)
    const SqrtResult r = quat_sqrt(Quaternion::pure(2, 0, 0));
    CHECK(oracle::close(r.root, Quaternion(1, 1, 0, 0), 1e-15));
    CHECK(oracle::close(r.root * r.root, Quaternion::pure(2, 0, 0), 1e-15));
    CHECK_THROWS_AS(r.sample(kI), Error);
  }
  SUBCASE("zero") {
    try {
      quat_sqrt(Quaternion());
      FAIL("expected ZeroQuaternion");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ZeroQuaternion);
    }
  }
  SUBCASE("near the negative real axis the roots stay exact") {
    const Quaternion a(-3.0, 1e-12, -2e-13, 5e-13);
    const SqrtResult r = quat_sqrt(a);
    CHECK(r.near_branch_ambiguity);
    CHECK_FALSE(r.negative_real_branch);
    CHECK(norm(r.root * r.root - a) <= 1e-15 * norm(a));
    CHECK_FALSE(quat_sqrt(Quaternion(-3.0, 1e-3, 0, 0)).near_branch_ambiguity);
  }
  SUBCASE("round trip on random inputs") {
    SplitMix64 rng(99);
    for (int n = 0; n < 500; ++n) {
      const Quaternion a = oracle::random_quaternion(rng);
      const SqrtResult r = quat_sqrt(a);
      CHECK(r.root.w() > 0.0);
      for (const Quaternion& root : r.roots()) CHECK(norm(root * root - a) <= 1e-14 * norm(a));
    }
  }
}

TEST_CASE("similarity") {
  CHECK(is_similar(kI, kJ).verdict);
  CHECK_FALSE(is_similar(kI, 2 * kI).verdict);
  CHECK(is_similar(kOne + kI, kOne + kJ).verdict);
  CHECK_FALSE(is_similar(kOne + kI, Quaternion(2, 0, 0, 0) + kJ).verdict);

  const SimilarityReport r = is_similar(kI, 2 * kI);
  CHECK(r.modulus_residual == 1.0);
  CHECK(r.scale == 2.0);

  try {
    is_similar(Quaternion::real(3), kI);
    FAIL("expected NotNonreal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNonreal);
  }

  SplitMix64 rng(8);
  for (int n = 0; n < 200; ++n) {
    const Quaternion a = oracle::random_quaternion(rng), q = oracle::random_quaternion(rng);
    CHECK(is_similar(a, conjugate_by(q, a)).verdict);
  }
}

TEST_CASE("pairwise similarity") {
  CHECK(is_pairwise_similar(kI, kJ, kJ, kK).verdict);
  CHECK(is_pairwise_similar(kI, kJ, kI, -kJ).verdict);
  const Quaternion tilted = Quaternion::pure(1, 1, 0) / std::sqrt(2.0);
  const SimilarityReport r = is_pairwise_similar(kI, kJ, kI, tilted);
  CHECK_FALSE(r.verdict);
  CHECK(r.pairwise);
  CHECK(r.inner_residual == doctest::Approx(1.0 / std::sqrt(2.0)));

  // Witnesses: the conjugation that realizes each positive verdict.
  const Quaternion w(0.5, -0.5, -0.5, -0.5);
  CHECK(oracle::close(conjugate_by(w, kI), kJ, 1e-15));
  CHECK(oracle::close(conjugate_by(w, kJ), kK, 1e-15));
  CHECK(conjugate_by(kI, kI) == kI);
  CHECK(conjugate_by(kI, kJ) == -kJ);

  CHECK_THROWS_AS(is_pairwise_similar(kI, Quaternion::real(1), kI, kJ), Error);
}

TEST_CASE("canonical sign and distances") {
  CHECK(canonical_sign(Quaternion(-1, 0, 0, 0)) == kOne);
  CHECK(canonical_sign(Quaternion(0, 0, -1, 0)) == kJ);
  CHECK(canonical_sign(Quaternion(0, 0, 1, -1)) == Quaternion(0, 0, 1, -1));
  CHECK(sign_normalized_distance(kI, -kI) == 0.0);
  CHECK(rotation_angle_between(kOne, kI) == doctest::Approx(M_PI));
  const Quaternion small(std::cos(1e-9), std::sin(1e-9), 0, 0);
  CHECK(rotation_angle_between(kOne, small) == doctest::Approx(2e-9).epsilon(1e-6));
}

TEST_CASE("orthogonal direction") {
  const Quaternion d = orthogonal_direction(kI);
  CHECK(d == kK);  // i x j, j being the first least-aligned axis
  SplitMix64 rng(1);
  for (int n = 0; n < 100; ++n) {
    const Quaternion v = oracle::random_pure(rng);
    const Quaternion o = orthogonal_direction(v);
    CHECK(std::abs(dot3(o, v)) <= 1e-14 * norm(v));
    CHECK(norm(o) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(orthogonal_direction(kOne), Error);
}
