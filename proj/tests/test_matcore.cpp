#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mublab/matcore.hpp"
#include "mublab/numeric.hpp"

using namespace mublab;

TEST_CASE("fourier matrices are CHMs") {
  for (int d = 2; d <= 6; ++d) {
    const ComplexMatrix f = fourier(d);
    CHECK(is_unitary(f));
    CHECK(is_chm(f));
    CHECK(chm_profile_defect(f) <= 1e-12);
  }
  CHECK_THROWS_AS(fourier(0), DimensionError);
}

TEST_CASE("identity is unitary but not a CHM") {
  const ComplexMatrix id = ComplexMatrix::Identity(6, 6);
  CHECK(is_unitary(id));
  CHECK_FALSE(is_chm(id));
}

TEST_CASE("kron and direct_sum shapes and content") {
  const ComplexMatrix f2f3 = kron(fourier(2), fourier(3));
  CHECK(f2f3.rows() == 6);
  CHECK(is_chm(f2f3));
  // kron(A,B)[3a+b, 3c+d] = A[a,c] * B[b,d]
  CHECK(std::abs(f2f3(4, 5) - fourier(2)(1, 1) * fourier(3)(1, 2)) <= 1e-15);

  const ComplexMatrix s = direct_sum(ComplexMatrix::Identity(2, 2), fourier(3));
  CHECK(s.rows() == 5);
  CHECK(is_unitary(s));
  CHECK(std::abs(s(0, 3)) == 0.0);
}

TEST_CASE("dephase makes first row and column real nonnegative") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix m = random_unitary(5, rng);
    const DephaseResult r = dephase(m);
    for (Eigen::Index j = 0; j < 5; ++j) {
      CHECK(r.matrix(0, j).imag() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(r.matrix(0, j).real() >= -1e-12);
      CHECK(r.matrix(j, 0).imag() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(r.matrix(j, 0).real() >= -1e-12);
    }
    // the certificate reconstructs the dephased matrix
    const ComplexMatrix rebuilt =
        r.left.asDiagonal() * m * r.right.asDiagonal();
    CHECK(max_abs_diff(rebuilt, r.matrix) <= 1e-12);
    // idempotent
    CHECK(max_abs_diff(dephase(r.matrix).matrix, r.matrix) <= 1e-12);
  }
}

TEST_CASE("dephase recovers column phases applied to the Fourier matrix") {
  Rng rng(5);
  const ComplexMatrix f = fourier(4);
  CVec phases(4);
  for (int j = 0; j < 4; ++j) phases(j) = rng.unit_phase();
  const ComplexMatrix tweaked = f * phases.asDiagonal();
  CHECK(max_abs_diff(dephase(tweaked).matrix, f) <= 1e-12);
}

TEST_CASE("dephase handles zero leading entries") {
  ComplexMatrix m(2, 2);
  m << cplx(0, 0), cplx(0, 1), cplx(0, -1), cplx(0, 0);
  const DephaseResult r = dephase(m);
  CHECK(max_abs(r.matrix.imag().cast<cplx>()) <= 1e-12);
}

TEST_CASE("complex permutation predicate") {
  Rng rng(3);
  CHECK(is_complex_permutation(random_complex_permutation(6, rng)));
  CHECK_FALSE(is_complex_permutation(fourier(6)));
  CHECK(is_complex_permutation(ComplexMatrix::Identity(4, 4)));
}

TEST_CASE("equivalent_chm: reflexive and permutation-stable") {
  const ComplexMatrix f6 = fourier(6);
  auto cert = equivalent_chm(f6, f6);
  REQUIRE(cert.has_value());
  CHECK(max_abs_diff(cert->left * f6 * cert->right, f6) <= 1e-9);

  Rng rng(17);
  const ComplexMatrix scr =
      random_complex_permutation(6, rng) * f6 * random_complex_permutation(6, rng);
  auto cert2 = equivalent_chm(scr, f6);
  REQUIRE(cert2.has_value());
  CHECK(is_complex_permutation(cert2->left));
  CHECK(is_complex_permutation(cert2->right));
  CHECK(max_abs_diff(cert2->left * f6 * cert2->right, scr) <= 1e-9);
}

TEST_CASE("equivalent_chm: F2xF3 vs F3xF2 are equivalent, F6 self only once dephased") {
  const ComplexMatrix a = kron(fourier(2), fourier(3));
  const ComplexMatrix b = kron(fourier(3), fourier(2));
  CHECK(equivalent_chm(a, b).has_value());
}

TEST_CASE("unitary_from_angles is exactly unitary for arbitrary angles") {
  Rng rng(23);
  for (int d : {2, 3, 4}) {
    std::vector<double> angles(unitary_angle_count(d));
    for (auto& a : angles) a = rng.uniform(-10.0, 10.0);
    CHECK(is_unitary(unitary_from_angles(d, angles), Tolerance{1e-12, 1e-12}));
  }
}

TEST_CASE("random_unitary is Haar-like: unitary and phase-diverse") {
  Rng rng(29);
  const ComplexMatrix u = random_unitary(6, rng);
  CHECK(is_unitary(u));
  CHECK(max_abs_diff(u, random_unitary(6, rng)) > 1e-3);
}
