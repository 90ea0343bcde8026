#include <doctest.h>

#include "mublab/constructor.hpp"
#include "mublab/mulab.hpp"
#include "mublab/numeric.hpp"

using namespace mublab;

TEST_CASE("mu_value and mu_defect basics") {
  CVec e0 = CVec::Zero(2), flat(2);
  e0(0) = 1.0;
  flat << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(mu_value(e0, flat) == doctest::Approx(1.0 / std::sqrt(2.0)));

  const ComplexMatrix id = ComplexMatrix::Identity(6, 6);
  CHECK(mu_defect(id, kron(fourier(2), fourier(3))) <= 1e-12);
  CHECK(mu_defect(id, id) == doctest::Approx(1.0 - 1.0 / std::sqrt(6.0)));
}

TEST_CASE("mu_defect is invariant under column phases") {
  Rng rng(13);
  const ComplexMatrix a = random_unitary(6, rng);
  const ComplexMatrix b = random_unitary(6, rng);
  const ComplexMatrix bp = b * random_complex_permutation(6, rng);
  CHECK(std::abs(mu_defect(a, b) - mu_defect(a, bp)) <= 1e-12);
}

TEST_CASE("order-2 Fourier enumeration is the two-point closed form") {
  const MuEnumeration e = mu_vectors(fourier(2));
  REQUIRE(e.vectors.size() == 2);
  CHECK(e.exhaustive);
  CHECK_FALSE(e.continuum);
  for (double r : e.residuals) CHECK(r <= 1e-12);
  // entries (1, +/- i)/sqrt(2)
  for (const auto& v : e.vectors) {
    CHECK(v(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(v(1).real()) <= 1e-12);
    CHECK(std::abs(std::abs(v(1).imag()) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  }
}

TEST_CASE("order-3 Fourier enumeration has six vectors") {
  const MuEnumeration e = mu_vectors(fourier(3));
  REQUIRE(e.vectors.size() == 6);
  CHECK(e.exhaustive);
  for (double r : e.residuals) CHECK(r <= 1e-12);
  // all distinct as rays
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      CHECK(std::norm(e.vectors[i].dot(e.vectors[j])) < 1.0 - 1e-6);
}

TEST_CASE("generic flat search rediscovers the order-3 closed form") {
  // Column-rephased F3 dodges the closed-form gate but keeps the MU set.
  ComplexMatrix u = fourier(3);
  CVec phases(3);
  phases << cplx(0, 1), cplx(1, 0), cplx(0, -1);
  u = u * phases.asDiagonal();
  MuSearchOptions opts;
  opts.grid_depth = 12;
  opts.polish_starts = 300;
  const MuEnumeration e = mu_vectors(u, Tolerance{}, opts);
  CHECK_FALSE(e.exhaustive);
  CHECK(e.vectors.size() == 6);
  for (double r : e.residuals) CHECK(r <= 1e-8);
}

TEST_CASE("product unitary with a local identity factor yields a continuum") {
  const ComplexMatrix u = kron(ComplexMatrix::Identity(2, 2), fourier(3));
  MuSearchOptions opts;
  opts.grid_depth = 6;
  opts.polish_starts = 250;
  const MuEnumeration e = mu_vectors(u, Tolerance{}, opts);
  CHECK(e.continuum);
}

TEST_CASE("multi-basis search on the product triple finds nothing") {
  const auto t0 = build_T0(complete_mub_prime(2), complete_mub_prime(3));
  MuSearchOptions opts;
  opts.grid_depth = 7;
  opts.polish_starts = 400;
  opts.detect_continuum = false;
  CHECK(mu_vectors_multi(t0, Tolerance{}, opts).vectors.empty());
}

TEST_CASE("product MU factorization splits as the factor conditions") {
  // p = |+> (x) f, with f a flat vector: MU to the computational product basis.
  CVec full(6);
  const double s = 1.0 / std::sqrt(6.0);
  for (int k = 0; k < 6; ++k) full(k) = s;
  const ProductVector p = schmidt_2x3(full);
  const MuFactorizationReport rep =
      check_product_mu_factorization(p, ComplexMatrix::Identity(6, 6));
  CHECK(rep.holds);
  CHECK(rep.joint_mu);
  CHECK(rep.factors_mu);
}

TEST_CASE("mu_vectors rejects non-unitary input") {
  ComplexMatrix bad = ComplexMatrix::Ones(3, 3);
  CHECK_THROWS_AS(mu_vectors(bad), DomainError);
}
