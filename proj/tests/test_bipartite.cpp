#include <doctest.h>

#include <algorithm>

#include "mublab/bipartite.hpp"
#include "mublab/constructor.hpp"
#include "mublab/numeric.hpp"

using namespace mublab;

namespace {

CVec basis_vec(int i) {
  CVec v = CVec::Zero(6);
  v(i) = 1.0;
  return v;
}

CVec product_of(const CVec& a, const CVec& b) {
  CVec v(6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) v(3 * i + j) = a(i) * b(j);
  return v;
}

} // namespace

TEST_CASE("schmidt decomposition reconstructs the vector") {
  Rng rng(101);
  for (int t = 0; t < 1000; ++t) {
    CVec v(6);
    for (int k = 0; k < 6; ++k) v(k) = cplx(rng.gauss(), rng.gauss());
    v.normalize();
    const ProductVector p = schmidt_2x3(v);
    REQUIRE(p.schmidt_rank >= 1);
    REQUIRE(p.schmidt_rank <= 2);
    CVec rebuilt = CVec::Zero(6);
    for (int r = 0; r < p.schmidt_rank; ++r)
      rebuilt += p.coefficients[static_cast<std::size_t>(r)] *
                 product_of(p.factor_a[static_cast<std::size_t>(r)],
                            p.factor_b[static_cast<std::size_t>(r)]);
    CHECK((rebuilt - v).cwiseAbs().maxCoeff() <= 1e-10);
    // coefficients non-increasing, squares sum to one
    double sq = 0.0;
    for (std::size_t r = 0; r + 1 < p.coefficients.size(); ++r)
      CHECK(p.coefficients[r] >= p.coefficients[r + 1]);
    for (double c : p.coefficients) sq += c * c;
    CHECK(sq == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("is_product separates products from entangled vectors") {
  CHECK(is_product(basis_vec(0)));
  CHECK(is_product(basis_vec(5)));
  Rng rng(7);
  CVec a(2), b(3);
  a << rng.unit_phase(), rng.unit_phase();
  a.normalize();
  b << rng.unit_phase(), rng.unit_phase(), rng.unit_phase();
  b.normalize();
  CHECK(is_product(product_of(a, b)));
  // Bell-like vector is rank 2
  CVec bell = (basis_vec(0) + basis_vec(4)) / std::sqrt(2.0);
  CHECK_FALSE(is_product(bell));
  CHECK(schmidt_2x3(bell).schmidt_rank == 2);
}

TEST_CASE("count_product_columns on stock bases") {
  CHECK(count_product_columns(ComplexMatrix::Identity(6, 6)).count == 6);
  CHECK(count_product_columns(kron(fourier(2), fourier(3))).count == 6);
  CHECK(count_product_columns(fourier(6)).count == 6); // F6 = permuted F2xF3
}

TEST_CASE("product vectors in a product span form a continuum") {
  SpanSearchOptions opts;
  opts.starts = 120;
  const SpanProducts r =
      product_vectors_in_span({basis_vec(0), basis_vec(1)}, Tolerance{}, opts);
  CHECK(r.continuum);
}

TEST_CASE("bell span has exactly two product rays") {
  SpanSearchOptions opts;
  opts.starts = 200;
  const SpanProducts r =
      product_vectors_in_span({basis_vec(0), basis_vec(4)}, Tolerance{}, opts);
  CHECK_FALSE(r.continuum);
  REQUIRE(r.vectors.size() == 2);
  for (const auto& p : r.vectors) {
    const double overlap =
        std::max(std::abs(p.full.dot(basis_vec(0))), std::abs(p.full.dot(basis_vec(4))));
    CHECK(overlap >= 1.0 - 1e-6);
  }
}

TEST_CASE("computational basis carries all three family tags") {
  const FamilyWitness w = classify_product_basis(ComplexMatrix::Identity(6, 6));
  CHECK(w.tags.size() == 3);
  CHECK(w.primary == Family::P1);
  CHECK(witness_residual(ComplexMatrix::Identity(6, 6), w) <= 1e-10);
}

TEST_CASE("I2 x F3 is a first-family basis") {
  const ComplexMatrix b = kron(ComplexMatrix::Identity(2, 2), fourier(3));
  const FamilyWitness w = classify_product_basis(b);
  CHECK(std::find(w.tags.begin(), w.tags.end(), Family::P1) != w.tags.end());
  CHECK(witness_residual(b, w) <= 1e-10);
}

TEST_CASE("classifier rejects non-product columns") {
  ComplexMatrix m = ComplexMatrix::Identity(6, 6);
  const CVec bell = (m.col(0) + m.col(4)) / std::sqrt(2.0);
  const CVec anti = (m.col(0) - m.col(4)) / std::sqrt(2.0);
  m.col(0) = bell;
  m.col(4) = anti;
  CHECK_THROWS_AS(classify_product_basis(m), DomainError);
}

TEST_CASE("witness reconstructs a scrambled generic family instance") {
  Rng rng(303);
  for (Family f : {Family::P1, Family::P2, Family::P3}) {
    const ComplexMatrix base = build_family(f, random_family_params(f, rng));
    const ComplexMatrix scrambled = kron(random_unitary(2, rng), random_unitary(3, rng)) *
                                    base * random_complex_permutation(6, rng);
    const FamilyWitness w = classify_product_basis(scrambled);
    CHECK(std::find(w.tags.begin(), w.tags.end(), f) != w.tags.end());
    CHECK(witness_residual(scrambled, w) <= 1e-8);
  }
}
