#include <doctest.h>

#include <map>

#include "mublab/constructor.hpp"
#include "mublab/numeric.hpp"
#include "mublab/patterns.hpp"

using namespace mublab;

namespace {

std::map<Pattern, int> tally(const std::vector<PatternCertificate>& certs) {
  std::map<Pattern, int> t;
  for (const auto& c : certs) ++t[c.pattern];
  return t;
}

} // namespace

TEST_CASE("product CHM exhibits product-column patterns") {
  const ComplexMatrix m = kron(fourier(2), fourier(3));
  const auto certs = detect_patterns(m);
  const auto t = tally(certs);
  CHECK(t.count(Pattern::Y4));
  CHECK(t.count(Pattern::Y7));
  for (const auto& c : certs) CHECK(validate_certificate(m, c));
}

TEST_CASE("order-6 Fourier carries the expected real 3x2 block") {
  const ComplexMatrix f6 = fourier(6);
  const auto certs = detect_patterns(f6);
  bool found = false;
  for (const auto& c : certs) {
    if (c.pattern != Pattern::Y6) continue;
    if (c.row_indices == std::vector<int>{0, 1, 2} &&
        c.col_indices == std::vector<int>{0, 3}) {
      found = true;
      CHECK(c.strict); // real without any rephasing
    }
    CHECK(validate_certificate(f6, c));
  }
  CHECK(found);
}

TEST_CASE("submatrix pattern tallies survive complex permutations") {
  Rng rng(41);
  const ComplexMatrix m = kron(fourier(2), fourier(3));
  const ComplexMatrix scr =
      random_complex_permutation(6, rng) * m * random_complex_permutation(6, rng);
  const auto a = tally(detect_patterns(m));
  const auto b = tally(detect_patterns(scr));
  // Y4/Y7 depend on the 2x3 product structure, which only row permutations of
  // the form P2 (x) P3 preserve; the submatrix patterns survive any permutation.
  for (Pattern p :
       {Pattern::Y1, Pattern::Y2, Pattern::Y3, Pattern::Y5, Pattern::Y6}) {
    const auto ia = a.find(p), ib = b.find(p);
    const int ca = ia == a.end() ? 0 : ia->second;
    const int cb = ib == b.end() ? 0 : ib->second;
    CHECK(ca == cb);
  }
}

TEST_CASE("product patterns survive local complex permutations") {
  Rng rng(47);
  const ComplexMatrix m = kron(fourier(2), fourier(3));
  const ComplexMatrix scr =
      kron(random_complex_permutation(2, rng), random_complex_permutation(3, rng)) * m *
      random_complex_permutation(6, rng);
  const auto a = tally(detect_patterns(m));
  const auto b = tally(detect_patterns(scr));
  for (Pattern p : {Pattern::Y4, Pattern::Y7}) {
    const auto ia = a.find(p), ib = b.find(p);
    REQUIRE(ia != a.end());
    REQUIRE(ib != b.end());
    CHECK(ia->second == ib->second);
  }
}

TEST_CASE("bogus certificates fail validation") {
  PatternCertificate bogus;
  bogus.pattern = Pattern::Y2;
  bogus.row_indices = {0, 1, 2};
  bogus.col_indices = {0, 1};
  CHECK_FALSE(validate_certificate(fourier(6), bogus));
}

TEST_CASE("detect_patterns requires an order-6 CHM") {
  CHECK_THROWS_AS(detect_patterns(ComplexMatrix::Identity(6, 6)), DomainError);
  CHECK_THROWS_AS(detect_patterns(fourier(5)), DimensionError);
}

TEST_CASE("rephasable_to_real on constructed instances") {
  Rng rng(43);
  ComplexMatrix real_block(3, 2);
  real_block << 0.3, -0.7, 0.5, 0.2, -0.9, 0.4;
  ComplexMatrix phased = real_block;
  for (int i = 0; i < 3; ++i) phased.row(i) *= rng.unit_phase();
  for (int j = 0; j < 2; ++j) phased.col(j) *= rng.unit_phase();
  CHECK(rephasable_to_real(real_block));
  CHECK(rephasable_to_real(phased));

  ComplexMatrix generic(3, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) generic(i, j) = cplx(rng.gauss(), rng.gauss());
  CHECK_FALSE(rephasable_to_real(generic));
}

TEST_CASE("trio check on the order-3 CHM triple") {
  const auto m3 = complete_mub_prime(3);
  const TrioCheck t = trio_check(m3[1], m3[2], m3[3]);
  CHECK(t.is_trio);
  for (double d : t.defects) CHECK(d <= 1e-12);

  // defects unchanged under entrywise conjugation
  const TrioCheck tc =
      trio_check(m3[1].conjugate(), m3[2].conjugate(), m3[3].conjugate());
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(t.defects[k] - tc.defects[k]) <= 1e-12);

  CHECK_THROWS_AS(trio_check(ComplexMatrix::Identity(3, 3), m3[1], m3[2]), DomainError);
}

TEST_CASE("matrix variants of a CHM are CHMs") {
  const ComplexMatrix m = kron(fourier(2), fourier(3));
  const ComplexMatrix adj = transform_variant(m, MatrixVariant::Adjoint);
  const ComplexMatrix con = transform_variant(m, MatrixVariant::Conjugate);
  const ComplexMatrix tra = transform_variant(m, MatrixVariant::Transpose);
  CHECK(max_abs_diff(adj, ComplexMatrix(m.adjoint())) == 0.0);
  CHECK(max_abs_diff(con, ComplexMatrix(m.conjugate())) == 0.0);
  CHECK(max_abs_diff(tra, ComplexMatrix(m.transpose())) == 0.0);
  for (const auto& v : {adj, con, tra}) CHECK(is_chm(v));
}
