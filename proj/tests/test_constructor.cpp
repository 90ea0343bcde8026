#include <doctest.h>

#include "mublab/bipartite.hpp"
#include "mublab/constructor.hpp"
#include "mublab/mulab.hpp"
#include "mublab/numeric.hpp"

using namespace mublab;

TEST_CASE("family constructors produce orthonormal product bases") {
  Rng rng(71);
  for (Family f : {Family::P1, Family::P2, Family::P3}) {
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix b = build_family(f, random_family_params(f, rng));
      CHECK(is_unitary(b));
      CHECK(count_product_columns(b).count == 6);
    }
  }
}

TEST_CASE("build_U is unitary iff the phases are unit modulus") {
  const cplx w = omega3();
  const ComplexMatrix u = build_U(w * w, cplx(0, 1));
  CHECK(is_unitary(u));
  // alpha = beta = 1 degenerates to the identity
  CHECK(max_abs_diff(build_U(1.0, 1.0), ComplexMatrix::Identity(3, 3)) <= 1e-12);
  CHECK_THROWS_AS(build_U(cplx(2.0, 0.0), cplx(1.0, 0.0)), ConstructionError);
}

TEST_CASE("two-basis candidate structure") {
  Rng rng(73);
  const Prop1Params p = random_prop1_params(rng);
  const Prop1Candidate cand = build_prop1_candidate(p);
  CHECK(is_unitary(cand.first_mub));
  CHECK(is_unitary(cand.second_mub));
  // first basis is block diagonal: top-left identity
  CHECK(max_abs_diff(ComplexMatrix(cand.first_mub.topLeftCorner(3, 3)),
                     ComplexMatrix::Identity(3, 3)) <= 1e-12);
  CHECK(count_product_columns(cand.second_mub).count == 3);
  int rank2 = 0;
  for (int j = 0; j < 6; ++j)
    rank2 += schmidt_2x3(cand.second_mub.col(j)).schmidt_rank == 2;
  CHECK(rank2 == 3);
}

TEST_CASE("parameter screens catch the excluded values") {
  Rng rng(79);
  const cplx w = omega3();
  Prop1Params p = random_prop1_params(rng);
  CHECK(check_prop1_constraints(p).all_ok());

  Prop1Params bad_alpha = p;
  bad_alpha.alpha = w;
  const auto c1 = check_prop1_constraints(bad_alpha);
  CHECK_FALSE(c1.alpha_ok);
  CHECK_FALSE(c1.violations.empty());

  Prop1Params bad_xy = p;
  bad_xy.x = w * w;
  bad_xy.y = 1.0;
  CHECK_FALSE(check_prop1_constraints(bad_xy).xy_ok);
}

TEST_CASE("fixed identity check and fault sensitivity") {
  const Eq13Report rep = verify_eq13();
  CHECK(rep.residual_step1 <= 1e-12);
  CHECK(rep.residual_step2 <= 1e-12);

  // corrupting one root of unity in the fixture breaks the identity
  Eq13Parts parts = eq13_parts();
  parts.mu_matrix(1, 0) = std::conj(parts.mu_matrix(1, 0)); // w -> w^2
  const double broken =
      max_abs_diff(parts.left_factor * parts.mu_matrix, parts.middle);
  CHECK(broken > 1e-3);
}

TEST_CASE("four-basis candidate census is 6+3+2+2") {
  Rng rng(83);
  const Prop2Params p = random_prop2_params(rng);
  const Prop2Candidate cand = build_prop2_candidate(p);
  const int expected[4] = {6, 3, 2, 2};
  for (int m = 0; m < 4; ++m) {
    CHECK(is_unitary(cand.bases[m]));
    CHECK(count_product_columns(cand.bases[m]).count == expected[m]);
  }
}

TEST_CASE("prop2 validation rejects bad coefficient blocks") {
  Rng rng(89);
  Prop2Params p = random_prop2_params(rng);
  p.b = ComplexMatrix::Ones(4, 4);
  CHECK_THROWS_AS(validate(p), ConstructionError);
}

TEST_CASE("complete sets are pairwise MU and trio-compatible") {
  for (int d : {2, 3, 5}) {
    const auto set = complete_mub_prime(d);
    REQUIRE(static_cast<int>(set.size()) == d + 1);
    for (std::size_t i = 0; i < set.size(); ++i) {
      CHECK(is_unitary(set[i]));
      for (std::size_t j = i + 1; j < set.size(); ++j)
        CHECK(mu_defect(set[i], set[j]) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(complete_mub_prime(4), DomainError);
}

TEST_CASE("product triples are pairwise MU with product members") {
  const auto m2 = complete_mub_prime(2);
  const auto m3 = complete_mub_prime(3);
  for (const auto& triple : {build_T0(m2, m3), build_T1(m2, m3)}) {
    REQUIRE(triple.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        CHECK(mu_defect(triple[i], triple[j]) <= 1e-12);
    for (const auto& b : triple) CHECK(count_product_columns(b).count == 6);
  }
}
