#include <doctest.h>

#include <algorithm>

#include "mublab/constructor.hpp"
#include "mublab/mulab.hpp"
#include "mublab/numeric.hpp"
#include "mublab/search.hpp"

using namespace mublab;

TEST_CASE("set_defect basics and permutation invariance") {
  const ComplexMatrix id = ComplexMatrix::Identity(6, 6);
  const ComplexMatrix f = kron(fourier(2), fourier(3));
  CHECK(set_defect({id, f}) <= 1e-12);
  CHECK(set_defect({id, id}) == doctest::Approx(1.0 - 1.0 / std::sqrt(6.0)));
  CHECK(set_defect(build_T0(complete_mub_prime(2), complete_mub_prime(3))) <= 1e-10);

  Rng rng(51);
  std::vector<ComplexMatrix> bases;
  for (int k = 0; k < 4; ++k) bases.push_back(random_unitary(6, rng));
  const double base = set_defect(bases);
  std::reverse(bases.begin(), bases.end());
  CHECK(set_defect(bases) == doctest::Approx(base).epsilon(1e-14));

  CHECK_THROWS_AS(set_defect({id}), DimensionError);
}

TEST_CASE("minimize_defect is monotone and deterministic") {
  Rng rng(53);
  const Prop2Params start = random_prop2_params(rng);
  const Prop2Candidate cand = build_prop2_candidate(start);
  const double initial = set_defect(
      {cand.bases[0], cand.bases[1], cand.bases[2], cand.bases[3]});

  MinimizeOptions opts;
  opts.seed = 99;
  opts.max_iters = 3;
  const SearchReport a = minimize_defect(start, opts);
  CHECK(a.best_defect <= initial + 1e-12);
  CHECK(a.best_defect >= 0.0);
  CHECK(a.product_census.size() == 4);
  for (int c : a.product_census) CHECK(c <= 6);

  const SearchReport b = minimize_defect(start, opts);
  CHECK(a.best_defect == b.best_defect);
  CHECK(a.iterations == b.iterations);
  CHECK(a.seed == b.seed);
}

TEST_CASE("analyze_candidate reports the constructed census") {
  Rng rng(57);
  const SearchReport r = analyze_candidate(random_prop2_params(rng));
  REQUIRE(r.product_census.size() == 4);
  CHECK(r.product_census[0] == 6);
  CHECK(r.product_census[1] == 3);
  CHECK(r.product_census[2] == 2);
  CHECK(r.product_census[3] == 2);
  CHECK(r.best_defect > 0.0);
  CHECK_FALSE(r.screened_out);
}

TEST_CASE("grid census emits one record per point and screens bad values") {
  GridSpec grid;
  grid.alpha_angles = {0.0, 0.6};               // 0.0 -> alpha = 1, screened
  grid.beta_angles = {1.0};
  grid.x_angles = {0.5};
  grid.y_angles = {0.9};
  grid.seed = 13;

  std::vector<SearchReport> records;
  grid_census(grid, [&](const SearchReport& r) { records.push_back(r); });
  REQUIRE(records.size() == 2);
  CHECK(records[0].screened_out);
  CHECK_FALSE(records[0].violations.empty());
  CHECK(records[0].product_census.empty()); // screened points are not analyzed
  CHECK_FALSE(records[1].screened_out);
  // the census sweep analyzes the two-basis candidate
  REQUIRE(records[1].product_census.size() == 2);
  CHECK(records[1].product_census[0] == 6);
  CHECK(records[1].product_census[1] == 3);
}

TEST_CASE("omega-grid x,y values are screened out") {
  // x and y angles 0 and 2*pi/3 are on the excluded 9-point grid
  GridSpec grid;
  grid.alpha_angles = {0.6};
  grid.beta_angles = {1.0};
  grid.x_angles = {0.0, 2.0 * kPi / 3.0};
  grid.y_angles = {0.0};
  grid.seed = 13;

  int screened = 0, total = 0;
  grid_census(grid, [&](const SearchReport& r) {
    ++total;
    screened += r.screened_out ? 1 : 0;
  });
  CHECK(total == 2);
  CHECK(screened == 2);
}

TEST_CASE("grid census is reproducible for a fixed seed") {
  GridSpec grid;
  grid.alpha_angles = {0.7};
  grid.beta_angles = {1.1};
  grid.x_angles = {0.9};
  grid.y_angles = {1.3};
  grid.seed = 29;
  grid.random_blocks = true;

  std::vector<double> first, second;
  grid_census(grid, [&](const SearchReport& r) { first.push_back(r.best_defect); });
  grid_census(grid, [&](const SearchReport& r) { second.push_back(r.best_defect); });
  CHECK(first == second);
}
