#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mublab/constructor.hpp"
#include "mublab/matcore.hpp"

namespace mublab {

// Max pairwise mu_defect; zero exactly for a true MUB set.
double set_defect(const std::vector<ComplexMatrix>& bases, const Tolerance& tol = {});

struct SearchReport {
  Prop2Params params;
  double best_defect = 0.0;
  std::vector<int> product_census;                 // per basis
  std::vector<std::vector<std::string>> pattern_hits; // per basis, tag names
  long iterations = 0;
  std::uint64_t seed = 0;
  bool screened_out = false;       // grid census: constraint screens failed
  std::vector<std::string> violations;
  bool review_flag = false;        // defect below the review threshold
};

struct MinimizeOptions {
  std::uint64_t seed = 20250101;
  int restarts = 1;
  int max_iters = 40;      // coordinate-descent sweeps per restart
  int line_points = 16;    // samples per circle line search
};

// Coordinate descent over all free phases and the Givens angles of the
// coefficient unitaries; iterates stay exactly unitary. Deterministic given
// the seed; never increases the incumbent defect.
SearchReport minimize_defect(const Prop2Params& initial, const MinimizeOptions& opts = {},
                             const Tolerance& tol = {});

// Fills census, pattern hits and defect for an already-built candidate.
SearchReport analyze_candidate(const Prop2Params& params, const Tolerance& tol = {});

struct GridSpec {
  std::vector<double> alpha_angles{0.7};
  std::vector<double> beta_angles{1.1};
  std::vector<double> x_angles{0.9};
  std::vector<double> y_angles{1.3};
  std::uint64_t seed = 7;   // per-point seed base for the free unitaries/phases
  bool random_blocks = false; // identity coefficient blocks unless set
};

// One report per grid point, in row-major grid order. Screened-out points are
// reported with their violations and are never analyzed further.
using ReportSink = std::function<void(const SearchReport&)>;
void grid_census(const GridSpec& grid, const ReportSink& sink, const Tolerance& tol = {});

} // namespace mublab
