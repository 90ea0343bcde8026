#pragma once

#include <cstdint>
#include <vector>

#include "mublab/bipartite.hpp"
#include "mublab/matcore.hpp"

namespace mublab {

// |<u|v>|
double mu_value(const CVec& u, const CVec& v);

// Max over column pairs of | |<a_i|b_j>| - 1/sqrt(d) |.
double mu_defect(const ComplexMatrix& a, const ComplexMatrix& b,
                 const Tolerance& tol = {});

struct MuEnumeration {
  std::vector<CVec> vectors;     // dephased unit vectors
  bool exhaustive = false;       // only closed-form branches claim this
  bool continuum = false;        // heuristic: cluster growth under refinement
  std::vector<double> residuals; // per-vector max MU deviation
};

struct MuSearchOptions {
  int grid_depth = 7;
  int polish_starts = 500;
  std::uint64_t seed = 987654321;
  bool detect_continuum = true;
};

// Dephased unit vectors MU to all columns of I_d and U. MU to the identity
// forces flat entries e^{i theta_k}/sqrt(d) with theta_0 = 0; the remaining
// angles are found by grid + damped least-squares polish. Fourier matrices at
// d = 2, 3 short-circuit to the known closed forms.
MuEnumeration mu_vectors(const ComplexMatrix& u, const Tolerance& tol = {},
                         const MuSearchOptions& opts = {});

// Vectors MU to every column of every basis. Uses the flat parametrization
// when one of the bases is the identity, otherwise a full unit-vector
// parametrization with random restarts.
MuEnumeration mu_vectors_multi(const std::vector<ComplexMatrix>& bases,
                               const Tolerance& tol = {},
                               const MuSearchOptions& opts = {});

struct MuFactorizationReport {
  bool holds = false;    // the two sides of the factorization agree
  bool joint_mu = false; // p MU to every column of B
  bool factors_mu = false;
  double joint_dev = 0.0;
  double a_dev = 0.0;
  double b_dev = 0.0;
};

// Checks that a rank-one p is MU to a product basis iff its factors are MU to
// the corresponding factor sets.
MuFactorizationReport check_product_mu_factorization(const ProductVector& p,
                                                     const ComplexMatrix& basis,
                                                     const Tolerance& tol = {});

} // namespace mublab
