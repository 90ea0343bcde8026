#pragma once

#include <string>
#include <vector>

#include "mublab/bipartite.hpp"
#include "mublab/matcore.hpp"
#include "mublab/numeric.hpp"

namespace mublab {

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- P1/P2/P3 canonical families -----------------------------------------

struct FamilyParams {
  ComplexMatrix a_basis; // P1: 3x3 unitary whose columns are {|a_i>}
  double theta_b = 0.0;  // P2: real angle of |b> in span{|0>,|1>} of the B side
  double theta_c = 0.0;  // P2: real angle of |c> in C^2
  double theta_d = 0.0;  // P3: real angle of |d> in C^2
  double theta_e = 0.0;  // P3: magnitude angle of |e>
  double chi_e = 0.0;    // P3: relative phase of |e> (first element stays real)
};

ComplexMatrix build_family(Family family, const FamilyParams& params,
                           const Tolerance& tol = {});

FamilyParams random_family_params(Family family, Rng& rng);

// ---- Two-basis candidate construction ---------------------------------------

struct Prop1Params {
  cplx alpha{1.0, 0.0};
  cplx beta{1.0, 0.0};
  cplx x{1.0, 0.0};
  cplx y{1.0, 0.0};
  ComplexMatrix u; // 3x3 unitary coefficient block
};

void validate(const Prop1Params& p, const Tolerance& tol = {});

// U = F * diag(1, alpha, beta) * F^+ with F the symmetric order-3 Fourier.
ComplexMatrix build_U(const cplx& alpha, const cplx& beta, const Tolerance& tol = {});

struct Prop1Candidate {
  ComplexMatrix first_mub;  // I_3 (+) U, block diagonal
  ComplexMatrix second_mub; // 3 product columns + 3 entangled columns
};

Prop1Candidate build_prop1_candidate(const Prop1Params& p, const Tolerance& tol = {});

struct Prop1Constraints {
  bool alpha_ok = false;      // alpha off {1, w, w^2}
  bool xy_ok = false;         // (x, y) off the 9-point w-grid
  bool u_entries_ok = false;  // coefficient block has no zero entries
  std::vector<std::string> violations;
  bool all_ok() const { return alpha_ok && xy_ok && u_entries_ok; }
};

Prop1Constraints check_prop1_constraints(const Prop1Params& p, const Tolerance& tol = {});

struct Eq13Report {
  double residual_step1 = 0.0;
  double residual_step2 = 0.0;
};

// The two matrix identities relating the order-3 Fourier conjugate to the
// 3x6 matrix of MU vectors; both residuals must be at machine precision.
Eq13Report verify_eq13();

// The fixed matrices entering the identity, exposed for fault-injection tests.
struct Eq13Parts {
  ComplexMatrix left_factor;   // 3x3, conjugate Fourier
  ComplexMatrix mu_matrix;     // 3x6, the d=3 MU vectors
  ComplexMatrix middle;        // 3x6
  ComplexMatrix right_matrix;  // 3x6
  ComplexMatrix right_diag;    // 6x6 diagonal
};

Eq13Parts eq13_parts();

// ---- Four-basis candidate construction --------------------------------------

struct Prop2Params {
  Prop1Params prop1;
  cplx u_phase{1.0, 0.0};
  cplx v_phase{1.0, 0.0};
  cplx x1{1.0, 0.0}, y1{1.0, 0.0};
  cplx x2{1.0, 0.0}, y2{1.0, 0.0};
  cplx x3{1.0, 0.0}, y3{1.0, 0.0};
  cplx x4{1.0, 0.0}, y4{1.0, 0.0};
  ComplexMatrix b; // 4x4 unitary coefficient block
  ComplexMatrix c; // 4x4 unitary coefficient block
};

void validate(const Prop2Params& p, const Tolerance& tol = {});

struct Prop2Candidate {
  ComplexMatrix bases[4]; // first = I_3 (+) U; then 3+3, 2+4, 2+4 structures
};

Prop2Candidate build_prop2_candidate(const Prop2Params& p, const Tolerance& tol = {});

Prop1Params random_prop1_params(Rng& rng, const Tolerance& tol = {});
Prop2Params random_prop2_params(Rng& rng, const Tolerance& tol = {});

// ---- Product-vector MUB triples and complete MUB sets ----------------------

// T0: members A_m (x) B_m for the first three bases of each complete set.
std::vector<ComplexMatrix> build_T0(const std::vector<ComplexMatrix>& mubs2,
                                    const std::vector<ComplexMatrix>& mubs3,
                                    const Tolerance& tol = {});

// T1: third member mixes two C^3 bases across the two rays of the C^2 basis.
std::vector<ComplexMatrix> build_T1(const std::vector<ComplexMatrix>& mubs2,
                                    const std::vector<ComplexMatrix>& mubs3,
                                    const Tolerance& tol = {});

// d+1 pairwise-MU bases for prime d in {2, 3, 5}.
std::vector<ComplexMatrix> complete_mub_prime(int d);

} // namespace mublab
