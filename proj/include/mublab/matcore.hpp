#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace mublab {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Primitive cube root of unity.
inline cplx omega3() { return {-0.5, std::sqrt(3.0) / 2.0}; }

struct Tolerance {
  double predicate_tol = 1e-9;
  double search_tol = 1e-6;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Order-d Fourier matrix, entries w^(jk)/sqrt(d) with w = exp(2*pi*i/d).
ComplexMatrix fourier(Eigen::Index d);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Block-diagonal direct sum.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_unitary(const ComplexMatrix& m, const Tolerance& tol = {});
bool is_chm(const ComplexMatrix& m, const Tolerance& tol = {});

// Max deviation of entry moduli from 1/sqrt(d); zero exactly for a CHM-shaped
// entry profile.
double chm_profile_defect(const ComplexMatrix& m);

struct DephaseResult {
  CVec left;            // unit-modulus row phases
  CVec right;           // unit-modulus column phases
  ComplexMatrix matrix; // diag(left) * M * diag(right)
};

// First row and column made real nonnegative. For a zero leading entry the
// phase is taken from the first nonzero entry of that row/column; an all-zero
// row/column gets phase 1.
DephaseResult dephase(const ComplexMatrix& m);

// Dephase a single vector: first nonzero entry real positive.
CVec dephase_vector(const CVec& v);

struct EquivalenceCertificate {
  ComplexMatrix left;  // complex permutation matrix C
  ComplexMatrix right; // complex permutation matrix D, X = C * Y * D
};

bool is_complex_permutation(const ComplexMatrix& m, const Tolerance& tol = {});

// Exhaustive search over row permutations; phases solved by column alignment.
std::optional<EquivalenceCertificate> equivalent_chm(const ComplexMatrix& x,
                                                     const ComplexMatrix& y,
                                                     const Tolerance& tol = {});

} // namespace mublab
