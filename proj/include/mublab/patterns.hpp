#pragma once

#include <string>
#include <vector>

#include "mublab/matcore.hpp"

namespace mublab {

enum class Pattern { Y1, Y2, Y3, Y4, Y5, Y6, Y7 };

std::string pattern_name(Pattern p);

struct PatternCertificate {
  Pattern pattern;
  std::vector<int> row_indices;
  std::vector<int> col_indices;
  double metric = 0.0;    // pattern-specific deviation or singular value
  bool strict = false;    // Y6: block is real without any rephasing
  std::vector<CVec> factors; // Y2 rank-one factor; Y4/Y7 product factors
};

// Exhaustive scan of an order-6 CHM for the seven exclusion patterns:
//   Y1 order-3 subunitary block        Y5 order-3 singular block
//   Y2 3x2 rank-one block              Y6 3x2 block real up to rephasing
//   Y3 order-3 block with one column orthogonal to the other two
//   Y4 three product columns           Y7 two product columns sharing an A-factor
std::vector<PatternCertificate> detect_patterns(const ComplexMatrix& m,
                                                const Tolerance& tol = {});

// Independent re-check of a certificate against the matrix it was issued for.
bool validate_certificate(const ComplexMatrix& m, const PatternCertificate& cert,
                          const Tolerance& tol = {});

// True when row and column phases can make the block real; used for Y6 and
// for the real-matrix equivalence of 3x2 factor pairs.
bool rephasable_to_real(const ComplexMatrix& block, const Tolerance& tol = {});

struct TrioCheck {
  bool is_trio = false;
  double defects[3] = {0.0, 0.0, 0.0}; // U^+V, V^+W, W^+U
};

TrioCheck trio_check(const ComplexMatrix& u, const ComplexMatrix& v,
                     const ComplexMatrix& w, const Tolerance& tol = {});

enum class MatrixVariant { Adjoint, Conjugate, Transpose };

ComplexMatrix transform_variant(const ComplexMatrix& m, MatrixVariant variant);

} // namespace mublab
