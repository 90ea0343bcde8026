#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mublab/matcore.hpp"

namespace mublab {

// Schmidt data of a 6-dimensional vector viewed as C^2 (x) C^3.
struct ProductVector {
  CVec full;                       // 6-dim, unit norm
  int schmidt_rank = 1;            // 1 or 2
  std::vector<double> coefficients; // non-increasing, squares sum to 1
  std::vector<CVec> factor_a;      // unit vectors in C^2, one per coefficient
  std::vector<CVec> factor_b;      // unit vectors in C^3, one per coefficient
};

ProductVector schmidt_2x3(const CVec& v, const Tolerance& tol = {});

bool is_product(const CVec& v, const Tolerance& tol = {});

struct ProductColumnCensus {
  int count = 0;
  std::vector<int> indices;
};

ProductColumnCensus count_product_columns(const ComplexMatrix& basis,
                                          const Tolerance& tol = {});

struct SpanSearchOptions {
  int starts = 400;
  std::uint64_t seed = 20240901;
  bool detect_continuum = true;
};

struct SpanProducts {
  std::vector<ProductVector> vectors; // sample when continuum is set
  bool continuum = false;
};

// Product vectors in the span of k orthonormal 6-dim vectors, found by
// multi-start polishing of the rank-one minor system in the span
// coefficients. Continuum detection is heuristic: cluster counts strictly
// growing under two refinements of the start set.
SpanProducts product_vectors_in_span(const std::vector<CVec>& span,
                                     const Tolerance& tol = {},
                                     const SpanSearchOptions& opts = {});

enum class Family { P1, P2, P3 };

std::string family_name(Family f);

struct FamilyWitness {
  std::vector<Family> tags;      // every matching family
  Family primary = Family::P1;   // highest-priority tag, P1 > P2 > P3
  ComplexMatrix local_a;         // 2x2 unitary
  ComplexMatrix local_b;         // 3x3 unitary
  std::vector<int> column_perm;  // canonical column j comes from input column perm[j]
  CVec column_phases;            // phases removed per canonical column
  ComplexMatrix canonical;       // (local_a (x) local_b) * B * P, column-dephased
};

// Classifies an order-6 product-vector basis into P1/P2/P3. Throws DomainError
// if a column is not product, and a logic error when no family matches (which
// contradicts the classification theorem and signals a tolerance failure).
FamilyWitness classify_product_basis(const ComplexMatrix& basis,
                                     const Tolerance& tol = {});

// Residual of the witness transform: input column perm[j], mapped through the
// local unitaries and phase, against the stored canonical column.
double witness_residual(const ComplexMatrix& basis, const FamilyWitness& w);

} // namespace mublab
