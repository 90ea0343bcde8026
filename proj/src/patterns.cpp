#include "mublab/patterns.hpp"

#include <algorithm>
#include <cmath>

#include "mublab/bipartite.hpp"

namespace mublab {

std::string pattern_name(Pattern p) {
  switch (p) {
    case Pattern::Y1: return "Y1";
    case Pattern::Y2: return "Y2";
    case Pattern::Y3: return "Y3";
    case Pattern::Y4: return "Y4";
    case Pattern::Y5: return "Y5";
    case Pattern::Y6: return "Y6";
    case Pattern::Y7: return "Y7";
  }
  return "?";
}

namespace {

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

ComplexMatrix submatrix(const ComplexMatrix& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  ComplexMatrix b(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(rows[i], cols[j]);
  return b;
}

double subunitary_defect(const ComplexMatrix& b) {
  ComplexMatrix g = b.adjoint() * b;
  const double c = g.trace().real() / static_cast<double>(b.cols());
  g -= c * ComplexMatrix::Identity(b.cols(), b.cols());
  return max_abs(g);
}

double rank_one_defect(const ComplexMatrix& b) {
  // 3x2 block: all 2x2 minors must vanish.
  double dev = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      dev = std::max(dev, std::abs(b(i, 0) * b(j, 1) - b(i, 1) * b(j, 0)));
  return dev;
}

double smallest_singular_value(const ComplexMatrix& b) {
  Eigen::JacobiSVD<ComplexMatrix> svd(b);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

} // namespace

bool rephasable_to_real(const ComplexMatrix& block, const Tolerance& tol) {
  // Row phases from the first column, then column phases from the first row;
  // the block is equivalent to a real matrix iff the result is real.
  ComplexMatrix b = block;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    const double a = std::abs(b(i, 0));
    if (a > 1e-12) b.row(i) *= std::conj(b(i, 0)) / a;
  }
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const double a = std::abs(b(0, j));
    if (a > 1e-12) b.col(j) *= std::conj(b(0, j)) / a;
  }
  double im = 0.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) im = std::max(im, std::abs(b(i, j).imag()));
  return im <= tol.search_tol;
}

std::vector<PatternCertificate> detect_patterns(const ComplexMatrix& m, const Tolerance& tol) {
  if (!is_chm(m, tol)) throw DomainError("detect_patterns: input must be an order-6 CHM");
  if (m.rows() != 6) throw DimensionError("detect_patterns: order must be 6");

  std::vector<PatternCertificate> certs;
  const auto triples = combinations(6, 3);
  const auto pairs = combinations(6, 2);

  // Y1 / Y3 / Y5 over all order-3 submatrices.
  for (const auto& rows : triples)
    for (const auto& cols : triples) {
      const ComplexMatrix b = submatrix(m, rows, cols);
      const double su = subunitary_defect(b);
      if (su <= tol.search_tol)
        certs.push_back({Pattern::Y1, rows, cols, su, false, {}});
      for (int c = 0; c < 3; ++c) {
        const int o1 = (c + 1) % 3, o2 = (c + 2) % 3;
        const double g = std::max(std::abs(CVec(b.col(c)).dot(b.col(o1))),
                                  std::abs(CVec(b.col(c)).dot(b.col(o2))));
        if (g <= tol.search_tol) {
          certs.push_back({Pattern::Y3, rows, {cols[static_cast<std::size_t>(c)],
                                               cols[static_cast<std::size_t>(o1)],
                                               cols[static_cast<std::size_t>(o2)]},
                           g, false, {}});
          break;
        }
      }
      const double sv = smallest_singular_value(b);
      if (sv <= 10.0 * tol.search_tol)
        certs.push_back({Pattern::Y5, rows, cols, sv, false, {}});
    }

  // Y2 / Y6 over all 3x2 submatrices.
  for (const auto& rows : triples)
    for (const auto& cols : pairs) {
      const ComplexMatrix b = submatrix(m, rows, cols);
      const double r1 = rank_one_defect(b);
      if (r1 <= tol.search_tol) {
        PatternCertificate c{Pattern::Y2, rows, cols, r1, false, {}};
        c.factors.push_back(CVec(b.col(0)).normalized());
        certs.push_back(std::move(c));
      }
      if (rephasable_to_real(b, tol)) {
        double im = 0.0;
        for (Eigen::Index i = 0; i < 3; ++i)
          for (Eigen::Index j = 0; j < 2; ++j) im = std::max(im, std::abs(b(i, j).imag()));
        certs.push_back({Pattern::Y6, rows, cols, im, im <= tol.search_tol, {}});
      }
    }

  // Y4 / Y7 from the product-column structure.
  std::vector<int> prod_cols;
  std::vector<CVec> a_factors, b_factors;
  for (int j = 0; j < 6; ++j) {
    ProductVector p = schmidt_2x3(m.col(j), tol);
    if (p.coefficients[1] <= tol.search_tol) {
      prod_cols.push_back(j);
      a_factors.push_back(p.factor_a[0]);
      b_factors.push_back(p.factor_b[0]);
    }
  }
  const int np = static_cast<int>(prod_cols.size());
  for (int i = 0; i < np; ++i)
    for (int j = i + 1; j < np; ++j) {
      for (int k = j + 1; k < np; ++k)
        certs.push_back({Pattern::Y4,
                         {},
                         {prod_cols[static_cast<std::size_t>(i)],
                          prod_cols[static_cast<std::size_t>(j)],
                          prod_cols[static_cast<std::size_t>(k)]},
                         0.0,
                         false,
                         {}});
      const double overlap = std::abs(a_factors[static_cast<std::size_t>(i)]
                                          .dot(a_factors[static_cast<std::size_t>(j)]));
      if (overlap >= 1.0 - tol.search_tol) {
        PatternCertificate c{Pattern::Y7,
                             {},
                             {prod_cols[static_cast<std::size_t>(i)],
                              prod_cols[static_cast<std::size_t>(j)]},
                             1.0 - overlap,
                             false,
                             {}};
        c.factors = {a_factors[static_cast<std::size_t>(i)],
                     b_factors[static_cast<std::size_t>(i)],
                     b_factors[static_cast<std::size_t>(j)]};
        certs.push_back(std::move(c));
      }
    }

  return certs;
}

bool validate_certificate(const ComplexMatrix& m, const PatternCertificate& cert,
                          const Tolerance& tol) {
  switch (cert.pattern) {
    case Pattern::Y1:
      return subunitary_defect(submatrix(m, cert.row_indices, cert.col_indices)) <= tol.search_tol;
    case Pattern::Y2:
      return rank_one_defect(submatrix(m, cert.row_indices, cert.col_indices)) <= tol.search_tol;
    case Pattern::Y3: {
      const ComplexMatrix b = submatrix(m, cert.row_indices, cert.col_indices);
      return std::abs(CVec(b.col(0)).dot(b.col(1))) <= tol.search_tol &&
             std::abs(CVec(b.col(0)).dot(b.col(2))) <= tol.search_tol;
    }
    case Pattern::Y4: {
      if (cert.col_indices.size() != 3) return false;
      for (int j : cert.col_indices)
        if (!is_product(m.col(j), tol)) return false;
      return true;
    }
    case Pattern::Y5:
      return smallest_singular_value(submatrix(m, cert.row_indices, cert.col_indices)) <=
             10.0 * tol.search_tol;
    case Pattern::Y6:
      return rephasable_to_real(submatrix(m, cert.row_indices, cert.col_indices), tol);
    case Pattern::Y7: {
      if (cert.col_indices.size() != 2) return false;
      ProductVector p = schmidt_2x3(m.col(cert.col_indices[0]), tol);
      ProductVector q = schmidt_2x3(m.col(cert.col_indices[1]), tol);
      if (p.coefficients[1] > tol.search_tol || q.coefficients[1] > tol.search_tol) return false;
      return std::abs(p.factor_a[0].dot(q.factor_a[0])) >= 1.0 - tol.search_tol;
    }
  }
  return false;
}

TrioCheck trio_check(const ComplexMatrix& u, const ComplexMatrix& v, const ComplexMatrix& w,
                     const Tolerance& tol) {
  if (!is_chm(u, tol) || !is_chm(v, tol) || !is_chm(w, tol))
    throw DomainError("trio_check: inputs must be CHMs");
  if (u.rows() != v.rows() || v.rows() != w.rows())
    throw DimensionError("trio_check: order mismatch");
  TrioCheck out;
  out.defects[0] = chm_profile_defect(u.adjoint() * v);
  out.defects[1] = chm_profile_defect(v.adjoint() * w);
  out.defects[2] = chm_profile_defect(w.adjoint() * u);
  out.is_trio = out.defects[0] <= tol.search_tol && out.defects[1] <= tol.search_tol &&
                out.defects[2] <= tol.search_tol;
  return out;
}

ComplexMatrix transform_variant(const ComplexMatrix& m, MatrixVariant variant) {
  if (m.rows() != m.cols()) throw DimensionError("transform_variant: matrix not square");
  switch (variant) {
    case MatrixVariant::Adjoint: return m.adjoint();
    case MatrixVariant::Conjugate: return m.conjugate();
    case MatrixVariant::Transpose: return m.transpose();
  }
  return m;
}

} // namespace mublab
