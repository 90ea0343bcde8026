#include "mublab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mublab {

ComplexMatrix fourier(Eigen::Index d) {
  if (d < 1) throw DimensionError("fourier: order must be positive");
  ComplexMatrix f(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) {
      const double arg = 2.0 * kPi * static_cast<double>((j * k) % d) / static_cast<double>(d);
      f(j, k) = s * cplx(std::cos(arg), std::sin(arg));
    }
  return f;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) throw DimensionError("is_unitary: matrix not square");
  ComplexMatrix g = m.adjoint() * m;
  g -= ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(g) <= tol.predicate_tol;
}

double chm_profile_defect(const ComplexMatrix& m) {
  const double target = 1.0 / std::sqrt(static_cast<double>(m.rows()));
  double dev = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      dev = std::max(dev, std::abs(std::abs(m(i, j)) - target));
  return dev;
}

bool is_chm(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) throw DimensionError("is_chm: matrix not square");
  return is_unitary(m, tol) && chm_profile_defect(m) <= tol.predicate_tol;
}

namespace {

constexpr double kZeroCut = 1e-12;

// Conjugate phase of the reference entry, or 1 for an all-zero range.
cplx phase_fix(const cplx& z) {
  const double a = std::abs(z);
  return a <= kZeroCut ? cplx(1.0, 0.0) : std::conj(z) / a;
}

} // namespace

DephaseResult dephase(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("dephase: matrix not square");
  const Eigen::Index d = m.rows();
  DephaseResult out;
  out.left = CVec::Ones(d);
  out.right = CVec::Ones(d);

  for (Eigen::Index i = 0; i < d; ++i) {
    cplx ref = m(i, 0);
    for (Eigen::Index j = 1; std::abs(ref) <= kZeroCut && j < d; ++j) ref = m(i, j);
    out.left(i) = phase_fix(ref);
  }
  ComplexMatrix lm = out.left.asDiagonal() * m;
  for (Eigen::Index j = 0; j < d; ++j) {
    cplx ref = lm(0, j);
    for (Eigen::Index i = 1; std::abs(ref) <= kZeroCut && i < d; ++i) ref = lm(i, j);
    out.right(j) = phase_fix(ref);
  }
  out.matrix = lm * out.right.asDiagonal();
  return out;
}

CVec dephase_vector(const CVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > kZeroCut) return phase_fix(v(i)) * v;
  return v;
}

bool is_complex_permutation(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) return false;
  const Eigen::Index d = m.rows();
  std::vector<bool> col_hit(static_cast<std::size_t>(d), false);
  for (Eigen::Index i = 0; i < d; ++i) {
    int nonzero = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double a = std::abs(m(i, j));
      if (a <= tol.predicate_tol) continue;
      if (std::abs(a - 1.0) > tol.predicate_tol) return false;
      if (col_hit[static_cast<std::size_t>(j)]) return false;
      col_hit[static_cast<std::size_t>(j)] = true;
      ++nonzero;
    }
    if (nonzero != 1) return false;
  }
  return true;
}

std::optional<EquivalenceCertificate> equivalent_chm(const ComplexMatrix& x,
                                                     const ComplexMatrix& y,
                                                     const Tolerance& tol) {
  if (!is_chm(x, tol) || !is_chm(y, tol))
    throw DomainError("equivalent_chm: inputs must be CHMs");
  if (x.rows() != y.rows()) throw DimensionError("equivalent_chm: order mismatch");
  const Eigen::Index d = x.rows();
  if (d > 8) throw DomainError("equivalent_chm: order too large for exhaustive search");

  const double match_tol = 100.0 * tol.predicate_tol;
  std::vector<Eigen::Index> sigma(static_cast<std::size_t>(d));
  std::iota(sigma.begin(), sigma.end(), 0);

  do {
    ComplexMatrix ys(d, d);
    for (Eigen::Index i = 0; i < d; ++i) ys.row(i) = y.row(sigma[static_cast<std::size_t>(i)]);

    for (Eigen::Index k0 = 0; k0 < d; ++k0) {
      // Row phases aligning column k0 of the permuted Y with column 0 of X.
      CVec lambda(d);
      for (Eigen::Index i = 0; i < d; ++i) {
        cplx q = x(i, 0) / ys(i, k0);
        lambda(i) = q / std::abs(q);
      }
      ComplexMatrix z = lambda.asDiagonal() * ys;

      std::vector<Eigen::Index> col_of(static_cast<std::size_t>(d), -1);
      CVec mu = CVec::Zero(d);
      std::vector<bool> used(static_cast<std::size_t>(d), false);
      bool ok = true;
      for (Eigen::Index j = 0; j < d && ok; ++j) {
        bool matched = false;
        for (Eigen::Index k = 0; k < d; ++k) {
          if (used[static_cast<std::size_t>(k)]) continue;
          cplx ph = x(0, j) / z(0, k);
          ph /= std::abs(ph);
          if ((x.col(j) - ph * z.col(k)).cwiseAbs().maxCoeff() <= match_tol) {
            used[static_cast<std::size_t>(k)] = true;
            col_of[static_cast<std::size_t>(j)] = k;
            mu(j) = ph;
            matched = true;
            break;
          }
        }
        ok = matched;
      }
      if (!ok) continue;

      EquivalenceCertificate cert;
      cert.left = ComplexMatrix::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i) cert.left(i, sigma[static_cast<std::size_t>(i)]) = lambda(i);
      cert.right = ComplexMatrix::Zero(d, d);
      for (Eigen::Index j = 0; j < d; ++j) cert.right(col_of[static_cast<std::size_t>(j)], j) = mu(j);
      if (max_abs_diff(x, cert.left * y * cert.right) <= match_tol) return cert;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  return std::nullopt;
}

} // namespace mublab
