#include "mublab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mublab {

ComplexMatrix random_unitary(Eigen::Index d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = cplx(rng.gauss(), rng.gauss());
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the distribution is Haar.
  for (Eigen::Index j = 0; j < d; ++j) {
    cplx ph = r(j, j) / std::abs(r(j, j));
    q.col(j) *= ph;
  }
  return q;
}

ComplexMatrix random_complex_permutation(Eigen::Index d, Rng& rng) {
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng.eng);
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) p(perm[static_cast<std::size_t>(j)], j) = rng.unit_phase();
  return p;
}

std::size_t unitary_angle_count(Eigen::Index d) {
  return static_cast<std::size_t>(d + d * (d - 1));
}

ComplexMatrix unitary_from_angles(Eigen::Index d, const std::vector<double>& angles) {
  if (angles.size() != unitary_angle_count(d))
    throw DimensionError("unitary_from_angles: wrong parameter count");
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double t = angles[static_cast<std::size_t>(i)];
    u(i, i) = cplx(std::cos(t), std::sin(t));
  }
  std::size_t idx = static_cast<std::size_t>(d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double theta = angles[idx++];
      const double phi = angles[idx++];
      const double c = std::cos(theta), s = std::sin(theta);
      const cplx e(std::cos(phi), std::sin(phi));
      ComplexMatrix g = ComplexMatrix::Identity(d, d);
      g(i, i) = c;
      g(i, j) = -s * e;
      g(j, i) = s * std::conj(e);
      g(j, j) = c;
      u = u * g;
    }
  return u;
}

double levenberg_marquardt(const ResidualFn& fn, std::vector<double>& x,
                           std::size_t n_residuals, int max_iters) {
  const std::size_t n = x.size();
  const std::size_t m = n_residuals;
  Eigen::VectorXd r(m), r_trial(m);
  std::vector<double> rv(m);

  auto eval = [&](const std::vector<double>& p, Eigen::VectorXd& out) {
    fn(p, rv);
    for (std::size_t i = 0; i < m; ++i) out(static_cast<Eigen::Index>(i)) = rv[i];
  };

  eval(x, r);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  const double fd = 1e-7;

  Eigen::MatrixXd jac(m, n);
  std::vector<double> xp = x;

  for (int iter = 0; iter < max_iters; ++iter) {
    if (cost < 1e-26) break;
    for (std::size_t k = 0; k < n; ++k) {
      xp = x;
      xp[k] += fd;
      Eigen::VectorXd rp(m);
      eval(xp, rp);
      jac.col(static_cast<Eigen::Index>(k)) = (rp - r) / fd;
    }
    Eigen::MatrixXd a = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * r;

    bool accepted = false;
    for (int k = 0; k < 8 && !accepted; ++k) {
      Eigen::MatrixXd damped = a;
      damped.diagonal().array() += lambda;
      Eigen::VectorXd delta = damped.ldlt().solve(-g);
      std::vector<double> x_trial = x;
      for (std::size_t i = 0; i < n; ++i) x_trial[i] += delta(static_cast<Eigen::Index>(i));
      eval(x_trial, r_trial);
      const double trial_cost = r_trial.squaredNorm();
      if (trial_cost < cost) {
        x = x_trial;
        r = r_trial;
        cost = trial_cost;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return cost;
}

} // namespace mublab
