#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "mublab/matcore.hpp"

namespace mublab {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng);
  }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(eng); }
  cplx unit_phase() {
    const double t = uniform(0.0, 2.0 * kPi);
    return {std::cos(t), std::sin(t)};
  }
};

// Haar-distributed via QR of a complex Gaussian matrix.
ComplexMatrix random_unitary(Eigen::Index d, Rng& rng);

// Random complex permutation matrix (permutation with unit phases).
ComplexMatrix random_complex_permutation(Eigen::Index d, Rng& rng);

// Parameter count for unitary_from_angles: d diagonal phases plus
// (theta, phi) per index pair.
std::size_t unitary_angle_count(Eigen::Index d);

// Unitary built from diagonal phases and a fixed sequence of phased Givens
// rotations; exactly unitary for any angle values.
ComplexMatrix unitary_from_angles(Eigen::Index d, const std::vector<double>& angles);

// Damped least squares on residuals fn(x, r); returns final sum of squares.
using ResidualFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;
double levenberg_marquardt(const ResidualFn& fn, std::vector<double>& x,
                           std::size_t n_residuals, int max_iters = 120);

} // namespace mublab
