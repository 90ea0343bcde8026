#include "mublab/constructor.hpp"

#include <cmath>

#include "mublab/mulab.hpp"

namespace mublab {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

CVec vec2(const cplx& a, const cplx& b) {
  CVec v(2);
  v << a, b;
  return v;
}

CVec vec3(const cplx& a, const cplx& b, const cplx& c) {
  CVec v(3);
  v << a, b, c;
  return v;
}

CVec kron_vec(const CVec& a, const CVec& b) {
  CVec v(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) v(i * b.size() + j) = a(i) * b(j);
  return v;
}

// (1, s)/sqrt(2) (x) (1, p, q)/sqrt(3)
CVec flat_product(const cplx& s, const cplx& p, const cplx& q) {
  return kron_vec(kInvSqrt2 * vec2(1.0, s), kInvSqrt3 * vec3(1.0, p, q));
}

void require_unit_modulus(const cplx& z, const char* name, const Tolerance& tol) {
  if (std::abs(std::abs(z) - 1.0) > tol.predicate_tol)
    throw ConstructionError(std::string(name) + " must have unit modulus");
}

void require_orthonormal_columns(const ComplexMatrix& m, const char* what,
                                 const Tolerance& tol) {
  ComplexMatrix g = m.adjoint() * m;
  g -= ComplexMatrix::Identity(m.cols(), m.cols());
  if (max_abs(g) > tol.predicate_tol)
    throw ConstructionError(std::string(what) + ": columns not orthonormal");
}

} // namespace

ComplexMatrix build_family(Family family, const FamilyParams& params, const Tolerance& tol) {
  ComplexMatrix basis(6, 6);
  const CVec e0_2 = vec2(1.0, 0.0), e1_2 = vec2(0.0, 1.0);
  const CVec e0 = vec3(1, 0, 0), e1 = vec3(0, 1, 0), e2 = vec3(0, 0, 1);

  switch (family) {
    case Family::P1: {
      if (params.a_basis.rows() != 3 || params.a_basis.cols() != 3 ||
          !is_unitary(params.a_basis, tol))
        throw ConstructionError("build_family: P1 requires a 3x3 unitary {|a_i>}");
      for (int j = 0; j < 3; ++j) {
        basis.col(j) = kron_vec(e0_2, ComplexMatrix::Identity(3, 3).col(j));
        basis.col(3 + j) = kron_vec(e1_2, params.a_basis.col(j));
      }
      break;
    }
    case Family::P2: {
      const CVec b = vec3(std::cos(params.theta_b), std::sin(params.theta_b), 0.0);
      const CVec b_perp = vec3(-std::sin(params.theta_b), std::cos(params.theta_b), 0.0);
      const CVec c = vec2(std::cos(params.theta_c), std::sin(params.theta_c));
      const CVec c_perp = vec2(-std::sin(params.theta_c), std::cos(params.theta_c));
      basis.col(0) = kron_vec(e0_2, e0);
      basis.col(1) = kron_vec(e0_2, e1);
      basis.col(2) = kron_vec(e1_2, b);
      basis.col(3) = kron_vec(e1_2, b_perp);
      basis.col(4) = kron_vec(c, e2);
      basis.col(5) = kron_vec(c_perp, e2);
      break;
    }
    case Family::P3: {
      const CVec d = vec2(std::cos(params.theta_d), std::sin(params.theta_d));
      const CVec d_perp = vec2(-std::sin(params.theta_d), std::cos(params.theta_d));
      const cplx phase(std::cos(params.chi_e), std::sin(params.chi_e));
      const CVec e = vec2(std::cos(params.theta_e), std::sin(params.theta_e) * phase);
      const CVec e_perp = vec2(std::sin(params.theta_e), -std::cos(params.theta_e) * phase);
      basis.col(0) = kron_vec(e0_2, e0);
      basis.col(1) = kron_vec(e1_2, e0);
      basis.col(2) = kron_vec(d, e1);
      basis.col(3) = kron_vec(d_perp, e1);
      basis.col(4) = kron_vec(e, e2);
      basis.col(5) = kron_vec(e_perp, e2);
      break;
    }
  }
  require_orthonormal_columns(basis, "build_family", tol);
  return basis;
}

FamilyParams random_family_params(Family family, Rng& rng) {
  FamilyParams p;
  // Angles bounded away from the degenerate values where families collide.
  auto generic_angle = [&rng] { return rng.uniform(0.2, kPi / 2.0 - 0.2); };
  switch (family) {
    case Family::P1: p.a_basis = random_unitary(3, rng); break;
    case Family::P2:
      p.theta_b = generic_angle();
      p.theta_c = generic_angle();
      break;
    case Family::P3:
      p.theta_d = generic_angle();
      p.theta_e = generic_angle();
      p.chi_e = rng.uniform(0.2, 2.0 * kPi - 0.2);
      break;
  }
  return p;
}

void validate(const Prop1Params& p, const Tolerance& tol) {
  require_unit_modulus(p.alpha, "alpha", tol);
  require_unit_modulus(p.beta, "beta", tol);
  require_unit_modulus(p.x, "x", tol);
  require_unit_modulus(p.y, "y", tol);
  if (p.u.rows() != 3 || p.u.cols() != 3 || !is_unitary(p.u, tol))
    throw ConstructionError("Prop1Params: [u_jk] must be a 3x3 unitary");
}

ComplexMatrix build_U(const cplx& alpha, const cplx& beta, const Tolerance& tol) {
  require_unit_modulus(alpha, "alpha", tol);
  require_unit_modulus(beta, "beta", tol);
  const ComplexMatrix f = fourier(3);
  CVec d(3);
  d << cplx(1.0, 0.0), alpha, beta;
  return f * d.asDiagonal() * f.adjoint();
}

Prop1Candidate build_prop1_candidate(const Prop1Params& p, const Tolerance& tol) {
  validate(p, tol);
  const cplx w = omega3(), w2 = w * w;

  Prop1Candidate out;
  out.first_mub = direct_sum(ComplexMatrix::Identity(3, 3), build_U(p.alpha, p.beta, tol));

  ComplexMatrix building(6, 3);
  building.col(0) = flat_product(1.0, w2, w);
  building.col(1) = flat_product(-1.0, p.x * w, p.y * w2);
  building.col(2) = flat_product(-1.0, p.x * w2, p.y * w);

  out.second_mub = ComplexMatrix(6, 6);
  out.second_mub.col(0) = flat_product(1.0, 1.0, 1.0);
  out.second_mub.col(1) = flat_product(1.0, w, w2);
  out.second_mub.col(2) = flat_product(-1.0, p.x, p.y);

  ComplexMatrix probe(6, 6);
  probe.leftCols(3) = out.second_mub.leftCols(3);
  probe.rightCols(3) = building;
  require_orthonormal_columns(probe, "build_prop1_candidate: building vectors", tol);

  for (int j = 0; j < 3; ++j) {
    CVec col = CVec::Zero(6);
    for (int k = 0; k < 3; ++k) col += p.u(j, k) * building.col(k);
    out.second_mub.col(3 + j) = col;
  }
  require_orthonormal_columns(out.second_mub, "build_prop1_candidate: second basis", tol);
  return out;
}

Prop1Constraints check_prop1_constraints(const Prop1Params& p, const Tolerance& tol) {
  const cplx roots[3] = {cplx(1.0, 0.0), omega3(), std::conj(omega3())};
  Prop1Constraints out;

  double alpha_dist = 1e300;
  for (const auto& r : roots) alpha_dist = std::min(alpha_dist, std::abs(p.alpha - r));
  out.alpha_ok = alpha_dist > tol.search_tol;
  if (!out.alpha_ok) out.violations.push_back("alpha lies on {1, w, w^2}");

  double xy_dist = 1e300;
  for (const auto& rm : roots)
    for (const auto& rn : roots)
      xy_dist = std::min(xy_dist, std::max(std::abs(p.x - rm), std::abs(p.y - rn)));
  out.xy_ok = xy_dist > tol.search_tol;
  if (!out.xy_ok) out.violations.push_back("(x, y) lies on the w-grid");

  double u_min = 1e300;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) u_min = std::min(u_min, std::abs(p.u(j, k)));
  out.u_entries_ok = u_min > tol.search_tol;
  if (!out.u_entries_ok) out.violations.push_back("[u_jk] has a zero entry");

  return out;
}

Eq13Parts eq13_parts() {
  const cplx w = omega3(), w2 = std::conj(omega3()), one(1.0, 0.0), i(0.0, 1.0);
  Eq13Parts parts;

  parts.left_factor = fourier(3).conjugate();

  parts.mu_matrix = ComplexMatrix(3, 6);
  parts.mu_matrix << one, one, one, one, one, one,
      w, w2, one, w2, w, one,
      w, one, w2, w2, one, w;
  parts.mu_matrix *= kInvSqrt3;

  parts.middle = ComplexMatrix(3, 6);
  parts.middle << i, w2 * i, w2 * i, -i, -w * i, -w * i,
      w2 * i, i, w2 * i, -w * i, -w * i, -i,
      w2 * i, w2 * i, i, -w * i, -i, -w * i;
  parts.middle *= kInvSqrt3;

  parts.right_matrix = ComplexMatrix(3, 6);
  parts.right_matrix << one, one, one, one, one, one,
      w2, w, one, w, one, w2,
      w2, one, w, w, w2, one;
  parts.right_matrix *= kInvSqrt3;

  CVec diag(6);
  diag << i, w2 * i, w2 * i, -i, -w * i, -w * i;
  parts.right_diag = ComplexMatrix(diag.asDiagonal());

  return parts;
}

Eq13Report verify_eq13() {
  const Eq13Parts parts = eq13_parts();
  Eq13Report rep;
  rep.residual_step1 = max_abs_diff(parts.left_factor * parts.mu_matrix, parts.middle);
  rep.residual_step2 = max_abs_diff(parts.middle, parts.right_matrix * parts.right_diag);
  return rep;
}

void validate(const Prop2Params& p, const Tolerance& tol) {
  validate(p.prop1, tol);
  require_unit_modulus(p.u_phase, "u_phase", tol);
  require_unit_modulus(p.v_phase, "v_phase", tol);
  const cplx phases[8] = {p.x1, p.y1, p.x2, p.y2, p.x3, p.y3, p.x4, p.y4};
  for (const auto& z : phases) require_unit_modulus(z, "x_j/y_j", tol);
  if (p.b.rows() != 4 || p.b.cols() != 4 || !is_unitary(p.b, tol))
    throw ConstructionError("Prop2Params: [b_jk] must be a 4x4 unitary");
  if (p.c.rows() != 4 || p.c.cols() != 4 || !is_unitary(p.c, tol))
    throw ConstructionError("Prop2Params: [c_jk] must be a 4x4 unitary");
}

namespace {

// A 2+4 basis: two flat products on the A-rays (1, s) and (1, -s), four
// entangled combinations of the phase-shifted building vectors.
ComplexMatrix two_plus_four_basis(const cplx& s, const cplx& xa, const cplx& ya,
                                  const cplx& xb, const cplx& yb, const ComplexMatrix& coeff,
                                  const char* what, const Tolerance& tol) {
  const cplx w = omega3(), w2 = w * w;
  ComplexMatrix basis(6, 6);
  basis.col(0) = flat_product(s, xa, ya);
  basis.col(1) = flat_product(-s, xb, yb);

  ComplexMatrix building(6, 4);
  building.col(0) = flat_product(s, xa * w, ya * w2);
  building.col(1) = flat_product(s, xa * w2, ya * w);
  building.col(2) = flat_product(-s, xb * w, yb * w2);
  building.col(3) = flat_product(-s, xb * w2, yb * w);

  ComplexMatrix probe(6, 6);
  probe.leftCols(2) = basis.leftCols(2);
  probe.rightCols(4) = building;
  require_orthonormal_columns(probe, what, tol);

  for (int j = 0; j < 4; ++j) {
    CVec col = CVec::Zero(6);
    for (int k = 0; k < 4; ++k) col += coeff(j, k) * building.col(k);
    basis.col(2 + j) = col;
  }
  require_orthonormal_columns(basis, what, tol);
  return basis;
}

} // namespace

Prop2Candidate build_prop2_candidate(const Prop2Params& p, const Tolerance& tol) {
  validate(p, tol);
  Prop1Candidate prop1 = build_prop1_candidate(p.prop1, tol);

  Prop2Candidate out;
  out.bases[0] = prop1.first_mub;
  out.bases[1] = prop1.second_mub;
  out.bases[2] = two_plus_four_basis(p.u_phase, p.x1, p.y1, p.x2, p.y2, p.b,
                                     "build_prop2_candidate: third basis", tol);
  out.bases[3] = two_plus_four_basis(p.v_phase, p.x3, p.y3, p.x4, p.y4, p.c,
                                     "build_prop2_candidate: fourth basis", tol);
  return out;
}

Prop1Params random_prop1_params(Rng& rng, const Tolerance& tol) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Prop1Params p;
    p.alpha = rng.unit_phase();
    p.beta = rng.unit_phase();
    p.x = rng.unit_phase();
    p.y = rng.unit_phase();
    p.u = random_unitary(3, rng);
    if (check_prop1_constraints(p, tol).all_ok()) return p;
  }
  throw ConstructionError("random_prop1_params: could not draw admissible parameters");
}

Prop2Params random_prop2_params(Rng& rng, const Tolerance& tol) {
  Prop2Params p;
  p.prop1 = random_prop1_params(rng, tol);
  p.u_phase = rng.unit_phase();
  p.v_phase = rng.unit_phase();
  p.x1 = rng.unit_phase();
  p.y1 = rng.unit_phase();
  p.x2 = rng.unit_phase();
  p.y2 = rng.unit_phase();
  p.x3 = rng.unit_phase();
  p.y3 = rng.unit_phase();
  p.x4 = rng.unit_phase();
  p.y4 = rng.unit_phase();
  p.b = random_unitary(4, rng);
  p.c = random_unitary(4, rng);
  return p;
}

namespace {

void require_pairwise_mu(const std::vector<ComplexMatrix>& bases, std::size_t count,
                         const char* what, const Tolerance& tol) {
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (mu_defect(bases[i], bases[j], tol) > tol.search_tol)
        throw DomainError(std::string(what) + ": input bases are not pairwise MU");
}

} // namespace

std::vector<ComplexMatrix> build_T0(const std::vector<ComplexMatrix>& mubs2,
                                    const std::vector<ComplexMatrix>& mubs3,
                                    const Tolerance& tol) {
  if (mubs2.size() < 3 || mubs3.size() < 3)
    throw DimensionError("build_T0: need 3 MUBs in C^2 and 3 in C^3");
  require_pairwise_mu(mubs2, 3, "build_T0", tol);
  require_pairwise_mu(mubs3, 3, "build_T0", tol);
  std::vector<ComplexMatrix> trio;
  for (int m = 0; m < 3; ++m)
    trio.push_back(kron(mubs2[static_cast<std::size_t>(m)], mubs3[static_cast<std::size_t>(m)]));
  return trio;
}

std::vector<ComplexMatrix> build_T1(const std::vector<ComplexMatrix>& mubs2,
                                    const std::vector<ComplexMatrix>& mubs3,
                                    const Tolerance& tol) {
  if (mubs2.size() < 3 || mubs3.size() < 4)
    throw DimensionError("build_T1: need 3 MUBs in C^2 and 4 in C^3");
  require_pairwise_mu(mubs2, 3, "build_T1", tol);
  require_pairwise_mu(mubs3, 4, "build_T1", tol);
  std::vector<ComplexMatrix> trio;
  trio.push_back(kron(mubs2[0], mubs3[0]));
  trio.push_back(kron(mubs2[1], mubs3[1]));
  ComplexMatrix third(6, 6);
  for (int k = 0; k < 3; ++k) {
    third.col(k) = kron_vec(mubs2[2].col(0), mubs3[2].col(k));
    third.col(3 + k) = kron_vec(mubs2[2].col(1), mubs3[3].col(k));
  }
  trio.push_back(third);
  return trio;
}

std::vector<ComplexMatrix> complete_mub_prime(int d) {
  if (d != 2 && d != 3 && d != 5) throw DomainError("complete_mub_prime: d must be 2, 3 or 5");

  std::vector<ComplexMatrix> bases;
  bases.push_back(ComplexMatrix::Identity(d, d));
  if (d == 2) {
    bases.push_back(fourier(2));
    ComplexMatrix s(2, 2);
    s << cplx(kInvSqrt2, 0), cplx(kInvSqrt2, 0), cplx(0, kInvSqrt2), cplx(0, -kInvSqrt2);
    bases.push_back(s);
    return bases;
  }
  // Odd prime: B_t entries w^(t k^2 + j k)/sqrt(d).
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int t = 0; t < d; ++t) {
    ComplexMatrix b(d, d);
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        const int e = (t * k * k + j * k) % d;
        const double arg = 2.0 * kPi * static_cast<double>(e) / static_cast<double>(d);
        b(k, j) = s * cplx(std::cos(arg), std::sin(arg));
      }
    bases.push_back(b);
  }
  return bases;
}

} // namespace mublab
