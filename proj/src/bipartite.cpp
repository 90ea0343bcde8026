#include "mublab/bipartite.hpp"

#include <algorithm>
#include <cmath>

#include "mublab/numeric.hpp"

namespace mublab {

namespace {

ComplexMatrix reshape_2x3(const CVec& v) {
  ComplexMatrix a(2, 3);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) a(i, j) = v(3 * i + j);
  return a;
}

cplx leading_phase(const CVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-12) return v(i) / std::abs(v(i));
  return {1.0, 0.0};
}

} // namespace

ProductVector schmidt_2x3(const CVec& v, const Tolerance& tol) {
  if (v.size() != 6) throw DimensionError("schmidt_2x3: vector must be 6-dimensional");
  if (std::abs(v.norm() - 1.0) > tol.predicate_tol)
    throw DomainError("schmidt_2x3: input not unit norm");

  Eigen::JacobiSVD<ComplexMatrix> svd(reshape_2x3(v),
                                      Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();

  ProductVector out;
  out.full = v;
  out.coefficients = {s(0), s(1)};
  out.schmidt_rank = s(1) <= tol.predicate_tol ? 1 : 2;
  for (int k = 0; k < 2; ++k) {
    CVec a = svd.matrixU().col(k);
    CVec b = svd.matrixV().col(k).conjugate(); // v[3i+j] = sum_k s_k a_k(i) b_k(j)
    const cplx ph = leading_phase(a);
    out.factor_a.push_back(std::conj(ph) * a);
    out.factor_b.push_back(ph * b);
  }
  return out;
}

bool is_product(const CVec& v, const Tolerance& tol) {
  return schmidt_2x3(v, tol).coefficients[1] <= tol.search_tol;
}

ProductColumnCensus count_product_columns(const ComplexMatrix& basis, const Tolerance& tol) {
  if (!is_unitary(basis, tol)) throw DomainError("count_product_columns: basis not unitary");
  if (basis.rows() != 6) throw DimensionError("count_product_columns: order must be 6");
  ProductColumnCensus census;
  for (Eigen::Index j = 0; j < 6; ++j)
    if (is_product(basis.col(j), tol)) {
      ++census.count;
      census.indices.push_back(static_cast<int>(j));
    }
  return census;
}

namespace {

// One polishing pass of the rank-one minor system from a random start.
// Returns the polished span element when it lands on a product vector.
std::optional<CVec> polish_span_product(const std::vector<CVec>& span, Rng& rng,
                                        const Tolerance& tol) {
  const std::size_t k = span.size();
  std::vector<double> x(2 * k);
  for (auto& xi : x) xi = rng.gauss();

  auto assemble = [&](const std::vector<double>& p) {
    CVec v = CVec::Zero(6);
    for (std::size_t m = 0; m < k; ++m) v += cplx(p[2 * m], p[2 * m + 1]) * span[m];
    const double n = v.norm();
    if (n > 1e-9) v /= n;
    return v;
  };

  auto residuals = [&](const std::vector<double>& p, std::vector<double>& r) {
    const CVec v = assemble(p);
    const ComplexMatrix a = reshape_2x3(v);
    const cplx m0 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const cplx m1 = a(0, 0) * a(1, 2) - a(0, 2) * a(1, 0);
    const cplx m2 = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    r = {m0.real(), m0.imag(), m1.real(), m1.imag(), m2.real(), m2.imag()};
  };

  levenberg_marquardt(residuals, x, 6);
  CVec v = assemble(x);
  if (v.norm() < 0.5) return std::nullopt;
  if (schmidt_2x3(v, tol).coefficients[1] > tol.search_tol) return std::nullopt;
  return dephase_vector(v);
}

int cluster_and_store(std::vector<CVec>& reps, const CVec& v, double radius) {
  for (const auto& r : reps)
    if (1.0 - std::abs(r.dot(v)) <= radius) return 0;
  reps.push_back(v);
  return 1;
}

std::vector<CVec> span_product_clusters(const std::vector<CVec>& span, int starts,
                                        std::uint64_t seed, const Tolerance& tol) {
  Rng rng(seed);
  std::vector<CVec> reps;
  for (int s = 0; s < starts; ++s)
    if (auto v = polish_span_product(span, rng, tol))
      cluster_and_store(reps, *v, 10.0 * tol.search_tol);
  return reps;
}

} // namespace

SpanProducts product_vectors_in_span(const std::vector<CVec>& span, const Tolerance& tol,
                                     const SpanSearchOptions& opts) {
  if (span.empty() || span.size() > 6)
    throw DimensionError("product_vectors_in_span: need 1..6 vectors");
  for (std::size_t i = 0; i < span.size(); ++i) {
    if (span[i].size() != 6) throw DimensionError("product_vectors_in_span: vectors must be 6-dim");
    for (std::size_t j = 0; j <= i; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(std::abs(span[i].dot(span[j])) - target) > 100.0 * tol.predicate_tol)
        throw DomainError("product_vectors_in_span: span not orthonormal");
    }
  }

  SpanProducts out;
  std::vector<CVec> reps = span_product_clusters(span, opts.starts, opts.seed, tol);
  if (!reps.empty() && opts.detect_continuum) {
    const std::size_t c0 = reps.size();
    const std::size_t c1 = span_product_clusters(span, 2 * opts.starts, opts.seed + 1, tol).size();
    const std::size_t c2 = span_product_clusters(span, 4 * opts.starts, opts.seed + 2, tol).size();
    out.continuum = c0 < c1 && c1 < c2;
  }
  for (const auto& v : reps) out.vectors.push_back(schmidt_2x3(v, tol));
  return out;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::P1: return "P1";
    case Family::P2: return "P2";
    case Family::P3: return "P3";
  }
  return "?";
}

namespace {

bool same_ray(const CVec& a, const CVec& b, double tol) {
  return std::abs(a.dot(b)) >= 1.0 - tol;
}

bool orthogonal(const CVec& a, const CVec& b, double tol) {
  return std::abs(a.dot(b)) <= tol;
}

std::vector<std::vector<int>> group_by_ray(const std::vector<CVec>& factors, double tol) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(factors.size()); ++i) {
    bool placed = false;
    for (auto& g : groups)
      if (same_ray(factors[static_cast<std::size_t>(g.front())],
                   factors[static_cast<std::size_t>(i)], tol)) {
        g.push_back(i);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({i});
  }
  return groups;
}

struct P2Match {
  int shared_b_col0, shared_b_col1;     // the |c,2>, |c_perp,2> pair
  std::vector<int> group0, group1;      // the two shared-A pairs
};

} // namespace

FamilyWitness classify_product_basis(const ComplexMatrix& basis, const Tolerance& tol) {
  if (basis.rows() != 6 || basis.cols() != 6)
    throw DimensionError("classify_product_basis: order must be 6");
  if (!is_unitary(basis, tol)) throw DomainError("classify_product_basis: basis not unitary");

  std::vector<CVec> fa, fb;
  for (Eigen::Index j = 0; j < 6; ++j) {
    ProductVector p = schmidt_2x3(basis.col(j), tol);
    if (p.coefficients[1] > tol.search_tol)
      throw DomainError("classify_product_basis: column " + std::to_string(j) + " is entangled");
    fa.push_back(p.factor_a[0]);
    fb.push_back(p.factor_b[0]);
  }
  const double ray_tol = tol.search_tol;

  FamilyWitness w;

  // P1: exactly two A-rays with multiplicities 3+3.
  auto a_groups = group_by_ray(fa, ray_tol);
  const bool p1 = a_groups.size() == 2 && a_groups[0].size() == 3 && a_groups[1].size() == 3;
  if (p1) w.tags.push_back(Family::P1);

  // P2: a pair sharing a B-ray with orthogonal A-factors, the remaining four
  // columns a 2+2 split by orthogonal A-rays with B-factors off the shared ray.
  std::optional<P2Match> p2;
  for (int i = 0; i < 6 && !p2; ++i)
    for (int j = i + 1; j < 6 && !p2; ++j) {
      const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
      if (!same_ray(fb[si], fb[sj], ray_tol) || !orthogonal(fa[si], fa[sj], ray_tol)) continue;
      std::vector<CVec> rest_a;
      std::vector<int> rest_idx;
      for (int c = 0; c < 6; ++c)
        if (c != i && c != j) {
          rest_a.push_back(fa[static_cast<std::size_t>(c)]);
          rest_idx.push_back(c);
        }
      auto g = group_by_ray(rest_a, ray_tol);
      if (g.size() != 2 || g[0].size() != 2 || g[1].size() != 2) continue;
      if (!orthogonal(rest_a[static_cast<std::size_t>(g[0].front())],
                      rest_a[static_cast<std::size_t>(g[1].front())], ray_tol))
        continue;
      bool off_ray = true;
      for (int c : rest_idx)
        off_ray = off_ray && orthogonal(fb[static_cast<std::size_t>(c)], fb[si], ray_tol);
      if (!off_ray) continue;
      P2Match m;
      m.shared_b_col0 = i;
      m.shared_b_col1 = j;
      for (int t : g[0]) m.group0.push_back(rest_idx[static_cast<std::size_t>(t)]);
      for (int t : g[1]) m.group1.push_back(rest_idx[static_cast<std::size_t>(t)]);
      p2 = m;
    }
  if (p2) w.tags.push_back(Family::P2);

  // P3: three B-rays of multiplicity two, orthogonal A-factors inside each pair.
  auto b_groups = group_by_ray(fb, ray_tol);
  bool p3 = b_groups.size() == 3;
  for (const auto& g : b_groups) p3 = p3 && g.size() == 2;
  if (p3)
    for (const auto& g : b_groups)
      p3 = p3 && orthogonal(fa[static_cast<std::size_t>(g[0])],
                            fa[static_cast<std::size_t>(g[1])], ray_tol);
  if (p3) w.tags.push_back(Family::P3);

  if (w.tags.empty())
    throw std::logic_error(
        "classify_product_basis: no family matched; tolerance failure "
        "(every product basis belongs to P1, P2 or P3)");

  w.primary = w.tags.front();
  w.local_a = ComplexMatrix(2, 2);
  w.local_b = ComplexMatrix(3, 3);

  auto a_of = [&](int c) { return fa[static_cast<std::size_t>(c)]; };
  auto b_of = [&](int c) { return fb[static_cast<std::size_t>(c)]; };

  if (w.primary == Family::P1) {
    const auto& g0 = a_groups[0];
    const auto& g1 = a_groups[1];
    w.local_a.row(0) = a_of(g0.front()).adjoint();
    w.local_a.row(1) = a_of(g1.front()).adjoint();
    for (int k = 0; k < 3; ++k) w.local_b.row(k) = b_of(g0[static_cast<std::size_t>(k)]).adjoint();
    w.column_perm.assign(g0.begin(), g0.end());
    w.column_perm.insert(w.column_perm.end(), g1.begin(), g1.end());
  } else if (w.primary == Family::P2) {
    w.local_a.row(0) = a_of(p2->group0.front()).adjoint();
    w.local_a.row(1) = a_of(p2->group1.front()).adjoint();
    w.local_b.row(0) = b_of(p2->group0[0]).adjoint();
    w.local_b.row(1) = b_of(p2->group0[1]).adjoint();
    w.local_b.row(2) = b_of(p2->shared_b_col0).adjoint();
    w.column_perm = {p2->group0[0], p2->group0[1], p2->group1[0], p2->group1[1],
                     p2->shared_b_col0, p2->shared_b_col1};
  } else {
    w.local_a.row(0) = a_of(b_groups[0][0]).adjoint();
    w.local_a.row(1) = a_of(b_groups[0][1]).adjoint();
    for (int k = 0; k < 3; ++k)
      w.local_b.row(k) = b_of(b_groups[static_cast<std::size_t>(k)].front()).adjoint();
    w.column_perm.clear();
    for (const auto& g : b_groups) w.column_perm.insert(w.column_perm.end(), g.begin(), g.end());
  }

  const ComplexMatrix lu = kron(w.local_a, w.local_b);
  w.canonical = ComplexMatrix(6, 6);
  w.column_phases = CVec::Ones(6);
  for (int j = 0; j < 6; ++j) {
    CVec t = lu * basis.col(w.column_perm[static_cast<std::size_t>(j)]);
    CVec dep = dephase_vector(t);
    w.canonical.col(j) = dep;
    // dep = p * t with |p| = 1; recover p from the largest entry.
    Eigen::Index imax;
    dep.cwiseAbs().maxCoeff(&imax);
    w.column_phases(j) = dep(imax) / t(imax);
  }
  return w;
}

double witness_residual(const ComplexMatrix& basis, const FamilyWitness& w) {
  const ComplexMatrix lu = kron(w.local_a, w.local_b);
  double res = 0.0;
  for (int j = 0; j < 6; ++j) {
    const CVec reconstructed =
        lu.adjoint() * (std::conj(w.column_phases(j)) * w.canonical.col(j));
    res = std::max(res, (reconstructed - basis.col(w.column_perm[static_cast<std::size_t>(j)]))
                            .cwiseAbs()
                            .maxCoeff());
  }
  return res;
}

} // namespace mublab
