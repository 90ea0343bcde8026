#include "mublab/mulab.hpp"

#include <algorithm>
#include <cmath>

#include "mublab/numeric.hpp"

namespace mublab {

double mu_value(const CVec& u, const CVec& v) {
  if (u.size() != v.size()) throw DimensionError("mu_value: dimension mismatch");
  return std::abs(u.dot(v));
}

double mu_defect(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
  if (!is_unitary(a, tol) || !is_unitary(b, tol))
    throw DomainError("mu_defect: inputs must be unitary");
  if (a.rows() != b.rows()) throw DimensionError("mu_defect: order mismatch");
  return chm_profile_defect(a.adjoint() * b);
}

namespace {

double max_mu_deviation(const CVec& v, const std::vector<ComplexMatrix>& bases) {
  const double target = 1.0 / std::sqrt(static_cast<double>(v.size()));
  double dev = 0.0;
  for (const auto& b : bases)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      dev = std::max(dev, std::abs(std::abs(CVec(b.col(j)).dot(v)) - target));
  return dev;
}

CVec flat_vector(Eigen::Index d, const std::vector<double>& theta) {
  CVec v(d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  v(0) = s;
  for (Eigen::Index k = 1; k < d; ++k) {
    const double t = theta[static_cast<std::size_t>(k - 1)];
    v(k) = s * cplx(std::cos(t), std::sin(t));
  }
  return v;
}

struct SearchCore {
  Eigen::Index d;
  std::vector<ComplexMatrix> constraints; // identity excluded in flat mode
  const Tolerance* tol;
  bool flat; // flat entries forced by MU to the identity

  std::size_t n_params() const {
    return flat ? static_cast<std::size_t>(d - 1) : static_cast<std::size_t>(2 * d);
  }

  CVec assemble(const std::vector<double>& p) const {
    if (flat) return flat_vector(d, p);
    CVec v(d);
    for (Eigen::Index k = 0; k < d; ++k)
      v(k) = cplx(p[static_cast<std::size_t>(2 * k)], p[static_cast<std::size_t>(2 * k + 1)]);
    const double n = v.norm();
    if (n > 1e-9) v /= n;
    return v;
  }

  std::size_t n_residuals() const {
    std::size_t n = 0;
    for (const auto& b : constraints) n += static_cast<std::size_t>(b.cols());
    return n;
  }

  void residuals(const std::vector<double>& p, std::vector<double>& r) const {
    const CVec v = assemble(p);
    const double target = 1.0 / static_cast<double>(d);
    r.clear();
    for (const auto& b : constraints)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        r.push_back(std::norm(CVec(b.col(j)).dot(v)) - target);
  }

  // Polishes one start; returns the dephased vector when it satisfies every
  // constraint within search_tol. In flat mode the identity constraints hold
  // exactly by construction.
  std::optional<CVec> polish(std::vector<double> p) const {
    auto fn = [this](const std::vector<double>& q, std::vector<double>& r) { residuals(q, r); };
    levenberg_marquardt(fn, p, n_residuals());
    CVec v = dephase_vector(assemble(p));
    if (max_mu_deviation(v, constraints) > tol->search_tol) return std::nullopt;
    return v;
  }
};

std::vector<CVec> run_mu_search(const SearchCore& core, int grid_depth, int starts,
                                std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t np = core.n_params();
  std::vector<std::vector<double>> start_points;

  const long points_per_axis = 1L << grid_depth;
  double total = 1.0;
  for (std::size_t i = 0; i < np; ++i) total *= static_cast<double>(points_per_axis);

  if (core.flat && total <= (1 << 20)) {
    // Full grid; keep the best `starts` points as polish seeds.
    std::vector<std::pair<double, std::vector<double>>> scored;
    std::vector<double> p(np, 0.0);
    std::vector<long> idx(np, 0);
    const double step = 2.0 * kPi / static_cast<double>(points_per_axis);
    bool done = false;
    std::vector<double> r;
    while (!done) {
      for (std::size_t k = 0; k < np; ++k) p[k] = static_cast<double>(idx[k]) * step;
      core.residuals(p, r);
      double obj = 0.0;
      for (double ri : r) obj = std::max(obj, std::abs(ri));
      scored.emplace_back(obj, p);
      std::size_t k = 0;
      for (; k < np; ++k) {
        if (++idx[k] < points_per_axis) break;
        idx[k] = 0;
      }
      done = k == np;
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t keep = std::min<std::size_t>(scored.size(), static_cast<std::size_t>(starts));
    for (std::size_t i = 0; i < keep; ++i) start_points.push_back(scored[i].second);
  } else {
    for (int s = 0; s < starts; ++s) {
      std::vector<double> p(np);
      for (auto& pi : p) pi = core.flat ? rng.uniform(0.0, 2.0 * kPi) : rng.gauss();
      start_points.push_back(std::move(p));
    }
  }

  std::vector<CVec> reps;
  const double radius = 10.0 * core.tol->search_tol;
  for (auto& p : start_points)
    if (auto v = core.polish(p)) {
      bool fresh = true;
      for (const auto& r : reps)
        if ((r - *v).cwiseAbs().maxCoeff() <= radius) {
          fresh = false;
          break;
        }
      if (fresh) reps.push_back(*v);
    }
  return reps;
}

MuEnumeration finish_enumeration(std::vector<CVec> reps,
                                 const std::vector<ComplexMatrix>& all_bases) {
  MuEnumeration out;
  out.vectors = std::move(reps);
  for (const auto& v : out.vectors) out.residuals.push_back(max_mu_deviation(v, all_bases));
  return out;
}

MuEnumeration search_enumeration(SearchCore core, const std::vector<ComplexMatrix>& all_bases,
                                 const Tolerance& tol, const MuSearchOptions& opts) {
  core.tol = &tol;
  std::vector<CVec> reps = run_mu_search(core, opts.grid_depth, opts.polish_starts, opts.seed);
  MuEnumeration out = finish_enumeration(std::move(reps), all_bases);
  if (!out.vectors.empty() && opts.detect_continuum) {
    const std::size_t c0 = out.vectors.size();
    const std::size_t c1 =
        run_mu_search(core, opts.grid_depth, 2 * opts.polish_starts, opts.seed + 1).size();
    const std::size_t c2 =
        run_mu_search(core, opts.grid_depth, 4 * opts.polish_starts, opts.seed + 2).size();
    out.continuum = c0 < c1 && c1 < c2;
  }
  return out;
}

bool is_identity(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() &&
         (m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

} // namespace

MuEnumeration mu_vectors(const ComplexMatrix& u, const Tolerance& tol,
                         const MuSearchOptions& opts) {
  if (!is_unitary(u, tol)) throw DomainError("mu_vectors: input must be unitary");
  const Eigen::Index d = u.rows();
  if (d < 2 || d > 6) throw DimensionError("mu_vectors: order must be 2..6");

  std::vector<ComplexMatrix> all = {ComplexMatrix::Identity(d, d), u};

  // Closed forms for the Fourier matrices at d = 2, 3.
  if (d == 2 && max_abs_diff(u, fourier(2)) <= tol.predicate_tol) {
    MuEnumeration out;
    const double s = 1.0 / std::sqrt(2.0);
    CVec plus(2), minus(2);
    plus << s, cplx(0, s);
    minus << s, cplx(0, -s);
    out = finish_enumeration({plus, minus}, all);
    out.exhaustive = true;
    return out;
  }
  if (d == 3 && max_abs_diff(u, fourier(3)) <= tol.predicate_tol) {
    const cplx w = omega3(), w2 = std::conj(omega3()), one(1.0, 0.0);
    const cplx rows[2][6] = {{w, w2, one, w2, w, one}, {w, one, w2, w2, one, w}};
    std::vector<CVec> vecs;
    const double s = 1.0 / std::sqrt(3.0);
    for (int j = 0; j < 6; ++j) {
      CVec v(3);
      v << s, s * rows[0][j], s * rows[1][j];
      vecs.push_back(v);
    }
    MuEnumeration out = finish_enumeration(std::move(vecs), all);
    out.exhaustive = true;
    return out;
  }

  SearchCore core{d, {u}, nullptr, /*flat=*/true};
  return search_enumeration(core, all, tol, opts);
}

MuEnumeration mu_vectors_multi(const std::vector<ComplexMatrix>& bases, const Tolerance& tol,
                               const MuSearchOptions& opts) {
  if (bases.empty()) throw DimensionError("mu_vectors_multi: need at least one basis");
  const Eigen::Index d = bases.front().rows();
  for (const auto& b : bases) {
    if (!is_unitary(b, tol)) throw DomainError("mu_vectors_multi: inputs must be unitary");
    if (b.rows() != d) throw DimensionError("mu_vectors_multi: order mismatch");
  }
  // A single Fourier basis routes through the closed forms of mu_vectors.
  if (bases.size() == 1 && (d == 2 || d == 3) &&
      max_abs_diff(bases[0], fourier(d)) <= tol.predicate_tol)
    return mu_vectors(bases[0], tol, opts);

  // Flat mode when some member is the identity (MU to it forces flat entries).
  bool has_identity = false;
  std::vector<ComplexMatrix> others;
  for (const auto& b : bases) {
    if (!has_identity && is_identity(b, tol.predicate_tol))
      has_identity = true;
    else
      others.push_back(b);
  }

  SearchCore core;
  core.d = d;
  core.flat = has_identity;
  core.constraints = has_identity ? others : bases;
  return search_enumeration(core, bases, tol, opts);
}

MuFactorizationReport check_product_mu_factorization(const ProductVector& p,
                                                     const ComplexMatrix& basis,
                                                     const Tolerance& tol) {
  if (p.schmidt_rank != 1)
    throw DomainError("check_product_mu_factorization: vector must be Schmidt rank one");
  ProductColumnCensus census = count_product_columns(basis, tol);
  if (census.count != 6)
    throw DomainError("check_product_mu_factorization: basis is not a product basis");

  MuFactorizationReport rep;
  const CVec& a = p.factor_a[0];
  const CVec& b = p.factor_b[0];
  for (Eigen::Index j = 0; j < 6; ++j) {
    ProductVector col = schmidt_2x3(basis.col(j), tol);
    rep.joint_dev = std::max(rep.joint_dev,
                             std::abs(mu_value(p.full, col.full) - 1.0 / std::sqrt(6.0)));
    rep.a_dev = std::max(rep.a_dev,
                         std::abs(mu_value(a, col.factor_a[0]) - 1.0 / std::sqrt(2.0)));
    rep.b_dev = std::max(rep.b_dev,
                         std::abs(mu_value(b, col.factor_b[0]) - 1.0 / std::sqrt(3.0)));
  }
  rep.joint_mu = rep.joint_dev <= tol.search_tol;
  rep.factors_mu = rep.a_dev <= tol.search_tol && rep.b_dev <= tol.search_tol;
  rep.holds = rep.joint_mu == rep.factors_mu;
  return rep;
}

} // namespace mublab
