#include "mublab/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mublab/bipartite.hpp"
#include "mublab/mulab.hpp"
#include "mublab/patterns.hpp"

namespace mublab {

double set_defect(const std::vector<ComplexMatrix>& bases, const Tolerance& tol) {
  if (bases.size() < 2) throw DimensionError("set_defect: need at least two bases");
  double defect = 0.0;
  for (std::size_t i = 0; i < bases.size(); ++i)
    for (std::size_t j = i + 1; j < bases.size(); ++j)
      defect = std::max(defect, mu_defect(bases[i], bases[j], tol));
  return defect;
}

namespace {

constexpr double kReviewThreshold = 1e-4;

// Angle layout: 4 scalar phases of the first candidate, 9 Givens angles for
// [u_jk], 2 A-ray phases, 8 x_j/y_j phases, then 16 + 16 for [b_jk]/[c_jk].
constexpr std::size_t kScalarAngles = 4 + 2 + 8;
constexpr std::size_t kUAngles = 9, kBAngles = 16, kCAngles = 16;
constexpr std::size_t kTotalAngles = kScalarAngles + kUAngles + kBAngles + kCAngles;

cplx phase_of(double t) { return {std::cos(t), std::sin(t)}; }

// The coefficient blocks are composed as (initial block) * (angle-built
// unitary) so that a zero angle vector reproduces the starting parameters and
// every iterate is exactly unitary.
struct AngleSpace {
  Prop2Params base;

  Prop2Params assemble(const std::vector<double>& a) const {
    Prop2Params p = base;
    p.prop1.alpha = phase_of(a[0]) * base.prop1.alpha;
    p.prop1.beta = phase_of(a[1]) * base.prop1.beta;
    p.prop1.x = phase_of(a[2]) * base.prop1.x;
    p.prop1.y = phase_of(a[3]) * base.prop1.y;
    p.u_phase = phase_of(a[4]) * base.u_phase;
    p.v_phase = phase_of(a[5]) * base.v_phase;
    p.x1 = phase_of(a[6]) * base.x1;
    p.y1 = phase_of(a[7]) * base.y1;
    p.x2 = phase_of(a[8]) * base.x2;
    p.y2 = phase_of(a[9]) * base.y2;
    p.x3 = phase_of(a[10]) * base.x3;
    p.y3 = phase_of(a[11]) * base.y3;
    p.x4 = phase_of(a[12]) * base.x4;
    p.y4 = phase_of(a[13]) * base.y4;

    std::vector<double> ua(a.begin() + kScalarAngles, a.begin() + kScalarAngles + kUAngles);
    std::vector<double> ba(a.begin() + kScalarAngles + kUAngles,
                           a.begin() + kScalarAngles + kUAngles + kBAngles);
    std::vector<double> ca(a.begin() + kScalarAngles + kUAngles + kBAngles, a.end());
    p.prop1.u = base.prop1.u * unitary_from_angles(3, ua);
    p.b = base.b * unitary_from_angles(4, ba);
    p.c = base.c * unitary_from_angles(4, ca);
    return p;
  }
};

double candidate_defect(const Prop2Params& p, const Tolerance& tol) {
  const Prop2Candidate cand = build_prop2_candidate(p, tol);
  return set_defect({cand.bases[0], cand.bases[1], cand.bases[2], cand.bases[3]}, tol);
}

} // namespace

SearchReport analyze_candidate(const Prop2Params& params, const Tolerance& tol) {
  SearchReport rep;
  rep.params = params;
  const Prop2Candidate cand = build_prop2_candidate(params, tol);
  std::vector<ComplexMatrix> bases(cand.bases, cand.bases + 4);
  rep.best_defect = set_defect(bases, tol);
  rep.review_flag = rep.best_defect < kReviewThreshold;

  const Tolerance relaxed{tol.search_tol, tol.search_tol};
  for (const auto& b : bases) {
    rep.product_census.push_back(count_product_columns(b, tol).count);
    std::vector<std::string> tags;
    if (&b != &bases.front()) {
      // Patterns apply to the CHM seen from the first basis, when it is one.
      const ComplexMatrix g = bases.front().adjoint() * b;
      if (is_chm(g, relaxed)) {
        std::set<std::string> seen;
        for (const auto& cert : detect_patterns(g, tol)) seen.insert(pattern_name(cert.pattern));
        tags.assign(seen.begin(), seen.end());
      }
    }
    rep.pattern_hits.push_back(std::move(tags));
  }
  return rep;
}

SearchReport minimize_defect(const Prop2Params& initial, const MinimizeOptions& opts,
                             const Tolerance& tol) {
  validate(initial, tol);
  Rng rng(opts.seed);

  Prop2Params best_params = initial;
  double best_defect = candidate_defect(initial, tol);
  long evals = 1;

  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    AngleSpace space{restart == 0 ? initial : best_params};
    std::vector<double> a(kTotalAngles, 0.0);
    if (restart > 0)
      for (auto& ai : a) ai = rng.uniform(0.0, 2.0 * kPi);

    double incumbent = candidate_defect(space.assemble(a), tol);
    ++evals;

    for (int sweep = 0; sweep < opts.max_iters; ++sweep) {
      bool improved = false;
      for (std::size_t k = 0; k < kTotalAngles; ++k) {
        double best_t = a[k];
        double best_v = incumbent;
        double step = 2.0 * kPi / opts.line_points;
        for (int s = 0; s < opts.line_points; ++s) {
          a[k] = s * step;
          const double v = candidate_defect(space.assemble(a), tol);
          ++evals;
          if (v < best_v) {
            best_v = v;
            best_t = a[k];
          }
        }
        // Shrink the bracket around the best sample.
        for (int refine = 0; refine < 5; ++refine) {
          step *= 0.5;
          for (const double t : {best_t - step, best_t + step}) {
            a[k] = t;
            const double v = candidate_defect(space.assemble(a), tol);
            ++evals;
            if (v < best_v) {
              best_v = v;
              best_t = t;
            }
          }
        }
        // best_v starts at the incumbent, so this never goes uphill.
        a[k] = best_t;
        if (best_v < incumbent - 1e-15) improved = true;
        incumbent = std::min(incumbent, best_v);
      }
      if (!improved) break;
    }

    if (incumbent < best_defect) {
      best_defect = incumbent;
      best_params = space.assemble(a);
    }
  }

  SearchReport rep = analyze_candidate(best_params, tol);
  rep.best_defect = best_defect;
  rep.review_flag = best_defect < kReviewThreshold;
  rep.iterations = evals;
  rep.seed = opts.seed;
  return rep;
}

void grid_census(const GridSpec& grid, const ReportSink& sink, const Tolerance& tol) {
  std::uint64_t point = 0;
  for (double ta : grid.alpha_angles)
    for (double tb : grid.beta_angles)
      for (double tx : grid.x_angles)
        for (double ty : grid.y_angles) {
          const std::uint64_t seed = grid.seed + point;
          Rng rng(seed);
          Prop1Params p1;
          p1.alpha = phase_of(ta);
          p1.beta = phase_of(tb);
          p1.x = phase_of(tx);
          p1.y = phase_of(ty);
          p1.u = grid.random_blocks ? random_unitary(3, rng) : fourier(3);

          SearchReport rep;
          rep.params.prop1 = p1;
          rep.params.b = grid.random_blocks ? random_unitary(4, rng) : fourier(4);
          rep.params.c = grid.random_blocks ? random_unitary(4, rng) : fourier(4);
          rep.seed = seed;
          ++point;

          const Prop1Constraints screens = check_prop1_constraints(p1, tol);
          if (!screens.all_ok()) {
            rep.screened_out = true;
            rep.violations = screens.violations;
            sink(rep);
            continue;
          }

          const Prop1Candidate cand = build_prop1_candidate(p1, tol);
          rep.product_census = {count_product_columns(cand.first_mub, tol).count,
                                count_product_columns(cand.second_mub, tol).count};
          rep.best_defect = set_defect({cand.first_mub, cand.second_mub}, tol);
          rep.review_flag = rep.best_defect < kReviewThreshold;

          const ComplexMatrix g = cand.first_mub.adjoint() * cand.second_mub;
          std::vector<std::string> tags;
          const Tolerance relaxed{tol.search_tol, tol.search_tol};
          if (is_chm(g, relaxed)) {
            std::set<std::string> seen;
            for (const auto& cert : detect_patterns(g, tol)) seen.insert(pattern_name(cert.pattern));
            tags.assign(seen.begin(), seen.end());
          }
          rep.pattern_hits = {{}, tags};
          sink(rep);
        }
}

} // namespace mublab
