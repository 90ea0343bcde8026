#include "mublab/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "mublab/bipartite.hpp"
#include "mublab/constructor.hpp"
#include "mublab/matcore.hpp"
#include "mublab/mulab.hpp"
#include "mublab/numeric.hpp"
#include "mublab/patterns.hpp"

namespace mublab {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Distance between unit vectors up to a global phase (1 - |<a|b>|^2).
double ray_distance(const CVec& a, const CVec& b) {
  return std::max(0.0, 1.0 - std::norm(a.dot(b)));
}

// Matches `got` against `expected` as sets of rays: every expected vector
// must be hit by exactly one returned vector and vice versa.
bool ray_set_match(const std::vector<CVec>& got, const std::vector<CVec>& expected,
                   double tol) {
  if (got.size() != expected.size()) return false;
  std::vector<bool> used(expected.size(), false);
  for (const auto& g : got) {
    bool hit = false;
    for (std::size_t j = 0; j < expected.size(); ++j) {
      if (used[j] || ray_distance(g, expected[j]) > tol) continue;
      used[j] = true;
      hit = true;
      break;
    }
    if (!hit) return false;
  }
  return true;
}

CriterionResult mu_vectors_f2() {
  CriterionResult r{1, "mu vectors of the order-2 Fourier basis", false, 0.0, ""};
  const MuEnumeration e = mu_vectors(fourier(2));
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<CVec> expected(2, CVec(2));
  expected[0] << cplx(s, 0), cplx(0, s);
  expected[1] << cplx(s, 0), cplx(0, -s);
  double worst = 0.0;
  for (double v : e.residuals) worst = std::max(worst, v);
  r.passed = e.vectors.size() == 2 && e.exhaustive && worst <= 1e-9 &&
             ray_set_match(e.vectors, expected, 1e-9);
  r.detail = "count=" + std::to_string(e.vectors.size()) + " max_residual=" + fmt(worst);
  return r;
}

CriterionResult mu_vectors_f3() {
  CriterionResult r{2, "mu vectors of the order-3 Fourier basis", false, 0.0, ""};
  const MuEnumeration e = mu_vectors(fourier(3));
  const ComplexMatrix table = eq13_parts().mu_matrix; // 3x6, unit columns
  std::vector<CVec> expected;
  for (int j = 0; j < 6; ++j) expected.push_back(table.col(j));
  double worst = 0.0;
  for (double v : e.residuals) worst = std::max(worst, v);
  r.passed = e.vectors.size() == 6 && e.exhaustive && worst <= 1e-9 &&
             ray_set_match(e.vectors, expected, 1e-9);
  r.detail = "count=" + std::to_string(e.vectors.size()) + " max_residual=" + fmt(worst);
  return r;
}

CriterionResult eq13_identities() {
  CriterionResult r{3, "fixed matrix identities of the order-3 enumeration", false, 0.0, ""};
  const Eq13Report rep = verify_eq13();
  r.passed = rep.residual_step1 <= 1e-12 && rep.residual_step2 <= 1e-12;
  r.detail = "step1=" + fmt(rep.residual_step1) + " step2=" + fmt(rep.residual_step2);
  return r;
}

CriterionResult t0_no_common_state(std::uint64_t seed) {
  CriterionResult r{4, "product triple admits no common MU state", false, 0.0, ""};
  const std::vector<ComplexMatrix> t0 = build_T0(complete_mub_prime(2), complete_mub_prime(3));
  MuSearchOptions opts;
  opts.grid_depth = 7;
  opts.polish_starts = 500;
  opts.seed = seed;
  opts.detect_continuum = false;
  const MuEnumeration e = mu_vectors_multi(t0, Tolerance{}, opts);
  r.passed = e.vectors.empty();
  r.detail = "clusters=" + std::to_string(e.vectors.size());
  return r;
}

CriterionResult classify_families(std::uint64_t seed) {
  CriterionResult r{5, "family classification of scrambled product bases", false, 0.0, ""};
  Rng rng(seed);
  const Family families[3] = {Family::P1, Family::P2, Family::P3};
  int ok = 0, total = 0;
  double worst = 0.0;
  for (Family f : families) {
    for (int t = 0; t < 200; ++t) {
      ++total;
      const ComplexMatrix base = build_family(f, random_family_params(f, rng));
      const ComplexMatrix local =
          kron(random_unitary(2, rng), random_unitary(3, rng));
      const ComplexMatrix perm = random_complex_permutation(6, rng);
      const ComplexMatrix scrambled = local * base * perm;
      try {
        const FamilyWitness w = classify_product_basis(scrambled);
        const double res = witness_residual(scrambled, w);
        worst = std::max(worst, res);
        const bool tagged =
            std::find(w.tags.begin(), w.tags.end(), f) != w.tags.end();
        if (tagged && res <= 1e-8) ++ok;
      } catch (const std::exception&) {
        // counts as a miss
      }
    }
  }
  r.passed = ok == total;
  r.detail = std::to_string(ok) + "/" + std::to_string(total) +
             " max_witness_residual=" + fmt(worst);
  return r;
}

CriterionResult pattern_certificates() {
  CriterionResult r{6, "exclusion patterns on the product and real-block matrices", false,
                    0.0, ""};
  const ComplexMatrix f2f3 = kron(fourier(2), fourier(3));
  const auto certs1 = detect_patterns(f2f3);
  bool saw_y4 = false, saw_y7 = false, all_valid = true;
  for (const auto& c : certs1) {
    saw_y4 |= c.pattern == Pattern::Y4;
    saw_y7 |= c.pattern == Pattern::Y7;
    all_valid &= validate_certificate(f2f3, c);
  }
  const ComplexMatrix f6 = fourier(6);
  const auto certs2 = detect_patterns(f6);
  bool saw_y6 = false;
  for (const auto& c : certs2) {
    saw_y6 |= c.pattern == Pattern::Y6;
    all_valid &= validate_certificate(f6, c);
  }
  r.passed = saw_y4 && saw_y7 && saw_y6 && all_valid;
  r.detail = std::string("Y4=") + (saw_y4 ? "yes" : "no") + " Y7=" +
             (saw_y7 ? "yes" : "no") + " Y6=" + (saw_y6 ? "yes" : "no") +
             " revalidated=" + (all_valid ? "yes" : "no");
  return r;
}

CriterionResult two_mub_structure(std::uint64_t seed) {
  CriterionResult r{7, "two-basis construction: census and parameter screens", false, 0.0,
                    ""};
  Rng rng(seed);
  int ok = 0;
  double max_defect = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Prop1Params p = random_prop1_params(rng);
    const Prop1Candidate cand = build_prop1_candidate(p);
    if (!is_unitary(cand.second_mub)) continue;
    int products = 0, rank2 = 0;
    for (int j = 0; j < 6; ++j) {
      const ProductVector pv = schmidt_2x3(cand.second_mub.col(j));
      if (pv.schmidt_rank == 1)
        ++products;
      else
        ++rank2;
    }
    max_defect = std::max(max_defect, mu_defect(cand.first_mub, cand.second_mub));
    if (products == 3 && rank2 == 3) ++ok;
  }
  // The screens must reject the excluded parameter values.
  Prop1Params good = random_prop1_params(rng);
  bool screens_ok = true;
  const cplx w = omega3();
  for (const cplx& a : {cplx(1, 0), w, w * w}) {
    Prop1Params bad = good;
    bad.alpha = a;
    screens_ok &= !check_prop1_constraints(bad).alpha_ok;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Prop1Params bad = good;
      bad.x = std::pow(w, i);
      bad.y = std::pow(w, j);
      screens_ok &= !check_prop1_constraints(bad).xy_ok;
    }
  r.passed = ok == 100 && screens_ok;
  r.detail = std::to_string(ok) + "/100 screens=" + (screens_ok ? "ok" : "FAIL") +
             " max_mu_defect=" + fmt(max_defect) + " (reported, not asserted)";
  return r;
}

CriterionResult four_basis_census(std::uint64_t seed) {
  CriterionResult r{8, "four-basis construction: product census 6+3+2+2", false, 0.0, ""};
  Rng rng(seed);
  int ok = 0;
  for (int t = 0; t < 100; ++t) {
    const Prop2Params p = random_prop2_params(rng);
    const Prop2Candidate cand = build_prop2_candidate(p);
    const int expected[4] = {6, 3, 2, 2};
    bool match = true;
    for (int m = 0; m < 4; ++m)
      match &= count_product_columns(cand.bases[m]).count == expected[m];
    if (match) ++ok;
  }
  r.passed = ok == 100;
  r.detail = std::to_string(ok) + "/100";
  return r;
}

CriterionResult complete_sets() {
  CriterionResult r{9, "complete MU sets in prime dimensions and the order-3 trio",
                    false, 0.0, ""};
  double worst = 0.0;
  bool sizes_ok = true;
  for (int d : {2, 3, 5}) {
    const auto set = complete_mub_prime(d);
    sizes_ok &= static_cast<int>(set.size()) == d + 1;
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t j = i + 1; j < set.size(); ++j)
        worst = std::max(worst, mu_defect(set[i], set[j]));
  }
  const auto m3 = complete_mub_prime(3);
  const TrioCheck trio = trio_check(m3[1], m3[2], m3[3]);
  r.passed = sizes_ok && worst <= 1e-12 && trio.is_trio;
  r.detail = "max_pair_defect=" + fmt(worst) + " trio=" + (trio.is_trio ? "yes" : "no");
  return r;
}

CriterionResult invariance_suite(std::uint64_t seed) {
  CriterionResult r{10, "invariance suite", false, 0.0, ""};
  Rng rng(seed);

  // mu_defect under common left unitary and right complex permutations.
  double worst_equiv = 0.0;
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix a = random_unitary(6, rng);
    const ComplexMatrix b = random_unitary(6, rng);
    const ComplexMatrix x = random_unitary(6, rng);
    const ComplexMatrix p1 = random_complex_permutation(6, rng);
    const ComplexMatrix p2 = random_complex_permutation(6, rng);
    worst_equiv = std::max(
        worst_equiv, std::abs(mu_defect(a, b) - mu_defect(x * a * p1, x * b * p2)));
  }

  // Trio defects under entrywise conjugation.
  const auto m3 = complete_mub_prime(3);
  const TrioCheck t1 = trio_check(m3[1], m3[2], m3[3]);
  const TrioCheck t2 = trio_check(m3[1].conjugate(), m3[2].conjugate(), m3[3].conjugate());
  double worst_trio = 0.0;
  for (int k = 0; k < 3; ++k)
    worst_trio = std::max(worst_trio, std::abs(t1.defects[k] - t2.defects[k]));

  // Dephasing is idempotent.
  double worst_dephase = 0.0;
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix m = random_unitary(6, rng);
    const ComplexMatrix once = dephase(m).matrix;
    worst_dephase = std::max(worst_dephase, max_abs_diff(dephase(once).matrix, once));
  }

  // A unit vector unbiased to d-1 columns of an orthonormal basis is
  // automatically unbiased to the last one.
  const int d = 6;
  double worst_last = 0.0;
  int solved = 0;
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix basis = random_unitary(d, rng);
    bool found = false;
    for (int attempt = 0; attempt < 5 && !found; ++attempt) {
      std::vector<double> x(2 * d);
      for (auto& v : x) v = rng.gauss();
      const auto fn = [&](const std::vector<double>& p, std::vector<double>& res) {
        CVec v(d);
        for (int k = 0; k < d; ++k) v(k) = cplx(p[2 * k], p[2 * k + 1]);
        v.normalize();
        for (int j = 0; j < d - 1; ++j)
          res[static_cast<std::size_t>(j)] = std::norm(basis.col(j).dot(v)) - 1.0 / d;
      };
      const double ss = levenberg_marquardt(fn, x, static_cast<std::size_t>(d - 1));
      if (ss > 1e-22) continue;
      found = true;
      CVec v(d);
      for (int k = 0; k < d; ++k) v(k) = cplx(x[2 * k], x[2 * k + 1]);
      v.normalize();
      worst_last = std::max(
          worst_last, std::abs(std::abs(basis.col(d - 1).dot(v)) - 1.0 / std::sqrt(d)));
    }
    if (found) ++solved;
  }

  r.passed = worst_equiv <= 1e-10 && worst_trio <= 1e-12 && worst_dephase <= 1e-12 &&
             solved == 100 && worst_last <= 1e-8;
  r.detail = "equiv=" + fmt(worst_equiv) + " trio=" + fmt(worst_trio) +
             " dephase=" + fmt(worst_dephase) + " last_col=" + fmt(worst_last) + " (" +
             std::to_string(solved) + "/100 solved)";
  return r;
}

} // namespace

ReproduceReport run_acceptance(std::uint64_t seed) {
  ReproduceReport report;
  report.seed = seed;
  const auto timed = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn();
    const auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    report.results.push_back(std::move(r));
  };

  timed([] { return mu_vectors_f2(); });
  timed([] { return mu_vectors_f3(); });
  timed([] { return eq13_identities(); });
  timed([&] { return t0_no_common_state(seed + 4); });
  timed([&] { return classify_families(seed + 5); });
  timed([] { return pattern_certificates(); });
  timed([&] { return two_mub_structure(seed + 7); });
  timed([&] { return four_basis_census(seed + 8); });
  timed([] { return complete_sets(); });
  timed([&] { return invariance_suite(seed + 10); });

  double total = 0.0;
  bool all = true;
  for (const auto& r : report.results) {
    total += r.seconds;
    all &= r.passed;
  }

  CriterionResult runtime{11, "full suite completes in under 60 seconds", total < 60.0,
                          0.0, "elapsed=" + fmt(total) + "s"};
  all &= runtime.passed;
  report.results.push_back(std::move(runtime));
  report.total_seconds = total;
  report.all_passed = all;
  return report;
}

} // namespace mublab
