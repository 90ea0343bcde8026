#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mublab/constructor.hpp"
#include "mublab/json_io.hpp"
#include "mublab/matcore.hpp"
#include "mublab/mulab.hpp"
#include "mublab/patterns.hpp"
#include "mublab/reproduce.hpp"
#include "mublab/search.hpp"

namespace {

using mublab::json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kFinding = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MUBLAB_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 20250301;
}

void emit(const json& j, const std::string& out_path, bool pretty) {
  const std::string text = pretty ? j.dump(2) : j.dump();
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write: " + out_path);
    out << text << "\n";
  }
}

std::vector<mublab::ComplexMatrix> load_all(const std::vector<std::string>& paths) {
  std::vector<mublab::ComplexMatrix> out;
  for (const auto& p : paths) out.push_back(mublab::read_matrix_file(p));
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"mublab: verification, classification and search for order-6 MU bases"};
  app.require_subcommand(1);

  std::string out_path;
  bool pretty = false;
  std::uint64_t seed = default_seed();
  mublab::Tolerance tol;
  app.add_option("--out", out_path, "write JSON output to this path instead of stdout");
  app.add_flag("--pretty", pretty, "indent JSON output");
  app.add_option("--seed", seed, "RNG seed (env MUBLAB_SEED overrides the default)");
  app.add_option("--predicate-tol", tol.predicate_tol, "exact-predicate tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--search-tol", tol.search_tol, "numerical-search tolerance")
      ->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "max pairwise MU defect of a basis set");
  std::vector<std::string> verify_paths;
  verify->add_option("--mub", verify_paths, "matrix JSON file (repeatable)")
      ->required()
      ->expected(-2);

  // classify
  auto* classify = app.add_subcommand("classify", "family of a product-vector basis");
  std::string classify_path;
  classify->add_option("--basis", classify_path, "order-6 basis JSON")->required();

  // mu-vectors
  auto* muvec = app.add_subcommand("mu-vectors", "vectors MU to the identity and the inputs");
  std::vector<std::string> muvec_paths;
  int grid_depth = 7, polish_starts = 500;
  muvec->add_option("--matrix", muvec_paths, "unitary JSON (repeatable)")
      ->required()
      ->expected(-1);
  muvec->add_option("--depth", grid_depth, "grid points per free angle");
  muvec->add_option("--starts", polish_starts, "polish starts / kept grid points");

  // patterns
  auto* patterns = app.add_subcommand("patterns", "exclusion-pattern scan of an order-6 CHM");
  std::string patterns_path;
  patterns->add_option("--matrix", patterns_path, "CHM JSON")->required();

  // trio
  auto* trio = app.add_subcommand("trio", "check three CHMs for the trio property");
  std::vector<std::string> trio_paths;
  trio->add_option("--matrix", trio_paths, "CHM JSON, exactly three")
      ->required()
      ->expected(3);

  // construct
  auto* construct = app.add_subcommand("construct", "build the named object");
  std::string kind, params_path;
  int prime_d = 3;
  construct
      ->add_option("--kind", kind,
                   "one of: p1, p2, p3, prop1, prop2, t0, t1, complete")
      ->required();
  construct->add_option("--params", params_path, "parameter JSON (random when omitted)");
  construct->add_option("--dim", prime_d, "prime dimension for --kind complete");

  // search
  auto* search = app.add_subcommand("search", "defect minimization or a census sweep");
  std::string grid_path, search_params_path, reports_path;
  int restarts = 1, max_iters = 40;
  search->add_option("--grid", grid_path, "grid spec JSON; runs the census sweep");
  search->add_option("--params", search_params_path,
                     "start parameters for minimization (random when omitted)");
  search->add_option("--reports", reports_path, "JSON-lines output for census reports");
  search->add_option("--restarts", restarts, "minimization restarts");
  search->add_option("--max-iters", max_iters, "coordinate-descent sweeps per restart");

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "run the full acceptance suite");

  // Allow the global options (--out, --seed, ...) after a subcommand name.
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      const auto bases = load_all(verify_paths);
      const double defect = mublab::set_defect(bases, tol);
      json pairs = json::array();
      for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j)
          pairs.push_back({{"i", i}, {"j", j},
                           {"defect", mublab::mu_defect(bases[i], bases[j], tol)}});
      emit({{"defect", defect}, {"pairs", pairs}}, out_path, pretty);
      return kOk;
    }

    if (classify->parsed()) {
      const auto basis = mublab::read_matrix_file(classify_path);
      const auto witness = mublab::classify_product_basis(basis, tol);
      json j = mublab::witness_to_json(witness);
      j["witness_residual"] = mublab::witness_residual(basis, witness);
      emit(j, out_path, pretty);
      return kOk;
    }

    if (muvec->parsed()) {
      const auto bases = load_all(muvec_paths);
      mublab::MuSearchOptions opts;
      opts.grid_depth = grid_depth;
      opts.polish_starts = polish_starts;
      opts.seed = seed;
      const auto e = bases.size() == 1 ? mublab::mu_vectors(bases[0], tol, opts)
                                       : mublab::mu_vectors_multi(bases, tol, opts);
      emit(mublab::enumeration_to_json(e), out_path, pretty);
      return kOk;
    }

    if (patterns->parsed()) {
      const auto m = mublab::read_matrix_file(patterns_path);
      const auto certs = mublab::detect_patterns(m, tol);
      json arr = json::array();
      for (const auto& c : certs) arr.push_back(mublab::certificate_to_json(c));
      emit({{"certificates", arr}, {"count", certs.size()}}, out_path, pretty);
      return certs.empty() ? kOk : kFinding;
    }

    if (trio->parsed()) {
      const auto m = load_all(trio_paths);
      const auto check = mublab::trio_check(m[0], m[1], m[2], tol);
      emit(mublab::trio_to_json(check), out_path, pretty);
      return check.is_trio ? kOk : kFinding;
    }

    if (construct->parsed()) {
      mublab::Rng rng(seed);
      json result;
      if (kind == "p1" || kind == "p2" || kind == "p3") {
        const mublab::Family fam = kind == "p1"   ? mublab::Family::P1
                                   : kind == "p2" ? mublab::Family::P2
                                                  : mublab::Family::P3;
        const mublab::FamilyParams params =
            params_path.empty()
                ? mublab::random_family_params(fam, rng)
                : mublab::family_params_from_json(mublab::read_json_file(params_path));
        result = {{"kind", kind},
                  {"basis", mublab::matrix_to_json(mublab::build_family(fam, params, tol))}};
      } else if (kind == "prop1") {
        const mublab::Prop1Params p =
            params_path.empty()
                ? mublab::random_prop1_params(rng, tol)
                : mublab::prop1_params_from_json(mublab::read_json_file(params_path));
        const auto screens = mublab::check_prop1_constraints(p, tol);
        if (!screens.all_ok()) {
          emit({{"kind", kind}, {"screened_out", true}, {"violations", screens.violations}},
               out_path, pretty);
          return kFinding;
        }
        const auto cand = mublab::build_prop1_candidate(p, tol);
        result = {{"kind", kind},
                  {"params", mublab::prop1_params_to_json(p)},
                  {"first", mublab::matrix_to_json(cand.first_mub)},
                  {"second", mublab::matrix_to_json(cand.second_mub)},
                  {"mu_defect", mublab::mu_defect(cand.first_mub, cand.second_mub, tol)}};
      } else if (kind == "prop2") {
        const mublab::Prop2Params p =
            params_path.empty()
                ? mublab::random_prop2_params(rng, tol)
                : mublab::prop2_params_from_json(mublab::read_json_file(params_path));
        const auto cand = mublab::build_prop2_candidate(p, tol);
        json bases = json::array();
        std::vector<mublab::ComplexMatrix> all;
        for (const auto& b : cand.bases) {
          bases.push_back(mublab::matrix_to_json(b));
          all.push_back(b);
        }
        result = {{"kind", kind},
                  {"params", mublab::prop2_params_to_json(p)},
                  {"bases", bases},
                  {"set_defect", mublab::set_defect(all, tol)}};
      } else if (kind == "t0" || kind == "t1") {
        const auto m2 = mublab::complete_mub_prime(2);
        const auto m3 = mublab::complete_mub_prime(3);
        const auto triple = kind == "t0" ? mublab::build_T0(m2, m3, tol)
                                         : mublab::build_T1(m2, m3, tol);
        json bases = json::array();
        for (const auto& b : triple) bases.push_back(mublab::matrix_to_json(b));
        result = {{"kind", kind}, {"bases", bases}};
      } else if (kind == "complete") {
        const auto set = mublab::complete_mub_prime(prime_d);
        json bases = json::array();
        for (const auto& b : set) bases.push_back(mublab::matrix_to_json(b));
        result = {{"kind", kind}, {"dim", prime_d}, {"bases", bases}};
      } else {
        std::cerr << "unknown --kind: " << kind << "\n";
        return kError;
      }
      emit(result, out_path, pretty);
      return kOk;
    }

    if (search->parsed()) {
      if (!grid_path.empty()) {
        mublab::GridSpec grid =
            mublab::grid_spec_from_json(mublab::read_json_file(grid_path));
        std::ofstream lines;
        if (!reports_path.empty()) {
          lines.open(reports_path, std::ios::app);
          if (!lines) throw std::runtime_error("cannot write: " + reports_path);
        }
        long emitted = 0, screened = 0;
        mublab::grid_census(
            grid,
            [&](const mublab::SearchReport& rep) {
              ++emitted;
              if (rep.screened_out) ++screened;
              const json rec = mublab::report_to_json(rep);
              if (lines.is_open())
                lines << rec.dump() << "\n";
              else
                std::cout << rec.dump() << "\n";
            },
            tol);
        if (lines.is_open())
          emit({{"records", emitted}, {"screened_out", screened}}, out_path, pretty);
        return screened > 0 ? kFinding : kOk;
      }
      mublab::Rng rng(seed);
      const mublab::Prop2Params start =
          search_params_path.empty()
              ? mublab::random_prop2_params(rng, tol)
              : mublab::prop2_params_from_json(mublab::read_json_file(search_params_path));
      mublab::MinimizeOptions opts;
      opts.seed = seed;
      opts.restarts = restarts;
      opts.max_iters = max_iters;
      const mublab::SearchReport rep = mublab::minimize_defect(start, opts, tol);
      emit(mublab::report_to_json(rep), out_path, pretty);
      return rep.review_flag ? kFinding : kOk;
    }

    if (reproduce->parsed()) {
      const mublab::ReproduceReport rep = mublab::run_acceptance(seed);
      json results = json::array();
      for (const auto& r : rep.results) {
        std::fprintf(stderr, "[%s] %2d %s (%s)\n", r.passed ? "PASS" : "FAIL", r.index,
                     r.name.c_str(), r.detail.c_str());
        results.push_back({{"index", r.index},
                           {"name", r.name},
                           {"passed", r.passed},
                           {"seconds", r.seconds},
                           {"detail", r.detail}});
      }
      emit({{"results", results},
            {"total_seconds", rep.total_seconds},
            {"all_passed", rep.all_passed},
            {"seed", rep.seed}},
           out_path, pretty);
      return rep.all_passed ? kOk : kError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }

  return kError;
}
