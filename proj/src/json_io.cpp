#include "mublab/json_io.hpp"

#include <fstream>

namespace mublab {

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (rows < 1 || cols < 1) throw DimensionError("matrix_from_json: bad shape");
  if (static_cast<Eigen::Index>(entries.size()) != rows * cols)
    throw DimensionError("matrix_from_json: entries length != rows*cols");
  ComplexMatrix m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++k)
      m(i, j2) = cplx(entries[static_cast<std::size_t>(k)].at(0).get<double>(),
                      entries[static_cast<std::size_t>(k)].at(1).get<double>());
  return m;
}

json vector_to_json(const CVec& v) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back({v(i).real(), v(i).imag()});
  return {{"dim", v.size()}, {"entries", std::move(entries)}};
}

CVec vector_from_json(const json& j) {
  const auto& entries = j.at("entries");
  CVec v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        cplx(entries[i].at(0).get<double>(), entries[i].at(1).get<double>());
  return v;
}

json product_vector_to_json(const ProductVector& p) {
  json fa = json::array(), fb = json::array();
  for (const auto& a : p.factor_a) fa.push_back(vector_to_json(a));
  for (const auto& b : p.factor_b) fb.push_back(vector_to_json(b));
  return {{"full", vector_to_json(p.full)},
          {"schmidt_rank", p.schmidt_rank},
          {"coefficients", p.coefficients},
          {"factor_a", std::move(fa)},
          {"factor_b", std::move(fb)}};
}

json enumeration_to_json(const MuEnumeration& e) {
  json vectors = json::array();
  for (const auto& v : e.vectors) vectors.push_back(vector_to_json(v));
  return {{"vectors", std::move(vectors)},
          {"count", e.vectors.size()},
          {"exhaustive", e.exhaustive},
          {"continuum", e.continuum},
          {"residuals", e.residuals}};
}

json witness_to_json(const FamilyWitness& w) {
  json tags = json::array();
  for (Family f : w.tags) tags.push_back(family_name(f));
  json phases = json::array();
  for (Eigen::Index j = 0; j < w.column_phases.size(); ++j)
    phases.push_back({w.column_phases(j).real(), w.column_phases(j).imag()});
  return {{"tags", std::move(tags)},
          {"primary", family_name(w.primary)},
          {"local_a", matrix_to_json(w.local_a)},
          {"local_b", matrix_to_json(w.local_b)},
          {"column_perm", w.column_perm},
          {"column_phases", std::move(phases)},
          {"canonical", matrix_to_json(w.canonical)}};
}

json certificate_to_json(const PatternCertificate& c) {
  json factors = json::array();
  for (const auto& f : c.factors) factors.push_back(vector_to_json(f));
  return {{"pattern", pattern_name(c.pattern)},
          {"row_indices", c.row_indices},
          {"col_indices", c.col_indices},
          {"metric", c.metric},
          {"strict", c.strict},
          {"factors", std::move(factors)}};
}

json trio_to_json(const TrioCheck& t) {
  return {{"is_trio", t.is_trio}, {"defects", {t.defects[0], t.defects[1], t.defects[2]}}};
}

namespace {

json cplx_to_json(const cplx& z) { return {z.real(), z.imag()}; }

cplx cplx_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

} // namespace

json prop1_params_to_json(const Prop1Params& p) {
  return {{"alpha", cplx_to_json(p.alpha)},
          {"beta", cplx_to_json(p.beta)},
          {"x", cplx_to_json(p.x)},
          {"y", cplx_to_json(p.y)},
          {"u", matrix_to_json(p.u)}};
}

Prop1Params prop1_params_from_json(const json& j) {
  Prop1Params p;
  p.alpha = cplx_from_json(j.at("alpha"));
  p.beta = cplx_from_json(j.at("beta"));
  p.x = cplx_from_json(j.at("x"));
  p.y = cplx_from_json(j.at("y"));
  p.u = j.contains("u") ? matrix_from_json(j.at("u")) : ComplexMatrix(fourier(3));
  return p;
}

json prop2_params_to_json(const Prop2Params& p) {
  return {{"prop1", prop1_params_to_json(p.prop1)},
          {"u_phase", cplx_to_json(p.u_phase)},
          {"v_phase", cplx_to_json(p.v_phase)},
          {"x1", cplx_to_json(p.x1)}, {"y1", cplx_to_json(p.y1)},
          {"x2", cplx_to_json(p.x2)}, {"y2", cplx_to_json(p.y2)},
          {"x3", cplx_to_json(p.x3)}, {"y3", cplx_to_json(p.y3)},
          {"x4", cplx_to_json(p.x4)}, {"y4", cplx_to_json(p.y4)},
          {"b", matrix_to_json(p.b)},
          {"c", matrix_to_json(p.c)}};
}

Prop2Params prop2_params_from_json(const json& j) {
  Prop2Params p;
  p.prop1 = prop1_params_from_json(j.at("prop1"));
  p.u_phase = cplx_from_json(j.at("u_phase"));
  p.v_phase = cplx_from_json(j.at("v_phase"));
  p.x1 = cplx_from_json(j.at("x1"));
  p.y1 = cplx_from_json(j.at("y1"));
  p.x2 = cplx_from_json(j.at("x2"));
  p.y2 = cplx_from_json(j.at("y2"));
  p.x3 = cplx_from_json(j.at("x3"));
  p.y3 = cplx_from_json(j.at("y3"));
  p.x4 = cplx_from_json(j.at("x4"));
  p.y4 = cplx_from_json(j.at("y4"));
  p.b = j.contains("b") ? matrix_from_json(j.at("b")) : ComplexMatrix(fourier(4));
  p.c = j.contains("c") ? matrix_from_json(j.at("c")) : ComplexMatrix(fourier(4));
  return p;
}

FamilyParams family_params_from_json(const json& j) {
  FamilyParams p;
  if (j.contains("a_basis")) p.a_basis = matrix_from_json(j.at("a_basis"));
  p.theta_b = j.value("theta_b", 0.0);
  p.theta_c = j.value("theta_c", 0.0);
  p.theta_d = j.value("theta_d", 0.0);
  p.theta_e = j.value("theta_e", 0.0);
  p.chi_e = j.value("chi_e", 0.0);
  return p;
}

json report_to_json(const SearchReport& r) {
  return {{"params", prop2_params_to_json(r.params)},
          {"best_defect", r.best_defect},
          {"product_census", r.product_census},
          {"pattern_hits", r.pattern_hits},
          {"iterations", r.iterations},
          {"seed", r.seed},
          {"screened_out", r.screened_out},
          {"violations", r.violations},
          {"review_flag", r.review_flag}};
}

SearchReport report_from_json(const json& j) {
  SearchReport r;
  r.params = prop2_params_from_json(j.at("params"));
  r.best_defect = j.at("best_defect").get<double>();
  r.product_census = j.at("product_census").get<std::vector<int>>();
  r.pattern_hits = j.at("pattern_hits").get<std::vector<std::vector<std::string>>>();
  r.iterations = j.at("iterations").get<long>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.screened_out = j.at("screened_out").get<bool>();
  r.violations = j.at("violations").get<std::vector<std::string>>();
  r.review_flag = j.at("review_flag").get<bool>();
  return r;
}

GridSpec grid_spec_from_json(const json& j) {
  GridSpec g;
  if (j.contains("alpha")) g.alpha_angles = j.at("alpha").get<std::vector<double>>();
  if (j.contains("beta")) g.beta_angles = j.at("beta").get<std::vector<double>>();
  if (j.contains("x")) g.x_angles = j.at("x").get<std::vector<double>>();
  if (j.contains("y")) g.y_angles = j.at("y").get<std::vector<double>>();
  g.seed = j.value("seed", std::uint64_t{7});
  g.random_blocks = j.value("random_blocks", false);
  return g;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return json::parse(in);
}

ComplexMatrix read_matrix_file(const std::string& path) {
  return matrix_from_json(read_json_file(path));
}

} // namespace mublab
