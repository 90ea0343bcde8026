#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mublab/bipartite.hpp"
#include "mublab/matcore.hpp"
#include "mublab/mulab.hpp"
#include "mublab/patterns.hpp"
#include "mublab/search.hpp"

namespace mublab {

using json = nlohmann::json;

// Repo-wide matrix format: {"rows": r, "cols": c, "entries": [[re, im], ...]}
// row-major.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json vector_to_json(const CVec& v);
CVec vector_from_json(const json& j);

json product_vector_to_json(const ProductVector& p);
json enumeration_to_json(const MuEnumeration& e);
json witness_to_json(const FamilyWitness& w);
json certificate_to_json(const PatternCertificate& c);
json trio_to_json(const TrioCheck& t);

json prop1_params_to_json(const Prop1Params& p);
Prop1Params prop1_params_from_json(const json& j);
json prop2_params_to_json(const Prop2Params& p);
Prop2Params prop2_params_from_json(const json& j);
FamilyParams family_params_from_json(const json& j);

json report_to_json(const SearchReport& r);
SearchReport report_from_json(const json& j);
GridSpec grid_spec_from_json(const json& j);

ComplexMatrix read_matrix_file(const std::string& path);
json read_json_file(const std::string& path);

} // namespace mublab
