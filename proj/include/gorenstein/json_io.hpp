#pragma once

#include <json.hpp>

#include "gorenstein/extremal.hpp"
#include "gorenstein/moment.hpp"
#include "gorenstein/multipliers.hpp"
#include "gorenstein/sos_gram.hpp"

namespace gorenstein {

using Json = nlohmann::json;

// All encodings are canonical: exact rationals as decimal-free strings,
// terms and points in library order, object keys sorted by the JSON library.
// Round-trips of exact data are bit-exact.

Json form_to_json(const Form& f);
Form form_from_json(const Json& j);

Json functional_to_json(const LinearFunctional& l);
LinearFunctional functional_from_json(const Json& j);

Json rational_matrix_to_json(const RationalMatrix& m);
RationalMatrix rational_matrix_from_json(const Json& j);

Json sym_matrix_to_json(const SymmetricMatrixF& m);
SymmetricMatrixF sym_matrix_from_json(const Json& j);

Json point_to_json(const ProjPoint& p);
ProjPoint point_from_json(const Json& j);

Json config_to_json(const PointConfiguration& cfg);
PointConfiguration config_from_json(const Json& j);

Json ci_to_json(const CompleteIntersectionSpec& ci);
CompleteIntersectionSpec ci_from_json(const Json& j);

Json decomposition_to_json(const AtomicDecomposition& d);
Json flatness_to_json(const FlatnessCertificate& c);
Json maximality_to_json(const MaximalityCertificate& c);
Json codim_to_json(const CodimCertificate& c);
Json witness_to_json(const ExtremeRayWitness& w);
Json sos_verdict_to_json(const SosVerdict& v, bool include_gram = true);
Json positivity_to_json(const PositivityReport& r);
Json system_to_json(const SystemReport& r);
Json multiplier_to_json(const MultiplierCertificate& c);
Json waring_to_json(const WaringResult& r);
Json master_check_to_json(const MasterCheck& c);

const char* to_string(FlatnessVerdict v);
const char* to_string(ExtractionStatus s);
const char* to_string(SosStatus s);
const char* to_string(WaringStatus s);
const char* to_string(CodimVerdict v);

}  // namespace gorenstein
