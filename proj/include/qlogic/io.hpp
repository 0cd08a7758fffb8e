#pragma once

#include <json.hpp>

#include "qlogic/calculi.hpp"
#include "qlogic/decide.hpp"
#include "qlogic/kripke.hpp"
#include "qlogic/measures.hpp"
#include "qlogic/qp.hpp"

// JSON forms of every value the CLI reads or prints. Rationals are strings
// ("1/2"), state sets are sorted index arrays, measure tables are keyed by the
// printed index array ("[]", "[0,1]").
namespace ql::io {

using json = nlohmann::json;

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json to_json(const Expr& e);  // {"kind", "children", "var"?}
Expr expr_from_json(const json& j);

json mask_to_json(Mask m);
Mask mask_from_json(const json& j);
json masks_to_json(const std::map<std::string, Mask>& v);
std::map<std::string, Mask> masks_from_json(const json& j);

json to_json(const Valuation& v);
Valuation valuation_from_json(const json& j);
json to_json(const TwistValue& v);
TwistValue twist_from_json(const json& j);
json to_json(const TwistValuation& v);
TwistValuation twist_valuation_from_json(const json& j);
json to_json(const FourValuation& v);
FourValuation four_valuation_from_json(const json& j);

json to_json(const BDModel& m);
BDModel bd_model_from_json(const json& j);
json to_json(const G2KripkeModel& m);
G2KripkeModel kripke_model_from_json(const json& j);
json to_json(const Frame& f);  // {"states", "mu"}
Frame frame_from_json(const json& j);
json to_json(const UncertaintyModel& m);
UncertaintyModel uncertainty_model_from_json(const json& j);
json to_json(const BeliefModel& m);  // "v" is the positive valuation
BeliefModel belief_model_from_json(const json& j);
json to_json(const GardenforsModel& m);
GardenforsModel gardenfors_model_from_json(const json& j);
json to_json(const MeasureWitness& w);
MeasureWitness measure_witness_from_json(const json& j);
json to_json(const OrderInstance& o);  // {"states", "rank": [rank per subset mask]}
OrderInstance order_from_json(const json& j);

json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);
json to_json(const BDVerdict& v);
json to_json(const KVerdict& v);
json to_json(const PropertyResult& r);
json to_json(const FrameVerdict& v);
json to_json(const CorrespondenceReport& r);
json to_json(const QBelWitness& w);
json to_json(const Countermodel& c);
json to_json(const AxiomMatch& m);

json to_json(const Derivation& d);
Derivation derivation_from_json(const json& j);
json to_json(const CheckReport& r);

}  // namespace ql::io
