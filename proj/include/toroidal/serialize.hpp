#pragma once

#include "toroidal/blowup.hpp"
#include "toroidal/chart.hpp"
#include "toroidal/lift.hpp"
#include "toroidal/monomial_ideal.hpp"
#include "toroidal/toric.hpp"

#include <json.hpp>

namespace tor {

using Json = nlohmann::json;

// Readers throw ChartError on malformed documents.

Json to_json(const Constant& c);
Constant constant_from_json(const Json& j);

Json to_json(const UnitToken& u);
UnitToken unit_from_json(const Json& j);

Json to_json(const ChartForm& cf);
// Accepts either a full chart or the shorthand {"matrix": ..., "units": ...}
// for a toroidal chart with identity labels.
ChartForm chart_from_json(const Json& j, int d, int m);
ChartForm chart_from_json(const Json& j);

Json to_json(const CenterDescriptor& z);
CenterDescriptor center_from_json(const Json& j);

Json to_json(const BlowupCenterChart& c);
BlowupCenterChart blowup_center_from_json(const Json& j);

Json to_json(const BlowupChartChoice& c);
BlowupChartChoice choice_from_json(const Json& j);

Json to_json(const MonomialIdeal& I);
MonomialIdeal ideal_from_json(const Json& j);

Json to_json(const QMatrix& q);
ToricMorphismData toric_from_json(const Json& j);

Json to_json(const ParamDef& p);
Json to_json(const LiftTarget& t);

Json get(const Json& j, const char* key);

}  // namespace tor
