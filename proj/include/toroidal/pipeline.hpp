#pragma once

#include "toroidal/chart.hpp"
#include "toroidal/principalize.hpp"
#include "toroidal/report.hpp"
#include "toroidal/serialize.hpp"

#include <map>
#include <string>
#include <vector>

namespace tor {

inline constexpr const char* kAtlasSchema = "toroidal-atlas/1";
inline constexpr const char* kTraceSchema = "toroidal-trace/1";

enum class DivisorKind { Original, Exceptional };

// A labeled divisor component through the target point of a chart. Local
// components belong to the chart's own divisor; the others only to the union.
struct YDivisor {
    int coord = 0;
    std::string label;
    bool local = true;
    bool operator==(const YDivisor& o) const { return coord == o.coord && label == o.label && local == o.local; }
};

struct XStratum {
    std::string id;
    ChartForm form;
    bool operator==(const XStratum& o) const { return id == o.id && form == o.form; }
};

// A target point with its coordinates and the source points mapping to it.
struct YChart {
    std::string id;
    std::vector<YDivisor> divisors;  // sorted by coord
    std::vector<XStratum> strata;
    bool operator==(const YChart& o) const { return id == o.id && divisors == o.divisors && strata == o.strata; }
};

struct MorphismAtlas {
    int d = 0, m = 0;
    std::map<std::string, DivisorKind> registry;
    std::vector<YChart> charts;
    bool operator==(const MorphismAtlas& o) const {
        return d == o.d && m == o.m && registry == o.registry && charts == o.charts;
    }
};

struct ScriptCenter {
    std::string chart;
    CenterDescriptor z;               // target coordinates of the center at the chart point
    std::vector<std::string> meets;   // labels meeting the center away from the chart point without containing it
};

struct ScriptStep {
    std::string exceptional;  // label of the new exceptional component
    std::vector<ScriptCenter> centers;
};

using ResolutionScript = std::vector<ScriptStep>;

Json to_json(const MorphismAtlas& a);
MorphismAtlas atlas_from_json(const Json& j);
Json to_json(const ResolutionScript& s);
ResolutionScript script_from_json(const Json& j);

Report check_atlas(const MorphismAtlas& a);

// Checks one step against the current target charts: center validity and
// normal crossings, the strict transform dichotomy for original components,
// and that the new exceptional lies over the original divisor.
Report check_script_step(const MorphismAtlas& a, const ScriptStep& step);

// Blows up the target charts named by the step. Every chart stratum of the
// blowup is created; source strata are dropped from the split charts.
MorphismAtlas blow_up_target(const MorphismAtlas& a, const ScriptStep& step);

std::string split_chart_id(const std::string& parent, int j0, const IndexSet& rest, const std::vector<bool>& generic);

Report verify_resolution_script(const MorphismAtlas& a, const ResolutionScript& script);

Report verify_global_toroidal(const MorphismAtlas& a);

struct Verdict {
    Report script;
    Report forms;     // every stratum toroidal after every step
    Report commutes;  // every lift commutes
    Report global;
    std::vector<std::string> violations;  // principalization invariant failures
    bool exceeded = false;
    bool pass() const {
        return script.ok() && forms.ok() && commutes.ok() && global.ok() && violations.empty() && !exceeded;
    }
};

struct DiagramTrace {
    MorphismAtlas input;
    ResolutionScript script;
    int cap = kDefaultStepCap;
    std::string policy = kDefaultPolicy;
    Json steps = Json::array();
    MorphismAtlas final_atlas;
    Verdict verdict;
};

// Stops at the first step that exceeds the cap; a failing script is not run.
DiagramTrace toroidalize(const MorphismAtlas& atlas, const ResolutionScript& script, int cap = kDefaultStepCap,
                         const std::string& policy = kDefaultPolicy);

Json to_json(const Verdict& v);
Json to_json(const DiagramTrace& t);
std::string dump_trace(const DiagramTrace& t);

class ReplayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReplayResult {
    MorphismAtlas final_atlas;
    Verdict verdict;
};

// Re-runs the recorded script on the atlas and requires the regenerated trace
// to equal the recorded one. Throws ReplayError on any mismatch.
ReplayResult replay(const Json& trace, const MorphismAtlas& atlas);

}  // namespace tor
