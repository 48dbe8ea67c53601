#include "toroidal/pipeline.hpp"

#include <doctest.h>

#include <fstream>

using namespace tor;

namespace {

Json load(const std::string& name) {
    std::ifstream in(std::string(TOR_TEST_DATA) + "/" + name);
    REQUIRE(in.good());
    return Json::parse(in);
}

struct Example {
    MorphismAtlas atlas;
    ResolutionScript script;
};

Example example(const std::string& name) {
    Json doc = load(name);
    return {atlas_from_json(doc), script_from_json(doc.at("script"))};
}

const XStratum* find_stratum(const MorphismAtlas& a, const std::string& chart, const std::string& id) {
    for (const auto& c : a.charts)
        if (c.id == chart)
            for (const auto& s : c.strata)
                if (s.id == id) return &s;
    return nullptr;
}

}  // namespace

TEST_CASE("2-point origin of a 2 to 2 identity") {
    auto ex = example("two_point.json");
    CHECK(check_atlas(ex.atlas).ok());
    CHECK(verify_resolution_script(ex.atlas, ex.script).ok());
    auto tr = toroidalize(ex.atlas, ex.script);
    CHECK(tr.verdict.pass());

    Json j = to_json(tr);
    const Json& A = j.at("steps")[0].at("centers")[0];
    const Json& pr = A.at("strata")[0].at("principalization");
    REQUIRE(pr.at("steps").size() == 1);
    CHECK(pr.at("steps")[0].at("coords") == Json::array({0, 1}));
    CHECK(pr.at("length") == 1);

    int zero_lifts = 0, generic_lifts = 0;
    for (const auto& lf : A.at("strata")[0].at("lifts")) {
        const Json& t = lf.at("target");
        CHECK(lf.at("commutes").empty());
        if (t.at("l1") == 2) {
            // the chart of the other coordinate sees the same lift with the rows swapped
            if (t.at("exc_row") == 0)
                CHECK(t.at("abar") == Json::parse("[[1,0],[0,1]]"));
            else
                CHECK(t.at("abar") == Json::parse("[[0,1],[1,0]]"));
            CHECK(t.at("t") == 2);
            ++zero_lifts;
        } else {
            CHECK(t.at("l1") == 1);
            ++generic_lifts;
        }
    }
    CHECK(zero_lifts == 2);
    CHECK(generic_lifts == 2);

    const XStratum* s = find_stratum(tr.final_atlas, "A.0.0", "p.1");
    REQUIRE(s != nullptr);
    CHECK(s->form.matrix == IntMatrix{{1, 0}, {0, 1}});
    CHECK(verify_global_toroidal(tr.final_atlas).ok());
}

TEST_CASE("empty script leaves the atlas") {
    auto ex = example("two_point.json");
    auto tr = toroidalize(ex.atlas, {});
    CHECK(tr.verdict.pass());
    CHECK(tr.steps.empty());
    CHECK(tr.final_atlas == ex.atlas);

    auto rr = replay(to_json(tr), ex.atlas);
    CHECK(rr.final_atlas == ex.atlas);
}

TEST_CASE("two charts, one meeting the center away from its divisor") {
    auto ex = example("two_chart.json");
    CHECK(verify_resolution_script(ex.atlas, ex.script).ok());
    auto tr = toroidalize(ex.atlas, ex.script);
    CHECK(tr.verdict.pass());
    Json j = to_json(tr);
    int smooth_lifts = 0;
    for (const auto& c : j.at("steps")[0].at("centers"))
        for (const auto& st : c.at("strata"))
            for (const auto& lf : st.at("lifts")) {
                CHECK(lf.at("commutes").empty());
                if (c.at("chart") == "B" && lf.at("target").at("case") == "smooth") ++smooth_lifts;
            }
    CHECK(smooth_lifts > 0);
}

TEST_CASE("resolution script checks") {
    auto ex = example("two_point.json");

    auto meets = ex.script;
    ex.atlas.registry["E2"] = DivisorKind::Original;
    meets[0].centers[0].meets = {"E2"};
    CHECK_FALSE(verify_resolution_script(ex.atlas, meets).ok());

    MorphismAtlas bare;
    bare.d = 2;
    bare.m = 2;
    bare.charts.push_back({"C", {}, {{"q", make_smooth(2, 2)}}});
    ResolutionScript outside{{"F1", {{"C", {0, 2, {}, {0, 1}}, {}}}}};
    CHECK_FALSE(verify_resolution_script(bare, outside).ok());
}

TEST_CASE("global toroidality with a divisor missing from the chart") {
    MorphismAtlas a;
    a.d = 3;
    a.m = 2;
    a.registry = {{"E0", DivisorKind::Original}, {"E1", DivisorKind::Original}};
    a.charts.push_back({"A", {{0, "E0", true}, {1, "E1", false}}, {{"p", make_toroidal(3, 2, {{2, 3}})}}});
    CHECK(verify_global_toroidal(a).ok());
    auto ext = extend_to_global_form(a.charts[0].strata[0].form, 2);
    CHECK(ext.matrix == IntMatrix{{2, 3, 0}, {0, 0, 1}});

    a.charts[0].strata[0].form.matrix = {{2, 0}};
    CHECK_FALSE(verify_global_toroidal(a).ok());
}

TEST_CASE("traces are deterministic and replay") {
    for (const char* name : {"two_point.json", "two_chart.json"}) {
        CAPTURE(name);
        auto ex = example(name);
        auto t1 = toroidalize(ex.atlas, ex.script);
        auto t2 = toroidalize(ex.atlas, ex.script);
        CHECK(dump_trace(t1) == dump_trace(t2));

        Json recorded = Json::parse(dump_trace(t1));
        auto rr = replay(recorded, ex.atlas);
        CHECK(to_json(rr.final_atlas).dump() == to_json(t1.final_atlas).dump());
        CHECK(rr.verdict.pass());

        Json tampered = recorded;
        auto& m = tampered["steps"][0]["centers"][0]["strata"][0]["lifts"][0]["lifted"]["matrix"];
        m[0][0] = m[0][0].get<int>() + 1;
        CHECK_THROWS_AS(replay(tampered, ex.atlas), ReplayError);
    }
}
