#include "toroidal/blowup.hpp"
#include "toroidal/lift.hpp"
#include "toroidal/pipeline.hpp"
#include "toroidal/principalize.hpp"
#include "toroidal/random_instances.hpp"
#include "toroidal/serialize.hpp"
#include "toroidal/toric.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tor;

namespace {

enum Exit { kPass = 0, kFail = 1, kInvalid = 2, kCap = 3 };

struct Options {
    int cap = kDefaultStepCap;
    std::string policy = kDefaultPolicy;
    std::string out;
    std::uint64_t seed = 1;
};

Json read_json(const std::string& path) {
    std::stringstream buf;
    if (path.empty() || path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw ChartError("cannot open " + path);
        buf << in.rdbuf();
    }
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw ChartError(std::string("invalid JSON: ") + e.what());
    }
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw ChartError("cannot write " + o.out);
    f << text;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(1) + "\n"); }

Json report_json(const Report& r) { return {{"pass", r.ok()}, {"failures", r.failures}}; }

int cmd_check_atlas(const Options& o, const std::string& path) {
    Json doc = read_json(path);
    MorphismAtlas a = atlas_from_json(doc);
    Report atlas = check_atlas(a);
    Json out = {{"atlas", report_json(atlas)}};
    bool ok = atlas.ok();
    if (doc.contains("script") && atlas.ok()) {
        Report s = verify_resolution_script(a, script_from_json(doc.at("script")));
        out["script"] = report_json(s);
        ok = ok && s.ok();
    }
    emit(o, out);
    return ok ? kPass : kFail;
}

int cmd_ideal(const Options& o, const std::string& op, const std::string& path) {
    Json doc = read_json(path);
    MonomialIdeal I = ideal_from_json(doc);
    Json out;
    if (op == "minimal") {
        out = to_json(I);
    } else if (op == "gcd") {
        out = gcd_generators(I);
    } else if (op == "colon") {
        Exponent m = get(doc, "by").get<Exponent>();
        if (static_cast<int>(m.size()) != I.dim()) throw ChartError("'by' has the wrong length");
        out = to_json(colon_by_monomial(I, m));
    } else if (op == "factor") {
        Factorization f = principal_part_factorization(I);
        out = {{"principal", f.principal}, {"rest", to_json(f.rest)}};
    } else if (op == "radical") {
        out = to_json(radical(I));
    } else if (op == "decompose") {
        out = Json::array();
        for (const auto& q : irreducible_decomposition(I)) out.push_back(to_json(q));
    } else if (op == "order") {
        out = {{"order", order_at_origin(I)}};
    } else if (op == "max-order") {
        out = max_order_components(I);
    } else {
        throw ChartError("unknown ideal operation '" + op + "'");
    }
    emit(o, out);
    return kPass;
}

int cmd_normalize_toric(const Options& o, const std::string& path) {
    ToricMorphismData t = toric_from_json(read_json(path));
    Report v = validate_toric_morphism(t);
    if (!v.ok()) {
        emit(o, report_json(v));
        return kInvalid;
    }
    ToroidalPresentation p = normalize_toric_presentation(t);
    Json ab = Json::array();
    for (const auto& a : p.alpha_bar) ab.push_back(to_json(a));
    emit(o, Json{{"r", p.r},
                 {"row_perm", p.row_perm},
                 {"col_perm", p.col_perm},
                 {"torus_perm", p.torus_perm},
                 {"b", to_json(p.b)},
                 {"c_block", to_json(p.c_block)},
                 {"tf_matrix", p.tf_matrix},
                 {"alpha_bar", ab},
                 {"residual_zero", is_zero(elimination_residual(t, p))},
                 {"chart", to_json(p.chart)}});
    return kPass;
}

int cmd_blowup(const Options& o, const std::string& path) {
    Json doc = read_json(path);
    ChartForm cf = chart_from_json(get(doc, "chart"));
    BlowupCenterChart c = blowup_center_from_json(get(doc, "center"));
    Permissibility perm = check_permissible_center(cf, c);
    auto rec_json = [](const BlowupRecord& r) {
        return Json{{"case", r.case_id}, {"exc_column", r.exc_column}, {"coord_map", r.coord_map}, {"chart", to_json(r.chart)}};
    };
    Json out = {{"permissible", perm.ok}, {"witness", perm.witness}};
    if (doc.contains("choice")) {
        out["record"] = rec_json(blowup_chart(cf, c, choice_from_json(doc.at("choice"))));
    } else {
        Json all = Json::array();
        for (const auto& st : enumerate_blowup_strata(cf, c))
            all.push_back({{"choice", to_json(st.choice)}, {"record", rec_json(st.record)}});
        out["strata"] = all;
    }
    emit(o, out);
    return perm.ok ? kPass : kFail;
}

int cmd_principalize(const Options& o, const std::string& path) {
    Json doc = read_json(path);
    CenterDescriptor z = center_from_json(get(doc, "center"));
    ChartForm cf = chart_from_json(get(doc, "chart"));
    if (cf.s == 0 && (cf.tag == FormTag::Toroidal || cf.tag == FormTag::Smooth)) cf = derive_center_form(cf, z);
    auto pol = make_policy(o.policy);
    PrincipalizationTrace tr = principalize_chart_family({cf}, z, o.cap, pol.get());
    Json finals = Json::array();
    bool commutes = true;
    for (int id : tr.finals) {
        Json f = {{"chart", id}, {"status", status_name(tr.status.at(id))}, {"form", to_json(tr.charts[id])}};
        if (tr.status.at(id) == StratumStatus::Principal) {
            LiftResult lr = lift_after_principalization(tr.charts[id], z);
            Report com = verify_commutes(tr.charts[id], z, lr.lifted, lr.target);
            commutes = commutes && com.ok();
            f["lift"] = {{"target", to_json(lr.target)}, {"lifted", to_json(lr.lifted)}, {"commutes", report_json(com)}};
        }
        finals.push_back(f);
    }
    Json steps = Json::array();
    for (const auto& st : tr.steps) steps.push_back({{"chart", st.chart_id}, {"coords", st.coords}, {"order", st.order}});
    emit(o, Json{{"steps", steps}, {"finals", finals}, {"violations", tr.violations}, {"witness_misses", tr.witness_misses}, {"exceeded", tr.exceeded()}});
    if (tr.exceeded()) return kCap;
    return commutes && tr.violations.empty() ? kPass : kFail;
}

int cmd_toroidalize(const Options& o, const std::string& path) {
    Json doc = read_json(path);
    MorphismAtlas a = atlas_from_json(doc);
    ResolutionScript s = doc.contains("script") ? script_from_json(doc.at("script")) : ResolutionScript{};
    DiagramTrace tr = toroidalize(a, s, o.cap, o.policy);
    emit(o, dump_trace(tr));
    if (tr.verdict.exceeded) return kCap;
    return tr.verdict.pass() ? kPass : kFail;
}

int cmd_verify_trace(const Options& o, const std::string& trace_path, const std::string& atlas_path) {
    Json trace = read_json(trace_path);
    MorphismAtlas a = atlas_from_json(read_json(atlas_path));
    try {
        ReplayResult r = replay(trace, a);
        emit(o, Json{{"identical", true}, {"verdict", to_json(r.verdict)}});
        if (r.verdict.exceeded) return kCap;
        return r.verdict.pass() ? kPass : kFail;
    } catch (const ReplayError& e) {
        emit(o, Json{{"identical", false}, {"error", e.what()}});
        return kFail;
    }
}

int cmd_report(const Options& o, const std::string& path) {
    Json t = read_json(path);
    if (!t.contains("schema") || t.at("schema") != kTraceSchema) throw ChartError("not a trace document");
    std::ostringstream os;
    const Json& v = t.at("verdict");
    os << "verdict: " << (v.at("pass").get<bool>() ? "pass" : "fail") << "\n";
    os << "cap " << t.at("cap") << ", policy " << t.at("policy").get<std::string>() << "\n";
    os << "input charts: " << t.at("input").at("charts").size() << ", final charts: " << t.at("final").at("charts").size()
       << "\n";
    for (const auto& st : t.at("steps")) {
        os << "step " << st.at("index") << " (exceptional " << st.at("exceptional").get<std::string>() << ", "
           << st.at("status").get<std::string>() << ")\n";
        for (const auto& c : st.at("centers")) {
            os << "  chart " << c.at("chart").get<std::string>() << ": center " << c.at("center").at("divisor_rows").dump()
               << " + " << c.at("center").at("extra_slots").dump() << "\n";
            for (const auto& s : c.at("strata")) {
                const Json& p = s.at("principalization");
                os << "    stratum " << s.at("stratum").get<std::string>() << ": " << p.at("steps").size()
                   << " blowups, " << p.at("finals").size() << " leaves\n";
                for (const auto& lf : s.at("lifts"))
                    os << "      leaf " << lf.at("leaf") << " -> " << lf.at("x_stratum").get<std::string>() << " over "
                       << lf.at("y_chart").get<std::string>() << ", case " << lf.at("target").at("case").get<std::string>()
                       << ", l1 " << lf.at("target").at("l1") << (lf.at("commutes").empty() ? "" : " (does not commute)")
                       << "\n";
            }
        }
    }
    for (const char* k : {"script", "forms", "commutes", "global", "violations"})
        for (const auto& f : v.at(k)) os << k << ": " << f.get<std::string>() << "\n";
    if (v.at("exceeded").get<bool>()) os << "step cap exceeded\n";
    emit(o, os.str());
    return v.at("pass").get<bool>() ? kPass : kFail;
}

// Seeded random principalize-and-lift runs.
int cmd_fuzz(const Options& o, int count) {
    gen::Rng rng(o.seed);
    auto pol = make_policy(o.policy);
    int fails = 0, exceeded = 0;
    std::map<int, int> dist;
    for (int k = 0; k < count; ++k) {
        auto inst = gen::random_adapted(rng);
        PrincipalizationTrace tr = principalize_chart_family({inst.adapted}, inst.z, o.cap, pol.get());
        dist[tr.length()]++;
        if (tr.exceeded()) {
            ++exceeded;
            continue;
        }
        bool ok = tr.violations.empty();
        for (int id : tr.finals) {
            LiftResult lr = lift_after_principalization(tr.charts[id], inst.z);
            ok = ok && verify_commutes(tr.charts[id], inst.z, lr.lifted, lr.target).ok();
        }
        if (!ok) ++fails;
    }
    Json d = Json::object();
    for (const auto& [s, c] : dist) d[std::to_string(s)] = c;
    emit(o, Json{{"seed", o.seed}, {"count", count}, {"failures", fails}, {"exceeded", exceeded}, {"steps", d}});
    if (exceeded) return kCap;
    return fails ? kFail : kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toroidalization of locally toroidal morphisms"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--cap", o.cap, "principalization step cap")->capture_default_str();
    app.add_option("--policy", o.policy, "center selection policy")->capture_default_str();
    app.add_option("--out", o.out, "write output to this path");
    app.add_option("--seed", o.seed, "seed for the fuzz command")->capture_default_str();

    std::string path, path2, op;
    int count = 100;
    auto* check = app.add_subcommand("check-atlas", "validate an atlas and its script");
    check->add_option("atlas", path, "atlas JSON")->required();
    auto* ideal = app.add_subcommand("ideal", "monomial ideal operations");
    ideal->add_option("op", op, "minimal|gcd|colon|factor|radical|decompose|order|max-order")->required();
    ideal->add_option("file", path, "ideal JSON, stdin if omitted");
    auto* toric = app.add_subcommand("normalize-toric", "normalize a toric morphism");
    toric->add_option("file", path, "toric JSON, stdin if omitted");
    auto* blow = app.add_subcommand("blowup", "transform a chart under a blowup");
    blow->add_option("file", path, "chart, center and optional choice")->required();
    auto* prin = app.add_subcommand("principalize", "principalize the pullback of a center and lift");
    prin->add_option("file", path, "chart and center descriptor")->required();
    auto* tor = app.add_subcommand("toroidalize", "run the full pipeline on an atlas with a script");
    tor->add_option("atlas", path, "atlas JSON")->required();
    auto* ver = app.add_subcommand("verify-trace", "replay a trace against its atlas");
    ver->add_option("trace", path, "trace JSON")->required();
    ver->add_option("atlas", path2, "atlas JSON")->required();
    auto* rep = app.add_subcommand("report", "summarize a trace");
    rep->add_option("trace", path, "trace JSON")->required();
    auto* fuzz = app.add_subcommand("fuzz", "random principalize-and-lift runs");
    fuzz->add_option("--count", count, "number of instances")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kInvalid;
    }

    try {
        if (*check) return cmd_check_atlas(o, path);
        if (*ideal) return cmd_ideal(o, op, path);
        if (*toric) return cmd_normalize_toric(o, path);
        if (*blow) return cmd_blowup(o, path);
        if (*prin) return cmd_principalize(o, path);
        if (*tor) return cmd_toroidalize(o, path);
        if (*ver) return cmd_verify_trace(o, path, path2);
        if (*rep) return cmd_report(o, path);
        if (*fuzz) return cmd_fuzz(o, count);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const Json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
