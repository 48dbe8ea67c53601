#include "toroidal/pipeline.hpp"

#include <algorithm>
#include <set>

namespace tor {

namespace {

std::string kind_name(DivisorKind k) { return k == DivisorKind::Original ? "original" : "exceptional"; }

DivisorKind parse_kind(const std::string& s) {
    if (s == "original") return DivisorKind::Original;
    if (s == "exceptional") return DivisorKind::Exceptional;
    throw ChartError("unknown divisor kind '" + s + "'");
}

std::string get_string(const Json& j, const char* key) {
    Json v = get(j, key);
    if (!v.is_string()) throw ChartError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

const YChart* find_chart(const MorphismAtlas& a, const std::string& id) {
    for (const auto& c : a.charts)
        if (c.id == id) return &c;
    return nullptr;
}

IndexSet center_set(const CenterDescriptor& z) {
    IndexSet J = z.divisor_rows;
    J.insert(J.end(), z.extra_slots.begin(), z.extra_slots.end());
    std::sort(J.begin(), J.end());
    return J;
}

bool contains(const IndexSet& J, int j) { return std::find(J.begin(), J.end(), j) != J.end(); }

Report check_stratum_form(const YChart& c, const XStratum& s, int d, int m) {
    Report rep;
    const ChartForm& cf = s.form;
    if (cf.d != d || cf.m != m) rep.fail("dimensions differ from the atlas");
    Report st = check_structure(cf);
    rep.merge(st);
    if (!rep.ok()) return rep;
    if (cf.s != 0 || cf.pivot >= 0) rep.fail("stratum is not in toroidal form");
    if (cf.l == 0) {
        if (cf.tag != FormTag::Smooth) rep.fail("stratum without divisor rows must be smooth");
    } else {
        rep.merge(verify_toroidal_form(cf));
    }
    std::set<int> rows, local;
    for (int i = 0; i < cf.l; ++i) rows.insert(cf.ylabels[i]);
    for (const auto& dv : c.divisors)
        if (dv.local) local.insert(dv.coord);
    if (rows != local) rep.fail("divisor rows differ from the chart's local divisor");
    return rep;
}

}  // namespace

Json to_json(const MorphismAtlas& a) {
    Json reg = Json::object();
    for (const auto& [lab, k] : a.registry) reg[lab] = kind_name(k);
    Json charts = Json::array();
    for (const auto& c : a.charts) {
        Json divs = Json::array(), strata = Json::array();
        for (const auto& dv : c.divisors) divs.push_back({{"coord", dv.coord}, {"label", dv.label}, {"local", dv.local}});
        for (const auto& s : c.strata) strata.push_back({{"id", s.id}, {"form", to_json(s.form)}});
        charts.push_back({{"id", c.id}, {"divisors", divs}, {"strata", strata}});
    }
    return {{"schema", kAtlasSchema}, {"d", a.d}, {"m", a.m}, {"divisors", reg}, {"charts", charts}};
}

MorphismAtlas atlas_from_json(const Json& j) {
    if (!j.is_object()) throw ChartError("atlas must be a JSON object");
    if (j.contains("schema") && j.at("schema") != kAtlasSchema) throw ChartError("unsupported atlas schema");
    MorphismAtlas a;
    a.d = get(j, "d").get<int>();
    a.m = get(j, "m").get<int>();
    if (a.d < 0 || a.m < 0) throw ChartError("negative atlas dimension");
    if (j.contains("divisors"))
        for (const auto& [lab, k] : j.at("divisors").items()) a.registry[lab] = parse_kind(k.get<std::string>());
    for (const auto& cj : get(j, "charts")) {
        YChart c;
        c.id = get_string(cj, "id");
        if (cj.contains("divisors"))
            for (const auto& dj : cj.at("divisors"))
                c.divisors.push_back({get(dj, "coord").get<int>(), get_string(dj, "label"),
                                      dj.contains("local") ? dj.at("local").get<bool>() : true});
        std::sort(c.divisors.begin(), c.divisors.end(),
                  [](const YDivisor& x, const YDivisor& y) { return x.coord < y.coord; });
        for (const auto& sj : get(cj, "strata"))
            c.strata.push_back({get_string(sj, "id"), chart_from_json(get(sj, "form"), a.d, a.m)});
        a.charts.push_back(std::move(c));
    }
    return a;
}

Json to_json(const ResolutionScript& s) {
    Json out = Json::array();
    for (const auto& st : s) {
        Json cs = Json::array();
        for (const auto& c : st.centers) {
            Json cj = to_json(c.z);
            cj["chart"] = c.chart;
            cj["meets"] = c.meets;
            cs.push_back(cj);
        }
        out.push_back({{"exceptional", st.exceptional}, {"centers", cs}});
    }
    return out;
}

ResolutionScript script_from_json(const Json& j) {
    if (!j.is_array()) throw ChartError("script must be a list of steps");
    ResolutionScript s;
    for (const auto& sj : j) {
        ScriptStep st;
        st.exceptional = get_string(sj, "exceptional");
        for (const auto& cj : get(sj, "centers")) {
            ScriptCenter c;
            c.chart = get_string(cj, "chart");
            c.z = center_from_json(cj);
            if (cj.contains("meets"))
                for (const auto& l : cj.at("meets")) c.meets.push_back(l.get<std::string>());
            st.centers.push_back(std::move(c));
        }
        s.push_back(std::move(st));
    }
    return s;
}

Report check_atlas(const MorphismAtlas& a) {
    Report rep;
    std::set<std::string> ids;
    for (const auto& c : a.charts) {
        const std::string pre = "chart " + c.id + ": ";
        if (!ids.insert(c.id).second) rep.fail(pre + "duplicate chart id");
        std::set<int> coords;
        std::set<std::string> labels;
        for (const auto& dv : c.divisors) {
            if (dv.coord < 0 || dv.coord >= a.m) rep.fail(pre + "divisor coordinate out of range");
            if (!coords.insert(dv.coord).second) rep.fail(pre + "coordinate " + std::to_string(dv.coord) + " labeled twice");
            if (!labels.insert(dv.label).second) rep.fail(pre + "label " + dv.label + " used twice");
            if (!a.registry.count(dv.label)) rep.fail(pre + "label " + dv.label + " is not registered");
        }
        std::set<std::string> sids;
        for (const auto& s : c.strata) {
            if (!sids.insert(s.id).second) rep.fail(pre + "duplicate stratum id " + s.id);
            rep.merge(check_stratum_form(c, s, a.d, a.m), pre + "stratum " + s.id + ": ");
        }
    }
    return rep;
}

Report check_script_step(const MorphismAtlas& a, const ScriptStep& step) {
    Report rep;
    if (step.exceptional.empty()) rep.fail("exceptional label is empty");
    if (a.registry.count(step.exceptional)) rep.fail("exceptional label " + step.exceptional + " is already registered");
    if (step.centers.empty()) rep.fail("step names no chart");
    std::set<std::string> seen;
    std::map<std::string, bool> label_contains;
    bool over_divisor = false;
    for (const auto& sc : step.centers) {
        const std::string pre = "chart " + sc.chart + ": ";
        const YChart* c = find_chart(a, sc.chart);
        if (!c) {
            rep.fail(pre + "unknown chart");
            continue;
        }
        if (!seen.insert(sc.chart).second) rep.fail(pre + "named twice");
        const CenterDescriptor& z = sc.z;
        if (z.c != step.centers.front().z.c) rep.fail(pre + "codimension disagrees with the other charts");
        if (static_cast<int>(z.divisor_rows.size()) != z.lbar || static_cast<int>(z.extra_slots.size()) != z.c - z.lbar) {
            rep.fail(pre + "descriptor sizes do not match lbar and c");
            continue;
        }
        IndexSet J = center_set(z);
        Report snc = check_center_snc(a.m, J);
        if (!snc.ok()) {
            rep.merge(snc, pre);
            continue;
        }
        std::set<int> local;
        for (const auto& dv : c->divisors)
            if (dv.local) local.insert(dv.coord);
        for (int j : z.divisor_rows)
            if (!local.count(j)) rep.fail(pre + "coordinate " + std::to_string(j) + " is not a local divisor");
        for (int j : z.extra_slots)
            if (local.count(j)) rep.fail(pre + "slot coordinate " + std::to_string(j) + " is a local divisor");
        for (const auto& dv : c->divisors) {
            bool in = contains(J, dv.coord);
            if (in) over_divisor = true;
            auto [it, fresh] = label_contains.emplace(dv.label, in);
            if (!fresh && it->second != in) rep.fail(pre + "charts disagree on whether " + dv.label + " contains the center");
            if (!in && a.registry.at(dv.label) == DivisorKind::Original)
                rep.fail(pre + "center meets " + dv.label + " without lying in it");
        }
        for (const auto& lab : sc.meets) {
            auto it = a.registry.find(lab);
            if (it == a.registry.end())
                rep.fail(pre + "unknown label " + lab);
            else if (it->second == DivisorKind::Original)
                rep.fail(pre + "center meets " + lab + " without lying in it");
        }
    }
    if (rep.ok() && !over_divisor) rep.fail("center lies in no labeled component, so the exceptional is not over the divisor");
    return rep;
}

std::string split_chart_id(const std::string& parent, int j0, const IndexSet& rest, const std::vector<bool>& generic) {
    std::string id = parent + "." + std::to_string(j0) + ".";
    for (std::size_t q = 0; q < rest.size(); ++q) id += generic[q] ? 'g' : '0';
    return id;
}

MorphismAtlas blow_up_target(const MorphismAtlas& a, const ScriptStep& step) {
    MorphismAtlas out;
    out.d = a.d;
    out.m = a.m;
    out.registry = a.registry;
    out.registry[step.exceptional] = DivisorKind::Exceptional;
    for (const auto& c : a.charts) {
        auto sc = std::find_if(step.centers.begin(), step.centers.end(), [&](const ScriptCenter& x) { return x.chart == c.id; });
        if (sc == step.centers.end()) {
            out.charts.push_back(c);
            continue;
        }
        IndexSet J = center_set(sc->z);
        for (int j0 : J) {
            IndexSet rest;
            for (int j : J)
                if (j != j0) rest.push_back(j);
            for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
                std::vector<bool> generic(rest.size());
                for (std::size_t q = 0; q < rest.size(); ++q) generic[q] = mask >> (rest.size() - 1 - q) & 1u;
                YChart nc;
                nc.id = split_chart_id(c.id, j0, rest, generic);
                for (const auto& dv : c.divisors) {
                    if (dv.coord == j0) continue;
                    auto it = std::find(rest.begin(), rest.end(), dv.coord);
                    if (it != rest.end() && generic[it - rest.begin()]) continue;
                    nc.divisors.push_back(dv);
                }
                nc.divisors.push_back({j0, step.exceptional, sc->z.lbar >= 1});
                std::sort(nc.divisors.begin(), nc.divisors.end(),
                          [](const YDivisor& x, const YDivisor& y) { return x.coord < y.coord; });
                out.charts.push_back(std::move(nc));
            }
        }
    }
    return out;
}

Report verify_resolution_script(const MorphismAtlas& a, const ResolutionScript& script) {
    Report rep;
    MorphismAtlas cur = a;
    for (std::size_t k = 0; k < script.size(); ++k) {
        Report st = check_script_step(cur, script[k]);
        if (!st.ok()) {
            rep.merge(st, "step " + std::to_string(k) + ": ");
            return rep;
        }
        cur = blow_up_target(cur, script[k]);
    }
    return rep;
}

Report verify_global_toroidal(const MorphismAtlas& a) {
    Report rep;
    for (const auto& c : a.charts) {
        IndexSet extra;
        int local = 0;
        for (const auto& dv : c.divisors) {
            if (dv.local)
                ++local;
            else
                extra.push_back(dv.coord);
        }
        const int lg = static_cast<int>(c.divisors.size());
        for (const auto& s : c.strata) {
            const std::string pre = "chart " + c.id + " stratum " + s.id + ": ";
            const ChartForm& cf = s.form;
            if (cf.l != local) {
                rep.fail(pre + "local divisor count differs from the form");
                continue;
            }
            if (cf.l == 0) {
                Report st = check_structure(cf);
                if (!st.ok() || cf.tag != FormTag::Smooth || cf.s != 0) rep.fail(pre + "not smooth");
            } else if (cf.l == lg) {
                rep.merge(verify_toroidal_form(cf), pre);
            }
            if (cf.l < lg) {
                try {
                    ChartForm ext = extend_to_global_form(promote_params(cf, extra), lg);
                    rep.merge(verify_toroidal_form(ext), pre + "extended: ");
                } catch (const ChartError& e) {
                    rep.fail(pre + e.what());
                }
            }
        }
    }
    return rep;
}

namespace {

Json principalization_json(const PrincipalizationTrace& tr) {
    Json charts = Json::array(), steps = Json::array(), status = Json::object();
    for (const auto& cf : tr.charts) charts.push_back(to_json(cf));
    for (const auto& st : tr.steps) {
        Json kids = Json::array();
        for (const auto& ch : st.children) kids.push_back({{"choice", to_json(ch.choice)}, {"chart", ch.chart_id}});
        steps.push_back({{"chart", st.chart_id},
                         {"coords", st.coords},
                         {"center", to_json(st.center)},
                         {"order", st.order},
                         {"children", kids}});
    }
    for (const auto& [id, s] : tr.status) status[std::to_string(id)] = status_name(s);
    return {{"charts", charts},
            {"parent", tr.parent},
            {"depth", tr.depth},
            {"length", tr.length()},
            {"coord_maps", tr.coord_maps},
            {"steps", steps},
            {"finals", tr.finals},
            {"status", status},
            {"violations", tr.violations},
            {"witness_misses", tr.witness_misses}};
}

Json failures(const Report& r) { return r.failures; }

}  // namespace

DiagramTrace toroidalize(const MorphismAtlas& atlas, const ResolutionScript& script, int cap, const std::string& policy) {
    Report input = check_atlas(atlas);
    if (!input.ok()) throw ChartError("invalid atlas: " + input.first());
    if (cap < 0) throw ChartError("cap must be nonnegative");
    auto pol = make_policy(policy);
    DiagramTrace tr;
    tr.input = atlas;
    tr.script = script;
    tr.cap = cap;
    tr.policy = policy;
    tr.verdict.script = verify_resolution_script(atlas, script);
    MorphismAtlas cur = atlas;
    if (!tr.verdict.script.ok()) {
        tr.final_atlas = cur;
        return tr;
    }

    for (std::size_t k = 0; k < script.size() && !tr.verdict.exceeded; ++k) {
        const ScriptStep& step = script[k];
        MorphismAtlas next = blow_up_target(cur, step);
        Json centers = Json::array();
        for (const auto& sc : step.centers) {
            const YChart& c = *find_chart(cur, sc.chart);
            const IndexSet J = center_set(sc.z);
            Json strata = Json::array();
            for (const auto& s : c.strata) {
                const std::string sid = s.id;
                ChartForm adapted = derive_center_form(s.form, sc.z);
                PrincipalizationTrace pt = principalize_chart_family({adapted}, sc.z, cap, pol.get());
                for (const auto& v : pt.violations) tr.verdict.violations.push_back(sid + ": " + v);
                Json rec = {{"stratum", sid}, {"adapted", to_json(adapted)}, {"principalization", principalization_json(pt)}};
                if (pt.exceeded()) {
                    tr.verdict.exceeded = true;
                    rec["lifts"] = Json::array();
                    strata.push_back(rec);
                    continue;
                }
                Json lifts = Json::array();
                for (int leaf : pt.finals) {
                    const ChartForm& lf = pt.charts[leaf];
                    LiftResult lr = lift_after_principalization(lf, sc.z);
                    Report com = verify_commutes(lf, sc.z, lr.lifted, lr.target);
                    tr.verdict.commutes.merge(com, sid + "." + std::to_string(leaf) + ": ");
                    ChartForm form = lr.lifted;
                    for (int q = 0; q < form.m; ++q) form.ylabels[q] = lf.ylabels[lr.target.sigma[q]];
                    const int j0 = lf.ylabels[lr.target.exc_row];
                    IndexSet rest;
                    std::vector<bool> generic;
                    for (int j : J)
                        if (j != j0) {
                            rest.push_back(j);
                            const int row = row_of_label(lf, j);
                            const int pos = static_cast<int>(std::find(lr.target.sigma.begin(), lr.target.sigma.end(), row) -
                                                             lr.target.sigma.begin());
                            generic.push_back(lr.target.beta[pos].has_value());
                        }
                    const std::string yid = split_chart_id(c.id, j0, rest, generic);
                    const std::string xid = sid + "." + std::to_string(leaf);
                    auto yc = std::find_if(next.charts.begin(), next.charts.end(), [&](const YChart& x) { return x.id == yid; });
                    if (yc == next.charts.end()) throw std::logic_error("lift lands on no target chart: " + yid);
                    XStratum xs{xid, form};
                    tr.verdict.forms.merge(check_stratum_form(*yc, xs, next.d, next.m), "step " + std::to_string(k) + " " + xid + ": ");
                    yc->strata.push_back(std::move(xs));
                    lifts.push_back({{"leaf", leaf},
                                     {"target", to_json(lr.target)},
                                     {"lifted", to_json(form)},
                                     {"commutes", failures(com)},
                                     {"y_chart", yid},
                                     {"x_stratum", xid}});
                }
                rec["lifts"] = lifts;
                strata.push_back(rec);
            }
            centers.push_back({{"chart", sc.chart}, {"center", to_json(sc.z)}, {"strata", strata}});
        }
        tr.steps.push_back({{"index", k}, {"exceptional", step.exceptional}, {"status", tr.verdict.exceeded ? "exceeded" : "done"},
                            {"centers", centers}});
        if (!tr.verdict.exceeded) cur = std::move(next);
    }
    tr.final_atlas = cur;
    if (!tr.verdict.exceeded) tr.verdict.global = verify_global_toroidal(cur);
    return tr;
}

Json to_json(const Verdict& v) {
    return {{"pass", v.pass()},
            {"script", failures(v.script)},
            {"forms", failures(v.forms)},
            {"commutes", failures(v.commutes)},
            {"global", failures(v.global)},
            {"violations", v.violations},
            {"exceeded", v.exceeded}};
}

Json to_json(const DiagramTrace& t) {
    return {{"schema", kTraceSchema},
            {"cap", t.cap},
            {"policy", t.policy},
            {"input", to_json(t.input)},
            {"script", to_json(t.script)},
            {"steps", t.steps},
            {"final", to_json(t.final_atlas)},
            {"verdict", to_json(t.verdict)}};
}

std::string dump_trace(const DiagramTrace& t) { return to_json(t).dump(1) + "\n"; }

ReplayResult replay(const Json& trace, const MorphismAtlas& atlas) {
    if (!trace.is_object() || !trace.contains("schema") || trace.at("schema") != kTraceSchema)
        throw ReplayError("not a trace of this engine version");
    for (const char* key : {"cap", "policy", "input", "script", "steps", "final", "verdict"})
        if (!trace.contains(key)) throw ReplayError(std::string("trace lacks '") + key + "'");
    if (trace.at("input") != to_json(atlas)) throw ReplayError("atlas does not match the trace input");
    DiagramTrace re;
    try {
        re = toroidalize(atlas, script_from_json(trace.at("script")), trace.at("cap").get<int>(),
                         trace.at("policy").get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ReplayError(std::string("trace cannot be re-run: ") + e.what());
    }
    Json regen = to_json(re);
    if (regen != trace) {
        const Json& a = regen.at("steps");
        const Json& b = trace.at("steps");
        if (a.size() != b.size()) throw ReplayError("trace records a different number of steps");
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] != b[k]) throw ReplayError("trace step " + std::to_string(k) + " differs from the replay");
        for (const char* key : {"final", "verdict", "cap", "policy"})
            if (regen.at(key) != trace.at(key)) throw ReplayError(std::string("trace field '") + key + "' differs from the replay");
        throw ReplayError("trace differs from the replay");
    }
    return {re.final_atlas, re.verdict};
}

}  // namespace tor
