#include "toroidal/serialize.hpp"

namespace tor {

Json get(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ChartError(std::string("missing field '") + key + "'");
    return j.at(key);
}

namespace {

int get_int(const Json& j, const char* key) {
    Json v = get(j, key);
    if (!v.is_number_integer()) throw ChartError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::vector<int> int_list(const Json& j) {
    if (!j.is_array()) throw ChartError("expected an integer list");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ChartError("expected an integer list");
        out.push_back(v.get<int>());
    }
    return out;
}

IntMatrix int_matrix(const Json& j) {
    if (!j.is_array()) throw ChartError("expected an integer matrix");
    IntMatrix out;
    for (const auto& r : j) out.push_back(int_list(r));
    return out;
}

std::string str_of(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ChartError("expected a constant string");
}

}  // namespace

Json to_json(const Constant& c) { return c.str(); }

Constant constant_from_json(const Json& j) {
    try {
        return Constant::parse(str_of(j));
    } catch (const ChartError&) {
        throw;
    } catch (const std::exception& e) {
        throw ChartError(std::string("bad constant: ") + e.what());
    }
}

Json to_json(const UnitToken& u) {
    Json f = Json::array();
    for (const auto& x : u.factors) f.push_back({{"var", x.var}, {"shift", to_json(x.shift)}, {"exp", x.exp}});
    return {{"constant", to_json(u.constant)}, {"factors", f}};
}

UnitToken unit_from_json(const Json& j) {
    UnitToken u;
    if (j.is_string() || j.is_number_integer()) {
        u.constant = constant_from_json(j);
        return u;
    }
    u.constant = constant_from_json(get(j, "constant"));
    if (j.contains("factors"))
        for (const auto& f : j.at("factors"))
            u.factors.push_back(UnitFactor{get_int(f, "var"), constant_from_json(get(f, "shift")), get_int(f, "exp")});
    return u;
}

Json to_json(const ChartForm& cf) {
    Json units = Json::array(), betas = Json::array();
    for (const auto& u : cf.units) units.push_back(to_json(u));
    for (const auto& b : cf.betas) betas.push_back(b.str());
    return {{"d", cf.d},
            {"m", cf.m},
            {"n", cf.n},
            {"l", cf.l},
            {"s", cf.s},
            {"lbar", cf.lbar},
            {"tag", tag_name(cf.tag)},
            {"matrix", cf.matrix},
            {"units", units},
            {"betas", betas},
            {"pivot", cf.pivot},
            {"pivot_divisor", cf.pivot_divisor},
            {"ylabels", cf.ylabels},
            {"next_symbol", cf.next_symbol}};
}

ChartForm chart_from_json(const Json& j, int d, int m) {
    if (j.contains("tag")) return chart_from_json(j);
    IntMatrix a = int_matrix(get(j, "matrix"));
    ChartForm cf = make_toroidal(j.contains("d") ? get_int(j, "d") : d, j.contains("m") ? get_int(j, "m") : m, a);
    if (j.contains("units")) {
        const Json& u = j.at("units");
        if (!u.is_array() || static_cast<int>(u.size()) != cf.rows()) throw ChartError("one unit per matrix row expected");
        for (int i = 0; i < cf.rows(); ++i) cf.units[i] = unit_from_json(u[i]);
    }
    return cf;
}

ChartForm chart_from_json(const Json& j) {
    if (!j.contains("tag")) return chart_from_json(j, get_int(j, "d"), get_int(j, "m"));
    ChartForm cf;
    cf.d = get_int(j, "d");
    cf.m = get_int(j, "m");
    cf.n = get_int(j, "n");
    cf.l = get_int(j, "l");
    cf.s = j.contains("s") ? get_int(j, "s") : 0;
    cf.lbar = j.contains("lbar") ? get_int(j, "lbar") : 0;
    try {
        cf.tag = parse_tag(get(j, "tag").get<std::string>());
    } catch (const Json::exception&) {
        throw ChartError("tag must be a string");
    }
    cf.matrix = int_matrix(get(j, "matrix"));
    for (const auto& u : get(j, "units")) cf.units.push_back(unit_from_json(u));
    if (j.contains("betas"))
        for (const auto& b : j.at("betas")) cf.betas.push_back(Stratum::parse(str_of(b)));
    cf.pivot = j.contains("pivot") ? get_int(j, "pivot") : -1;
    cf.pivot_divisor = j.contains("pivot_divisor") ? j.at("pivot_divisor").get<bool>() : true;
    if (j.contains("ylabels"))
        cf.ylabels = int_list(j.at("ylabels"));
    else
        for (int k = 0; k < cf.m; ++k) cf.ylabels.push_back(k);
    cf.next_symbol = j.contains("next_symbol") ? get_int(j, "next_symbol") : 0;
    Report st = check_structure(cf);
    if (!st.ok()) throw ChartError("malformed chart: " + st.first());
    return cf;
}

Json to_json(const CenterDescriptor& z) {
    return {{"lbar", z.lbar}, {"c", z.c}, {"divisor_rows", z.divisor_rows}, {"extra_slots", z.extra_slots}};
}

CenterDescriptor center_from_json(const Json& j) {
    CenterDescriptor z;
    z.lbar = get_int(j, "lbar");
    z.c = get_int(j, "c");
    z.divisor_rows = int_list(get(j, "divisor_rows"));
    z.extra_slots = j.contains("extra_slots") ? int_list(j.at("extra_slots")) : std::vector<int>{};
    if (static_cast<int>(z.divisor_rows.size()) != z.lbar || static_cast<int>(z.extra_slots.size()) != z.c - z.lbar)
        throw ChartError("center descriptor sizes do not match lbar and c");
    return z;
}

Json to_json(const BlowupCenterChart& c) { return {{"divisors", c.divisor_indices}, {"slots", c.slot_count}}; }

BlowupCenterChart blowup_center_from_json(const Json& j) {
    BlowupCenterChart c;
    c.divisor_indices = int_list(get(j, "divisors"));
    c.slot_count = j.contains("slots") ? get_int(j, "slots") : 0;
    return c;
}

Json to_json(const BlowupChartChoice& c) {
    Json b = Json::object();
    for (const auto& [k, v] : c.beta) b[std::to_string(k)] = v.str();
    return {{"j0", c.j0}, {"beta", b}};
}

BlowupChartChoice choice_from_json(const Json& j) {
    BlowupChartChoice c;
    c.j0 = get_int(j, "j0");
    if (j.contains("beta"))
        for (const auto& [k, v] : j.at("beta").items()) {
            try {
                c.beta[std::stoi(k)] = Stratum::parse(str_of(v));
            } catch (const std::logic_error& e) {
                throw ChartError(std::string("bad beta entry: ") + e.what());
            }
        }
    return c;
}

Json to_json(const MonomialIdeal& I) { return {{"dim", I.dim()}, {"generators", I.generators()}}; }

MonomialIdeal ideal_from_json(const Json& j) {
    int dim = get_int(j, "dim");
    std::vector<Exponent> gens;
    for (const auto& g : get(j, "generators")) {
        Exponent e = int_list(g);
        if (static_cast<int>(e.size()) != dim) throw ChartError("generator length differs from dim");
        for (int v : e)
            if (v < 0) throw ChartError("negative exponent");
        gens.push_back(e);
    }
    return minimal_generators(dim, gens);
}

Json to_json(const QMatrix& q) {
    Json out = Json::array();
    for (const auto& row : q) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(rational_str(v));
        out.push_back(r);
    }
    return out;
}

ToricMorphismData toric_from_json(const Json& j) {
    ToricMorphismData t;
    t.source = {get_int(j, "d"), get_int(j, "n")};
    t.target = {get_int(j, "m"), get_int(j, "l")};
    t.matrix = int_matrix(get(j, "matrix"));
    if (j.contains("alphas"))
        for (const auto& a : j.at("alphas")) {
            try {
                t.alphas.push_back(parse_rational(str_of(a)));
            } catch (const std::exception& e) {
                throw ChartError(std::string("bad alpha: ") + e.what());
            }
        }
    return t;
}

Json to_json(const ParamDef& p) {
    static const char* kinds[] = {"old", "scaled", "opaque"};
    Json out = {{"kind", kinds[static_cast<int>(p.kind)]}, {"old", p.old}};
    if (p.kind == ParamDef::Kind::Scaled) {
        out["scale"] = to_json(p.scale);
        out["shift"] = p.shift ? to_json(*p.shift) : Json(nullptr);
    }
    if (p.kind == ParamDef::Kind::Opaque) out["witnessed"] = p.witnessed;
    return out;
}

Json to_json(const LiftTarget& t) {
    Json beta = Json::array(), params = Json::array();
    for (const auto& b : t.beta) beta.push_back(b ? to_json(*b) : Json(nullptr));
    for (const auto& p : t.params) params.push_back(to_json(p));
    return {{"case", lift_case_name(t.kind)},
            {"exc_row", t.exc_row},
            {"center_rows", t.center_rows},
            {"exc_divisor", t.exc_divisor},
            {"l1", t.l1},
            {"t", t.t},
            {"sigma", t.sigma},
            {"beta", beta},
            {"params", params},
            {"abar", t.abar}};
}

}  // namespace tor
