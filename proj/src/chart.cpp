#include "toroidal/chart.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tor {

namespace {

std::string rc(const char* what, int i) { return std::string(what) + " " + std::to_string(i); }

bool has_positive_sums(const ChartForm& cf, const std::vector<int>& rows, Report& rep) {
    bool ok = true;
    for (int j = 0; j < cf.n; ++j) {
        int sum = 0;
        for (int i : rows) sum += cf.matrix[i][j];
        if (sum <= 0) {
            rep.fail(rc("column", j) + " sum is zero");
            ok = false;
        }
    }
    for (int i : rows) {
        int sum = std::accumulate(cf.matrix[i].begin(), cf.matrix[i].end(), 0);
        if (sum <= 0) {
            rep.fail(rc("row", i) + " sum is zero");
            ok = false;
        }
    }
    return ok;
}

std::vector<int> iota_vec(int from, int to) {
    std::vector<int> v;
    for (int i = from; i < to; ++i) v.push_back(i);
    return v;
}

}  // namespace

std::string tag_name(FormTag t) {
    switch (t) {
        case FormTag::Toroidal: return "toroidal";
        case FormTag::QTF1: return "qtf1";
        case FormTag::QTF2: return "qtf2";
        case FormTag::Smooth: return "smooth";
    }
    return "?";
}

FormTag parse_tag(const std::string& s) {
    if (s == "toroidal") return FormTag::Toroidal;
    if (s == "qtf1") return FormTag::QTF1;
    if (s == "qtf2") return FormTag::QTF2;
    if (s == "smooth") return FormTag::Smooth;
    throw ChartError("unknown form tag '" + s + "'");
}

Stratum Stratum::generic(const std::string& symbol) {
    Stratum st;
    st.kind_ = Kind::NonzeroGeneric;
    st.c_ = Constant::symbol(symbol);
    return st;
}

Stratum Stratum::value(const Constant& c) {
    Stratum st;
    st.kind_ = Kind::Value;
    st.c_ = c;
    return st;
}

const Constant& Stratum::constant() const {
    if (is_zero()) throw ChartError("zero stratum has no nonzero constant");
    return c_;
}

std::string Stratum::str() const {
    switch (kind_) {
        case Kind::Zero: return "0";
        case Kind::NonzeroGeneric: return "generic:" + c_.symbols().begin()->first;
        case Kind::Value: return c_.str();
    }
    return "?";
}

Stratum Stratum::parse(const std::string& s) {
    if (s == "0") return zero();
    if (s.rfind("generic:", 0) == 0) return generic(s.substr(8));
    return value(Constant::parse(s));
}

Constant UnitToken::value() const {
    Constant v = constant;
    for (const auto& f : factors) v *= f.shift.pow(f.exp);
    return v;
}

int ChartForm::slot_coord(int t) const {
    if (t < 0 || t >= s) throw ChartError(rc("slot", t) + " out of range");
    if (pivot_has_coord()) return n + t;
    if (t == pivot) return -1;
    return n + (t < pivot ? t : t - 1);
}

int ChartForm::param_coord(int row) const {
    if (row < l + s || row >= m) throw ChartError(rc("row", row) + " is not a parameter row");
    return n + slot_coord_count() + (row - l - s);
}

bool ChartForm::operator==(const ChartForm& o) const {
    return d == o.d && m == o.m && n == o.n && l == o.l && s == o.s && lbar == o.lbar && tag == o.tag &&
           matrix == o.matrix && units == o.units && betas == o.betas && pivot == o.pivot &&
           pivot_divisor == o.pivot_divisor && ylabels == o.ylabels && next_symbol == o.next_symbol;
}

ChartForm make_toroidal(int d, int m, const IntMatrix& a) {
    ChartForm cf;
    cf.d = d;
    cf.m = m;
    cf.l = static_cast<int>(a.size());
    cf.n = a.empty() ? 0 : static_cast<int>(a[0].size());
    cf.tag = cf.l == 0 ? FormTag::Smooth : FormTag::Toroidal;
    cf.matrix = a;
    cf.units.assign(a.size(), UnitToken{});
    cf.ylabels = iota_vec(0, m);
    return cf;
}

ChartForm make_smooth(int d, int m) { return make_toroidal(d, m, {}); }

Report check_structure(const ChartForm& cf) {
    Report rep;
    if (cf.d < 0 || cf.m < 0 || cf.n < 0 || cf.l < 0 || cf.s < 0) {
        rep.fail("negative dimension");
        return rep;
    }
    if (cf.n > cf.d) rep.fail("n exceeds d");
    if (cf.l + cf.s > cf.m) rep.fail("l + s exceeds m");
    if (cf.lbar < 0 || cf.lbar > cf.l) rep.fail("lbar out of range");
    if (static_cast<int>(cf.matrix.size()) != cf.rows()) {
        rep.fail("matrix has " + std::to_string(cf.matrix.size()) + " rows, expected " + std::to_string(cf.rows()));
        return rep;
    }
    for (int i = 0; i < cf.rows(); ++i) {
        if (static_cast<int>(cf.matrix[i].size()) != cf.n) {
            rep.fail(rc("row", i) + " has wrong width");
            return rep;
        }
        for (int v : cf.matrix[i])
            if (v < 0) rep.fail(rc("row", i) + " has a negative exponent");
    }
    if (static_cast<int>(cf.units.size()) != cf.rows()) rep.fail("unit count differs from row count");
    if (static_cast<int>(cf.betas.size()) != cf.s) rep.fail("beta count differs from slot count");
    if (cf.pivot >= cf.s || cf.pivot < -1) rep.fail("pivot out of range");
    if (!rep.ok()) return rep;
    if (cf.free_begin() > cf.d) rep.fail("not enough source coordinates");
    std::vector<int> labels = cf.ylabels;
    std::sort(labels.begin(), labels.end());
    if (labels != iota_vec(0, cf.m)) rep.fail("row labels are not a permutation");
    for (int i = 0; i < cf.rows(); ++i) {
        std::set<std::pair<int, std::string>> seen;
        for (const auto& f : cf.units[i].factors) {
            if (f.var < cf.free_begin() || f.var >= cf.d)
                rep.fail(rc("row", i) + " unit uses coordinate " + std::to_string(f.var) + " outside the free range");
            if (!seen.insert({f.var, f.shift.str()}).second) rep.fail(rc("row", i) + " unit repeats a factor");
        }
    }
    return rep;
}

Report verify_toroidal_form(const ChartForm& cf) {
    Report rep;
    if (cf.tag != FormTag::Toroidal) rep.fail("tag is " + tag_name(cf.tag));
    Report st = check_structure(cf);
    rep.merge(st);
    if (!st.ok()) return rep;
    if (cf.s != 0) rep.fail("toroidal form has slot rows");
    if (cf.pivot >= 0) rep.fail("toroidal form has a pivot");
    if (cf.l == 0 || cf.n == 0) rep.fail("no divisor rows or columns");
    has_positive_sums(cf, iota_vec(0, cf.l), rep);
    return rep;
}

Report check_qtf_condition(const ChartForm& cf) {
    Report rep;
    if (cf.s == 0) return rep;
    std::vector<int> I = iota_vec(0, cf.lbar);
    for (int t = 0; t < cf.s; ++t) I.push_back(cf.l + t);
    for (int j = 0; j < cf.n; ++j) {
        int mn = cf.matrix[I[0]][j];
        for (int i : I) mn = std::min(mn, cf.matrix[i][j]);
        for (int t = 0; t < cf.s; ++t)
            if (cf.matrix[cf.l + t][j] != mn) {
                rep.fail(rc("column", j) + ": slot row " + std::to_string(cf.l + t) + " is not the minimum");
                break;
            }
    }
    return rep;
}

Classification classify_form(const ChartForm& cf) {
    Classification out;
    Report st = check_structure(cf);
    if (!st.ok()) {
        out.diagnostic = st;
        return out;
    }
    if (cf.n == 0 && cf.l == 0) {
        out.tag = FormTag::Smooth;
        return out;
    }
    std::vector<int> base = iota_vec(0, cf.l);
    if (cf.pivot < 0) {
        Report tor;
        if (cf.s != 0) tor.fail("toroidal: has slot rows");
        has_positive_sums(cf, base, tor);
        if (tor.ok()) {
            out.tag = FormTag::Toroidal;
            return out;
        }
        out.diagnostic.merge(tor, "toroidal: ");
        Report q1;
        has_positive_sums(cf, base, q1);
        q1.merge(check_qtf_condition(cf));
        if (q1.ok()) {
            out.tag = FormTag::QTF1;
            return out;
        }
        out.diagnostic.merge(q1, "qtf1: ");
        return out;
    }
    Report q2;
    std::vector<int> rows = base;
    if (cf.pivot_divisor) rows.push_back(cf.l + cf.pivot);
    has_positive_sums(cf, rows, q2);
    q2.merge(check_qtf_condition(cf));
    if (q2.ok()) {
        out.tag = FormTag::QTF2;
        return out;
    }
    out.diagnostic.merge(q2, "qtf2: ");
    return out;
}

int row_of_label(const ChartForm& cf, int label) {
    auto it = std::find(cf.ylabels.begin(), cf.ylabels.end(), label);
    if (it == cf.ylabels.end()) throw ChartError("no row carries label " + std::to_string(label));
    return static_cast<int>(it - cf.ylabels.begin());
}

namespace {

// Reorders the parameter rows (positions >= l + s) and their coordinates.
// order lists the old positions in their new order.
ChartForm reorder_params(const ChartForm& cf, const std::vector<int>& order) {
    ChartForm out = cf;
    const int first = cf.l + cf.s;
    for (std::size_t k = 0; k < order.size(); ++k) out.ylabels[first + k] = cf.ylabels[order[k]];
    return out;
}

}  // namespace

ChartForm derive_center_form(const ChartForm& cf, const CenterDescriptor& z) {
    if (cf.tag != FormTag::Toroidal && cf.tag != FormTag::Smooth)
        throw ChartError("derive_center_form needs a toroidal or smooth chart");
    if (cf.s != 0) throw ChartError("chart is already center-adapted");
    if (z.lbar != static_cast<int>(z.divisor_rows.size())) throw ChartError("lbar differs from divisor_rows size");
    if (z.c - z.lbar != static_cast<int>(z.extra_slots.size()))
        throw ChartError("c - lbar differs from extra_slots size");
    if (z.lbar > cf.l || z.lbar > z.c) throw ChartError("lbar exceeds l or c");
    if (z.c > cf.m || z.c < 1) throw ChartError("codimension out of range");

    std::vector<int> div_pos, slot_pos;
    for (int lab : z.divisor_rows) {
        int p = row_of_label(cf, lab);
        if (p >= cf.l) throw ChartError("divisor row label " + std::to_string(lab) + " is not a divisor equation");
        div_pos.push_back(p);
    }
    for (int lab : z.extra_slots) {
        int p = row_of_label(cf, lab);
        if (p < cf.l) throw ChartError("slot label " + std::to_string(lab) + " is a divisor equation");
        slot_pos.push_back(p);
    }
    std::set<int> all(div_pos.begin(), div_pos.end());
    all.insert(slot_pos.begin(), slot_pos.end());
    if (static_cast<int>(all.size()) != z.c) throw ChartError("center labels repeat");

    std::set<int> dset(div_pos.begin(), div_pos.end()), sset(slot_pos.begin(), slot_pos.end());
    std::vector<int> row_order;
    for (int i = 0; i < cf.l; ++i)
        if (dset.count(i)) row_order.push_back(i);
    for (int i = 0; i < cf.l; ++i)
        if (!dset.count(i)) row_order.push_back(i);
    std::vector<int> param_order;
    for (int i = cf.l; i < cf.m; ++i)
        if (sset.count(i)) param_order.push_back(i);
    for (int i = cf.l; i < cf.m; ++i)
        if (!sset.count(i)) param_order.push_back(i);

    ChartForm out = cf;
    out.s = z.c - z.lbar;
    out.lbar = z.lbar;
    out.tag = cf.l == 0 ? FormTag::Smooth : FormTag::QTF1;
    out.matrix.clear();
    out.units.clear();
    std::vector<int> labels;
    for (int i : row_order) {
        out.matrix.push_back(cf.matrix[i]);
        out.units.push_back(cf.units[i]);
        labels.push_back(cf.ylabels[i]);
    }
    for (int t = 0; t < out.s; ++t) {
        out.matrix.emplace_back(cf.n, 0);
        out.units.emplace_back();
    }
    for (int i : param_order) labels.push_back(cf.ylabels[i]);
    out.ylabels = labels;
    out.betas.assign(out.s, Stratum::zero());
    out.pivot = -1;
    out.pivot_divisor = true;
    return out;
}

MonomialIdeal pullback_center_ideal(const ChartForm& cf, const CenterDescriptor& z) {
    if (cf.lbar != z.lbar || cf.s != z.c - z.lbar) throw ChartError("chart is not adapted to the center");
    auto embed = [&](int row) {
        Exponent e(cf.d, 0);
        for (int j = 0; j < cf.n; ++j) e[j] = cf.matrix[row][j];
        return e;
    };
    std::vector<Exponent> gens;
    for (int i = 0; i < cf.lbar; ++i) gens.push_back(embed(i));
    for (int t = 0; t < cf.s; ++t) {
        Exponent e = embed(cf.l + t);
        if (cf.pivot_has_coord() && cf.pivot >= 0) e[cf.pivot_coord()] += 1;
        if (t != cf.pivot && cf.betas[t].is_zero()) e[cf.slot_coord(t)] += 1;
        gens.push_back(std::move(e));
    }
    return minimal_generators(cf.d, gens);
}

ChartForm extend_to_global_form(const ChartForm& cf, int l_global) {
    if (cf.tag != FormTag::Toroidal && cf.tag != FormTag::Smooth)
        throw ChartError("extend_to_global_form needs a toroidal or smooth chart");
    if (l_global < cf.l) throw ChartError("global divisor count is below the local one");
    if (l_global > cf.m) throw ChartError("global divisor count exceeds m");
    const int extra = l_global - cf.l;
    ChartForm out = cf;
    out.n = cf.n + extra;
    out.l = l_global;
    out.tag = l_global == 0 ? FormTag::Smooth : FormTag::Toroidal;
    for (auto& row : out.matrix) row.resize(out.n, 0);
    for (int k = 0; k < extra; ++k) {
        std::vector<int> row(out.n, 0);
        row[cf.n + k] = 1;
        out.matrix.push_back(std::move(row));
        out.units.emplace_back();
    }
    return out;
}

ChartForm promote_params(const ChartForm& cf, const std::vector<int>& labels) {
    const int first = cf.l + cf.s;
    std::vector<int> front;
    for (int lab : labels) {
        int p = row_of_label(cf, lab);
        if (p < first) throw ChartError("label " + std::to_string(lab) + " is not a parameter row");
        front.push_back(p);
    }
    std::vector<int> order = front;
    for (int i = first; i < cf.m; ++i)
        if (std::find(front.begin(), front.end(), i) == front.end()) order.push_back(i);
    return reorder_params(cf, order);
}

}  // namespace tor
