#include "toroidal/lift.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tor {

std::string lift_case_name(LiftCase c) {
    switch (c) {
    case LiftCase::Smooth: return "smooth";
    case LiftCase::One: return "1";
    case LiftCase::Two: return "2";
    case LiftCase::Three: return "3";
    }
    return "?";
}

bool LiftTarget::operator==(const LiftTarget& o) const {
    return kind == o.kind && exc_row == o.exc_row && center_rows == o.center_rows && exc_divisor == o.exc_divisor &&
           l1 == o.l1 && t == o.t && sigma == o.sigma && beta == o.beta && params == o.params && abar == o.abar;
}

namespace {

void check_adapted(const ChartForm& cf, const CenterDescriptor& z) {
    Report st = check_structure(cf);
    if (!st.ok()) throw ChartError("malformed chart: " + st.first());
    if (cf.lbar != z.lbar || cf.s != z.c - z.lbar) throw ChartError("chart is not adapted to the center");
}

std::vector<int> center_rows_of(const ChartForm& cf) {
    std::vector<int> I;
    for (int i = 0; i < cf.lbar; ++i) I.push_back(i);
    for (int t = 0; t < cf.s; ++t) I.push_back(cf.l + t);
    return I;
}

bool dominated(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

// Row generating the pullback, or -1.
int generating_row(const ChartForm& cf, LiftCase& kind) {
    const auto I = center_rows_of(cf);
    if (cf.l == 0) {
        if (cf.pivot < 0) return -1;
        kind = LiftCase::Smooth;
        return cf.l + cf.pivot;
    }
    if (cf.tag == FormTag::QTF2 || cf.pivot >= 0) {
        if (cf.pivot < 0) return -1;
        kind = LiftCase::Three;
        return cf.l + cf.pivot;
    }
    bool translated = false;
    for (int t = 0; t < cf.s; ++t)
        if (!cf.betas[t].is_zero()) translated = true;
    if (!translated) {
        for (int i = 0; i < cf.lbar; ++i) {
            bool all = true;
            for (int k : I) all = all && dominated(cf.matrix[i], cf.matrix[k]);
            if (all) {
                kind = LiftCase::One;
                return i;
            }
        }
        return -1;
    }
    for (int t = 0; t < cf.s; ++t)
        if (!cf.betas[t].is_zero()) {
            kind = LiftCase::Two;
            return cf.l + t;
        }
    return -1;
}

std::vector<UnitFactor> merge_factors(std::vector<UnitFactor> acc, const std::vector<UnitFactor>& more) {
    for (const auto& f : more) {
        auto it = std::find_if(acc.begin(), acc.end(), [&](const UnitFactor& g) { return g.var == f.var && g.shift == f.shift; });
        if (it == acc.end())
            acc.push_back(f);
        else
            it->exp += f.exp;
    }
    acc.erase(std::remove_if(acc.begin(), acc.end(), [](const UnitFactor& f) { return f.exp == 0; }), acc.end());
    return acc;
}

UnitToken invert(const UnitToken& u) {
    UnitToken r;
    r.constant = Constant(1) / u.constant;
    for (auto f : u.factors) {
        f.exp = -f.exp;
        r.factors.push_back(f);
    }
    return r;
}

UnitToken times(const UnitToken& a, const UnitToken& b) {
    UnitToken r;
    r.constant = a.constant * b.constant;
    r.factors = merge_factors(a.factors, b.factors);
    return r;
}

struct LiftedRow {
    std::vector<int> exps;
    UnitToken unit;
};

// Exponent vector, vanishing coordinates and constant of a coordinate function.
struct Shadow {
    std::vector<int> exps;
    std::map<std::string, int> vanish;
    Constant c;

    Shadow operator*(const Shadow& o) const {
        Shadow r = *this;
        for (std::size_t k = 0; k < r.exps.size(); ++k) r.exps[k] += o.exps[k];
        for (const auto& [v, e] : o.vanish) r.vanish[v] += e;
        r.c *= o.c;
        return r;
    }
    bool operator==(const Shadow& o) const { return exps == o.exps && vanish == o.vanish && c == o.c; }
    std::string str() const {
        std::string s = exponent_str(exps) + " ";
        for (const auto& [v, e] : vanish) s += v + "^" + std::to_string(e) + " ";
        return s + c.str();
    }
};

std::string old_var(int k) { return "x" + std::to_string(k); }
std::string new_var(int k) { return "new" + std::to_string(k); }

Shadow original_shadow(const ChartForm& cf, int i) {
    Shadow sh{std::vector<int>(cf.n, 0), {}, Constant()};
    if (i >= cf.rows()) {
        sh.vanish[old_var(cf.param_coord(i))] = 1;
        return sh;
    }
    sh.exps = cf.matrix[i];
    sh.c = cf.units[i].value();
    if (i >= cf.l) {
        int t = i - cf.l;
        if (cf.pivot >= 0 && !cf.pivot_divisor) sh.vanish[old_var(cf.pivot_coord())] += 1;
        if (t != cf.pivot) {
            if (cf.betas[t].is_zero())
                sh.vanish[old_var(cf.slot_coord(t))] += 1;
            else
                sh.c *= cf.betas[t].constant();
        }
    }
    return sh;
}

}  // namespace

LiftCase lift_case(const ChartForm& cf, const CenterDescriptor& z) {
    check_adapted(cf, z);
    LiftCase kind = LiftCase::One;
    if (generating_row(cf, kind) < 0) throw ChartError("pullback of the center is not principal");
    return kind;
}

LiftResult lift_after_principalization(const ChartForm& cf, const CenterDescriptor& z) {
    check_adapted(cf, z);
    LiftTarget tg;
    const int p = generating_row(cf, tg.kind);
    if (p < 0) throw ChartError("pullback of the center is not principal");
    const int n = cf.n, l = cf.l, m = cf.m;
    const auto I = center_rows_of(cf);
    tg.exc_row = p;
    tg.center_rows = I;
    tg.exc_divisor = cf.lbar >= 1;
    if (tg.kind == LiftCase::Two && cf.lbar == 0) throw std::logic_error("translated slot without divisor rows in the center");
    if (tg.kind == LiftCase::Three && cf.pivot_divisor && cf.lbar == 0)
        throw std::logic_error("divisor pivot without divisor rows in the center");

    const std::vector<int>& amin = cf.matrix[p];
    if (!tg.exc_divisor && std::any_of(amin.begin(), amin.end(), [](int v) { return v != 0; }))
        throw std::logic_error("generating slot row has divisor exponents");
    UnitToken pu = cf.units[p];
    if (tg.kind == LiftCase::Two) pu.factors.push_back(UnitFactor{cf.slot_coord(p - l), cf.betas[p - l].constant(), 1});
    const UnitToken pinv = invert(pu);

    std::map<int, LiftedRow> div_rows;  // keyed by cf row
    std::map<int, ParamDef> param_defs;
    std::map<int, Constant> betas;
    std::vector<int> div_order, zero_rows;

    if (tg.exc_divisor) {
        div_rows[p] = {amin, pu};
        div_order.push_back(p);
    }
    for (int i : I) {
        if (i == p) continue;
        std::vector<int> diff(n);
        for (int k = 0; k < n; ++k) {
            diff[k] = cf.matrix[i][k] - amin[k];
            if (diff[k] < 0) throw std::logic_error("row " + std::to_string(i) + " is not divisible by the generating row");
        }
        UnitToken ratio = times(cf.units[i], pinv);
        bool nonzero = std::any_of(diff.begin(), diff.end(), [](int v) { return v != 0; });
        if (i < l) {
            if (nonzero) {
                div_rows[i] = {diff, ratio};
                div_order.push_back(i);
            } else {
                betas[i] = ratio.value();
                ParamDef pd;
                pd.kind = ParamDef::Kind::Opaque;
                param_defs[i] = pd;
                zero_rows.push_back(i);
            }
            continue;
        }
        if (nonzero) throw std::logic_error("slot row " + std::to_string(i) + " differs from the generating row");
        const int t = i - l;
        ParamDef pd;
        pd.kind = ParamDef::Kind::Scaled;
        pd.old = cf.slot_coord(t);
        pd.scale = ratio.value();
        if (!cf.betas[t].is_zero()) {
            pd.shift = cf.betas[t].constant();
            betas[i] = pd.scale * cf.betas[t].constant();
        }
        param_defs[i] = pd;
    }
    if (!tg.exc_divisor) {
        ParamDef pd;
        pd.kind = ParamDef::Kind::Scaled;
        pd.old = cf.pivot_coord();
        pd.scale = pu.value();
        param_defs[p] = pd;
    }
    for (int i = cf.lbar; i < l; ++i) {
        div_rows[i] = {cf.matrix[i], cf.units[i]};
        div_order.push_back(i);
    }
    for (int i = cf.rows(); i < m; ++i) {
        ParamDef pd;
        pd.old = cf.param_coord(i);
        param_defs[i] = pd;
    }

    tg.sigma = div_order;
    tg.sigma.insert(tg.sigma.end(), zero_rows.begin(), zero_rows.end());
    for (int t = 0; t < cf.s; ++t)
        if (!(tg.exc_divisor && l + t == p)) tg.sigma.push_back(l + t);
    for (int i = cf.rows(); i < m; ++i) tg.sigma.push_back(i);
    tg.l1 = static_cast<int>(div_order.size());
    tg.t = tg.l1 - (l - cf.lbar);
    for (int i : tg.sigma) {
        auto it = betas.find(i);
        tg.beta.push_back(it == betas.end() ? std::nullopt : std::optional<Constant>(it->second));
    }

    // pick the old coordinate each parameter takes over
    std::set<int> used;
    for (int k = tg.l1; k < m; ++k) {
        const auto& pd = param_defs.at(tg.sigma[k]);
        if (pd.kind != ParamDef::Kind::Opaque) used.insert(pd.old);
    }
    for (int k = tg.l1; k < m; ++k) {
        const int i = tg.sigma[k];
        auto& pd = param_defs.at(i);
        if (pd.kind != ParamDef::Kind::Opaque) continue;
        UnitToken ratio = times(cf.units[i], pinv);
        for (const auto& f : ratio.factors)
            if (f.var >= cf.free_begin() && !used.count(f.var)) {
                pd.old = f.var;
                break;
            }
        if (pd.old < 0) {
            pd.witnessed = false;
            for (int j = cf.free_begin(); j < cf.d && pd.old < 0; ++j)
                if (!used.count(j)) pd.old = j;
            for (int j = n; j < cf.d && pd.old < 0; ++j)
                if (!used.count(j)) pd.old = j;
        }
        if (pd.old < 0) throw std::logic_error("no coordinate left for a parameter");
        used.insert(pd.old);
    }
    for (int k = tg.l1; k < m; ++k) tg.params.push_back(param_defs.at(tg.sigma[k]));

    std::vector<int> old_to_new(cf.d, -1);
    for (int j = 0; j < n; ++j) old_to_new[j] = j;
    for (int k = tg.l1; k < m; ++k) old_to_new[tg.params[k - tg.l1].old] = n + (k - tg.l1);
    int next = n + (m - tg.l1);
    for (int j = n; j < cf.d; ++j)
        if (!used.count(j)) old_to_new[j] = next++;
    if (next != cf.d) throw std::logic_error("lifted coordinates do not add up");

    ChartForm out;
    out.d = cf.d;
    out.m = m;
    out.n = n;
    out.l = tg.l1;
    out.next_symbol = cf.next_symbol;
    out.tag = tg.l1 == 0 ? FormTag::Smooth : FormTag::Toroidal;
    for (int k = 0; k < m; ++k) out.ylabels.push_back(k);
    for (int i : div_order) {
        const auto& r = div_rows.at(i);
        UnitToken u;
        u.constant = r.unit.constant;
        for (const auto& f : r.unit.factors) {
            if (used.count(f.var))
                u.constant *= f.shift.pow(f.exp);
            else
                u.factors.push_back(UnitFactor{old_to_new[f.var], f.shift, f.exp});
        }
        out.matrix.push_back(r.exps);
        out.units.push_back(std::move(u));
    }

    tg.abar.push_back(amin);
    for (int i = 0; i < cf.lbar; ++i) {
        if (i == p) continue;
        std::vector<int> diff(n);
        for (int k = 0; k < n; ++k) diff[k] = cf.matrix[i][k] - amin[k];
        tg.abar.push_back(diff);
    }
    for (int i = cf.lbar; i < l; ++i) tg.abar.push_back(cf.matrix[i]);
    if (l >= 1)
        for (int k = 0; k < n; ++k) {
            bool zero = std::all_of(tg.abar.begin(), tg.abar.end(), [&](const std::vector<int>& r) { return r[k] == 0; });
            if (zero) throw std::logic_error("lifted exponent matrix has a zero column");
        }
    return {std::move(tg), std::move(out)};
}

Report verify_commutes(const ChartForm& cf, const CenterDescriptor& z, const ChartForm& lifted, const LiftTarget& tg) {
    Report rep;
    check_adapted(cf, z);
    const int m = cf.m;
    std::vector<int> sorted = tg.sigma;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> ids(m);
    for (int k = 0; k < m; ++k) ids[k] = k;
    if (sorted != ids) rep.fail("sigma is not a permutation of the rows");
    if (static_cast<int>(tg.beta.size()) != m) rep.fail("beta has the wrong length");
    if (static_cast<int>(tg.params.size()) != m - tg.l1) rep.fail("parameter count differs from m - l1");
    if (lifted.m != m || lifted.d != cf.d || lifted.n != cf.n || lifted.l != tg.l1 || lifted.s != 0)
        rep.fail("lifted chart has the wrong shape");
    Report st = check_structure(lifted);
    if (!st.ok()) rep.merge(st, "lifted: ");
    if (!rep.ok()) return rep;
    if (tg.l1 > 0) {
        Report tf = verify_toroidal_form(lifted);
        if (!tf.ok()) rep.merge(tf, "lifted: ");
    }

    auto lifted_shadow = [&](int k) {
        Shadow sh{std::vector<int>(cf.n, 0), {}, Constant()};
        if (k < tg.l1) {
            sh.exps = lifted.matrix[k];
            sh.c = lifted.units[k].value();
            return sh;
        }
        const ParamDef& pd = tg.params[k - tg.l1];
        switch (pd.kind) {
        case ParamDef::Kind::Old: sh.vanish[old_var(pd.old)] = 1; break;
        case ParamDef::Kind::Scaled:
            if (pd.shift)
                sh.vanish[new_var(k)] = 1;
            else {
                sh.vanish[old_var(pd.old)] = 1;
                sh.c = pd.scale;
            }
            break;
        case ParamDef::Kind::Opaque: sh.vanish[new_var(k)] = 1; break;
        }
        return sh;
    };

    std::vector<int> pos(m);
    for (int k = 0; k < m; ++k) pos[tg.sigma[k]] = k;
    const Shadow exc = lifted_shadow(pos[tg.exc_row]);
    for (int i = 0; i < m; ++i) {
        const int k = pos[i];
        Shadow comp;
        bool center = std::find(tg.center_rows.begin(), tg.center_rows.end(), i) != tg.center_rows.end();
        if (i == tg.exc_row || !center) {
            comp = lifted_shadow(k);
        } else if (tg.beta[k]) {
            if (k < tg.l1) rep.fail("row " + std::to_string(i) + " is a translated divisor equation");
            const ParamDef& pd = tg.params[k - tg.l1];
            if (pd.kind == ParamDef::Kind::Scaled && (!pd.shift || pd.scale * *pd.shift != *tg.beta[k]))
                rep.fail("row " + std::to_string(i) + " translation disagrees with its coordinate");
            comp = exc * Shadow{std::vector<int>(cf.n, 0), {}, *tg.beta[k]};
        } else {
            comp = exc * lifted_shadow(k);
        }
        Shadow want = original_shadow(cf, i);
        if (!(comp == want))
            rep.fail("row " + std::to_string(i) + ": composite " + comp.str() + " differs from " + want.str());
    }
    return rep;
}

}  // namespace tor
