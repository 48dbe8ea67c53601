#include "toroidal/principalize.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace tor {

NonprincipalLocus nonprincipal_locus(const ChartForm& cf, const CenterDescriptor& z) {
    MonomialIdeal I = pullback_center_ideal(cf, z);
    Factorization f = principal_part_factorization(I);
    NonprincipalLocus out{f.principal, f.rest, {}};
    if (out.N.is_unit()) return out;
    for (const auto& q : irreducible_decomposition(radical(out.N))) {
        IndexSet S;
        for (const auto& g : q.generators()) S.push_back(support(g).front());
        std::sort(S.begin(), S.end());
        if (S.size() < 2) throw std::logic_error("nonprincipal locus has a component of codimension below 2");
        out.components.push_back(std::move(S));
    }
    std::sort(out.components.begin(), out.components.end());
    return out;
}

std::optional<BlowupCenterChart> as_chart_center(const ChartForm& cf, const IndexSet& coords) {
    BlowupCenterChart c;
    std::vector<int> slots;
    for (int j : coords) {
        if (j < cf.n)
            c.divisor_indices.push_back(j);
        else if (j < cf.n + cf.s && cf.pivot < 0)
            slots.push_back(j - cf.n);
        else
            return std::nullopt;
    }
    std::sort(c.divisor_indices.begin(), c.divisor_indices.end());
    std::sort(slots.begin(), slots.end());
    for (std::size_t t = 0; t < slots.size(); ++t)
        if (slots[t] != static_cast<int>(t)) return std::nullopt;
    c.slot_count = static_cast<int>(slots.size());
    return c;
}

std::vector<IndexSet> max_order_components_supported(const MonomialIdeal& N) {
    std::vector<int> vars;
    for (int j = 0; j < N.dim(); ++j)
        for (const auto& g : N.generators())
            if (g[j] != 0) {
                vars.push_back(j);
                break;
            }
    std::vector<Exponent> proj;
    for (const auto& g : N.generators()) {
        Exponent e;
        for (int j : vars) e.push_back(g[j]);
        proj.push_back(std::move(e));
    }
    auto comps = max_order_components(minimal_generators(static_cast<int>(vars.size()), proj));
    for (auto& S : comps)
        for (int& j : S) j = vars[j];
    std::sort(comps.begin(), comps.end());
    return comps;
}

namespace {

std::vector<IndexSet> nonprincipal_components(const MonomialIdeal& N) {
    std::vector<IndexSet> out;
    for (const auto& q : irreducible_decomposition(radical(N))) {
        IndexSet S;
        for (const auto& g : q.generators()) S.push_back(support(g).front());
        std::sort(S.begin(), S.end());
        out.push_back(std::move(S));
    }
    return out;
}

std::optional<CenterSelection> as_selection(const ChartForm& cf, const MonomialIdeal& N, const IndexSet& S,
                                            std::string& why) {
    auto c = as_chart_center(cf, S);
    if (!c) {
        why += index_set_str(S) + ": not a chart center; ";
        return std::nullopt;
    }
    auto p = check_permissible_center(cf, *c);
    if (!p.ok) {
        why += index_set_str(S) + ": " + p.witness + "; ";
        return std::nullopt;
    }
    return CenterSelection{S, *c, order_along(N, S)};
}

std::vector<IndexSet> max_order_lex_order(const MonomialIdeal& N) {
    auto cands = max_order_components_supported(N);
    std::stable_sort(cands.begin(), cands.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return cands;
}

// Every chart of the blowup of S: the chart coordinate h and any subset of
// the other center coordinates moved off zero.
std::vector<MonomialIdeal> residual_children(const MonomialIdeal& N, const IndexSet& S) {
    std::vector<MonomialIdeal> out;
    for (int h : S) {
        IndexSet rest;
        for (int j : S)
            if (j != h) rest.push_back(j);
        const int r = static_cast<int>(rest.size());
        for (int mask = 0; mask < (1 << r); ++mask) {
            IndexSet moved;
            for (int i = 0; i < r; ++i)
                if (mask >> i & 1) moved.push_back(rest[i]);
            out.push_back(residual_after_blowup(N, S, h, moved));
        }
    }
    return out;
}

// While a bare coordinate stays in N, each blowup lowers the degree of any
// other generator by at most one along the chart of a non-bare coordinate.
int depth_lower_bound(const MonomialIdeal& N) {
    if (N.is_unit()) return 0;
    bool bare = false;
    int least = -1;
    for (const auto& g : N.generators()) {
        int t = total_degree(g);
        if (t == 1)
            bare = true;
        else if (least < 0 || t < least)
            least = t;
    }
    return bare && least > 0 ? least : 1;
}

// Drops unused variables and sorts columns and rows, so ideals that differ by
// a renaming of variables usually share a key.
std::vector<Exponent> shape_key(const MonomialIdeal& N) {
    const auto& G = N.generators();
    std::vector<std::vector<int>> cols;
    for (int j = 0; j < N.dim(); ++j) {
        std::vector<int> c;
        bool used = false;
        for (const auto& g : G) {
            c.push_back(g[j]);
            used = used || g[j] != 0;
        }
        if (used) cols.push_back(std::move(c));
    }
    std::vector<Exponent> rows;
    auto build_rows = [&] {
        rows.assign(G.size(), {});
        for (std::size_t i = 0; i < G.size(); ++i)
            for (const auto& c : cols) rows[i].push_back(c[i]);
    };
    for (int round = 0; round < 3; ++round) {
        std::sort(cols.begin(), cols.end());
        build_rows();
        std::vector<std::size_t> perm(G.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return rows[a] < rows[b]; });
        for (auto& c : cols) {
            std::vector<int> c2(c.size());
            for (std::size_t i = 0; i < perm.size(); ++i) c2[i] = c[perm[i]];
            c = std::move(c2);
        }
    }
    std::sort(cols.begin(), cols.end());
    build_rows();
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace

MonomialIdeal residual_after_blowup(const MonomialIdeal& N, const IndexSet& S, int h, const IndexSet& translated) {
    std::vector<Exponent> gens;
    for (Exponent e : N.generators()) {
        int t = 0;
        for (int j : S) t += e[j];
        e[h] = t;
        for (int j : translated) e[j] = 0;
        gens.push_back(std::move(e));
    }
    return principal_part_factorization(minimal_generators(N.dim(), gens)).rest;
}

std::vector<IndexSet> center_candidates(const MonomialIdeal& N) {
    auto out = max_order_lex_order(N);
    auto rest = nonprincipal_components(N);
    std::sort(rest.begin(), rest.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (auto& S : rest)
        if (std::find(out.begin(), out.end(), S) == out.end()) out.push_back(std::move(S));
    return out;
}

std::vector<IndexSet> lookahead_candidates(const MonomialIdeal& N) {
    std::vector<std::pair<std::pair<long, long>, IndexSet>> scored;
    for (auto& S : center_candidates(N)) {
        long most = 0, sum = 0;
        for (const auto& c : residual_children(N, S)) {
            long w = 0;
            if (!c.is_unit())
                for (const auto& g : c.generators()) w += total_degree(g);
            most = std::max(most, w);
            sum += w;
        }
        scored.push_back({{most, sum}, std::move(S)});
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<IndexSet> out;
    for (auto& [w, S] : scored) out.push_back(std::move(S));
    return out;
}

CenterSelection MaxOrderLexPolicy::select(const ChartForm& cf, const MonomialIdeal& N, int) const {
    if (N.is_zero() || N.is_unit()) throw ChartError("select_center needs a nonzero, non-unit ideal");
    std::string why;
    for (const auto& S : max_order_lex_order(N))
        if (auto sel = as_selection(cf, N, S, why)) return *sel;
    throw ChartError("no permissible center candidate: " + why);
}

bool LookaheadPolicy::finishes_within(const MonomialIdeal& N, int k) const {
    if (N.is_unit()) return true;
    if (k < depth_lower_bound(N)) return false;
    const auto key = shape_key(N);
    {
        const Bounds& b = cache_[key];
        if (b.fails_at >= k) return false;
        if (b.ok_at <= k) return true;
    }
    bool ok = false;
    for (const auto& S : lookahead_candidates(N)) {
        auto kids = residual_children(N, S);
        if (std::any_of(kids.begin(), kids.end(), [&](const MonomialIdeal& c) { return k - 1 < depth_lower_bound(c); }))
            continue;
        std::stable_sort(kids.begin(), kids.end(), [](const MonomialIdeal& a, const MonomialIdeal& b) {
            return depth_lower_bound(a) > depth_lower_bound(b);
        });
        if (std::all_of(kids.begin(), kids.end(), [&](const MonomialIdeal& c) { return finishes_within(c, k - 1); })) {
            ok = true;
            break;
        }
    }
    Bounds& b = cache_[key];
    if (ok)
        b.ok_at = std::min(b.ok_at, k);
    else
        b.fails_at = std::max(b.fails_at, k);
    return ok;
}

CenterSelection LookaheadPolicy::select(const ChartForm& cf, const MonomialIdeal& N, int budget) const {
    if (N.is_zero() || N.is_unit()) throw ChartError("select_center needs a nonzero, non-unit ideal");
    std::string why;
    for (const auto& S : lookahead_candidates(N)) {
        auto kids = residual_children(N, S);
        bool fits = std::all_of(kids.begin(), kids.end(),
                                [&](const MonomialIdeal& c) { return finishes_within(c, budget - 1); });
        if (!fits) continue;
        if (auto sel = as_selection(cf, N, S, why)) return *sel;
    }
    return MaxOrderLexPolicy().select(cf, N, budget);
}

std::unique_ptr<CenterPolicy> make_policy(const std::string& name) {
    if (name == "max-order-lex") return std::make_unique<MaxOrderLexPolicy>();
    if (name == "lookahead-bounded") return std::make_unique<LookaheadPolicy>();
    throw ChartError("unknown center policy '" + name + "'");
}

CenterSelection select_center(const MonomialIdeal& N, const ChartForm& cf) {
    return MaxOrderLexPolicy().select(cf, N, kDefaultStepCap);
}

std::string status_name(StratumStatus s) { return s == StratumStatus::Principal ? "principal" : "exceeded"; }

bool PrincipalizationTrace::exceeded() const {
    return std::any_of(status.begin(), status.end(), [](const auto& kv) { return kv.second == StratumStatus::Exceeded; });
}

int PrincipalizationTrace::length() const {
    int out = 0;
    for (int id : finals) out = std::max(out, depth[id]);
    return out;
}

namespace {

// The residual ideal at a nonprincipal point is generated by monomials in the
// divisor variables plus the bare slot coordinates.
bool np_shape_holds(const ChartForm& cf, const MonomialIdeal& N, std::string& why) {
    for (int t = 0; t < cf.s; ++t)
        if (!cf.betas[t].is_zero()) {
            why = "slot " + std::to_string(t) + " is translated";
            return false;
        }
    if (cf.pivot >= 0) {
        why = "chart has a pivot";
        return false;
    }
    for (const auto& g : N.generators()) {
        bool slot_gen = false;
        for (int t = 0; t < cf.s; ++t)
            if (g == unit_vector(cf.d, cf.slot_coord(t))) slot_gen = true;
        if (slot_gen) continue;
        for (int j = cf.n; j < cf.d; ++j)
            if (g[j] != 0) {
                why = "generator " + exponent_str(g) + " involves a non-divisor coordinate";
                return false;
            }
    }
    for (int t = 0; t < cf.s; ++t)
        if (!contains_monomial(N, unit_vector(cf.d, cf.slot_coord(t)))) {
            why = "slot coordinate " + std::to_string(cf.slot_coord(t)) + " is not a generator";
            return false;
        }
    return true;
}

std::pair<int, int> witness(const MonomialIdeal& N) {
    return {order_at_origin(N), static_cast<int>(max_order_components_supported(N).size())};
}

}  // namespace

PrincipalizationTrace principalize_chart_family(const std::vector<ChartForm>& charts, const CenterDescriptor& z,
                                                int cap, const CenterPolicy* policy) {
    LookaheadPolicy fallback;
    if (!policy) policy = &fallback;
    PrincipalizationTrace tr;
    std::vector<int> active;
    for (const auto& cf : charts) {
        active.push_back(static_cast<int>(tr.charts.size()));
        tr.charts.push_back(cf);
        tr.parent.push_back(-1);
        tr.depth.push_back(0);
        std::vector<int> id(cf.d);
        for (int k = 0; k < cf.d; ++k) id[k] = k;
        tr.coord_maps.push_back(id);
    }
    std::map<int, NonprincipalLocus> loci;
    auto locus = [&](int id) -> const NonprincipalLocus& {
        auto it = loci.find(id);
        if (it == loci.end()) it = loci.emplace(id, nonprincipal_locus(tr.charts[id], z)).first;
        return it->second;
    };

    while (true) {
        int pick = -1, best = -1;
        for (int id : active) {
            if (tr.depth[id] >= cap) continue;
            const auto& L = locus(id);
            if (L.principal()) continue;
            int o = order_at_origin(L.N);
            if (o > best) {
                best = o;
                pick = id;
            }
        }
        if (pick < 0) break;
        if (static_cast<int>(tr.steps.size()) >= kMaxChartBlowups) break;

        const ChartForm cf = tr.charts[pick];
        const NonprincipalLocus& L = locus(pick);
        std::string why;
        if (!np_shape_holds(cf, L.N, why)) tr.violations.push_back("chart " + std::to_string(pick) + ": " + why);
        CenterSelection sel = policy->select(cf, L.N, cap - tr.depth[pick]);
        auto parent_w = witness(L.N);

        PrincipalizationStep step{pick, sel.coords, sel.center, sel.order, {}};
        std::vector<int> children;
        for (auto& st : enumerate_blowup_strata(cf, sel.center)) {
            int id = static_cast<int>(tr.charts.size());
            auto cls = classify_form(st.record.chart);
            const FormTag tag = st.record.chart.tag;
            bool same = cls.tag && (*cls.tag == tag || (tag == FormTag::QTF1 && *cls.tag == FormTag::Toroidal));
            if (!same)
                tr.violations.push_back("chart " + std::to_string(id) + ": form check failed: " + cls.diagnostic.first());
            Report drop = check_exceptional_drop(cf, sel.center, st.record);
            if (!drop.ok()) tr.violations.push_back("chart " + std::to_string(id) + ": " + drop.first());
            tr.charts.push_back(st.record.chart);
            tr.parent.push_back(pick);
            tr.depth.push_back(tr.depth[pick] + 1);
            tr.coord_maps.push_back(st.record.coord_map);
            step.children.push_back({st.choice, id});
            children.push_back(id);
            const auto& CL = locus(id);
            if (!CL.principal() && !(witness(CL.N) < parent_w))
                tr.witness_misses.push_back(id);
        }
        tr.steps.push_back(std::move(step));
        auto pos = std::find(active.begin(), active.end(), pick);
        active.erase(pos);
        active.insert(active.end(), children.begin(), children.end());
        std::sort(active.begin(), active.end());
    }

    tr.finals = active;
    for (int id : active) tr.status[id] = locus(id).principal() ? StratumStatus::Principal : StratumStatus::Exceeded;
    return tr;
}

}  // namespace tor
