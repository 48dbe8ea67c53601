#include "toroidal/blowup.hpp"

#include <algorithm>
#include <set>

namespace tor {

namespace {

void validate_center(const ChartForm& cf, const BlowupCenterChart& center) {
    if (cf.tag != FormTag::QTF1 && cf.tag != FormTag::Smooth)
        throw ChartError("cannot blow up a chart tagged " + tag_name(cf.tag));
    if (cf.pivot >= 0) throw ChartError("chart already has a pivot; its pullback is principal");
    const auto& D = center.divisor_indices;
    if (!std::is_sorted(D.begin(), D.end()) || std::adjacent_find(D.begin(), D.end()) != D.end())
        throw ChartError("center divisor indices must be sorted and distinct");
    for (int j : D)
        if (j < 0 || j >= cf.n) throw ChartError("center divisor index " + std::to_string(j) + " out of range");
    if (center.slot_count < 0 || center.slot_count > cf.s) throw ChartError("center slot count out of range");
    if (center.e() < 2) throw ChartError("center has codimension below 2");
    if (D.empty() && center.slot_count != cf.s) throw ChartError("a center without divisor variables must hold every slot");
    for (int t = 0; t < center.slot_count; ++t)
        if (!cf.betas[t].is_zero()) throw ChartError("slot " + std::to_string(t) + " is translated off the center");
}

void validate_choice(const ChartForm& cf, const BlowupCenterChart& center, const BlowupChartChoice& choice) {
    IndexSet J = center_coords(cf, center);
    if (std::find(J.begin(), J.end(), choice.j0) == J.end())
        throw ChartError("j0 = " + std::to_string(choice.j0) + " is not a center coordinate");
    std::set<int> want;
    for (int j : J)
        if (j != choice.j0) want.insert(j);
    std::set<int> have;
    for (const auto& [j, b] : choice.beta) have.insert(j);
    if (want != have) throw ChartError("beta must cover exactly the center coordinates other than j0");
}

int center_sum(const ChartForm& cf, int row, const IndexSet& D) {
    int s = 0;
    for (int k : D) s += cf.matrix[row][k];
    return s;
}

std::vector<int> invert(const std::vector<int>& map) {
    std::vector<int> inv(map.size());
    for (std::size_t k = 0; k < map.size(); ++k) inv[map[k]] = static_cast<int>(k);
    return inv;
}

// Remaps unit factors through old->new and appends (x_j + beta_j)^a_ij for j in absorbed.
void carry_units(const ChartForm& cf, ChartForm& out, const std::vector<int>& old_to_new, const IndexSet& absorbed,
                 const BlowupChartChoice& choice) {
    for (int i = 0; i < cf.rows(); ++i) {
        UnitToken u = cf.units[i];
        for (auto& f : u.factors) f.var = old_to_new[f.var];
        for (int j : absorbed)
            if (cf.matrix[i][j] != 0)
                u.factors.push_back(UnitFactor{old_to_new[j], choice.beta.at(j).constant(), cf.matrix[i][j]});
        out.units[i] = std::move(u);
    }
}

}  // namespace

IndexSet center_coords(const ChartForm& cf, const BlowupCenterChart& center) {
    IndexSet J = center.divisor_indices;
    for (int t = 0; t < center.slot_count; ++t) J.push_back(cf.n + t);
    return J;
}

Permissibility check_permissible_center(const ChartForm& cf, const BlowupCenterChart& center) {
    validate_center(cf, center);
    std::vector<int> I;
    for (int i = 0; i < cf.lbar; ++i) I.push_back(i);
    for (int t = 0; t < cf.s; ++t) I.push_back(cf.l + t);
    const auto& D = center.divisor_indices;
    const int cols = center.e();
    IntMatrix w;
    for (int i : I) {
        std::vector<int> row;
        for (int k : D) row.push_back(cf.matrix[i][k]);
        for (int t = 0; t < center.slot_count; ++t) row.push_back(i == cf.l + t ? 1 : 0);
        w.push_back(std::move(row));
    }
    Permissibility res;
    if (w.empty()) {
        res.witness = "center cuts no rows";
        return res;
    }
    for (int c = 0; c < cols; ++c) {
        int mn = w[0][c];
        for (const auto& row : w) mn = std::min(mn, row[c]);
        for (auto& row : w) row[c] -= mn;
    }
    res.reduced = w;
    for (std::size_t r = 0; r < w.size(); ++r)
        if (std::all_of(w[r].begin(), w[r].end(), [](int v) { return v == 0; })) {
            res.witness = "row " + std::to_string(I[r]) + " vanishes";
            return res;
        }
    for (int c = 0; c < cols; ++c) {
        bool zero = std::all_of(w.begin(), w.end(), [&](const std::vector<int>& row) { return row[c] == 0; });
        if (zero) {
            int coord = c < static_cast<int>(D.size()) ? D[c] : cf.n + (c - static_cast<int>(D.size()));
            res.witness = "column of coordinate " + std::to_string(coord) + " vanishes";
            return res;
        }
    }
    res.ok = true;
    return res;
}

BlowupRecord blowup_chart(const ChartForm& cf, const BlowupCenterChart& center, const BlowupChartChoice& choice) {
    validate_center(cf, center);
    validate_choice(cf, center, choice);
    const IndexSet& D = center.divisor_indices;
    const int n = cf.n;
    auto is_center_slot_row = [&](int i) { return i >= cf.l && i < cf.l + center.slot_count; };

    BlowupRecord rec;
    ChartForm out = cf;
    out.next_symbol = cf.next_symbol + center.e();
    for (int t = 0; t < center.slot_count; ++t)
        if (n + t != choice.j0) out.betas[t] = choice.beta.at(n + t);

    if (choice.j0 < n || !D.empty()) {
        // the exceptional coordinate is a divisor variable
        const bool slot_exc = choice.j0 >= n;
        IndexSet absorbed;
        for (int j : D)
            if (j != choice.j0 && !choice.beta.at(j).is_zero()) absorbed.push_back(j);
        std::vector<int> divs;
        for (int j = 0; j < n; ++j)
            if (!std::binary_search(absorbed.begin(), absorbed.end(), j)) divs.push_back(j);
        if (slot_exc) divs.push_back(choice.j0);
        std::vector<int> map = divs;
        for (int j = n; j < cf.d; ++j)
            if (!(slot_exc && j == choice.j0)) map.push_back(j);
        map.insert(map.end(), absorbed.begin(), absorbed.end());
        std::vector<int> inv = invert(map);

        const int N = static_cast<int>(divs.size());
        out.n = N;
        for (int i = 0; i < cf.rows(); ++i) {
            std::vector<int> row(N);
            for (int k = 0; k < N; ++k) {
                int j = divs[k];
                if (j == choice.j0)
                    row[k] = center_sum(cf, i, D) + (is_center_slot_row(i) ? 1 : 0);
                else
                    row[k] = cf.matrix[i][j];
            }
            out.matrix[i] = std::move(row);
        }
        carry_units(cf, out, inv, absorbed, choice);
        rec.exc_column = static_cast<int>(std::find(divs.begin(), divs.end(), choice.j0) - divs.begin());
        rec.coord_map = map;
        if (slot_exc) {
            rec.case_id = 2;
            out.tag = FormTag::QTF2;
            out.pivot = choice.j0 - n;
            out.pivot_divisor = true;
            out.betas[out.pivot] = Stratum::zero();
        } else {
            rec.case_id = 1;
            out.tag = FormTag::QTF1;
        }
    } else {
        // slot-only center: the exceptional stays a non-divisor coordinate
        rec.case_id = 2;
        out.pivot = choice.j0 - n;
        out.pivot_divisor = false;
        out.betas[out.pivot] = Stratum::zero();
        out.tag = cf.l == 0 ? FormTag::Smooth : FormTag::QTF2;
        for (int k = 0; k < cf.d; ++k) rec.coord_map.push_back(k);
    }
    rec.chart = std::move(out);
    return rec;
}

ChartForm blowup_transform(const ChartForm& cf, const BlowupCenterChart& center, const BlowupChartChoice& choice) {
    return blowup_chart(cf, center, choice).chart;
}

std::vector<BlowupStratum> enumerate_blowup_strata(const ChartForm& cf, const BlowupCenterChart& center) {
    validate_center(cf, center);
    IndexSet J = center_coords(cf, center);
    std::vector<BlowupStratum> out;
    for (int j0 : J) {
        std::vector<int> rest;
        std::vector<std::string> names;
        for (std::size_t q = 0; q < J.size(); ++q)
            if (J[q] != j0) {
                rest.push_back(J[q]);
                names.push_back("g" + std::to_string(cf.next_symbol + static_cast<int>(q)));
            }
        for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
            BlowupChartChoice ch;
            ch.j0 = j0;
            for (std::size_t k = 0; k < rest.size(); ++k) {
                bool nonzero = mask >> (rest.size() - 1 - k) & 1u;
                ch.beta[rest[k]] = nonzero ? Stratum::generic(names[k]) : Stratum::zero();
            }
            out.push_back({ch, blowup_chart(cf, center, ch)});
        }
    }
    return out;
}

Report check_center_snc(int d, const IndexSet& coords) {
    Report rep;
    std::set<int> seen;
    for (int j : coords) {
        if (j < 0 || j >= d) rep.fail("coordinate " + std::to_string(j) + " out of range");
        if (!seen.insert(j).second) rep.fail("coordinate " + std::to_string(j) + " repeated");
    }
    if (coords.size() < 2) rep.fail("codimension " + std::to_string(coords.size()) + " is below 2");
    return rep;
}

Report check_center_snc(const ChartForm& cf, const BlowupCenterChart& center) {
    Report rep;
    for (int j : center.divisor_indices)
        if (j < 0 || j >= cf.n) rep.fail("divisor index " + std::to_string(j) + " out of range");
    if (center.slot_count < 0 || center.slot_count > cf.s) rep.fail("slot count out of range");
    if (!rep.ok()) return rep;
    rep.merge(check_center_snc(cf.d, center_coords(cf, center)));
    return rep;
}

Report check_exceptional_drop(const ChartForm& before, const BlowupCenterChart& center, const BlowupRecord& after) {
    Report rep;
    const IndexSet& D = center.divisor_indices;
    if (D.empty() || after.exc_column < 0) return rep;
    std::vector<int> I;
    for (int i = 0; i < before.lbar; ++i) I.push_back(i);
    for (int t = 0; t < before.s; ++t) I.push_back(before.l + t);
    int min_sum = 0;
    for (int k : D) {
        int mn = before.matrix[I[0]][k];
        for (int i : I) mn = std::min(mn, before.matrix[i][k]);
        min_sum += mn;
    }
    for (int i = 0; i < before.lbar; ++i)
        if (!(min_sum < center_sum(before, i, D)))
            rep.fail("row " + std::to_string(i) + " does not drop strictly above the column minima");
    const auto& b = after.chart.matrix;
    const int exc = after.exc_column;
    for (int t = 0; t < center.slot_count; ++t) {
        int v = b[before.l + t][exc];
        if (v != 1 + min_sum) rep.fail("slot row " + std::to_string(before.l + t) + " has exceptional exponent " +
                                       std::to_string(v) + ", expected " + std::to_string(1 + min_sum));
        for (int i = 0; i < before.lbar; ++i)
            if (v > b[i][exc]) rep.fail("slot row " + std::to_string(before.l + t) + " exceeds row " + std::to_string(i));
    }
    return rep;
}

}  // namespace tor
