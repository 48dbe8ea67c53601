#pragma once

// Form checks recomputed from the raw exponent matrix, shared by the blowup
// tests and the acceptance binary.

#include "toroidal/blowup.hpp"

#include <algorithm>
#include <vector>

namespace oracle {

// Positivity over the divisor rows, plus the pivot slot row when the pivot
// is a divisor coordinate.
inline bool positive_sums(const tor::ChartForm& cf) {
    std::vector<int> rows;
    for (int i = 0; i < cf.l; ++i) rows.push_back(i);
    if (cf.pivot >= 0 && cf.pivot_divisor) rows.push_back(cf.l + cf.pivot);
    if (rows.empty()) return cf.n == 0;
    for (int j = 0; j < cf.n; ++j) {
        int s = 0;
        for (int i : rows) s += cf.matrix[i][j];
        if (s <= 0) return false;
    }
    for (int i : rows) {
        int s = 0;
        for (int j = 0; j < cf.n; ++j) s += cf.matrix[i][j];
        if (s <= 0) return false;
    }
    return true;
}

inline std::vector<int> center_rows(const tor::ChartForm& cf) {
    std::vector<int> I;
    for (int i = 0; i < cf.lbar; ++i) I.push_back(i);
    for (int t = 0; t < cf.s; ++t) I.push_back(cf.l + t);
    return I;
}

// Slot rows equal the columnwise minimum over the center rows.
inline bool min_rows_hold(const tor::ChartForm& cf) {
    if (cf.s == 0) return true;
    const auto I = center_rows(cf);
    for (int j = 0; j < cf.n; ++j) {
        int mn = 1 << 20;
        for (int i : I) mn = std::min(mn, cf.matrix[i][j]);
        for (int t = 0; t < cf.s; ++t)
            if (cf.matrix[cf.l + t][j] != mn) return false;
    }
    return true;
}

// Exceptional exponents after blowing up at a chart whose exceptional is a
// divisor column: every center divisor row sits strictly above the minimum
// over the center rows, and each slot row carries exactly one more than it.
inline bool exceptional_drop(const tor::ChartForm& before, const tor::BlowupCenterChart& center,
                             const tor::BlowupRecord& rec) {
    const auto I = center_rows(before);
    int min_sum = 0;
    for (int k : center.divisor_indices) {
        int mn = 1 << 20;
        for (int i : I) mn = std::min(mn, before.matrix[i][k]);
        min_sum += mn;
    }
    for (int i = 0; i < before.lbar; ++i) {
        int sum = 0;
        for (int k : center.divisor_indices) sum += before.matrix[i][k];
        if (sum <= min_sum) return false;
    }
    if (rec.case_id != 1 || rec.exc_column < 0) return true;
    const auto& after = rec.chart.matrix;
    for (int t = 0; t < center.slot_count; ++t) {
        const int e = after[before.l + t][rec.exc_column];
        if (e != min_sum + 1) return false;
        for (int i = 0; i < before.lbar; ++i)
            if (after[i][rec.exc_column] < e) return false;
    }
    return true;
}

}  // namespace oracle
