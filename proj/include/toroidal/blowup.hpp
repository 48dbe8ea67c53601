#pragma once

#include "toroidal/chart.hpp"

#include <map>
#include <string>
#include <vector>

namespace tor {

// Coordinate center of a chart: the divisor variables in divisor_indices and
// the first slot_count slot coordinates.
struct BlowupCenterChart {
    IndexSet divisor_indices;
    int slot_count = 0;

    int e() const { return static_cast<int>(divisor_indices.size()) + slot_count; }
    bool operator==(const BlowupCenterChart& o) const {
        return divisor_indices == o.divisor_indices && slot_count == o.slot_count;
    }
};

// Center coordinates of cf in increasing order (divisor variables, then slot coordinates).
IndexSet center_coords(const ChartForm& cf, const BlowupCenterChart& center);

// j0 is a chart coordinate of the center; beta covers the other center coordinates.
struct BlowupChartChoice {
    int j0 = 0;
    std::map<int, Stratum> beta;
    bool operator==(const BlowupChartChoice& o) const { return j0 == o.j0 && beta == o.beta; }
};

struct Permissibility {
    bool ok = false;
    std::string witness;  // offending row or column of the reduced matrix
    IntMatrix reduced;    // w with column minima subtracted
};
Permissibility check_permissible_center(const ChartForm& cf, const BlowupCenterChart& center);

struct BlowupRecord {
    ChartForm chart;
    int case_id = 0;              // 1: exceptional is a divisor variable of the center, 2: a slot
    int exc_column = -1;          // exceptional divisor column, -1 if it is not a divisor
    std::vector<int> coord_map;   // new coordinate k was old coordinate coord_map[k]
};

// Throws ChartError on an invalid center or choice.
BlowupRecord blowup_chart(const ChartForm& cf, const BlowupCenterChart& center, const BlowupChartChoice& choice);
ChartForm blowup_transform(const ChartForm& cf, const BlowupCenterChart& center, const BlowupChartChoice& choice);

struct BlowupStratum {
    BlowupChartChoice choice;
    BlowupRecord record;
};
// Every j0 in the center and every Zero / generic assignment to the rest, in
// coordinate order with the zero pattern counting up in binary.
std::vector<BlowupStratum> enumerate_blowup_strata(const ChartForm& cf, const BlowupCenterChart& center);

// Index range and codimension >= 2 check for a coordinate center among d coordinates.
Report check_center_snc(int d, const IndexSet& coords);
Report check_center_snc(const ChartForm& cf, const BlowupCenterChart& center);

// The exceptional column on the center slot rows equals 1 + the sum of the
// column minima over the center divisor columns and stays at or below every
// center divisor row; that sum is strictly below each center divisor row sum.
Report check_exceptional_drop(const ChartForm& before, const BlowupCenterChart& center, const BlowupRecord& after);

}  // namespace tor
