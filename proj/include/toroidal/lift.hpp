#pragma once

#include "toroidal/chart.hpp"
#include "toroidal/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tor {

enum class LiftCase { Smooth = 0, One = 1, Two = 2, Three = 3 };
std::string lift_case_name(LiftCase c);

// Which row generates the principal pullback and how. Throws ChartError if
// the pullback is not principal.
LiftCase lift_case(const ChartForm& cf, const CenterDescriptor& z);

// How a parameter coordinate of the lifted chart relates to the old chart.
struct ParamDef {
    enum class Kind { Old, Scaled, Opaque };
    Kind kind = Kind::Old;
    int old = -1;  // old coordinate it continues (Old, Scaled) or replaces (Opaque)
    // Scaled: scale * (x_old + shift) - scale * shift, shift absent meaning 0
    Constant scale;
    std::optional<Constant> shift;
    // Opaque: the replaced coordinate occurs in the unit the parameter is built from
    bool witnessed = true;

    bool operator==(const ParamDef& o) const {
        return kind == o.kind && old == o.old && scale == o.scale && shift == o.shift && witnessed == o.witnessed;
    }
};

// The point q1 on the blowup of the target and the change of coordinates.
struct LiftTarget {
    LiftCase kind = LiftCase::One;
    int exc_row = 0;               // row of cf generating the pullback
    std::vector<int> center_rows;  // rows of cf cutting the center
    bool exc_divisor = true;       // the exceptional divisor of the target blowup lies in the divisor at q1
    int l1 = 0;
    int t = 0;                     // divisor rows of q1 that come from center rows
    std::vector<int> sigma;        // coordinate k of q1 comes from row sigma[k] of cf
    // translation of coordinate k of q1 for center rows other than the exceptional one; absent means 0
    std::vector<std::optional<Constant>> beta;
    std::vector<ParamDef> params;  // one per parameter row l1..m-1 of the lifted chart
    IntMatrix abar;                // generating row, center rows minus it, remaining divisor rows

    bool operator==(const LiftTarget& o) const;
};

struct LiftResult {
    LiftTarget target;
    ChartForm lifted;
};

// Throws ChartError when the pullback is not principal, std::logic_error on
// an internal inconsistency.
LiftResult lift_after_principalization(const ChartForm& cf, const CenterDescriptor& z);

// Substitutes the target blowup into the lifted chart and compares every
// original row at the level of exponents, vanishing coordinates and constants.
Report verify_commutes(const ChartForm& cf, const CenterDescriptor& z, const ChartForm& lifted, const LiftTarget& target);

}  // namespace tor
