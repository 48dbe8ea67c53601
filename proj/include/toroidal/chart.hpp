#pragma once

#include "toroidal/constant.hpp"
#include "toroidal/linalg.hpp"
#include "toroidal/monomial_ideal.hpp"
#include "toroidal/report.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tor {

class ChartError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class FormTag { Toroidal, QTF1, QTF2, Smooth };
std::string tag_name(FormTag t);
FormTag parse_tag(const std::string& s);

// Translation constant of a slot variable: zero, a fresh nonzero symbol, or a
// known nonzero constant.
class Stratum {
public:
    enum class Kind { Zero, NonzeroGeneric, Value };

    Stratum() = default;
    static Stratum zero() { return Stratum(); }
    static Stratum generic(const std::string& symbol);
    static Stratum value(const Constant& c);
    static Stratum value(const Rational& q) { return value(Constant(q)); }

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    // throws on Zero
    const Constant& constant() const;

    bool operator==(const Stratum& o) const { return kind_ == o.kind_ && c_ == o.c_; }
    bool operator!=(const Stratum& o) const { return !(*this == o); }

    // "0", "generic:<symbol>", or the constant
    std::string str() const;
    static Stratum parse(const std::string& s);

private:
    Kind kind_ = Kind::Zero;
    Constant c_;
};

// (x_var + shift)^exp
struct UnitFactor {
    int var = 0;
    Constant shift;
    int exp = 1;
    bool operator==(const UnitFactor& o) const { return var == o.var && shift == o.shift && exp == o.exp; }
};

struct UnitToken {
    Constant constant;
    std::vector<UnitFactor> factors;

    // value at the chart origin
    Constant value() const;
    bool operator==(const UnitToken& o) const { return constant == o.constant && factors == o.factors; }
};

// Morphism germ at one chart point.
//
// Rows 0..l-1 are the target divisor equations, rows l..l+s-1 the slot rows
// (present once the chart is adapted to a center), rows l+s..m-1 are target
// parameters y = x_coord. Coordinates: divisor variables 0..n-1, then slot
// coordinates, then parameter coordinates, then free coordinates. Unit factor
// variables live in the free range.
struct ChartForm {
    int d = 0, m = 0, n = 0, l = 0, s = 0;
    int lbar = 0;  // number of leading divisor rows that cut the center
    FormTag tag = FormTag::Toroidal;
    IntMatrix matrix;              // (l+s) x n
    std::vector<UnitToken> units;  // one per matrix row
    std::vector<Stratum> betas;    // one per slot
    // Slot whose row generates after a blowup at a slot coordinate; -1 if none.
    int pivot = -1;
    // Whether the exceptional coordinate of that blowup is a divisor variable.
    // False only when the center held no divisor variable.
    bool pivot_divisor = true;
    std::vector<int> ylabels;  // target coordinate label of each row, size m
    int next_symbol = 0;       // counter for fresh generic symbols

    int rows() const { return l + s; }
    bool pivot_has_coord() const { return !(pivot >= 0 && pivot_divisor); }
    int slot_coord_count() const { return s - (pivot_has_coord() ? 0 : 1); }
    // coordinate of slot t; -1 for a pivot absorbed into the divisor
    int slot_coord(int t) const;
    int param_coord(int row) const;
    int free_begin() const { return n + slot_coord_count() + (m - l - s); }
    // coordinate carried by every slot row when the exceptional is not a divisor
    int pivot_coord() const { return n + pivot; }

    bool operator==(const ChartForm& o) const;
    bool operator!=(const ChartForm& o) const { return !(*this == o); }
};

// Trivial units, identity labels, no slots.
ChartForm make_toroidal(int d, int m, const IntMatrix& a);
ChartForm make_smooth(int d, int m);

struct CenterDescriptor {
    int lbar = 0;
    int c = 0;
    std::vector<int> divisor_rows;  // target labels of the lbar divisor equations
    std::vector<int> extra_slots;   // target labels of the c - lbar parameter directions
};

Report check_structure(const ChartForm& cf);
Report verify_toroidal_form(const ChartForm& cf);

struct Classification {
    std::optional<FormTag> tag;
    Report diagnostic;  // failed conditions of the stronger tags
};
Classification classify_form(const ChartForm& cf);

// QTF condition: slot rows equal the columnwise minimum over the center rows
Report check_qtf_condition(const ChartForm& cf);

ChartForm derive_center_form(const ChartForm& cf, const CenterDescriptor& z);
MonomialIdeal pullback_center_ideal(const ChartForm& cf, const CenterDescriptor& z);
ChartForm extend_to_global_form(const ChartForm& cf, int l_global);

// Moves the parameter rows with the given labels to the front of the
// parameter block, in the given order. Coordinates follow their rows.
ChartForm promote_params(const ChartForm& cf, const std::vector<int>& labels);

// Row position of the given target label.
int row_of_label(const ChartForm& cf, int label);

}  // namespace tor
