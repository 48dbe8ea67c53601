#pragma once

#include "toroidal/blowup.hpp"
#include "toroidal/chart.hpp"
#include "toroidal/monomial_ideal.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tor {

struct NonprincipalLocus {
    Exponent F;                         // principal part of the pullback
    MonomialIdeal N;                    // residual ideal; unit iff the pullback is principal
    std::vector<IndexSet> components;   // supports of the components of N, sorted
    bool principal() const { return N.is_unit(); }
};
NonprincipalLocus nonprincipal_locus(const ChartForm& cf, const CenterDescriptor& z);

// Chart center for a coordinate set, if the set is a divisor subset plus a
// leading run of slot coordinates.
std::optional<BlowupCenterChart> as_chart_center(const ChartForm& cf, const IndexSet& coords);

struct CenterSelection {
    IndexSet coords;
    BlowupCenterChart center;
    int order = 0;
};

class CenterPolicy {
public:
    virtual ~CenterPolicy() = default;
    virtual std::string name() const = 0;
    // budget is the number of blowups still allowed above this chart.
    // Throws ChartError when no candidate is permissible.
    virtual CenterSelection select(const ChartForm& cf, const MonomialIdeal& N, int budget) const = 0;
};

// Largest maximum-order component first, then lexicographically smallest.
class MaxOrderLexPolicy : public CenterPolicy {
public:
    std::string name() const override { return "max-order-lex"; }
    CenterSelection select(const ChartForm& cf, const MonomialIdeal& N, int budget) const override;
};

// Candidates from center_candidates ordered by the residual ideals they leave
// behind (largest total degree over the children, then the sum). Takes the
// first one whose whole residual tree provably ends within the budget; falls
// back to max-order-lex when none does.
class LookaheadPolicy : public CenterPolicy {
public:
    std::string name() const override { return "lookahead-bounded"; }
    CenterSelection select(const ChartForm& cf, const MonomialIdeal& N, int budget) const override;
    // Whether some choice of candidates makes every residual ideal below N
    // principal within k blowups.
    bool finishes_within(const MonomialIdeal& N, int k) const;

private:
    struct Bounds {
        int fails_at = 0;        // no strategy within this many blowups
        int ok_at = 1 << 30;     // a strategy within this many blowups
    };
    mutable std::map<std::vector<Exponent>, Bounds> cache_;
};

inline constexpr const char* kDefaultPolicy = "lookahead-bounded";
std::unique_ptr<CenterPolicy> make_policy(const std::string& name);
CenterSelection select_center(const MonomialIdeal& N, const ChartForm& cf);

// max-order components in max-order-lex order, then the other components of
// N, smallest codimension first, then lexicographic
std::vector<IndexSet> center_candidates(const MonomialIdeal& N);

// center_candidates reordered by one blowup of lookahead, ties kept in order
std::vector<IndexSet> lookahead_candidates(const MonomialIdeal& N);

// Residual ideal at the origin of chart h after blowing up the coordinate
// set S, with the coordinates in translated set to units.
MonomialIdeal residual_after_blowup(const MonomialIdeal& N, const IndexSet& S, int h, const IndexSet& translated);

// Maximum-order components of N, computed on the variables N actually uses.
std::vector<IndexSet> max_order_components_supported(const MonomialIdeal& N);

enum class StratumStatus { Principal, Exceeded };
std::string status_name(StratumStatus s);

struct StepChild {
    BlowupChartChoice choice;
    int chart_id = 0;
};

struct PrincipalizationStep {
    int chart_id = 0;
    IndexSet coords;
    BlowupCenterChart center;
    int order = 0;
    std::vector<StepChild> children;
};

struct PrincipalizationTrace {
    std::vector<ChartForm> charts;               // every chart, indexed by id; inputs first
    std::vector<int> parent;                     // -1 for inputs
    std::vector<int> depth;                      // blowups between the input and the chart
    std::vector<std::vector<int>> coord_maps;    // per chart: coordinate k came from parent coordinate map[k]
    std::vector<PrincipalizationStep> steps;
    std::vector<int> finals;                     // leaf ids in increasing order
    std::map<int, StratumStatus> status;         // per leaf
    std::vector<std::string> violations;         // invariant failures seen during the run
    // non-principal children whose (order, #max-order components) is not below the parent's
    std::vector<int> witness_misses;
    bool exceeded() const;
    // length of the longest blowup sequence, the step count of the run
    int length() const;
};

inline constexpr int kDefaultStepCap = 50;
// Guard on the total number of chart blowups in one run.
inline constexpr int kMaxChartBlowups = 100000;

// The cap bounds the number of successive blowups above any input chart.
// Leaves still nonprincipal at the cap, or when the guard trips, are Exceeded.

PrincipalizationTrace principalize_chart_family(const std::vector<ChartForm>& charts, const CenterDescriptor& z,
                                                int cap = kDefaultStepCap, const CenterPolicy* policy = nullptr);

}  // namespace tor
