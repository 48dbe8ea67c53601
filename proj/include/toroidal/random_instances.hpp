#pragma once

#include "toroidal/blowup.hpp"
#include "toroidal/chart.hpp"
#include "toroidal/monomial_ideal.hpp"
#include "toroidal/toric.hpp"

#include <cstdint>
#include <random>

// Seeded generators of valid inputs for the property tests and the fuzz command.
namespace tor::gen {

using Rng = std::mt19937_64;

// uniform on [lo, hi], portable across standard libraries
int uniform(Rng& rng, int lo, int hi);

MonomialIdeal random_ideal(Rng& rng, int max_dim = 4, int max_exp = 5, int max_gens = 5);

ToricMorphismData random_toric(Rng& rng, int max_m = 4, int max_d = 6, int max_entry = 4);

// A normalized toric chart with random unit constants, plus a center.
struct AdaptedInstance {
    ChartForm chart;  // toroidal or smooth
    CenterDescriptor z;
    ChartForm adapted;
};
AdaptedInstance random_adapted(Rng& rng, int max_d = 5, int max_m = 4, int max_exp = 4);

struct BlowupTriple {
    ChartForm chart;
    BlowupCenterChart center;  // permissible on chart
    BlowupChartChoice choice;
};
// Walks a few random blowups down from a random adapted chart first, so
// translated slots and absorbed coordinates show up.
BlowupTriple random_blowup_triple(Rng& rng);

}  // namespace tor::gen
