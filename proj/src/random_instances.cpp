#include "toroidal/random_instances.hpp"

#include <algorithm>

namespace tor::gen {

int uniform(Rng& rng, int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng() % span);
}

namespace {

Constant random_constant(Rng& rng) {
    int num = 0;
    while (num == 0) num = uniform(rng, -5, 5);
    return Constant(Rational(num, uniform(rng, 1, 4)));
}

std::vector<int> sample(Rng& rng, std::vector<int> pool, int k) {
    for (int i = 0; i < k; ++i) std::swap(pool[i], pool[uniform(rng, i, static_cast<int>(pool.size()) - 1)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

Stratum random_stratum(Rng& rng, int& counter) {
    switch (uniform(rng, 0, 2)) {
    case 0: return Stratum::zero();
    case 1: return Stratum::generic("r" + std::to_string(counter++));
    default: return Stratum::value(random_constant(rng));
    }
}

BlowupChartChoice random_choice(Rng& rng, const ChartForm& cf, const BlowupCenterChart& c, int& counter) {
    IndexSet J = center_coords(cf, c);
    BlowupChartChoice ch;
    ch.j0 = J[uniform(rng, 0, static_cast<int>(J.size()) - 1)];
    for (int j : J)
        if (j != ch.j0) ch.beta[j] = random_stratum(rng, counter);
    return ch;
}

// A random permissible center of a blowable chart, if one turns up.
std::optional<BlowupCenterChart> random_center(Rng& rng, const ChartForm& cf) {
    if (cf.pivot >= 0 || (cf.tag != FormTag::QTF1 && cf.tag != FormTag::Smooth)) return std::nullopt;
    for (int attempt = 0; attempt < 40; ++attempt) {
        BlowupCenterChart c;
        int k = uniform(rng, 0, cf.n);
        c.divisor_indices = sample(rng, range(0, cf.n), k);
        c.slot_count = c.divisor_indices.empty() ? cf.s : uniform(rng, 0, cf.s);
        bool clean = true;
        for (int t = 0; t < c.slot_count; ++t) clean = clean && cf.betas[t].is_zero();
        if (!clean || c.e() < 2) continue;
        try {
            if (check_permissible_center(cf, c).ok) return c;
        } catch (const ChartError&) {
        }
    }
    return std::nullopt;
}

}  // namespace

MonomialIdeal random_ideal(Rng& rng, int max_dim, int max_exp, int max_gens) {
    int dim = uniform(rng, 1, max_dim);
    int k = uniform(rng, 1, max_gens);
    std::vector<Exponent> gens;
    for (int g = 0; g < k; ++g) {
        Exponent e(dim);
        for (int& v : e) v = uniform(rng, 0, max_exp);
        gens.push_back(e);
    }
    return minimal_generators(dim, gens);
}

ToricMorphismData random_toric(Rng& rng, int max_m, int max_d, int max_entry) {
    while (true) {
        ToricMorphismData t;
        int m = uniform(rng, 1, max_m);
        int d = uniform(rng, m, max_d);
        int n = uniform(rng, 0, d);
        int l = n == 0 ? 0 : uniform(rng, 0, std::min(m, n));
        t.source = {d, n};
        t.target = {m, l};
        t.matrix.assign(m, std::vector<int>(d, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < d; ++j) {
                if (j < n)
                    t.matrix[i][j] = i < l ? uniform(rng, 0, max_entry) : 0;
                else
                    t.matrix[i][j] = uniform(rng, -max_entry, max_entry);
            }
        if (uniform(rng, 0, 1))
            for (int j = n; j < d; ++j) t.alphas.push_back(Rational(uniform(rng, 1, 3), uniform(rng, 1, 2)));
        if (validate_toric_morphism(t).ok()) return t;
    }
}

AdaptedInstance random_adapted(Rng& rng, int max_d, int max_m, int max_exp) {
    while (true) {
        ToricMorphismData t = random_toric(rng, max_m, max_d, max_exp);
        const int m = t.target.d, l = t.target.n;
        if (m < 2) continue;
        ChartForm cf = normalize_toric_presentation(t).chart;
        for (auto& u : cf.units) u.constant *= random_constant(rng);
        int lbar = uniform(rng, 0, l);
        int c_lo = std::max(2, lbar), c_hi = lbar + (m - l);
        if (c_lo > c_hi) continue;
        CenterDescriptor z;
        z.lbar = lbar;
        z.c = uniform(rng, c_lo, c_hi);
        z.divisor_rows = sample(rng, range(0, l), lbar);
        z.extra_slots = sample(rng, range(l, m), z.c - lbar);
        return {cf, z, derive_center_form(cf, z)};
    }
}

BlowupTriple random_blowup_triple(Rng& rng) {
    int counter = 0;
    while (true) {
        ChartForm cf = random_adapted(rng).adapted;
        int walk = uniform(rng, 0, 2);
        for (int w = 0; w < walk; ++w) {
            auto c = random_center(rng, cf);
            if (!c) break;
            ChartForm next = blowup_transform(cf, *c, random_choice(rng, cf, *c, counter));
            if (next.pivot >= 0) break;
            cf = next;
        }
        auto c = random_center(rng, cf);
        if (!c) continue;
        return {cf, *c, random_choice(rng, cf, *c, counter)};
    }
}

}  // namespace tor::gen
