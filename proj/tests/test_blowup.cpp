#include "toroidal/blowup.hpp"
#include "toroidal/random_instances.hpp"

#include "chart_oracles.hpp"

#include <doctest.h>

#include <set>

using namespace tor;

namespace {

ChartForm adapted(int d, int m, const IntMatrix& a, const CenterDescriptor& z) {
    return derive_center_form(make_toroidal(d, m, a), z);
}

const CenterDescriptor kOrigin{2, 2, {0, 1}, {}};

}  // namespace

TEST_CASE("check_permissible_center") {
    auto two = adapted(2, 2, {{2, 1}, {1, 2}}, kOrigin);
    auto p = check_permissible_center(two, {{0, 1}, 0});
    CHECK(p.ok);
    CHECK(p.reduced == IntMatrix{{1, 0}, {0, 1}});

    auto equal = adapted(2, 2, {{1, 1}, {1, 1}}, kOrigin);
    auto q = check_permissible_center(equal, {{0, 1}, 0});
    CHECK_FALSE(q.ok);
    CHECK_FALSE(q.witness.empty());

    CenterDescriptor z{1, 2, {0}, {1}};
    auto slot = adapted(3, 2, {{2}}, z);
    auto r = check_permissible_center(slot, {{0}, 1});
    CHECK(r.ok);
    CHECK(r.reduced == IntMatrix{{2, 0}, {0, 1}});

    CHECK_THROWS_AS(check_permissible_center(two, {{0, 5}, 0}), ChartError);
}

TEST_CASE("blowup of the identity 2-point, both strata") {
    auto cf = adapted(2, 2, {{1, 0}, {0, 1}}, kOrigin);
    BlowupCenterChart center{{0, 1}, 0};

    auto zero = blowup_transform(cf, center, {0, {{1, Stratum::zero()}}});
    CHECK(zero.matrix == IntMatrix{{1, 0}, {1, 1}});
    CHECK(zero.n == 2);
    CHECK(zero.tag == FormTag::QTF1);
    CHECK(zero.s == 0);

    auto generic = blowup_transform(cf, center, {0, {{1, Stratum::generic("g")}}});
    CHECK(generic.n == 1);
    CHECK(generic.matrix == IntMatrix{{1}, {1}});
    REQUIRE(generic.units[1].factors.size() == 1);
    CHECK(generic.units[1].factors[0].shift == Constant::symbol("g"));
    CHECK(generic.units[1].factors[0].exp == 1);
    CHECK(generic.units[0].factors.empty());
}

TEST_CASE("blowup at a smooth point through a slot") {
    CenterDescriptor z{0, 2, {}, {0, 1}};
    auto cf = derive_center_form(make_smooth(2, 2), z);
    BlowupCenterChart center{{}, 2};
    auto rec = blowup_chart(cf, center, {0, {{1, Stratum::zero()}}});
    CHECK(rec.case_id == 2);
    CHECK(rec.exc_column == -1);
    CHECK(rec.chart.l == 0);
    CHECK(rec.chart.pivot == 0);
    CHECK_FALSE(rec.chart.pivot_divisor);
    // both slot rows now carry the exceptional coordinate
    auto I = pullback_center_ideal(rec.chart, z);
    CHECK(I.is_principal());
}

TEST_CASE("enumerate_blowup_strata counts and distinctness") {
    auto cf = adapted(2, 2, {{1, 0}, {0, 1}}, kOrigin);
    auto two = enumerate_blowup_strata(cf, {{0, 1}, 0});
    CHECK(two.size() == 4);
    std::set<std::string> seen;
    for (const auto& st : two) {
        const auto& c = st.record.chart;
        std::string key = tag_name(c.tag) + ":" + std::to_string(c.n);
        for (const auto& row : c.matrix)
            for (int v : row) key += "," + std::to_string(v);
        for (const auto& [j, b] : st.choice.beta) key += "|" + std::to_string(st.choice.j0) + (b.is_zero() ? "0" : "g");
        seen.insert(key);
    }
    CHECK(seen.size() == 4);

    auto cf3 = adapted(3, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {3, 3, {0, 1, 2}, {}});
    CHECK(enumerate_blowup_strata(cf3, {{0, 1, 2}, 0}).size() == 12);
}

TEST_CASE("check_center_snc") {
    CHECK(check_center_snc(2, {0, 1}).ok());
    CHECK_FALSE(check_center_snc(2, {0}).ok());
    CHECK_FALSE(check_center_snc(2, {0, 2}).ok());
}

TEST_CASE("random blowups keep their forms and drop the exceptional exponent") {
    gen::Rng rng(4242);
    for (int round = 0; round < 120; ++round) {
        auto tr = gen::random_blowup_triple(rng);
        const auto& cf = tr.chart;
        REQUIRE(check_permissible_center(cf, tr.center).ok);
        auto rec = blowup_chart(cf, tr.center, tr.choice);
        const auto& out = rec.chart;

        auto cls = classify_form(out);
        REQUIRE(cls.tag.has_value());
        CHECK((*cls.tag == out.tag || (out.tag == FormTag::QTF1 && *cls.tag == FormTag::Toroidal)));
        CHECK(oracle::positive_sums(out));
        CHECK(oracle::min_rows_hold(out));
        CHECK(check_exceptional_drop(cf, tr.center, rec).ok());
        CHECK(oracle::exceptional_drop(cf, tr.center, rec));

        // exceptional exponent: the center divisor columns summed, plus one for
        // slot rows whose coordinate is in the center
        if (rec.case_id == 1 && rec.exc_column >= 0) {
            for (int i = 0; i < cf.rows(); ++i) {
                int want = 0;
                for (int k : tr.center.divisor_indices) want += cf.matrix[i][k];
                if (i >= cf.l && i - cf.l < tr.center.slot_count) want += 1;
                CHECK(out.matrix[i][rec.exc_column] == want);
            }
            for (int k = 0; k < out.n; ++k) {
                if (k == rec.exc_column) continue;
                const int old = rec.coord_map[k];
                REQUIRE(old < cf.n);
                for (int i = 0; i < cf.rows(); ++i) CHECK(out.matrix[i][k] == cf.matrix[i][old]);
            }
        }
    }
}
