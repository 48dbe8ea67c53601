#include "toroidal/lift.hpp"
#include "toroidal/principalize.hpp"
#include "toroidal/random_instances.hpp"

#include <doctest.h>

#include <set>

using namespace tor;

namespace {

const CenterDescriptor kOrigin{2, 2, {0, 1}, {}};

ChartForm adapted(int d, int m, const IntMatrix& a, const CenterDescriptor& z) {
    return derive_center_form(make_toroidal(d, m, a), z);
}

}  // namespace

TEST_CASE("lift of [[1,0],[1,1]] is the identity at a 2-point") {
    auto cf = adapted(2, 2, {{1, 0}, {1, 1}}, kOrigin);
    CHECK(lift_case(cf, kOrigin) == LiftCase::One);
    auto lr = lift_after_principalization(cf, kOrigin);
    CHECK(lr.target.abar == IntMatrix{{1, 0}, {0, 1}});
    CHECK(lr.target.t == 2);
    CHECK(lr.target.l1 == 2);
    CHECK(lr.target.exc_row == 0);
    CHECK(lr.lifted.l == 2);
    CHECK(lr.lifted.matrix == IntMatrix{{1, 0}, {0, 1}});
    CHECK(verify_toroidal_form(lr.lifted).ok());
    CHECK(verify_commutes(cf, kOrigin, lr.lifted, lr.target).ok());
}

TEST_CASE("lift with a zero row of abar makes a translated parameter") {
    auto cf = adapted(3, 2, {{1, 2}, {1, 2}}, kOrigin);
    // row 1 carries a different unit, so the ratio is not 1 and the free
    // coordinate becomes the new parameter
    cf.units[1] = UnitToken{Constant(3), {{2, Constant(1), 1}}};
    CHECK(lift_case(cf, kOrigin) == LiftCase::One);
    auto lr = lift_after_principalization(cf, kOrigin);
    CHECK(lr.target.abar == IntMatrix{{1, 2}, {0, 0}});
    CHECK(lr.target.t == 1);
    CHECK(lr.target.l1 == 1);
    CHECK(lr.lifted.matrix == IntMatrix{{1, 2}});
    bool found = false;
    for (const auto& b : lr.target.beta)
        if (b) {
            CHECK(*b == Constant(3));
            found = true;
        }
    CHECK(found);
    CHECK(verify_toroidal_form(lr.lifted).ok());
    CHECK(verify_commutes(cf, kOrigin, lr.lifted, lr.target).ok());

    // a wrong ratio must not commute
    auto bad = lr.target;
    for (auto& b : bad.beta)
        if (b) b = Constant(5);
    CHECK_FALSE(verify_commutes(cf, kOrigin, lr.lifted, bad).ok());
}

TEST_CASE("a corrupted exponent fails verify_commutes") {
    auto cf = adapted(2, 2, {{1, 0}, {1, 1}}, kOrigin);
    auto lr = lift_after_principalization(cf, kOrigin);
    auto broken = lr.lifted;
    broken.matrix[1][1] += 1;
    CHECK_FALSE(verify_commutes(cf, kOrigin, broken, lr.target).ok());
}

TEST_CASE("smooth lift") {
    const CenterDescriptor z{0, 2, {}, {0, 1}};
    auto cf = derive_center_form(make_smooth(2, 2), z);
    auto rec = blowup_chart(cf, {{}, 2}, {0, {{1, Stratum::zero()}}});
    REQUIRE(rec.chart.l == 0);
    CHECK(lift_case(rec.chart, z) == LiftCase::Smooth);
    auto lr = lift_after_principalization(rec.chart, z);
    CHECK(verify_commutes(rec.chart, z, lr.lifted, lr.target).ok());
}

TEST_CASE("not principal throws") {
    auto cf = adapted(2, 2, {{1, 0}, {0, 1}}, kOrigin);
    CHECK_THROWS_AS(lift_case(cf, kOrigin), ChartError);
    CHECK_THROWS_AS(lift_after_principalization(cf, kOrigin), ChartError);
}

TEST_CASE("every lift after random principalizations commutes") {
    gen::Rng rng(99);
    std::set<LiftCase> seen;
    for (int round = 0; round < 60; ++round) {
        auto inst = gen::random_adapted(rng);
        auto tr = principalize_chart_family({inst.adapted}, inst.z);
        REQUIRE_FALSE(tr.exceeded());
        for (int leaf : tr.finals) {
            const auto& cf = tr.charts[leaf];
            seen.insert(lift_case(cf, inst.z));
            auto lr = lift_after_principalization(cf, inst.z);
            CHECK(verify_commutes(cf, inst.z, lr.lifted, lr.target).ok());
            if (lr.lifted.l > 0) CHECK(verify_toroidal_form(lr.lifted).ok());
            // l1 = l - lbar + t with 0 <= lbar - t <= lbar - 1 in case 1
            if (lr.target.kind == LiftCase::One) {
                CHECK(lr.target.l1 == cf.l - cf.lbar + lr.target.t);
                CHECK(lr.target.t >= 1);
                CHECK(lr.target.t <= cf.lbar);
            }
        }
    }
    CHECK(seen.count(LiftCase::One) == 1);
    CHECK(seen.count(LiftCase::Two) == 1);
}
