#include "support.hpp"

#include "toroidal/monomial_ideal.hpp"

#include <doctest.h>

using namespace tor;

namespace {

MonomialIdeal ideal(int dim, std::vector<Exponent> gens) { return minimal_generators(dim, gens); }

std::vector<IndexSet> sorted(std::vector<IndexSet> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("minimal_generators drops divisible generators") {
    CHECK(ideal(2, {{2, 1}, {1, 0}, {3, 3}}).generators() == std::vector<Exponent>{{1, 0}});
    CHECK(ideal(2, {}).is_zero());
    CHECK(ideal(2, {{0, 0}}).is_unit());
    CHECK(ideal(2, {{0, 0}, {3, 1}}).is_unit());
    CHECK_THROWS_AS(ideal(2, {{1, 2, 3}}), IdealError);
    CHECK_THROWS_AS(ideal(2, {{-1, 0}}), IdealError);
}

TEST_CASE("contains_monomial") {
    CHECK(contains_monomial(ideal(2, {{1, 1}}), {2, 3}));
    CHECK_FALSE(contains_monomial(ideal(2, {{2, 0}, {0, 2}}), {1, 1}));
    CHECK(contains_monomial(MonomialIdeal::unit(2), {0, 0}));
    CHECK_FALSE(contains_monomial(MonomialIdeal::zero(2), {4, 4}));
    CHECK_THROWS_AS(contains_monomial(ideal(2, {{1, 0}}), {1, 0, 0}), IdealError);
}

TEST_CASE("gcd_generators") {
    CHECK(gcd_generators(ideal(2, {{2, 3}, {3, 2}})) == Exponent{2, 2});
    CHECK(gcd_generators(ideal(3, {{1, 4, 2}})) == Exponent{1, 4, 2});
    CHECK(gcd_generators(ideal(3, {{2, 1, 0}, {0, 0, 1}})) == Exponent{0, 0, 0});
    CHECK_THROWS_AS(gcd_generators(MonomialIdeal::zero(2)), IdealError);
}

TEST_CASE("colon_by_monomial") {
    CHECK(colon_by_monomial(ideal(2, {{2, 1}, {0, 3}}), {1, 1}) == ideal(2, {{1, 0}, {0, 2}}));
    auto I = ideal(2, {{2, 1}, {0, 3}});
    CHECK(colon_by_monomial(I, {0, 0}) == I);
    CHECK(colon_by_monomial(ideal(2, {{1, 0}}), {2, 0}).is_unit());
    CHECK_THROWS_AS(colon_by_monomial(I, {1}), IdealError);
}

TEST_CASE("principal_part_factorization") {
    auto f = principal_part_factorization(ideal(2, {{2, 1}, {1, 3}}));
    CHECK(f.principal == Exponent{1, 1});
    CHECK(f.rest == ideal(2, {{1, 0}, {0, 2}}));

    auto p = principal_part_factorization(ideal(2, {{3, 2}}));
    CHECK(p.principal == Exponent{3, 2});
    CHECK(p.rest.is_unit());

    auto c = principal_part_factorization(ideal(3, {{2, 1, 0}, {0, 0, 1}}));
    CHECK(c.principal == Exponent{0, 0, 0});
    CHECK(c.rest == ideal(3, {{2, 1, 0}, {0, 0, 1}}));
    CHECK_THROWS_AS(principal_part_factorization(MonomialIdeal::zero(2)), IdealError);
}

TEST_CASE("irreducible_decomposition") {
    auto d = irreducible_decomposition(ideal(2, {{2, 0}, {1, 1}}));
    std::sort(d.begin(), d.end());
    std::vector<MonomialIdeal> want{ideal(2, {{1, 0}}), ideal(2, {{2, 0}, {0, 1}})};
    std::sort(want.begin(), want.end());
    CHECK(d == want);

    CHECK(irreducible_decomposition(ideal(2, {{1, 0}, {0, 1}})) == std::vector<MonomialIdeal>{ideal(2, {{1, 0}, {0, 1}})});

    auto sq = irreducible_decomposition(ideal(2, {{1, 1}}));
    std::sort(sq.begin(), sq.end());
    std::vector<MonomialIdeal> want_sq{ideal(2, {{1, 0}}), ideal(2, {{0, 1}})};
    std::sort(want_sq.begin(), want_sq.end());
    CHECK(sq == want_sq);

    CHECK_THROWS_AS(irreducible_decomposition(MonomialIdeal::unit(2)), IdealError);
    CHECK_THROWS_AS(irreducible_decomposition(MonomialIdeal::zero(2)), IdealError);
}

TEST_CASE("radical") {
    CHECK(radical(ideal(2, {{2, 0}, {1, 1}})) == ideal(2, {{1, 0}}));
    auto sqfree = ideal(3, {{1, 1, 0}, {0, 1, 1}});
    CHECK(radical(sqfree) == sqfree);
    CHECK(radical(ideal(2, {{0, 3}})) == ideal(2, {{0, 1}}));
}

TEST_CASE("order_at_origin") {
    CHECK(order_at_origin(ideal(2, {{2, 1}, {0, 3}})) == 3);
    CHECK(order_at_origin(ideal(2, {{1, 0}})) == 1);
    CHECK(order_at_origin(MonomialIdeal::unit(2)) == 0);
    CHECK_THROWS_AS(order_at_origin(MonomialIdeal::zero(2)), IdealError);
}

TEST_CASE("max_order_components") {
    // the sets {1,2} and {1,2,3} in 1-based terms
    CHECK(sorted(max_order_components(ideal(2, {{1, 0}, {0, 2}}))) == std::vector<IndexSet>{{0, 1}});
    CHECK(sorted(max_order_components(ideal(2, {{1, 0}}))) == std::vector<IndexSet>{{0}});
    CHECK(sorted(max_order_components(ideal(2, {{2, 0}, {0, 2}}))) == std::vector<IndexSet>{{0, 1}});
    CHECK(order_along(ideal(2, {{2, 0}, {0, 2}}), {0, 1}) == 2);
    CHECK(sorted(max_order_components(ideal(3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}))) ==
          std::vector<IndexSet>{{0, 1, 2}});
    CHECK_THROWS_AS(max_order_components(MonomialIdeal::unit(2)), IdealError);
    CHECK_THROWS_AS(max_order_components(ideal(12, {Exponent(12, 1)}), 10), IdealError);
}

TEST_CASE("random ideals against the membership oracle") {
    oracle::Rand r(20261015);
    for (int round = 0; round < 150; ++round) {
        const int dim = r(1, 4);
        auto raw = oracle::random_gens(r, dim, 5, 5);
        auto I = minimal_generators(dim, raw);
        const auto& G = I.generators();
        CAPTURE(I.str());

        REQUIRE(oracle::is_antichain(G));
        CHECK(oracle::same_ideal(dim, G, raw));
        CHECK(minimal_generators(dim, G) == I);

        CHECK(gcd_generators(I) == oracle::common_factor(dim, G));
        CHECK(order_at_origin(I) == oracle::min_degree(dim, G));

        Exponent m(dim);
        for (int& x : m) x = r(0, 3);
        auto Q = colon_by_monomial(I, m);
        bool colon_ok = true;
        oracle::for_box(dim, oracle::max_entry(G) + 1, [&](const Exponent& u) {
            Exponent um = u;
            for (int j = 0; j < dim; ++j) um[j] += m[j];
            colon_ok = colon_ok && oracle::member(Q.generators(), u) == oracle::member(G, um);
        });
        CHECK(colon_ok);

        auto f = principal_part_factorization(I);
        CHECK(gcd_generators(f.rest) == Exponent(dim, 0));
        CHECK(multiply_by_monomial(f.rest, f.principal) == I);

        auto rad = radical(I);
        bool rad_ok = true;
        oracle::for_box(dim, 2, [&](const Exponent& u) { rad_ok = rad_ok && contains_monomial(rad, u) == oracle::in_radical(G, u); });
        CHECK(rad_ok);

        if (!I.is_unit()) {
            auto comps = irreducible_decomposition(I);
            bool inter_ok = true;
            oracle::for_box(dim, oracle::max_entry(G) + 1, [&](const Exponent& u) {
                bool all = true;
                for (const auto& q : comps) all = all && oracle::member(q.generators(), u);
                inter_ok = inter_ok && all == oracle::member(G, u);
            });
            CHECK(inter_ok);
            for (const auto& q : comps) CHECK(is_irreducible_form(q));

            for (const auto& S : max_order_components(I)) {
                // S maximizes the order and no proper subset does
                int best = 0;
                for (int mask = 1; mask < (1 << dim); ++mask) {
                    IndexSet T;
                    for (int j = 0; j < dim; ++j)
                        if (mask >> j & 1) T.push_back(j);
                    best = std::max(best, oracle::order_along(dim, G, T));
                }
                CHECK(oracle::order_along(dim, G, S) == best);
                for (std::size_t drop = 0; drop < S.size(); ++drop) {
                    IndexSet T = S;
                    T.erase(T.begin() + static_cast<long>(drop));
                    CHECK(oracle::order_along(dim, G, T) < best);
                }
            }
        }
    }
}
