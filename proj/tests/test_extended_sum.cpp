#include <cmath>

#include "checks.hpp"
#include "fixtures.hpp"
#include "unisum/analysis.hpp"
#include "unisum/extended_sum.hpp"

using namespace unisum;

TEST_CASE("choice families for the e = 0.4 example") {
    OrdinalSumSpec base = fixtures::example13_base();
    ChoiceFamilies fam = compute_choice_families(base);
    REQUIRE(fam.G.size() == 1);
    CHECK(fam.H.empty());
    const ChoicePoint& p = fam.G[0];
    CHECK(p.x == 0.0);
    CHECK(p.members == std::vector<std::size_t>{1, 2});
    CHECK(p.star.empty());  // both c values are d values of other summands
    std::vector<ChoiceInterval> expect{{0.4, true}, {0.7, false}, {0.7, true}, {1.0, true}};
    CHECK(p.admissible == expect);

    auto [g, h] = default_choices(base);
    CHECK(h.empty());
    CHECK(g.at(0.0) == ChoiceInterval{0.4, true});
}

TEST_CASE("choice families for the e = 0.5 example") {
    OrdinalSumSpec base = fixtures::example14_base();
    ChoiceFamilies fam = compute_choice_families(base);
    REQUIRE(fam.G.size() == 1);
    CHECK(fam.H.empty());
    CHECK(fam.G[0].x == 0.0);
    std::vector<ChoiceInterval> expect{{0.75, true}, {1.0, true}};
    CHECK(fam.G[0].admissible == expect);
    auto [g, h] = default_choices(base);
    CHECK(g.at(0.0) == ChoiceInterval{0.75, true});
}

TEST_CASE("default choices reproduce the base sum exactly") {
    OrdinalSumSpec base = fixtures::example13_base();
    auto [g, h] = default_choices(base);
    ExtendedOrdinalSumSpec espec(base, g, h);
    OperatorHandle u = ordinal_sum_uninorm(base);
    OperatorHandle v = extended_sum_uninorm(espec);
    DiffReport diff = verify_pointwise(u, v, 201);
    CHECK(diff.max_diff == 0.0);
    CHECK(diff_extended_vs_base(espec, 201).empty());
}

TEST_CASE("non-default choices differ only on the G row") {
    OrdinalSumSpec base = fixtures::example13_base();
    for (ChoiceInterval choice : {ChoiceInterval{0.7, false}, ChoiceInterval{0.7, true},
                                  ChoiceInterval{1.0, true}}) {
        ExtendedOrdinalSumSpec espec = fixtures::example13_extended(choice);
        std::vector<DiffPoint> diff = diff_extended_vs_base(espec, 201);
        CHECK_FALSE(diff.empty());
        for (const DiffPoint& p : diff) {
            CHECK((p.x == 0.0 || p.y == 0.0));
            CHECK_NEAR(p.base_value + p.extended_value, p.x + p.y, 1e-12);
        }
    }
}

TEST_CASE("frozen values of the extended variants on the zero row") {
    OperatorHandle base = ordinal_sum_uninorm(fixtures::example13_base());
    CHECK(base(0.0, 0.5) == 0.5);
    CHECK(base(0.0, 0.4) == 0.0);

    OperatorHandle open7 = extended_sum_uninorm(fixtures::example13_extended({0.7, false}));
    CHECK(open7(0.0, 0.5) == 0.0);   // 0.5 inside [0, 0.7)
    CHECK(open7(0.0, 0.7) == 0.7);   // endpoint excluded
    CHECK(open7(0.0, 0.9) == 0.9);

    OperatorHandle closed7 = extended_sum_uninorm(fixtures::example13_extended({0.7, true}));
    CHECK(closed7(0.0, 0.7) == 0.0);
    CHECK(closed7(0.0, 0.9) == 0.9);

    OperatorHandle full = extended_sum_uninorm(fixtures::example13_extended({1.0, true}));
    for (double y : {0.2, 0.5, 0.7, 0.9, 1.0}) CHECK(full(0.0, y) == 0.0);
    CHECK(full.policy == AnnihilatorPolicy::Conjunctive);
    CHECK(base.policy == AnnihilatorPolicy::Disjunctive);
}

TEST_CASE("inadmissible or misplaced choices are rejected") {
    CHECK_THROWS_AS(fixtures::example13_extended({0.55, true}), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::example13_extended({0.4, false}), std::invalid_argument);

    OrdinalSumSpec base = fixtures::example13_base();
    std::map<double, ChoiceInterval> g{{0.1, {0.4, true}}}, h;
    CHECK_THROWS_AS(ExtendedOrdinalSumSpec(base, g, h), std::invalid_argument);
    std::map<double, ChoiceInterval> empty;
    CHECK_THROWS_AS(ExtendedOrdinalSumSpec(base, empty, empty), std::invalid_argument);
}

TEST_CASE("larger prefix choices only decrease the extension") {
    OperatorHandle small = extended_sum_uninorm(fixtures::example13_extended({0.4, true}));
    OperatorHandle large = extended_sum_uninorm(fixtures::example13_extended({1.0, true}));
    for (double y : uniform_grid(101)) CHECK(large(0.0, y) <= small(0.0, y) + 1e-12);
}

TEST_CASE("an H family appears for mirrored spec shapes") {
    // <0,e,1,1,T> + <e,e,e,1,C>: c = d = 1 with v = 1 puts 1 into H.
    std::vector<Summand> s;
    s.push_back({0.0, 0.5, 1.0, 1.0, product_tnorm(), AnnihilatorPolicy::Conjunctive});
    s.push_back({0.5, 0.5, 0.5, 1.0, probsum_tconorm(), AnnihilatorPolicy::Disjunctive});
    OrdinalSumSpec base(0.5, s);
    ChoiceFamilies fam = compute_choice_families(base);
    CHECK(fam.G.empty());
    REQUIRE(fam.H.size() == 1);
    CHECK(fam.H[0].x == 1.0);
    auto [g, h] = default_choices(base);
    CHECK(h.at(1.0) == ChoiceInterval{0.5, false});

    ExtendedOrdinalSumSpec espec(base, g, h);
    OperatorHandle u = ordinal_sum_uninorm(base);
    OperatorHandle v = extended_sum_uninorm(espec);
    CHECK(verify_pointwise(u, v, 201).max_diff == 0.0);
}
