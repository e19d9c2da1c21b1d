#include <cmath>
#include <random>

#include "checks.hpp"
#include "fixtures.hpp"
#include "unisum/ordinal_sum.hpp"

using namespace unisum;

TEST_CASE("transform_point and its inverse") {
    // [0,1] onto [1/4,1/2) u {1/2} u (1/2,3/4] with e = v = 1/2.
    CHECK_NEAR(transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.25), 0.375, 1e-12);
    CHECK(transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.5) == 0.5);
    CHECK_NEAR(transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.0), 0.25, 1e-12);
    CHECK_NEAR(transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 1.0), 0.75, 1e-12);
    CHECK_NEAR(transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.75), 0.625, 1e-12);

    CHECK_NEAR(inverse_transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.375), 0.25, 1e-12);
    CHECK_NEAR(inverse_transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.625), 0.75, 1e-12);
    CHECK_THROWS_AS(inverse_transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.1),
                    std::domain_error);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double x = unit(rng);
        double z = transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, x);
        CHECK_NEAR(inverse_transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, z), x, 1e-12);
    }
}

TEST_CASE("transform_uninorm conjugates into the summand block") {
    TransformedOp op = transform_uninorm(product_tnorm(), 0.0, 0.5, 1.0, 1.0, 1.0);
    CHECK_NEAR(op(0.25, 0.25), 0.125, 1e-12);
    CHECK_NEAR(op(0.25, 1.0), 0.25, 1e-12);  // v maps to the base neutral
    CHECK(op.in_support(0.25));
    CHECK_FALSE(op.in_support(0.6));
    CHECK_THROWS_AS(op(0.25, 0.6), std::domain_error);
    CHECK_THROWS_AS(transform_uninorm(product_tnorm(), 0.0, 0.5, 1.0, 1.0, 0.4),
                    std::invalid_argument);
}

TEST_CASE("B, C and n from the summand intervals") {
    // <e1,e1,e1,1,C>, <0,e1,1,1,T> with e1 = 0.3: every b_k is some a_i,
    // while c = e1 is hit by no d_i.
    std::vector<Summand> fig1;
    fig1.push_back({0.3, 0.3, 0.3, 1.0, probsum_tconorm(), AnnihilatorPolicy::Disjunctive});
    fig1.push_back({0.0, 0.3, 1.0, 1.0, product_tnorm(), AnnihilatorPolicy::Conjunctive});
    BCnSets bcn = derive_B_C_n(fig1);
    CHECK(bcn.B.empty());
    CHECK(bcn.C == std::vector<double>{0.3});

    OrdinalSumSpec spec(0.3, fig1);
    CHECK(spec.v(0) == 0.3);
    CHECK(spec.v(1) == 1.0);

    BCnSets ex13 = fixtures::example13_base().bcn();
    CHECK(ex13.B == std::vector<double>{0.4});
    CHECK(ex13.C.empty());

    BCnSets ex14 = fixtures::example14_base().bcn();
    CHECK(ex14.B == std::vector<double>{0.5});
    CHECK(ex14.C == std::vector<double>{0.5});
    CHECK(ex14.n.at(0.5) == 0.5);
}

TEST_CASE("corner values resolve along the documented chain") {
    OrdinalSumSpec ex13 = fixtures::example13_base();
    CHECK(ex13.v(0) == 0.4);
    CHECK(ex13.v(1) == 0.0);  // decided by the adjacent t-norm summand
    CHECK(ex13.v(2) == 0.7);  // decided by the adjacent t-conorm summand

    OrdinalSumSpec ex14 = fixtures::example14_base();
    CHECK(ex14.v(0) == 0.5);  // b in B and c in C: n decides
    CHECK(ex14.v(1) == 0.25);
    CHECK(ex14.v(2) == 0.0);

    // A single complete summand resolves to v = e.
    std::vector<Summand> single;
    single.push_back({0.0, 0.5, 0.5, 1.0, fixtures::logistic_rep(),
                      AnnihilatorPolicy::Conjunctive});
    OrdinalSumSpec one(0.5, single);
    CHECK(one.v(0) == 0.5);
}

TEST_CASE("ordinal sum evaluation, example with e = 0.4") {
    OperatorHandle u = ordinal_sum_uninorm(fixtures::example13_base());
    CHECK(u.neutral == 0.4);
    CHECK_NEAR(u(0.2, 0.2), 0.1, 1e-12);
    CHECK_NEAR(u(0.5, 0.6), 0.7 - 0.3 * (2.0 / 9.0), 1e-12);
    CHECK_NEAR(u(0.2, 0.9), 0.9, 1e-12);
    CHECK_NEAR(u(0.0, 0.5), 0.5, 1e-12);
    CHECK(u(0.0, 0.4) == 0.0);
    CHECK(u(0.4, 0.123) == 0.123);
    CHECK(u(1.0, 0.0) == 1.0);  // disjunctive
    CHECK(u.policy == AnnihilatorPolicy::Disjunctive);
}

TEST_CASE("ordinal sum evaluation, example with e = 0.5") {
    OperatorHandle u = fixtures::example14();
    CHECK_NEAR(u(0.1, 0.6), 0.1, 1e-12);
    CHECK_NEAR(u(0.1, 0.9), 0.9, 1e-12);
    CHECK_NEAR(u(0.3, 0.6), 6.0 / 17.0, 1e-12);   // through the representable block
    CHECK_NEAR(u(0.3, 0.4), 3.0 / 11.0, 1e-12);
    CHECK_NEAR(u(0.1, 0.2), 0.08, 1e-12);         // scaled product block
    CHECK_NEAR(u(0.8, 0.9), 0.95, 1e-12);         // scaled Lukasiewicz t-conorm
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) CHECK_NEAR(u(p, p), p, 1e-12);
}

TEST_CASE("summand blocks are closed under the sum") {
    OperatorHandle u = fixtures::example14();
    const Summand s = fixtures::example14_base().summands()[0];
    auto inside = [&](double z) {
        return (z >= s.a && z < s.b) || z == 0.5 || (z > s.c && z <= s.d) ||
               std::abs(z - s.b) <= 1e-12 || std::abs(z - s.d) <= 1e-12;
    };
    for (double x : {0.3, 0.35, 0.45, 0.55, 0.6, 0.7})
        for (double y : {0.28, 0.42, 0.58, 0.72}) CHECK(inside(u(x, y)));
}

TEST_CASE("spec validation rejects malformed systems") {
    auto tn = [] { return product_tnorm(); };
    auto tc = [] { return probsum_tconorm(); };

    // Overlapping lower intervals.
    std::vector<Summand> overlap;
    overlap.push_back({0.0, 0.3, 0.5, 1.0, fixtures::logistic_rep()});
    overlap.push_back({0.2, 0.5, 1.0, 1.0, tn()});
    CHECK_THROWS_AS(OrdinalSumSpec(0.5, overlap), std::invalid_argument);

    // Lower closures leave a gap.
    std::vector<Summand> gap;
    gap.push_back({0.0, 0.3, 0.5, 1.0, fixtures::logistic_rep()});
    CHECK_THROWS_AS(OrdinalSumSpec(0.5, gap), std::invalid_argument);

    // Two-sided summand with a t-norm operator.
    std::vector<Summand> twosided;
    twosided.push_back({0.0, 0.5, 0.5, 1.0, tn()});
    CHECK_THROWS_AS(OrdinalSumSpec(0.5, twosided), std::invalid_argument);

    // Upper-only summand with a t-norm operator.
    std::vector<Summand> wrongkind;
    wrongkind.push_back({0.0, 0.5, 0.5, 0.5, tn()});
    wrongkind.push_back({0.0, 0.0, 0.5, 1.0, tn()});
    CHECK_THROWS_AS(OrdinalSumSpec(0.5, wrongkind), std::invalid_argument);

    // Non-empty summand without an operator.
    std::vector<Summand> noop;
    noop.push_back({0.0, 0.5, 0.5, 0.5, std::nullopt, AnnihilatorPolicy::Conjunctive});
    noop.push_back({0.0, 0.0, 0.5, 1.0, tc()});
    CHECK_THROWS_AS(OrdinalSumSpec(0.5, noop), std::invalid_argument);

    // Interval bounds escaping the [a <= b <= e <= c <= d] chain.
    std::vector<Summand> order;
    order.push_back({0.0, 0.6, 0.7, 1.0, fixtures::logistic_rep()});
    CHECK_THROWS_AS(OrdinalSumSpec(0.5, order), std::invalid_argument);
}

TEST_CASE("random internality on middle bands") {
    // x inside [b_k, c_k] acts neutrally on the summand parts of k.
    OperatorHandle u = fixtures::example14();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> part(0.76, 1.0);
    for (int i = 0; i < 100; ++i) {
        double y = part(rng);
        CHECK_NEAR(u(0.3, y), y, 1e-12);  // 0.3 in [b_2, c_2] = [0, 3/4]
    }
}
