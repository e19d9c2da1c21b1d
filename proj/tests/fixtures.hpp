#pragma once

#include <string>
#include <vector>

#include "unisum/analysis.hpp"
#include "unisum/generator.hpp"
#include "unisum/operators.hpp"
#include "unisum/uninorms.hpp"

namespace fixtures {

using namespace unisum;

inline OperatorHandle logistic_rep(AnnihilatorPolicy p = AnnihilatorPolicy::Conjunctive) {
    return make_representable(logistic_generator(), p);
}

inline OperatorHandle u_min_pp() { return make_u_min(product_tnorm(), probsum_tconorm(), 0.5); }
inline OperatorHandle u_max_pp() { return make_u_max(product_tnorm(), probsum_tconorm(), 0.5); }

// Internal uninorm with boundary curve v(x) = 1 - x. The tiny boundary band
// keeps the rule consistent at grid points where 1 - x is not exactly
// representable.
inline OperatorHandle s_internal_complement(BoundaryRule rule = BoundaryRule::TakeMin) {
    InternalBoundary b;
    b.v = [](double x) { return 1.0 - x; };
    b.on_boundary = rule;
    b.boundary_tol = 1e-12;
    return make_s_internal(b);
}

// e = 0.4: product t-norm below e, two t-conorm blocks above it. G = {0}
// with four admissible prefix intervals.
inline OrdinalSumSpec example13_base() {
    std::vector<Summand> s;
    s.push_back({0.0, 0.4, 0.4, 0.4, product_tnorm(), AnnihilatorPolicy::Conjunctive});
    s.push_back({0.0, 0.0, 0.4, 0.7, probsum_tconorm(), AnnihilatorPolicy::Disjunctive});
    s.push_back({0.0, 0.0, 0.7, 1.0, lukasiewicz_tconorm(), AnnihilatorPolicy::Disjunctive});
    return OrdinalSumSpec(0.4, std::move(s));
}

inline ExtendedOrdinalSumSpec example13_extended(ChoiceInterval g0) {
    std::map<double, ChoiceInterval> g{{0.0, g0}}, h;
    return ExtendedOrdinalSumSpec(example13_base(), std::move(g), std::move(h));
}

// e = 1/2 with a two-sided representable summand, a product block and a
// Lukasiewicz t-conorm block; idempotent points are exactly the multiples
// of 1/4.
inline OrdinalSumSpec example14_base() {
    std::vector<Summand> s;
    s.push_back({0.25, 0.5, 0.5, 0.75, logistic_rep(), AnnihilatorPolicy::Conjunctive});
    s.push_back({0.0, 0.25, 0.75, 0.75, product_tnorm(), AnnihilatorPolicy::Conjunctive});
    s.push_back({0.0, 0.0, 0.75, 1.0, lukasiewicz_tconorm(), AnnihilatorPolicy::Disjunctive});
    return OrdinalSumSpec(0.5, std::move(s));
}

inline OperatorHandle example14() { return ordinal_sum_uninorm(example14_base()); }

struct Named {
    std::string name;
    OperatorHandle op;
    double assoc_tol = 1e-9;  // bound for grid associativity defects
    bool class_u = false;     // uninorm with continuous underlying operations
};

inline std::vector<Named> axiom_matrix() {
    std::vector<Named> m;
    m.push_back({"product", product_tnorm()});
    m.push_back({"lukasiewicz-tnorm", lukasiewicz_tnorm()});
    m.push_back({"min", min_tnorm()});
    m.push_back({"max", max_tconorm()});
    m.push_back({"probsum", probsum_tconorm()});
    m.push_back({"lukasiewicz-tconorm", lukasiewicz_tconorm()});
    m.push_back({"hamacher", generated_tnorm(hamacher_tnorm_generator())});
    m.push_back({"hamacher-numeric", generated_tnorm(hamacher_tnorm_generator_numeric()), 1e-7});
    m.push_back({"logistic-conjunctive", logistic_rep(), 1e-9, true});
    m.push_back(
        {"logistic-disjunctive", logistic_rep(AnnihilatorPolicy::Disjunctive), 1e-9, true});
    m.push_back({"u-min", u_min_pp(), 1e-9, true});
    m.push_back({"u-max", u_max_pp(), 1e-9, true});
    m.push_back({"s-internal", s_internal_complement(), 1e-9, true});
    m.push_back({"example13-g04",
                 extended_sum_uninorm(example13_extended({0.4, true})), 1e-9, true});
    m.push_back({"example13-g07-open",
                 extended_sum_uninorm(example13_extended({0.7, false})), 1e-9, true});
    m.push_back({"example13-g07",
                 extended_sum_uninorm(example13_extended({0.7, true})), 1e-9, true});
    m.push_back({"example13-g1",
                 extended_sum_uninorm(example13_extended({1.0, true})), 1e-9, true});
    m.push_back({"example14", example14(), 1e-9, true});
    return m;
}

}  // namespace fixtures
