#pragma once

#include <map>
#include <optional>
#include <vector>

#include "unisum/core.hpp"

namespace unisum {

/// One summand <a,b,c,d,U> of an ordinal sum of uninorms. The lower
/// interval (a,b) lives in [0,e], the upper interval (c,d) in [e,1]. When
/// both intervals are empty the operator may be omitted; only its
/// conjunctive/disjunctive character matters then.
struct Summand {
    double a, b, c, d;
    std::optional<OperatorHandle> op;
    AnnihilatorPolicy character = AnnihilatorPolicy::Conjunctive;
};

/// U_k(1,0) as exactly 0.0 or 1.0.
double summand_annihilator(const Summand& s);

/// B = {b_k} \ {a_k}, C = {c_k} \ {d_k}, and n: B -> B u C with
/// n(b_k) = b_k when U_k is conjunctive and c_k otherwise.
struct BCnSets {
    std::vector<double> B, C;       // sorted, deduplicated
    std::map<double, double> n;
};

/// The piecewise-linear map of [0,1] onto [a,b) u {v} u (c,d]: linear
/// [0,e) -> [a,b), e -> v, linear (e,1] -> (c,d].
double transform_point(double a, double b, double c, double d, double e, double v, double x);

/// Inverse of transform_point on its image; throws std::domain_error for
/// arguments outside [a,b) u {v} u (c,d].
double inverse_transform_point(double a, double b, double c, double d, double e, double v,
                               double z);

/// The conjugate f(U(f^{-1}(x), f^{-1}(y))) scoped to the support
/// [a,b) u {v} u (c,d]; f is transform_point with e the neutral element
/// of the base operator.
struct TransformedOp {
    double a, b, c, d, v;
    OperatorHandle base;

    bool in_support(double z) const;
    double operator()(double x, double y) const;
};

TransformedOp transform_uninorm(const OperatorHandle& u, double a, double b, double c, double d,
                                double v);

BCnSets derive_B_C_n(const std::vector<Summand>& summands);

/// The corner value v_k = U^e(b_k, c_k). Resolution order: a summand i with
/// a_i = b_k and d_i = c_k decides by its character; otherwise the B/C
/// membership fallbacks apply; a degenerate bridge b_k = c_k resolves to
/// that point. Anything else is reported as an ambiguous spec.
double resolve_v(const std::vector<Summand>& summands, const BCnSets& bcn, std::size_t k);

/// A validated ordinal sum (<a_k,b_k,c_k,d_k,U_k> | k)^e. Construction
/// checks interval geometry, coverage, anti-comonotonicity of the two
/// interval systems, operator-kind constraints and resolves all corner
/// values; instances are immutable afterwards.
class OrdinalSumSpec {
public:
    OrdinalSumSpec(double e, std::vector<Summand> summands);

    double e() const { return e_; }
    const std::vector<Summand>& summands() const { return summands_; }
    const BCnSets& bcn() const { return bcn_; }
    double v(std::size_t k) const { return vs_.at(k); }
    const std::vector<double>& vs() const { return vs_; }

private:
    double e_;
    std::vector<Summand> summands_;
    BCnSets bcn_;
    std::vector<double> vs_;
};

double eval_ordinal_sum_uninorm(const OrdinalSumSpec& spec, double x, double y);
OperatorHandle ordinal_sum_uninorm(OrdinalSumSpec spec);

}  // namespace unisum
