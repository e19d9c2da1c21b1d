#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "unisum/core.hpp"

namespace unisum {

enum class GeneratorKind { TNormDecreasing, TConormIncreasing, UninormBipolar };

/// A continuous strictly monotone scalar map from [0,1] to the extended
/// reals, with its pseudo-inverse. Infinite endpoint values are represented
/// with +-infinity sentinels; addition with one infinite operand follows the
/// limiting convention (+inf + s = +inf, -inf + s = -inf for finite s).
struct Generator {
    GeneratorKind kind = GeneratorKind::TNormDecreasing;
    std::function<double(double)> eval;     // [0,1] -> extended reals
    std::function<double(double)> inverse;  // pseudo-inverse, clamping
    double at0 = kInf;                      // eval(0)
    double at1 = 0.0;                       // eval(1)
    bool closed_form = true;

    double operator()(double x) const { return eval(x); }
};

/// Builds a clamping pseudo-inverse by bisection on the monotone generator
/// (absolute argument tolerance 1e-12, at most 200 iterations).
std::function<double(double)> bisection_inverse(std::function<double(double)> fwd,
                                                bool increasing);

// Closed-form families.
Generator product_tnorm_generator();       // t(x) = -ln x
Generator lukasiewicz_tnorm_generator();   // t(x) = 1 - x
Generator hamacher_tnorm_generator();      // t(x) = (1-x)/x
Generator lukasiewicz_tconorm_generator(); // c(x) = x
Generator probsum_tconorm_generator();     // c(x) = -ln(1-x)
Generator logistic_generator();            // f(x) = ln(x/(1-x))

/// Same family, but with the inverse obtained numerically; used to exercise
/// the bisection path.
Generator hamacher_tnorm_generator_numeric();

/// A strictly monotone generator tabulated at sample nodes with linear
/// interpolation between them. Nodes must be strictly monotone in both
/// coordinates. Values outside the sampled range clamp to the endpoint
/// values (which may be +-infinity).
class TabulatedGenerator {
public:
    TabulatedGenerator(std::vector<double> xs, std::vector<double> values,
                       double value_at_0, double value_at_1);

    double eval(double x) const;
    double inverse(double s) const;
    const std::vector<double>& nodes() const { return xs_; }
    const std::vector<double>& values() const { return vs_; }
    double at0() const { return at0_; }
    double at1() const { return at1_; }

private:
    std::vector<double> xs_, vs_;
    double at0_, at1_;
    bool increasing_;
};

Generator make_generator(GeneratorKind kind, const TabulatedGenerator& table);

}  // namespace unisum
