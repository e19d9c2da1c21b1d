#include "unisum/generator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace unisum {

std::function<double(double)> bisection_inverse(std::function<double(double)> fwd,
                                                bool increasing) {
    return [fwd = std::move(fwd), increasing](double s) {
        double f0 = fwd(0.0), f1 = fwd(1.0);
        double slo = increasing ? f0 : f1;
        double shi = increasing ? f1 : f0;
        if (s <= slo) return increasing ? 0.0 : 1.0;
        if (s >= shi) return increasing ? 1.0 : 0.0;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            double mid = 0.5 * (lo + hi);
            double v = fwd(mid);
            bool below = increasing ? (v < s) : (v > s);
            if (below)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
}

Generator product_tnorm_generator() {
    Generator g;
    g.kind = GeneratorKind::TNormDecreasing;
    g.eval = [](double x) { return x <= 0.0 ? kInf : -std::log(x); };
    g.inverse = [](double s) {
        if (s <= 0.0) return 1.0;
        return std::exp(-s);
    };
    g.at0 = kInf;
    g.at1 = 0.0;
    return g;
}

Generator lukasiewicz_tnorm_generator() {
    Generator g;
    g.kind = GeneratorKind::TNormDecreasing;
    g.eval = [](double x) { return 1.0 - x; };
    g.inverse = [](double s) { return std::clamp(1.0 - s, 0.0, 1.0); };
    g.at0 = 1.0;
    g.at1 = 0.0;
    return g;
}

Generator hamacher_tnorm_generator() {
    Generator g;
    g.kind = GeneratorKind::TNormDecreasing;
    g.eval = [](double x) { return x <= 0.0 ? kInf : (1.0 - x) / x; };
    g.inverse = [](double s) {
        if (s <= 0.0) return 1.0;
        if (std::isinf(s)) return 0.0;
        return 1.0 / (1.0 + s);
    };
    g.at0 = kInf;
    g.at1 = 0.0;
    return g;
}

Generator hamacher_tnorm_generator_numeric() {
    Generator g = hamacher_tnorm_generator();
    g.inverse = bisection_inverse(g.eval, /*increasing=*/false);
    g.closed_form = false;
    return g;
}

Generator lukasiewicz_tconorm_generator() {
    Generator g;
    g.kind = GeneratorKind::TConormIncreasing;
    g.eval = [](double x) { return x; };
    g.inverse = [](double s) { return std::clamp(s, 0.0, 1.0); };
    g.at0 = 0.0;
    g.at1 = 1.0;
    return g;
}

Generator probsum_tconorm_generator() {
    Generator g;
    g.kind = GeneratorKind::TConormIncreasing;
    g.eval = [](double x) { return x >= 1.0 ? kInf : -std::log1p(-x); };
    g.inverse = [](double s) {
        if (s <= 0.0) return 0.0;
        return -std::expm1(-s);
    };
    g.at0 = 0.0;
    g.at1 = kInf;
    return g;
}

Generator logistic_generator() {
    Generator g;
    g.kind = GeneratorKind::UninormBipolar;
    g.eval = [](double x) {
        if (x <= 0.0) return -kInf;
        if (x >= 1.0) return kInf;
        return std::log(x / (1.0 - x));
    };
    g.inverse = [](double s) {
        if (s == -kInf) return 0.0;
        if (s == kInf) return 1.0;
        return 1.0 / (1.0 + std::exp(-s));
    };
    g.at0 = -kInf;
    g.at1 = kInf;
    return g;
}

TabulatedGenerator::TabulatedGenerator(std::vector<double> xs, std::vector<double> values,
                                       double value_at_0, double value_at_1)
    : xs_(std::move(xs)), vs_(std::move(values)), at0_(value_at_0), at1_(value_at_1) {
    if (xs_.size() != vs_.size() || xs_.size() < 2)
        throw std::invalid_argument("tabulated generator needs >= 2 matching nodes");
    if (!std::is_sorted(xs_.begin(), xs_.end()))
        throw std::invalid_argument("tabulated generator nodes must be sorted in x");
    increasing_ = vs_.back() > vs_.front();
    for (std::size_t i = 1; i < vs_.size(); ++i) {
        bool ok = increasing_ ? vs_[i] > vs_[i - 1] : vs_[i] < vs_[i - 1];
        if (!ok) throw std::invalid_argument("tabulated generator values not strictly monotone");
    }
}

double TabulatedGenerator::eval(double x) const {
    if (x <= xs_.front()) return x <= 0.0 ? at0_ : vs_.front();
    if (x >= xs_.back()) return x >= 1.0 ? at1_ : vs_.back();
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return vs_[i - 1] + t * (vs_[i] - vs_[i - 1]);
}

double TabulatedGenerator::inverse(double s) const {
    double lo = increasing_ ? vs_.front() : vs_.back();
    double hi = increasing_ ? vs_.back() : vs_.front();
    double xlo = increasing_ ? xs_.front() : xs_.back();
    double xhi = increasing_ ? xs_.back() : xs_.front();
    if (s <= lo) {
        // Below the sampled range: clamp towards the endpoint the generator
        // approaches there.
        bool toward0 = increasing_;
        double edge = increasing_ ? at0_ : at1_;
        if (std::isinf(edge) || s <= edge) return toward0 ? 0.0 : 1.0;
        return xlo;
    }
    if (s >= hi) {
        bool toward1 = increasing_;
        double edge = increasing_ ? at1_ : at0_;
        if (std::isinf(edge) || s >= edge) return toward1 ? 1.0 : 0.0;
        return xhi;
    }
    // Binary search on the value array.
    std::size_t a = 0, b = vs_.size() - 1;
    while (b - a > 1) {
        std::size_t m = (a + b) / 2;
        bool left = increasing_ ? vs_[m] <= s : vs_[m] >= s;
        if (left)
            a = m;
        else
            b = m;
    }
    double t = (s - vs_[a]) / (vs_[b] - vs_[a]);
    return xs_[a] + t * (xs_[b] - xs_[a]);
}

Generator make_generator(GeneratorKind kind, const TabulatedGenerator& table) {
    auto shared = std::make_shared<TabulatedGenerator>(table);
    Generator g;
    g.kind = kind;
    g.eval = [shared](double x) { return shared->eval(x); };
    g.inverse = [shared](double s) { return shared->inverse(s); };
    g.at0 = shared->at0();
    g.at1 = shared->at1();
    g.closed_form = false;
    return g;
}

}  // namespace unisum
