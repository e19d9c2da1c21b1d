#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace unisum {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class OpKind { TNorm, TConorm, Uninorm };

enum class AnnihilatorPolicy { Conjunctive, Disjunctive };

/// A binary operation on the unit square together with its declared
/// neutral element. Handles are immutable value types; evaluation is pure,
/// so they are safe to copy and evaluate concurrently.
struct OperatorHandle {
    std::function<double(double, double)> eval;
    double neutral = 1.0;
    OpKind kind = OpKind::TNorm;
    AnnihilatorPolicy policy = AnnihilatorPolicy::Conjunctive;

    double operator()(double x, double y) const { return eval(x, y); }
};

inline void require_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string(what) + " outside [0,1]");
}

/// n uniformly spaced points on [lo,hi], endpoints included.
inline std::vector<double> uniform_grid(int n, double lo = 0.0, double hi = 1.0) {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return g;
}

}  // namespace unisum
