#include "unisum/uninorms.hpp"

#include <algorithm>
#include <cmath>

namespace unisum {

namespace {

double ext_add(double a, double b) {
    if (std::isinf(a)) return a;
    if (std::isinf(b)) return b;
    return a + b;
}

}  // namespace

OperatorHandle make_representable(const Generator& gen, AnnihilatorPolicy policy) {
    if (gen.kind != GeneratorKind::UninormBipolar || gen.at0 != -kInf || gen.at1 != kInf)
        throw std::invalid_argument("representable uninorm needs a bipolar generator with "
                                    "endpoint values -inf and +inf");
    OperatorHandle h;
    h.kind = OpKind::Uninorm;
    h.policy = policy;
    h.neutral = gen.inverse(0.0);
    double annihilator = policy == AnnihilatorPolicy::Conjunctive ? 0.0 : 1.0;
    h.eval = [gen, annihilator](double x, double y) {
        require_unit(x, "x");
        require_unit(y, "y");
        double fx = gen.eval(x), fy = gen.eval(y);
        if (std::isinf(fx) && std::isinf(fy) && fx != fy) return annihilator;
        return gen.inverse(ext_add(fx, fy));
    };
    return h;
}

namespace {

OperatorHandle make_u_minmax(const OperatorHandle& tnorm, const OperatorHandle& tconorm,
                             double e, bool take_min) {
    if (tnorm.kind != OpKind::TNorm) throw std::invalid_argument("first operand must be a t-norm");
    if (tconorm.kind != OpKind::TConorm)
        throw std::invalid_argument("second operand must be a t-conorm");
    require_unit(e, "e");
    OperatorHandle h;
    h.kind = OpKind::Uninorm;
    h.neutral = e;
    h.policy = take_min ? AnnihilatorPolicy::Conjunctive : AnnihilatorPolicy::Disjunctive;
    h.eval = [T = tnorm.eval, C = tconorm.eval, e, take_min](double x, double y) {
        require_unit(x, "x");
        require_unit(y, "y");
        if (x <= e && y <= e) {
            if (e == 0.0) return 0.0;
            return e * T(x / e, y / e);
        }
        if (x >= e && y >= e) {
            if (e == 1.0) return 1.0;
            return e + (1.0 - e) * C((x - e) / (1.0 - e), (y - e) / (1.0 - e));
        }
        return take_min ? std::min(x, y) : std::max(x, y);
    };
    return h;
}

}  // namespace

OperatorHandle make_u_min(const OperatorHandle& tnorm, const OperatorHandle& tconorm, double e) {
    return make_u_minmax(tnorm, tconorm, e, true);
}

OperatorHandle make_u_max(const OperatorHandle& tnorm, const OperatorHandle& tconorm, double e) {
    return make_u_minmax(tnorm, tconorm, e, false);
}

OperatorHandle make_s_internal(const InternalBoundary& boundary, int check_grid_n) {
    auto grid = uniform_grid(check_grid_n);
    double prev = boundary.v(grid[0]);
    require_unit(prev, "v(0)");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        double cur = boundary.v(grid[i]);
        require_unit(cur, "v(x)");
        if (!(cur < prev))
            throw std::invalid_argument("boundary curve is not strictly decreasing on samples");
        prev = cur;
    }
    // Neutral element: the fixed point of the strictly decreasing curve.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        if (boundary.v(mid) > mid)
            lo = mid;
        else
            hi = mid;
    }
    OperatorHandle h;
    h.kind = OpKind::Uninorm;
    h.neutral = 0.5 * (lo + hi);
    h.policy = boundary.on_boundary == BoundaryRule::TakeMin ? AnnihilatorPolicy::Conjunctive
                                                             : AnnihilatorPolicy::Disjunctive;
    h.eval = [b = boundary](double x, double y) {
        require_unit(x, "x");
        require_unit(y, "y");
        // Both orientations are consulted so that the evaluation is
        // symmetric even when the curve is not exactly involutive.
        bool below = y < b.v(x) - b.boundary_tol && x < b.v(y) - b.boundary_tol;
        bool above = y > b.v(x) + b.boundary_tol && x > b.v(y) + b.boundary_tol;
        if (below) return std::min(x, y);
        if (above) return std::max(x, y);
        return b.on_boundary == BoundaryRule::TakeMin ? std::min(x, y) : std::max(x, y);
    };
    return h;
}

OperatorHandle underlying_tnorm(const OperatorHandle& u) {
    double e = u.neutral;
    if (e == 0.0) throw std::domain_error("neutral element 0: t-norm restriction is degenerate");
    OperatorHandle h;
    h.kind = OpKind::TNorm;
    h.neutral = 1.0;
    h.eval = [U = u.eval, e](double x, double y) {
        require_unit(x, "x");
        require_unit(y, "y");
        return U(e * x, e * y) / e;
    };
    return h;
}

OperatorHandle underlying_tconorm(const OperatorHandle& u) {
    double e = u.neutral;
    if (e == 1.0) throw std::domain_error("neutral element 1: t-conorm restriction is degenerate");
    OperatorHandle h;
    h.kind = OpKind::TConorm;
    h.neutral = 0.0;
    h.eval = [U = u.eval, e](double x, double y) {
        require_unit(x, "x");
        require_unit(y, "y");
        return (U(e + (1.0 - e) * x, e + (1.0 - e) * y) - e) / (1.0 - e);
    };
    return h;
}

std::pair<std::optional<OperatorHandle>, std::optional<OperatorHandle>> underlying_ops(
    const OperatorHandle& u) {
    std::pair<std::optional<OperatorHandle>, std::optional<OperatorHandle>> out;
    if (u.neutral > 0.0) out.first = underlying_tnorm(u);
    if (u.neutral < 1.0) out.second = underlying_tconorm(u);
    return out;
}

namespace {

OperatorHandle star_op(const OperatorHandle& u) {
    OperatorHandle h = u;
    h.eval = [U = u.eval](double x, double y) {
        if (std::max(x, y) == 1.0) return 1.0;
        if (std::min(x, y) == 0.0) return 0.0;
        return U(x, y);
    };
    return h;
}

OperatorHandle substar_op(const OperatorHandle& u) {
    OperatorHandle h = u;
    h.eval = [U = u.eval](double x, double y) {
        if (std::min(x, y) == 0.0) return 0.0;
        if (std::max(x, y) == 1.0) return 1.0;
        return U(x, y);
    };
    return h;
}

struct InteriorAnnihilation {
    std::optional<std::pair<double, double>> zero_pair;  // interior pair with U = 0
    std::optional<std::pair<double, double>> one_pair;   // interior pair with U = 1
    double zero_sup = 0.0;  // sup coordinate of the interior zero region
    double one_inf = 1.0;   // inf coordinate of the interior one region
};

InteriorAnnihilation scan_annihilation(const OperatorHandle& u, int grid_n) {
    InteriorAnnihilation r;
    const double tol = 1e-9;
    auto grid = uniform_grid(grid_n);
    for (int i = 1; i + 1 < grid_n; ++i)
        for (int j = i; j + 1 < grid_n; ++j) {
            double x = grid[static_cast<std::size_t>(i)];
            double y = grid[static_cast<std::size_t>(j)];
            double v = u(x, y);
            if (v <= tol) {
                if (!r.zero_pair) r.zero_pair = {x, y};
                r.zero_sup = std::max(r.zero_sup, y);
            } else if (v >= 1.0 - tol) {
                if (!r.one_pair) r.one_pair = {x, y};
                r.one_inf = std::min(r.one_inf, x);
            }
        }
    return r;
}

/// True when U agrees with min on (0,f) x (f,1) for the smallest sampled
/// idempotent point f above `from` (the t-norm-prefix shape of Lemma 2a).
bool tnorm_prefix_holds(const OperatorHandle& u, double from, int grid_n) {
    const double tol = 1e-9;
    auto grid = uniform_grid(grid_n);
    double f = 1.0;
    for (double p : grid)
        if (p >= from && p < 1.0 && std::abs(u(p, p) - p) <= tol) {
            f = p;
            break;
        }
    for (int i = 1; i + 1 < grid_n; ++i)
        for (int j = 1; j + 1 < grid_n; ++j) {
            double x = grid[static_cast<std::size_t>(i)];
            double y = grid[static_cast<std::size_t>(j)];
            if (x >= f || y <= f) continue;
            if (std::abs(u(x, y) - std::min(x, y)) > tol) return false;
        }
    return true;
}

bool tconorm_suffix_holds(const OperatorHandle& u, double upto, int grid_n) {
    const double tol = 1e-9;
    auto grid = uniform_grid(grid_n);
    double f = 0.0;
    for (int i = grid_n - 1; i >= 0; --i) {
        double p = grid[static_cast<std::size_t>(i)];
        if (p <= upto && p > 0.0 && std::abs(u(p, p) - p) <= tol) {
            f = p;
            break;
        }
    }
    for (int i = 1; i + 1 < grid_n; ++i)
        for (int j = 1; j + 1 < grid_n; ++j) {
            double x = grid[static_cast<std::size_t>(i)];
            double y = grid[static_cast<std::size_t>(j)];
            if (x <= f || y >= f) continue;
            if (std::abs(u(x, y) - std::max(x, y)) > tol) return false;
        }
    return true;
}

std::array<double, 3> worst_associativity_triple(const OperatorHandle& op, int n = 21) {
    auto grid = uniform_grid(n);
    std::array<double, 3> best{0.0, 0.0, 0.0};
    double worst = -1.0;
    for (double x : grid)
        for (double y : grid)
            for (double z : grid) {
                double d = std::abs(op(op(x, y), z) - op(x, op(y, z)));
                if (d > worst) {
                    worst = d;
                    best = {x, y, z};
                }
            }
    return best;
}

}  // namespace

BorderVariant border_variant_star(const OperatorHandle& u, int grid_n) {
    if (u.kind != OpKind::Uninorm && u.kind != OpKind::TNorm && u.kind != OpKind::TConorm)
        throw std::invalid_argument("border variant needs an operator handle");
    BorderVariant out;
    out.op = star_op(u);
    auto ann = scan_annihilation(u, grid_n);
    if (ann.one_pair) {
        // An interior pair mapping to 1 forces the associativity failure
        // pattern U*(x1,x2,0): grouping left gives U*(1,0)=1, grouping
        // right gives U*(x1,0)=0.
        out.valid = false;
        out.witness = {ann.one_pair->first, ann.one_pair->second, 0.0};
        return out;
    }
    if (ann.zero_pair && !tnorm_prefix_holds(u, ann.zero_sup, grid_n)) {
        out.valid = false;
        out.witness = worst_associativity_triple(out.op);
    }
    return out;
}

BorderVariant border_variant_substar(const OperatorHandle& u, int grid_n) {
    BorderVariant out;
    out.op = substar_op(u);
    auto ann = scan_annihilation(u, grid_n);
    if (ann.zero_pair) {
        // 1 = U_*(x1,1) = U_*(x1,x2,1) = U_*(0,1) = 0.
        out.valid = false;
        out.witness = {ann.zero_pair->first, ann.zero_pair->second, 1.0};
        return out;
    }
    if (ann.one_pair && !tconorm_suffix_holds(u, ann.one_inf, grid_n)) {
        out.valid = false;
        out.witness = worst_associativity_triple(out.op);
    }
    return out;
}

AnnihilatorPolicy classify_conjunctive(const OperatorHandle& u, double tol) {
    double v = u(1.0, 0.0);
    if (std::abs(v) <= tol) return AnnihilatorPolicy::Conjunctive;
    if (std::abs(v - 1.0) <= tol) return AnnihilatorPolicy::Disjunctive;
    throw std::runtime_error("U(1,0) is neither 0 nor 1: not a uninorm annihilator");
}

}  // namespace unisum
