#pragma once

#include <array>
#include <optional>

#include "unisum/core.hpp"
#include "unisum/generator.hpp"

namespace unisum {

/// U(x,y) = f^{-1}(f(x)+f(y)) for a bipolar generator f with f(0) = -inf,
/// f(1) = +inf. The undefined pair {0,1} takes the annihilator named by the
/// policy: 0 when conjunctive, 1 when disjunctive.
OperatorHandle make_representable(const Generator& gen, AnnihilatorPolicy policy);

/// Rescaled T on [0,e]^2, rescaled C on [e,1]^2, min (resp. max) on the
/// cross bands.
OperatorHandle make_u_min(const OperatorHandle& tnorm, const OperatorHandle& tconorm, double e);
OperatorHandle make_u_max(const OperatorHandle& tnorm, const OperatorHandle& tconorm, double e);

enum class BoundaryRule { TakeMin, TakeMax };

/// A continuous strictly decreasing switching curve v: min below it, max
/// above it, with a configurable rule on the curve itself.
struct InternalBoundary {
    std::function<double(double)> v;
    BoundaryRule on_boundary = BoundaryRule::TakeMin;
    double boundary_tol = 0.0;  // |y - v(x)| <= tol counts as on the curve
};

OperatorHandle make_s_internal(const InternalBoundary& boundary, int check_grid_n = 101);

/// Rescaled-to-[0,1]^2 restriction of U to [0,e]^2 (resp. [e,1]^2).
OperatorHandle underlying_tnorm(const OperatorHandle& u);
OperatorHandle underlying_tconorm(const OperatorHandle& u);
std::pair<std::optional<OperatorHandle>, std::optional<OperatorHandle>> underlying_ops(
    const OperatorHandle& u);

/// A border variant together with the verdict on whether it is still a
/// uninorm. When invalid, `witness` is a triple on which associativity
/// fails.
struct BorderVariant {
    OperatorHandle op;
    bool valid = true;
    std::optional<std::array<double, 3>> witness;
};

BorderVariant border_variant_star(const OperatorHandle& u, int grid_n = 101);
BorderVariant border_variant_substar(const OperatorHandle& u, int grid_n = 101);

AnnihilatorPolicy classify_conjunctive(const OperatorHandle& u, double tol = 1e-9);

}  // namespace unisum
