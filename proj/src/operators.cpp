#include "unisum/operators.hpp"

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

double eval_generated_tnorm(const Generator& gen, double x, double y) {
    if (gen.kind != GeneratorKind::TNormDecreasing)
        throw std::invalid_argument("generator is not of t-norm kind");
    require_unit(x, "x");
    require_unit(y, "y");
    double s = ext_add(gen.eval(x), gen.eval(y));
    return gen.inverse(std::min(gen.at0, s));
}

double eval_generated_tconorm(const Generator& gen, double x, double y) {
    if (gen.kind != GeneratorKind::TConormIncreasing)
        throw std::invalid_argument("generator is not of t-conorm kind");
    require_unit(x, "x");
    require_unit(y, "y");
    double s = ext_add(gen.eval(x), gen.eval(y));
    return gen.inverse(std::min(gen.at1, s));
}

OperatorHandle generated_tnorm(const Generator& gen) {
    if (gen.kind != GeneratorKind::TNormDecreasing)
        throw std::invalid_argument("generator is not of t-norm kind");
    OperatorHandle h;
    h.kind = OpKind::TNorm;
    h.neutral = 1.0;
    h.eval = [gen](double x, double y) { return eval_generated_tnorm(gen, x, y); };
    return h;
}

OperatorHandle generated_tconorm(const Generator& gen) {
    if (gen.kind != GeneratorKind::TConormIncreasing)
        throw std::invalid_argument("generator is not of t-conorm kind");
    OperatorHandle h;
    h.kind = OpKind::TConorm;
    h.neutral = 0.0;
    h.eval = [gen](double x, double y) { return eval_generated_tconorm(gen, x, y); };
    return h;
}

OperatorHandle min_tnorm() {
    return {[](double x, double y) { return std::min(x, y); }, 1.0, OpKind::TNorm,
            AnnihilatorPolicy::Conjunctive};
}

OperatorHandle max_tconorm() {
    return {[](double x, double y) { return std::max(x, y); }, 0.0, OpKind::TConorm,
            AnnihilatorPolicy::Disjunctive};
}

OperatorHandle product_tnorm() {
    return {[](double x, double y) { return x * y; }, 1.0, OpKind::TNorm,
            AnnihilatorPolicy::Conjunctive};
}

OperatorHandle lukasiewicz_tnorm() {
    return {[](double x, double y) { return std::max(0.0, x + y - 1.0); }, 1.0, OpKind::TNorm,
            AnnihilatorPolicy::Conjunctive};
}

OperatorHandle probsum_tconorm() {
    return {[](double x, double y) { return x + y - x * y; }, 0.0, OpKind::TConorm,
            AnnihilatorPolicy::Disjunctive};
}

OperatorHandle lukasiewicz_tconorm() {
    return {[](double x, double y) { return std::min(1.0, x + y); }, 0.0, OpKind::TConorm,
            AnnihilatorPolicy::Disjunctive};
}

OperatorHandle dualize(const OperatorHandle& op) {
    OperatorHandle h;
    h.kind = op.kind == OpKind::TNorm ? OpKind::TConorm : OpKind::TNorm;
    h.neutral = 1.0 - op.neutral;
    h.eval = [inner = op.eval](double x, double y) { return 1.0 - inner(1.0 - x, 1.0 - y); };
    return h;
}

TNormSummandList::TNormSummandList(std::vector<SummandInterval> entries)
    : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const SummandInterval& a, const SummandInterval& b) { return a.lo < b.lo; });
    for (const auto& s : entries_) {
        if (!(0.0 <= s.lo && s.lo < s.hi && s.hi <= 1.0))
            throw std::invalid_argument("summand interval must satisfy 0 <= lo < hi <= 1");
    }
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].lo < entries_[i - 1].hi)
            throw std::invalid_argument("summand intervals overlap");
}

double eval_ordinal_sum_tnorm(const TNormSummandList& summands, double x, double y) {
    require_unit(x, "x");
    require_unit(y, "y");
    for (const auto& s : summands.entries()) {
        if (x >= s.lo && x < s.hi && y >= s.lo && y < s.hi) {
            double w = s.hi - s.lo;
            return s.lo + w * s.op((x - s.lo) / w, (y - s.lo) / w);
        }
    }
    return std::min(x, y);
}

double eval_ordinal_sum_tconorm(const TConormSummandList& summands, double x, double y) {
    require_unit(x, "x");
    require_unit(y, "y");
    for (const auto& s : summands.entries()) {
        if (x > s.lo && x <= s.hi && y > s.lo && y <= s.hi) {
            double w = s.hi - s.lo;
            return s.lo + w * s.op((x - s.lo) / w, (y - s.lo) / w);
        }
    }
    return std::max(x, y);
}

OperatorHandle ordinal_sum_tnorm(TNormSummandList summands) {
    OperatorHandle h;
    h.kind = OpKind::TNorm;
    h.neutral = 1.0;
    h.eval = [s = std::move(summands)](double x, double y) {
        return eval_ordinal_sum_tnorm(s, x, y);
    };
    return h;
}

OperatorHandle ordinal_sum_tconorm(TConormSummandList summands) {
    OperatorHandle h;
    h.kind = OpKind::TConorm;
    h.neutral = 0.0;
    h.eval = [s = std::move(summands)](double x, double y) {
        return eval_ordinal_sum_tconorm(s, x, y);
    };
    return h;
}

ArchimedeanClass classify_archimedean(const OperatorHandle& op, int grid_n) {
    if (op.kind == OpKind::Uninorm)
        throw std::invalid_argument("archimedean classification needs a t-norm or t-conorm");
    const bool tnorm = op.kind == OpKind::TNorm;
    const double annihilator = tnorm ? 0.0 : 1.0;
    const double tol = 1e-9;
    auto grid = uniform_grid(grid_n);

    for (int i = 1; i + 1 < grid_n; ++i) {
        double x = grid[static_cast<std::size_t>(i)];
        if (std::abs(op(x, x) - x) <= tol) return ArchimedeanClass::NotArchimedean;
    }
    // The annihilator set of a monotone operation is a corner down-set, so
    // an interior annihilating pair exists iff the innermost corner sample
    // already annihilates.
    double h = grid[1];
    double corner = tnorm ? op(h, h) : op(1.0 - h, 1.0 - h);
    if (std::abs(corner - annihilator) <= tol) return ArchimedeanClass::Nilpotent;
    if (std::abs(corner - annihilator) <= 10.0 * tol) return ArchimedeanClass::Inconclusive;
    // Strictness on the sampled interior.
    for (int i = 1; i + 2 < grid_n; ++i)
        for (int j = 1; j + 1 < grid_n; ++j) {
            double x1 = grid[static_cast<std::size_t>(i)];
            double x2 = grid[static_cast<std::size_t>(i + 1)];
            double y = grid[static_cast<std::size_t>(j)];
            double v1 = op(x1, y), v2 = op(x2, y);
            bool on_range = tnorm ? (v1 > tol) : (v1 < 1.0 - tol);
            if (on_range && v2 <= v1 + tol) return ArchimedeanClass::Inconclusive;
        }
    return ArchimedeanClass::Strict;
}

CStrictness classify_c_strict(const OperatorHandle& op, int grid_n) {
    if (op.kind == OpKind::Uninorm)
        throw std::invalid_argument("c-strictness needs a t-norm or t-conorm");
    const bool tnorm = op.kind == OpKind::TNorm;
    const double annihilator = tnorm ? 0.0 : 1.0;
    const double tol = 1e-9;
    double h = 1.0 / (grid_n - 1);
    double corner = tnorm ? op(h, h) : op(1.0 - h, 1.0 - h);
    double gap = std::abs(corner - annihilator);
    if (gap <= tol) return CStrictness::CNilpotent;
    if (gap <= 10.0 * tol) return CStrictness::Inconclusive;
    return CStrictness::CStrict;
}

}  // namespace unisum
