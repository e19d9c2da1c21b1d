#pragma once

#include <vector>

#include "unisum/core.hpp"
#include "unisum/generator.hpp"

namespace unisum {

/// t^{-1}(min(t(0), t(x)+t(y))) for a decreasing t-norm generator.
double eval_generated_tnorm(const Generator& gen, double x, double y);
/// c^{-1}(min(c(1), c(x)+c(y))) for an increasing t-conorm generator.
double eval_generated_tconorm(const Generator& gen, double x, double y);

OperatorHandle generated_tnorm(const Generator& gen);
OperatorHandle generated_tconorm(const Generator& gen);

OperatorHandle min_tnorm();
OperatorHandle max_tconorm();
OperatorHandle product_tnorm();
OperatorHandle lukasiewicz_tnorm();
OperatorHandle probsum_tconorm();
OperatorHandle lukasiewicz_tconorm();

/// C(x,y) = 1 - T(1-x, 1-y); applying it twice gives back T pointwise.
OperatorHandle dualize(const OperatorHandle& op);

struct SummandInterval {
    double lo, hi;
    OperatorHandle op;
};

/// Sorted, pairwise disjoint open intervals carrying the summand operations
/// of an ordinal sum of t-norms (or of t-conorms).
class TNormSummandList {
public:
    TNormSummandList() = default;
    explicit TNormSummandList(std::vector<SummandInterval> entries);
    const std::vector<SummandInterval>& entries() const { return entries_; }

private:
    std::vector<SummandInterval> entries_;
};
using TConormSummandList = TNormSummandList;

double eval_ordinal_sum_tnorm(const TNormSummandList& summands, double x, double y);
double eval_ordinal_sum_tconorm(const TConormSummandList& summands, double x, double y);
OperatorHandle ordinal_sum_tnorm(TNormSummandList summands);
OperatorHandle ordinal_sum_tconorm(TConormSummandList summands);

enum class ArchimedeanClass { Strict, Nilpotent, NotArchimedean, Inconclusive };
enum class CStrictness { CStrict, CNilpotent, Inconclusive };

/// Grid classification of a continuous t-norm or t-conorm.
ArchimedeanClass classify_archimedean(const OperatorHandle& op, int grid_n = 101);

/// c-strict iff no interior pair reaches the annihilator (0 for t-norms,
/// 1 for t-conorms). The zero set of a monotone operation is a corner
/// down-set, so probing the innermost grid corner decides.
CStrictness classify_c_strict(const OperatorHandle& op, int grid_n = 101);

}  // namespace unisum
