#pragma once

#include <map>
#include <vector>

#include "unisum/ordinal_sum.hpp"

namespace unisum {

/// A prefix interval [0,upto) or [0,upto]; every admissible g/h choice has
/// this shape once the tail options are merged with their [0,.) prefix.
struct ChoiceInterval {
    double upto;
    bool closed;

    bool contains(double y) const { return closed ? y <= upto : y < upto; }
    bool operator==(const ChoiceInterval&) const = default;
};

/// The choice data attached to one point x of G (or H): the index set G_x,
/// the closure G_x** of its partner endpoints, the thinned set G_x*, and
/// the resulting admissible prefix intervals.
struct ChoicePoint {
    double x;
    std::vector<std::size_t> members;
    std::vector<double> closure;
    std::vector<double> star;
    std::vector<ChoiceInterval> admissible;
};

struct ChoiceFamilies {
    std::vector<ChoicePoint> G, H;

    const ChoicePoint* find_g(double x) const;
    const ChoicePoint* find_h(double x) const;
};

/// G = {b_k | a_k=b_k != e, U(b_k,c_k)=b_k} and H symmetrically; the
/// admissible families follow the F_k / F*_c (resp. J_k / J*_b) algebra,
/// with the c-strict branch gated by classify_c_strict of the relevant
/// underlying operation. Inconclusive classification is refused.
ChoiceFamilies compute_choice_families(const OrdinalSumSpec& spec);

/// The paper-default assignment under which the extended sum coincides with
/// the base ordinal sum: g(x) = [0, min{c_k}] closed, h(x) = [0, max{b_k})
/// open.
std::pair<std::map<double, ChoiceInterval>, std::map<double, ChoiceInterval>> default_choices(
    const OrdinalSumSpec& spec);

class ExtendedOrdinalSumSpec {
public:
    ExtendedOrdinalSumSpec(OrdinalSumSpec base, std::map<double, ChoiceInterval> g,
                           std::map<double, ChoiceInterval> h);

    const OrdinalSumSpec& base() const { return base_; }
    const ChoiceFamilies& families() const { return families_; }
    const std::map<double, ChoiceInterval>& g() const { return g_; }
    const std::map<double, ChoiceInterval>& h() const { return h_; }

private:
    OrdinalSumSpec base_;
    ChoiceFamilies families_;
    std::map<double, ChoiceInterval> g_, h_;
};

double eval_extended_sum(const ExtendedOrdinalSumSpec& espec, double x, double y);
OperatorHandle extended_sum_uninorm(ExtendedOrdinalSumSpec espec);

struct DiffPoint {
    double x, y;
    double base_value, extended_value;
};

/// All sampled points where V^e differs from U^e. Each one is checked to
/// lie on a G/H row or column and to satisfy U + V = x + y; a violation
/// throws with the offending point in the message.
std::vector<DiffPoint> diff_extended_vs_base(const ExtendedOrdinalSumSpec& espec, int grid_n);

}  // namespace unisum
