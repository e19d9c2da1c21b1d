#include "unisum/ordinal_sum.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace unisum {

namespace {

bool member(const std::vector<double>& sorted, double x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

bool in_support(const Summand& s, double z) {
    return (s.a < s.b && z >= s.a && z < s.b) || (s.c < s.d && z > s.c && z <= s.d);
}

}  // namespace

double summand_annihilator(const Summand& s) {
    if (!s.op) return s.character == AnnihilatorPolicy::Conjunctive ? 0.0 : 1.0;
    double z = s.op->eval(1.0, 0.0);
    if (std::abs(z) <= 1e-9) return 0.0;
    if (std::abs(z - 1.0) <= 1e-9) return 1.0;
    throw std::invalid_argument("summand operator has no annihilator in {0,1}");
}

double transform_point(double a, double b, double c, double d, double e, double v, double x) {
    require_unit(x, "x");
    if (x == e) return v;
    if (x < e) return a + (b - a) * (x / e);
    return d - (1.0 - x) * (d - c) / (1.0 - e);
}

double inverse_transform_point(double a, double b, double c, double d, double e, double v,
                               double z) {
    if (z == v) return e;
    if (b > a && z >= a && z < b) return e * (z - a) / (b - a);
    if (d > c && z > c && z <= d) return 1.0 - (1.0 - e) * (d - z) / (d - c);
    throw std::domain_error("point outside transformed support");
}

bool TransformedOp::in_support(double z) const {
    return (a < b && z >= a && z < b) || z == v || (c < d && z > c && z <= d);
}

double TransformedOp::operator()(double x, double y) const {
    if (!in_support(x) || !in_support(y))
        throw std::domain_error("argument outside transformed support");
    double e0 = base.neutral;
    double x0 = inverse_transform_point(a, b, c, d, e0, v, x);
    double y0 = inverse_transform_point(a, b, c, d, e0, v, y);
    return transform_point(a, b, c, d, e0, v, base(x0, y0));
}

TransformedOp transform_uninorm(const OperatorHandle& u, double a, double b, double c, double d,
                                double v) {
    if (!(0.0 <= a && a <= b && b <= c && c <= d && d <= 1.0))
        throw std::invalid_argument("transform needs 0 <= a <= b <= c <= d <= 1");
    if (!(v >= b && v <= c)) throw std::invalid_argument("transform needs v in [b,c]");
    return TransformedOp{a, b, c, d, v, u};
}

BCnSets derive_B_C_n(const std::vector<Summand>& summands) {
    BCnSets out;
    for (const auto& s : summands) {
        bool b_hit = false, c_hit = false;
        for (const auto& t : summands) {
            if (s.b == t.a) b_hit = true;
            if (s.c == t.d) c_hit = true;
        }
        if (!b_hit) out.B.push_back(s.b);
        if (!c_hit) out.C.push_back(s.c);
    }
    for (auto* v : {&out.B, &out.C}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    for (const auto& s : summands) {
        if (!member(out.B, s.b)) continue;
        double nv = summand_annihilator(s) == 0.0 ? s.b : s.c;
        auto [it, inserted] = out.n.emplace(s.b, nv);
        if (!inserted && it->second != nv)
            throw std::invalid_argument("conflicting characters for n at a shared b_k");
    }
    return out;
}

double resolve_v(const std::vector<Summand>& summands, const BCnSets& bcn, std::size_t k) {
    const Summand& s = summands.at(k);
    // A summand i occupying exactly the quadrant corner (b_k, c_k) decides.
    std::optional<double> pick;
    for (std::size_t i = 0; i < summands.size(); ++i) {
        if (i == k) continue;
        const Summand& t = summands[i];
        if (t.a != s.b || t.d != s.c) continue;
        double cand = summand_annihilator(t) == 0.0 ? s.b : s.c;
        if (pick && *pick != cand)
            throw std::invalid_argument("conflicting corner summands for v_k");
        pick = cand;
    }
    if (pick) return *pick;
    bool inB = member(bcn.B, s.b), inC = member(bcn.C, s.c);
    if (inB && inC) return bcn.n.at(s.b);
    if (inB) return s.b;
    if (inC) return s.c;
    if (s.b == s.c) return s.b;
    throw std::invalid_argument("cannot resolve corner value v_k: ambiguous spec");
}

namespace {

void check_cover(std::vector<std::pair<double, double>> closures, double lo, double hi,
                 const char* side) {
    std::sort(closures.begin(), closures.end());
    double cover = lo;
    for (const auto& [a, b] : closures) {
        if (a > cover)
            throw std::invalid_argument(std::string(side) +
                                        " interval closures leave a gap");
        cover = std::max(cover, b);
    }
    if (cover < hi)
        throw std::invalid_argument(std::string(side) + " interval closures do not reach the end");
}

void check_disjoint(std::vector<std::pair<double, double>> open, const char* side) {
    open.erase(std::remove_if(open.begin(), open.end(),
                              [](const auto& p) { return p.first >= p.second; }),
               open.end());
    std::sort(open.begin(), open.end());
    for (std::size_t i = 1; i < open.size(); ++i)
        if (open[i].first < open[i - 1].second)
            throw std::invalid_argument(std::string(side) + " intervals overlap");
}

bool proper_uninorm(const OperatorHandle& op) {
    return op.kind == OpKind::Uninorm && op.neutral > 0.0 && op.neutral < 1.0;
}

}  // namespace

OrdinalSumSpec::OrdinalSumSpec(double e, std::vector<Summand> summands)
    : e_(e), summands_(std::move(summands)) {
    require_unit(e_, "e");
    if (summands_.empty()) throw std::invalid_argument("ordinal sum needs at least one summand");
    std::vector<std::pair<double, double>> lower, upper;
    for (const auto& s : summands_) {
        if (!(0.0 <= s.a && s.a <= s.b && s.b <= e_ && e_ <= s.c && s.c <= s.d && s.d <= 1.0))
            throw std::invalid_argument("summand must satisfy 0 <= a <= b <= e <= c <= d <= 1");
        bool lo = s.a < s.b, hi = s.c < s.d;
        if ((lo || hi) && !s.op)
            throw std::invalid_argument("non-empty summand needs an operator");
        if (lo && hi && !proper_uninorm(*s.op))
            throw std::invalid_argument("two-sided summand needs a proper uninorm");
        if (lo && !hi && !(s.op->kind == OpKind::TNorm || proper_uninorm(*s.op)))
            throw std::invalid_argument("lower summand needs a t-norm or proper uninorm");
        if (hi && !lo && !(s.op->kind == OpKind::TConorm || proper_uninorm(*s.op)))
            throw std::invalid_argument("upper summand needs a t-conorm or proper uninorm");
        lower.emplace_back(s.a, s.b);
        upper.emplace_back(s.c, s.d);
    }
    check_disjoint(lower, "lower");
    check_disjoint(upper, "upper");
    check_cover(lower, 0.0, e_, "lower");
    check_cover(upper, e_, 1.0, "upper");
    for (std::size_t k = 0; k < summands_.size(); ++k)
        for (std::size_t i = 0; i < summands_.size(); ++i) {
            if (i == k) continue;
            const Summand &sk = summands_[k], &si = summands_[i];
            // Anti-comonotone pairing, restricted to strict separations so
            // that summands sharing a breakpoint do not trigger it.
            if (sk.b <= si.a && !(si.b <= sk.a) && !(sk.c >= si.d))
                throw std::invalid_argument("interval systems are not anti-comonotone");
            if (sk.c >= si.d && !(si.c >= sk.d) && !(sk.b <= si.a))
                throw std::invalid_argument("interval systems are not anti-comonotone");
            if (sk.a == sk.b && sk.c == sk.d && si.a == si.b && si.c == si.d && sk.b == si.b &&
                sk.c == si.c && i > k)
                throw std::invalid_argument("duplicated empty summand at identical coordinates");
        }
    bcn_ = derive_B_C_n(summands_);
    vs_.reserve(summands_.size());
    for (std::size_t k = 0; k < summands_.size(); ++k) {
        double v = resolve_v(summands_, bcn_, k);
        if (!(v >= summands_[k].b && v <= summands_[k].c))
            throw std::invalid_argument("resolved v_k escapes [b_k, c_k]");
        vs_.push_back(v);
    }
}

double eval_ordinal_sum_uninorm(const OrdinalSumSpec& spec, double x, double y) {
    require_unit(x, "x");
    require_unit(y, "y");
    const double e = spec.e();
    if (x == e) return y;
    if (y == e) return x;
    const auto& S = spec.summands();
    for (std::size_t k = 0; k < S.size(); ++k) {
        const Summand& s = S[k];
        if (in_support(s, x) && in_support(s, y)) {
            double e0 = s.op->neutral;
            double x0 = inverse_transform_point(s.a, s.b, s.c, s.d, e0, spec.v(k), x);
            double y0 = inverse_transform_point(s.a, s.b, s.c, s.d, e0, spec.v(k), y);
            return transform_point(s.a, s.b, s.c, s.d, e0, spec.v(k), (*s.op)(x0, y0));
        }
    }
    for (const Summand& s : S)
        if (y >= s.b && y <= s.c && x >= s.a && x <= s.d && !(x >= s.b && x <= s.c)) return x;
    for (const Summand& s : S)
        if (x >= s.b && x <= s.c && y >= s.a && y <= s.d && !(y >= s.b && y <= s.c)) return y;
    const auto& bcn = spec.bcn();
    for (const Summand& s : S) {
        if (!member(bcn.B, s.b) || !member(bcn.C, s.c)) continue;
        if (!(x >= s.b && x <= s.c && y >= s.b && y <= s.c)) continue;
        bool boundary = x == s.b || x == s.c || y == s.b || y == s.c;
        if (!boundary) continue;
        if ((x == s.b && y == s.c) || (x == s.c && y == s.b)) return bcn.n.at(s.b);
        if (x + y < s.b + s.c) return std::min(x, y);
        if (x + y > s.b + s.c) return std::max(x, y);
        return std::min(x, y);  // remaining exact ties resolve to min
    }
    for (const Summand& s : S) {
        if (!member(bcn.B, s.b) || member(bcn.C, s.c)) continue;
        if ((x == s.b && y >= s.b && y <= s.c) || (y == s.b && x >= s.b && x <= s.c))
            return std::min(x, y);
    }
    for (const Summand& s : S) {
        if (member(bcn.B, s.b) || !member(bcn.C, s.c)) continue;
        if ((x == s.c && y >= s.b && y <= s.c) || (y == s.c && x >= s.b && x <= s.c))
            return std::max(x, y);
    }
    throw std::logic_error("ordinal sum evaluation reached no branch");
}

OperatorHandle ordinal_sum_uninorm(OrdinalSumSpec spec) {
    auto shared = std::make_shared<const OrdinalSumSpec>(std::move(spec));
    OperatorHandle h;
    h.kind = OpKind::Uninorm;
    h.neutral = shared->e();
    double ann = eval_ordinal_sum_uninorm(*shared, 1.0, 0.0);
    h.policy = std::abs(ann) <= 1e-9 ? AnnihilatorPolicy::Conjunctive
                                     : AnnihilatorPolicy::Disjunctive;
    h.eval = [shared](double x, double y) { return eval_ordinal_sum_uninorm(*shared, x, y); };
    return h;
}

}  // namespace unisum
