#include "unisum/extended_sum.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "unisum/operators.hpp"
#include "unisum/uninorms.hpp"

namespace unisum {

namespace {

const ChoicePoint* find_in(const std::vector<ChoicePoint>& v, double x) {
    for (const auto& p : v)
        if (p.x == x) return &p;
    return nullptr;
}

void sort_unique(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void add_choice(std::vector<ChoiceInterval>& out, double upto, bool closed) {
    ChoiceInterval c{upto, closed};
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
}

CStrictness classify_tail_conorm(const Summand& s) {
    OperatorHandle c = s.op->kind == OpKind::TConorm ? *s.op : underlying_tconorm(*s.op);
    return classify_c_strict(c);
}

CStrictness classify_tail_tnorm(const Summand& s) {
    OperatorHandle t = s.op->kind == OpKind::TNorm ? *s.op : underlying_tnorm(*s.op);
    return classify_c_strict(t);
}

}  // namespace

const ChoicePoint* ChoiceFamilies::find_g(double x) const { return find_in(G, x); }
const ChoicePoint* ChoiceFamilies::find_h(double x) const { return find_in(H, x); }

ChoiceFamilies compute_choice_families(const OrdinalSumSpec& spec) {
    ChoiceFamilies fam;
    const auto& S = spec.summands();
    const double e = spec.e();
    std::vector<double> g_points, h_points;
    for (std::size_t k = 0; k < S.size(); ++k) {
        if (S[k].a == S[k].b && S[k].b != e && spec.v(k) == S[k].b) g_points.push_back(S[k].b);
        if (S[k].c == S[k].d && S[k].c != e && spec.v(k) == S[k].c) h_points.push_back(S[k].c);
    }
    sort_unique(g_points);
    sort_unique(h_points);
    for (double x : g_points)
        if (std::find(h_points.begin(), h_points.end(), x) != h_points.end())
            throw std::invalid_argument("G and H intersect");

    for (double x : g_points) {
        ChoicePoint p;
        p.x = x;
        double c_inf = 1.0;
        for (std::size_t k = 0; k < S.size(); ++k)
            if (S[k].b == x) {
                p.members.push_back(k);
                p.closure.push_back(S[k].c);
                c_inf = std::min(c_inf, S[k].c);
            }
        sort_unique(p.closure);
        for (double c : p.closure) {
            bool is_d = std::any_of(S.begin(), S.end(),
                                    [c](const Summand& s) { return s.d == c; });
            if (!is_d) p.star.push_back(c);
        }
        for (std::size_t k : p.members) {
            const Summand& s = S[k];
            if (s.c == s.d) {
                add_choice(p.admissible, s.c, true);
                add_choice(p.admissible, s.c, false);
                continue;
            }
            CStrictness cls = classify_tail_conorm(s);
            if (cls == CStrictness::Inconclusive)
                throw std::runtime_error("c-strictness of an upper summand is inconclusive");
            add_choice(p.admissible, s.c, true);
            add_choice(p.admissible, s.d, true);
            if (cls == CStrictness::CStrict) add_choice(p.admissible, s.d, false);
        }
        for (double c : p.star) {
            add_choice(p.admissible, c, true);
            if (c != c_inf) add_choice(p.admissible, c, false);
        }
        std::sort(p.admissible.begin(), p.admissible.end(),
                  [](const ChoiceInterval& a, const ChoiceInterval& b) {
                      return a.upto != b.upto ? a.upto < b.upto : a.closed < b.closed;
                  });
        fam.G.push_back(std::move(p));
    }

    for (double x : h_points) {
        ChoicePoint p;
        p.x = x;
        double b_sup = 0.0;
        for (std::size_t k = 0; k < S.size(); ++k)
            if (S[k].c == x) {
                p.members.push_back(k);
                p.closure.push_back(S[k].b);
                b_sup = std::max(b_sup, S[k].b);
            }
        sort_unique(p.closure);
        for (double b : p.closure) {
            bool is_a = std::any_of(S.begin(), S.end(),
                                    [b](const Summand& s) { return s.a == b; });
            if (!is_a) p.star.push_back(b);
        }
        for (std::size_t k : p.members) {
            const Summand& s = S[k];
            if (s.a == s.b) {
                add_choice(p.admissible, s.a, false);
                add_choice(p.admissible, s.a, true);
                continue;
            }
            CStrictness cls = classify_tail_tnorm(s);
            if (cls == CStrictness::Inconclusive)
                throw std::runtime_error("c-strictness of a lower summand is inconclusive");
            add_choice(p.admissible, s.a, false);
            add_choice(p.admissible, s.b, false);
            if (cls == CStrictness::CStrict) add_choice(p.admissible, s.a, true);
        }
        for (double b : p.star) {
            add_choice(p.admissible, b, false);
            if (b != b_sup) add_choice(p.admissible, b, true);
        }
        std::sort(p.admissible.begin(), p.admissible.end(),
                  [](const ChoiceInterval& a, const ChoiceInterval& b) {
                      return a.upto != b.upto ? a.upto < b.upto : a.closed < b.closed;
                  });
        fam.H.push_back(std::move(p));
    }
    return fam;
}

std::pair<std::map<double, ChoiceInterval>, std::map<double, ChoiceInterval>> default_choices(
    const OrdinalSumSpec& spec) {
    ChoiceFamilies fam = compute_choice_families(spec);
    std::map<double, ChoiceInterval> g, h;
    const auto& S = spec.summands();
    for (const auto& p : fam.G) {
        double c_inf = 1.0;
        for (std::size_t k : p.members) c_inf = std::min(c_inf, S[k].c);
        g.emplace(p.x, ChoiceInterval{c_inf, true});
    }
    for (const auto& p : fam.H) {
        double b_sup = 0.0;
        for (std::size_t k : p.members) b_sup = std::max(b_sup, S[k].b);
        h.emplace(p.x, ChoiceInterval{b_sup, false});
    }
    return {std::move(g), std::move(h)};
}

ExtendedOrdinalSumSpec::ExtendedOrdinalSumSpec(OrdinalSumSpec base,
                                               std::map<double, ChoiceInterval> g,
                                               std::map<double, ChoiceInterval> h)
    : base_(std::move(base)), families_(compute_choice_families(base_)), g_(std::move(g)),
      h_(std::move(h)) {
    if (g_.size() != families_.G.size() || h_.size() != families_.H.size())
        throw std::invalid_argument("g/h must be defined exactly on G/H");
    for (const auto& [x, choice] : g_) {
        const ChoicePoint* p = families_.find_g(x);
        if (!p) throw std::invalid_argument("g defined outside G");
        if (std::find(p->admissible.begin(), p->admissible.end(), choice) == p->admissible.end())
            throw std::invalid_argument("g(x) is not an admissible choice");
    }
    for (const auto& [x, choice] : h_) {
        const ChoicePoint* p = families_.find_h(x);
        if (!p) throw std::invalid_argument("h defined outside H");
        if (std::find(p->admissible.begin(), p->admissible.end(), choice) == p->admissible.end())
            throw std::invalid_argument("h(x) is not an admissible choice");
    }
}

double eval_extended_sum(const ExtendedOrdinalSumSpec& espec, double x, double y) {
    require_unit(x, "x");
    require_unit(y, "y");
    const auto& g = espec.g();
    const auto& h = espec.h();
    auto gx = g.find(x), gy = g.find(y);
    auto hx = h.find(x), hy = h.find(y);
    bool on_row = gx != g.end() || gy != g.end() || hx != h.end() || hy != h.end();
    if (!on_row) return eval_ordinal_sum_uninorm(espec.base(), x, y);
    if ((gx != g.end() && gx->second.contains(y)) || (gy != g.end() && gy->second.contains(x)))
        return std::min(x, y);
    if (gx != g.end() || gy != g.end()) return std::max(x, y);
    if ((hx != h.end() && hx->second.contains(y)) || (hy != h.end() && hy->second.contains(x)))
        return std::min(x, y);
    return std::max(x, y);
}

OperatorHandle extended_sum_uninorm(ExtendedOrdinalSumSpec espec) {
    auto shared = std::make_shared<const ExtendedOrdinalSumSpec>(std::move(espec));
    OperatorHandle out;
    out.kind = OpKind::Uninorm;
    out.neutral = shared->base().e();
    double ann = eval_extended_sum(*shared, 1.0, 0.0);
    out.policy = std::abs(ann) <= 1e-9 ? AnnihilatorPolicy::Conjunctive
                                       : AnnihilatorPolicy::Disjunctive;
    out.eval = [shared](double x, double y) { return eval_extended_sum(*shared, x, y); };
    return out;
}

std::vector<DiffPoint> diff_extended_vs_base(const ExtendedOrdinalSumSpec& espec, int grid_n) {
    std::vector<double> xs = uniform_grid(grid_n);
    for (const auto& [x, choice] : espec.g()) xs.push_back(x);
    for (const auto& [x, choice] : espec.h()) xs.push_back(x);
    sort_unique(xs);
    auto on_gh = [&espec](double z) {
        return espec.g().count(z) > 0 || espec.h().count(z) > 0;
    };
    std::vector<DiffPoint> out;
    for (double x : xs)
        for (double y : xs) {
            double u = eval_ordinal_sum_uninorm(espec.base(), x, y);
            double v = eval_extended_sum(espec, x, y);
            if (u == v) continue;
            std::ostringstream where;
            where << "(" << x << ", " << y << ")";
            if (!on_gh(x) && !on_gh(y))
                throw std::runtime_error("extended sum differs off G/H rows at " + where.str());
            if (std::abs(u + v - (x + y)) > 1e-12)
                throw std::runtime_error("complementarity U+V=x+y violated at " + where.str());
            out.push_back({x, y, u, v});
        }
    return out;
}

}  // namespace unisum
