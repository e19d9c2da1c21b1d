#include "unisum/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "unisum/operators.hpp"
#include "unisum/uninorms.hpp"

namespace unisum {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

/// The switch point of the section u_x: the boundary between {z : U(x,z) < e}
/// and its complement. For sections with a jump across e this is the jump
/// location; for continuous sections it is the crossing.
double section_switch(const OperatorHandle& u, double x) {
    const double e = u.neutral;
    if (u(x, 0.0) >= e) return 0.0;
    if (u(x, 1.0) < e) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 100 && hi - lo > 1e-13; ++i) {
        double mid = 0.5 * (lo + hi);
        (u(x, mid) < e ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

using Fn2 = std::function<double(double, double)>;

constexpr double kFitStep = 2e-4;  // generator unit = value of the op at 1 -+ step
constexpr int kMaxFitNodes = 3'000'000;

/// Tabulates a decreasing additive generator of an Archimedean t-norm by
/// iterating x_{n+1} = T(x_n, 1-step); each step adds exactly one true
/// generator unit, so the nodes lie on the true generator curve.
Generator fit_tnorm_generator(const Fn2& t) {
    const double xh = 1.0 - kFitStep;
    std::vector<double> nodes{1.0};
    double x = xh;
    double at0 = kInf;
    while (static_cast<int>(nodes.size()) < kMaxFitNodes) {
        if (x <= 1e-15) {
            nodes.push_back(0.0);
            at0 = static_cast<double>(nodes.size() - 1);
            break;
        }
        if (nodes.back() - x < 1e-15) break;  // stalled: strict tail
        nodes.push_back(x);
        x = clamp01(t(x, xh));
    }
    if (static_cast<int>(nodes.size()) >= kMaxFitNodes)
        throw std::runtime_error("t-norm generator fit did not converge");
    const std::size_t n = nodes.size();
    std::vector<double> xs(n), vs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = nodes[n - 1 - i];
        vs[i] = static_cast<double>(n - 1 - i);
    }
    return make_generator(GeneratorKind::TNormDecreasing, TabulatedGenerator(xs, vs, at0, 0.0));
}

Generator fit_tconorm_generator(const Fn2& c) {
    std::vector<double> nodes{0.0};
    double x = kFitStep;
    double at1 = kInf;
    while (static_cast<int>(nodes.size()) < kMaxFitNodes) {
        if (x >= 1.0 - 1e-15) {
            nodes.push_back(1.0);
            at1 = static_cast<double>(nodes.size() - 1);
            break;
        }
        if (x - nodes.back() < 1e-15) break;
        nodes.push_back(x);
        x = clamp01(c(x, kFitStep));
    }
    if (static_cast<int>(nodes.size()) >= kMaxFitNodes)
        throw std::runtime_error("t-conorm generator fit did not converge");
    std::vector<double> vs(nodes.size());
    for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<double>(i);
    return make_generator(GeneratorKind::TConormIncreasing,
                          TabulatedGenerator(nodes, vs, 0.0, at1));
}

/// Bipolar generator of a representable uninorm with neutral 1/2, fitted one
/// side at a time from the iteration with step arguments 1/2 +- step.
Generator fit_bipolar_generator(const Fn2& ustar) {
    const double ph = 0.5 + kFitStep, ql = 0.5 - kFitStep;
    std::vector<double> pos, neg;
    double p = ph;
    while (static_cast<int>(pos.size()) < kMaxFitNodes) {
        if (p >= 1.0 - 1e-13) break;
        if (!pos.empty() && p - pos.back() < 1e-15) break;
        pos.push_back(p);
        p = clamp01(ustar(p, ph));
    }
    double q = ql;
    while (static_cast<int>(neg.size()) < kMaxFitNodes) {
        if (q <= 1e-13) break;
        if (!neg.empty() && neg.back() - q < 1e-15) break;
        neg.push_back(q);
        q = clamp01(ustar(q, ql));
    }
    if (static_cast<int>(pos.size()) >= kMaxFitNodes ||
        static_cast<int>(neg.size()) >= kMaxFitNodes)
        throw std::runtime_error("bipolar generator fit did not converge");
    std::vector<double> xs, vs;
    xs.reserve(pos.size() + neg.size() + 1);
    for (std::size_t i = neg.size(); i-- > 0;) {
        xs.push_back(neg[i]);
        vs.push_back(-static_cast<double>(i + 1));
    }
    xs.push_back(0.5);
    vs.push_back(0.0);
    for (std::size_t i = 0; i < pos.size(); ++i) {
        xs.push_back(pos[i]);
        vs.push_back(static_cast<double>(i + 1));
    }
    return make_generator(GeneratorKind::UninormBipolar, TabulatedGenerator(xs, vs, -kInf, kInf));
}

}  // namespace

double snap_value(double x, double tol) {
    double scale = 1.0;
    for (int d = 0; d <= 12; ++d, scale *= 10.0) {
        double r = std::round(x * scale) / scale;
        if (std::abs(r - x) <= tol) return r;
    }
    return x;
}

std::optional<double> section_discontinuity(const OperatorHandle& u, double x, int grid_n,
                                            double tol) {
    std::vector<double> zs = uniform_grid(grid_n);
    std::vector<double> jumps;
    for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
        double lo = zs[i], hi = zs[i + 1];
        double flo = u(x, lo), fhi = u(x, hi);
        if (fhi - flo <= 10.0 * tol) continue;
        while (hi - lo > 1e-9) {
            double mid = 0.5 * (lo + hi), fm = u(x, mid);
            if (fm - flo >= fhi - fm) {
                hi = mid;
                fhi = fm;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        if (fhi - flo > 10.0 * tol) jumps.push_back(0.5 * (lo + hi));
    }
    std::sort(jumps.begin(), jumps.end());
    std::vector<double> distinct;
    for (double j : jumps)
        if (distinct.empty() || j - distinct.back() > 1e-6) distinct.push_back(j);
    if (distinct.empty()) return std::nullopt;
    if (distinct.size() > 1)
        throw std::runtime_error("section has multiple discontinuities; operator is outside "
                                 "the class with continuous underlying operations");
    return distinct.front();
}

IdempotentStructure find_idempotents(const OperatorHandle& u, int grid_n, double tol) {
    const double e = u.neutral;
    std::vector<double> xs = uniform_grid(grid_n);
    xs.push_back(e);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    auto idem = [&u, tol](double x) { return std::abs(u(x, x) - x) <= tol; };
    auto edge = [&](double inside, double outside) {
        // Bisects the boundary of the idempotency predicate band.
        for (int i = 0; i < 60; ++i) {
            double mid = 0.5 * (inside + outside);
            (idem(mid) ? inside : outside) = mid;
        }
        return snap_value(inside, 1e-6);
    };

    IdempotentStructure out;
    const std::size_t n = xs.size();
    std::size_t i = 0;
    while (i < n) {
        if (!idem(xs[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && idem(xs[j + 1])) ++j;
        double lo = i == 0 ? xs[0] : edge(xs[i], xs[i - 1]);
        double hi = j + 1 == n ? xs[n - 1] : edge(xs[j], xs[j + 1]);
        if (lo <= hi) out.intervals.emplace_back(lo, hi);
        i = j + 1;
    }

    auto gaps_in = [&out](double lo, double hi, std::vector<std::pair<double, double>>& dst) {
        double cur = lo;
        for (const auto& [a, b] : out.intervals) {
            if (b < lo || a > hi) continue;
            double ca = std::max(a, lo), cb = std::min(b, hi);
            if (ca > cur + 1e-12) dst.emplace_back(cur, ca);
            cur = std::max(cur, cb);
        }
        if (cur < hi - 1e-12) dst.emplace_back(cur, hi);
    };
    gaps_in(0.0, e, out.lower_gaps);
    gaps_in(e, 1.0, out.upper_gaps);
    return out;
}

namespace {

constexpr double kFlatEps = 1e-6;  // switch values closer than this count as equal

/// Refines the x-location where `pred` flips from false to true.
double refine_flip(const std::function<bool(double)>& pred, double at_false, double at_true) {
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (at_false + at_true);
        (pred(mid) ? at_true : at_false) = mid;
    }
    return snap_value(0.5 * (at_false + at_true), 1e-6);
}

}  // namespace

MultiFunctionGraph extract_multifunction(const OperatorHandle& u, int grid_n, double) {
    std::vector<double> xs = uniform_grid(grid_n);
    std::vector<double> rs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) rs[i] = section_switch(u, xs[i]);
    for (std::size_t i = 0; i + 1 < rs.size(); ++i)
        if (rs[i + 1] > rs[i] + 1e-6)
            throw std::runtime_error("multi-function is not non-increasing");

    // Maximal runs of grid cells that are flat resp. decreasing; decreasing
    // runs of at most two cells are jumps between neighbouring runs, not
    // segments of their own.
    struct Run {
        bool flat;
        std::size_t i0, i1;  // sample index range [i0, i1]
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        bool flat = std::abs(rs[i + 1] - rs[i]) <= kFlatEps;
        if (!runs.empty() && runs.back().flat == flat)
            runs.back().i1 = i + 1;
        else
            runs.push_back({flat, i, i + 1});
    }
    std::erase_if(runs, [](const Run& r) { return !r.flat && r.i1 - r.i0 <= 2; });

    auto sw = [&u](double x) { return section_switch(u, x); };
    MultiFunctionGraph graph;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const Run& r = runs[k];
        MultiSegment seg;
        seg.x_lo = xs[r.i0];
        seg.x_hi = xs[r.i1];
        if (r.flat) {
            seg.kind = SegmentKind::Horizontal;
            seg.level = snap_value(rs[(r.i0 + r.i1) / 2], 1e-6);
            double level = seg.level;
            if (r.i0 > 0)
                seg.x_lo = refine_flip([&](double x) { return sw(x) <= level + kFlatEps; },
                                       xs[r.i0 - 1], xs[r.i0]);
            if (r.i1 + 1 < xs.size())
                seg.x_hi = refine_flip([&](double x) { return sw(x) < level - kFlatEps; },
                                       xs[r.i1], xs[r.i1 + 1]);
        } else {
            seg.kind = SegmentKind::StrictlyDecreasing;
            for (std::size_t i = r.i0; i <= r.i1; ++i)
                seg.samples.emplace_back(xs[i], snap_value(rs[i], 1e-6));
        }
        graph.segments.push_back(std::move(seg));
    }

    // A jump cell between a strictly decreasing run and a neighbouring flat
    // run belongs to neither; clamp the decreasing segment to the refined
    // border of the flat one.
    for (std::size_t k = 0; k + 1 < graph.segments.size(); ++k) {
        MultiSegment& a = graph.segments[k];
        MultiSegment& b = graph.segments[k + 1];
        if (a.kind == SegmentKind::StrictlyDecreasing && b.kind == SegmentKind::Horizontal) {
            a.x_hi = std::min(a.x_hi, b.x_lo);
            std::erase_if(a.samples, [&](const auto& p) { return p.first > a.x_hi + 1e-12; });
        }
        if (a.kind == SegmentKind::Horizontal && b.kind == SegmentKind::StrictlyDecreasing) {
            b.x_lo = std::max(b.x_lo, a.x_hi);
            std::erase_if(b.samples, [&](const auto& p) { return p.first < b.x_lo - 1e-12; });
        }
    }

    // Segment borders are idempotent points of the operation.
    for (std::size_t k = 0; k + 1 < graph.segments.size(); ++k) {
        double border = graph.segments[k].x_hi;
        if (std::abs(u(border, border) - border) > 1e-6)
            throw std::runtime_error("multi-function segment border is not idempotent");
    }

    // The mirror of every horizontal run is a vertical segment.
    std::vector<MultiSegment> verticals;
    for (const MultiSegment& seg : graph.segments) {
        if (seg.kind != SegmentKind::Horizontal) continue;
        MultiSegment v;
        v.kind = SegmentKind::Vertical;
        v.x_lo = v.x_hi = seg.level;
        v.y_lo = seg.x_lo;
        v.y_hi = seg.x_hi;
        verticals.push_back(v);
    }

    // Connectedness: any drop between adjacent non-vertical segments must be
    // spanned by a vertical at the shared border.
    for (std::size_t k = 0; k + 1 < graph.segments.size(); ++k) {
        const MultiSegment& a = graph.segments[k];
        const MultiSegment& b = graph.segments[k + 1];
        double va = a.kind == SegmentKind::Horizontal ? a.level : a.samples.back().second;
        double vb = b.kind == SegmentKind::Horizontal ? b.level : b.samples.front().second;
        if (va - vb <= 1e-5) continue;
        double border = 0.5 * (a.x_hi + b.x_lo);
        bool spanned = std::any_of(verticals.begin(), verticals.end(), [&](const MultiSegment& v) {
            return std::abs(v.x_lo - border) <= 1e-5 && v.y_lo <= vb + 1e-5 &&
                   v.y_hi >= va - 1e-5;
        });
        if (!spanned) throw std::runtime_error("multi-function graph is disconnected");
    }
    for (MultiSegment& v : verticals) graph.segments.push_back(std::move(v));
    return graph;
}

// ---------------------------------------------------------------------------
// decompose

namespace {

struct Piece {
    double lo, hi;
    bool idempotent;
    bool flat;
    double level = 0.0;  // flat pieces: the common switch value
};

std::vector<double> interior_samples(double lo, double hi, int m) {
    std::vector<double> out;
    double margin = std::max(1e-7, (hi - lo) * 0.02);
    for (int i = 0; i < m; ++i)
        out.push_back(lo + margin + (hi - lo - 2 * margin) * i / (m - 1));
    return out;
}

void append_part_pieces(const OperatorHandle& u, double lo, double hi, bool idempotent,
                        std::vector<Piece>& dst) {
    if (hi - lo <= 2e-9) return;
    auto sw = [&u](double x) { return section_switch(u, x); };
    std::vector<double> xs = interior_samples(lo, hi, idempotent ? 41 : 17);
    std::vector<double> rs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) rs[i] = sw(xs[i]);

    struct Run {
        bool flat;
        std::size_t i0, i1;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        bool flat = std::abs(rs[i + 1] - rs[i]) <= kFlatEps;
        if (!runs.empty() && runs.back().flat == flat)
            runs.back().i1 = i + 1;
        else
            runs.push_back({flat, i, i + 1});
    }
    std::erase_if(runs, [](const Run& r) { return !r.flat && r.i1 - r.i0 <= 1; });
    if (runs.empty()) return;

    std::vector<Piece> pieces;
    for (const Run& r : runs) {
        Piece p{xs[r.i0], xs[r.i1], idempotent, r.flat, 0.0};
        if (r.flat) p.level = snap_value(rs[(r.i0 + r.i1) / 2], 1e-6);
        pieces.push_back(p);
    }
    // Stretch the outermost pieces to the part borders and refine internal
    // borders against the flat levels (the switch is non-increasing, so the
    // flat-level predicates flip monotonically).
    pieces.front().lo = lo;
    pieces.back().hi = hi;
    for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
        Piece &a = pieces[k], &b = pieces[k + 1];
        double border;
        if (a.flat)
            border = refine_flip([&](double x) { return sw(x) < a.level - kFlatEps; }, a.hi, b.lo);
        else
            border = refine_flip([&](double x) { return sw(x) <= b.level + kFlatEps; }, a.hi, b.lo);
        a.hi = border;
        b.lo = border;
    }
    for (Piece& p : pieces) dst.push_back(p);
}

std::vector<Piece> side_pieces(const OperatorHandle& u, double side_lo, double side_hi,
                               const IdempotentStructure& idem) {
    struct Part {
        double lo, hi;
        bool idempotent;
    };
    std::vector<Part> parts;
    const auto& gaps = side_hi <= u.neutral ? idem.lower_gaps : idem.upper_gaps;
    for (const auto& [a, b] : gaps) parts.push_back({a, b, false});
    for (const auto& [a, b] : idem.intervals) {
        double lo = std::max(a, side_lo), hi = std::min(b, side_hi);
        if (hi - lo > 2e-9) parts.push_back({lo, hi, true});
    }
    std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) { return a.lo < b.lo; });
    std::vector<Piece> pieces;
    for (const Part& p : parts) append_part_pieces(u, p.lo, p.hi, p.idempotent, pieces);
    return pieces;
}

/// Pseudo-inverse of the Eq-(1) transform onto [a,b) u {v} u (c,d] with
/// neutral parameter 1/2, tolerant to round-off drift off the support.
double robust_inverse_transform(double a, double b, double c, double d, double v, double z) {
    if (std::abs(z - v) <= 1e-9) return 0.5;
    if (z <= 0.5 * (b + c)) return std::min(0.5, std::max(0.0, 0.5 * (z - a) / (b - a)));
    return std::min(1.0, std::max(0.5, 1.0 - 0.5 * (d - z) / (d - c)));
}

OperatorHandle fit_representable_block(const OperatorHandle& u, double a, double b, double c,
                                       double d, double v) {
    auto fwd = [=](double s) { return transform_point(a, b, c, d, 0.5, v, s); };
    auto ustar = [=, &u](double s, double t) {
        return robust_inverse_transform(a, b, c, d, v, u(fwd(s), fwd(t)));
    };
    Generator gen = fit_bipolar_generator(ustar);
    double ann = u(a, d);
    AnnihilatorPolicy policy = std::abs(ann - a) <= std::abs(ann - d)
                                   ? AnnihilatorPolicy::Conjunctive
                                   : AnnihilatorPolicy::Disjunctive;
    return make_representable(gen, policy);
}

OperatorHandle fit_s_internal_block(const OperatorHandle& u, double a, double b, double c,
                                    double d, double v) {
    auto fwd = [=](double s) { return transform_point(a, b, c, d, 0.5, v, s); };
    const int m = 201;
    auto pts = std::make_shared<std::vector<std::pair<double, double>>>();
    for (int i = 0; i < m; ++i) {
        double s = static_cast<double>(i) / (m - 1);
        double w;
        if (std::abs(s - 0.5) <= 1e-12)
            w = 0.5;
        else
            w = robust_inverse_transform(a, b, c, d, v,
                                         snap_value(section_switch(u, fwd(s)), 1e-9));
        if (!pts->empty() && w >= pts->back().second - 1e-12) continue;
        pts->emplace_back(s, w);
    }
    if (pts->size() < 3) throw std::runtime_error("s-internal switching curve is degenerate");

    // The on-curve rule is observable only where the curve passes through
    // exactly representable points; majority vote over snapped samples.
    int min_votes = 0, max_votes = 0;
    for (double s : {0.08, 0.16, 0.24, 0.32, 0.40}) {
        double x = fwd(s);
        double yw = snap_value(section_switch(u, x), 1e-9);
        double val = u(x, yw);
        if (std::abs(val - std::min(x, yw)) <= 1e-9)
            ++min_votes;
        else
            ++max_votes;
    }
    InternalBoundary boundary;
    boundary.on_boundary = min_votes >= max_votes ? BoundaryRule::TakeMin : BoundaryRule::TakeMax;
    boundary.boundary_tol = 1e-9;
    boundary.v = [pts](double s) {
        if (s <= pts->front().first) return pts->front().second;
        if (s >= pts->back().first) return pts->back().second;
        auto it = std::lower_bound(pts->begin(), pts->end(), s,
                                   [](const auto& p, double q) { return p.first < q; });
        auto [s1, w1] = *it;
        auto [s0, w0] = *(it - 1);
        return w0 + (w1 - w0) * (s - s0) / (s1 - s0);
    };
    return make_s_internal(boundary);
}

OperatorHandle fit_tnorm_block(const OperatorHandle& u, double a, double b) {
    auto t = [=, &u](double s, double r) {
        return clamp01((u(a + (b - a) * s, a + (b - a) * r) - a) / (b - a));
    };
    return generated_tnorm(fit_tnorm_generator(t));
}

OperatorHandle fit_tconorm_block(const OperatorHandle& u, double c, double d) {
    auto f = [=, &u](double s, double r) {
        return clamp01((u(c + (d - c) * s, c + (d - c) * r) - c) / (d - c));
    };
    return generated_tconorm(fit_tconorm_generator(f));
}

ChoiceInterval read_off_g(const OperatorHandle& u, double x0) {
    auto near_min = [&u, x0](double y) { return std::abs(u(x0, y) - std::min(x0, y)) <= 1e-9; };
    const double e = u.neutral;
    if (near_min(1.0)) return {1.0, true};
    double lo = e, hi = 1.0;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (near_min(mid) ? lo : hi) = mid;
    }
    double q = snap_value(0.5 * (lo + hi), 1e-6);
    return {q, near_min(q)};
}

ChoiceInterval read_off_h(const OperatorHandle& u, double x0) {
    auto near_min = [&u, x0](double y) { return std::abs(u(x0, y) - std::min(x0, y)) <= 1e-9; };
    const double e = u.neutral;
    if (!near_min(0.0)) return {0.0, false};
    double lo = 0.0, hi = e;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (near_min(mid) ? lo : hi) = mid;
    }
    double q = snap_value(0.5 * (lo + hi), 1e-6);
    return {q, near_min(q)};
}

}  // namespace

ResidualError::ResidualError(double r, double x_, double y_)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg << "reassembled sum misses the operator by " << r << " at (" << x_ << ", " << y_
              << ")";
          return msg.str();
      }()),
      residual(r), x(x_), y(y_) {}

DecompositionResult decompose(const OperatorHandle& u, int grid_n, double residual_tol) {
    const double e = u.neutral;
    IdempotentStructure idem = find_idempotents(u, grid_n);
    std::vector<Piece> lower = side_pieces(u, 0.0, e, idem);
    std::vector<Piece> upper = side_pieces(u, e, 1.0, idem);

    std::vector<Summand> summands;
    std::vector<SummandKind> kinds;
    ClassificationSets classes;
    std::vector<bool> consumed(upper.size(), false);

    for (const Piece& p : lower) {
        std::size_t idx = summands.size();
        if (p.flat) {
            Summand s{p.lo, p.hi, p.level, p.level,
                      p.idempotent ? min_tnorm() : fit_tnorm_block(u, p.lo, p.hi),
                      AnnihilatorPolicy::Conjunctive};
            summands.push_back(std::move(s));
            kinds.push_back(p.idempotent ? SummandKind::Internal : SummandKind::ArchimedeanTNorm);
            (p.idempotent ? classes.K4 : classes.K2).push_back(idx);
            continue;
        }
        double eps = std::max(1e-6, (p.hi - p.lo) * 1e-3);
        double c_est = section_switch(u, p.hi - eps);
        double d_est = section_switch(u, p.lo + eps);
        std::size_t match = upper.size();
        for (std::size_t j = 0; j < upper.size(); ++j) {
            if (consumed[j] || upper[j].flat || upper[j].idempotent != p.idempotent) continue;
            if (std::abs(upper[j].lo - c_est) <= 5e-3 && std::abs(upper[j].hi - d_est) <= 5e-3) {
                match = j;
                break;
            }
        }
        if (match == upper.size())
            throw std::runtime_error("no upper segment matches a strictly decreasing lower one");
        consumed[match] = true;
        double a = p.lo, b = p.hi, c = upper[match].lo, d = upper[match].hi;
        double vc = u(b, c);
        double v = std::abs(vc - b) <= std::abs(vc - c) ? b : c;
        OperatorHandle op = p.idempotent ? fit_s_internal_block(u, a, b, c, d, v)
                                         : fit_representable_block(u, a, b, c, d, v);
        summands.push_back({a, b, c, d, std::move(op), AnnihilatorPolicy::Conjunctive});
        kinds.push_back(p.idempotent ? SummandKind::SInternal : SummandKind::Representable);
        (p.idempotent ? classes.K3 : classes.K1).push_back(idx);
    }
    for (std::size_t j = 0; j < upper.size(); ++j) {
        if (consumed[j]) continue;
        const Piece& p = upper[j];
        if (!p.flat)
            throw std::runtime_error("unpaired strictly decreasing upper segment");
        std::size_t idx = summands.size();
        Summand s{p.level, p.level, p.lo, p.hi,
                  p.idempotent ? max_tconorm() : fit_tconorm_block(u, p.lo, p.hi),
                  AnnihilatorPolicy::Disjunctive};
        summands.push_back(std::move(s));
        kinds.push_back(p.idempotent ? SummandKind::Internal : SummandKind::ArchimedeanTConorm);
        (p.idempotent ? classes.N4 : classes.N2).push_back(idx);
    }

    OrdinalSumSpec base(e, std::move(summands));
    ChoiceFamilies fams = compute_choice_families(base);
    std::map<double, ChoiceInterval> g, h;
    for (const ChoicePoint& p : fams.G) g.emplace(p.x, read_off_g(u, p.x));
    for (const ChoicePoint& p : fams.H) h.emplace(p.x, read_off_h(u, p.x));
    ExtendedOrdinalSumSpec espec(std::move(base), std::move(g), std::move(h));

    double residual = 0.0;
    std::pair<double, double> witness{0.0, 0.0};
    for (double x : uniform_grid(grid_n))
        for (double y : uniform_grid(grid_n)) {
            double diff = std::abs(u(x, y) - eval_extended_sum(espec, x, y));
            if (diff > residual) {
                residual = diff;
                witness = {x, y};
            }
        }
    if (residual > residual_tol) throw ResidualError(residual, witness.first, witness.second);
    return {std::move(espec), std::move(kinds), std::move(classes), residual, witness};
}

DiffReport verify_pointwise(const OperatorHandle& a, const OperatorHandle& b, int grid_n,
                            double) {
    DiffReport out{0.0, 0.0, 0.0};
    for (double x : uniform_grid(grid_n))
        for (double y : uniform_grid(grid_n)) {
            double diff = std::abs(a(x, y) - b(x, y));
            if (diff > out.max_diff) out = {diff, x, y};
        }
    return out;
}

bool AxiomReport::ok(double tol) const {
    return std::all_of(entries.begin(), entries.end(),
                       [tol](const Entry& e) { return e.max_violation <= tol; });
}

AxiomReport check_axioms(const OperatorHandle& u, int grid_n, double) {
    std::vector<double> xs = uniform_grid(grid_n);
    AxiomReport report;

    AxiomReport::Entry comm{"commutativity", 0.0, {0, 0, 0}};
    for (double x : xs)
        for (double y : xs) {
            double v = std::abs(u(x, y) - u(y, x));
            if (v > comm.max_violation) comm = {"commutativity", v, {x, y, 0.0}};
        }
    report.entries.push_back(comm);

    AxiomReport::Entry assoc{"associativity", 0.0, {0, 0, 0}};
    for (double x : xs)
        for (double y : xs) {
            double xy = clamp01(u(x, y));
            for (double z : xs) {
                double v = std::abs(u(xy, z) - u(x, clamp01(u(y, z))));
                if (v > assoc.max_violation) assoc = {"associativity", v, {x, y, z}};
            }
        }
    report.entries.push_back(assoc);

    AxiomReport::Entry mono{"monotonicity", 0.0, {0, 0, 0}};
    for (double y : xs)
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            double v = u(xs[i], y) - u(xs[i + 1], y);
            if (v > mono.max_violation) mono = {"monotonicity", v, {xs[i], xs[i + 1], y}};
        }
    report.entries.push_back(mono);

    AxiomReport::Entry neut{"neutrality", 0.0, {u.neutral, 0, 0}};
    for (double x : xs) {
        double v = std::abs(u(u.neutral, x) - x);
        if (v > neut.max_violation) neut = {"neutrality", v, {u.neutral, x, 0.0}};
    }
    report.entries.push_back(neut);
    return report;
}

}  // namespace unisum
