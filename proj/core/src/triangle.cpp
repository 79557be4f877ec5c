#include "compack/triangle.hpp"

#include <limits>
#include <stdexcept>

namespace compack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 16 A^2 as a polynomial in the squared edges, grouped so that swapping the
// roles of edges 1 and 2 reproduces the result bit for bit.
Interval area_radicand(const Interval& q0, const Interval& q1, const Interval& q2) {
    const Interval two(2.0);
    const Interval t1 = two * q0 * (q1 + q2);
    const Interval t2 = two * (q1 * q2);
    const Interval t3 = sqr_iv(q0);
    const Interval t4 = sqr_iv(q1) + sqr_iv(q2);
    return ((t1 + t2) - t3) - t4;
}

} // namespace

TriangleBox make_proof_box(const std::array<Interval, 3>& edges,
                           const std::array<DiscKind, 3>& discs, const ProofConstants& c) {
    TriangleBox t{edges, discs};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        const Interval floor = disc_radius(discs[j], c) + disc_radius(discs[k], c);
        if (!(edges[i].valid() && edges[i].lo > 0.0))
            throw std::invalid_argument("proof box edge interval invalid or not positive");
        if (edges[i].lo < floor.lo)
            throw std::invalid_argument("proof box edge below the disc non-overlap bound");
    }
    return t;
}

std::optional<Interval> angle(const TriangleBox& t, int vertex) {
    const int i = vertex;
    const int j = i == 0 ? 1 : 0;
    const int k = i == 2 ? 1 : 2;
    const Interval qi = sqr_iv(t.edge[i]);
    const Interval qj = sqr_iv(t.edge[j]);
    const Interval qk = sqr_iv(t.edge[k]);
    const Interval num = (qj + qk) - qi;
    const Interval den = Interval(2.0) * t.edge[j] * t.edge[k];
    const Interval cosv = num / den;
    if (cosv.lo > 1.0 || cosv.hi < -1.0) return std::nullopt;
    return acos_iv(cosv);
}

std::optional<Interval> area(const TriangleBox& t) {
    const Interval rad = area_radicand(sqr_iv(t.edge[0]), sqr_iv(t.edge[1]), sqr_iv(t.edge[2]));
    if (rad.hi < 0.0) return std::nullopt;
    return Interval(0.25) * sqrt_iv(rad);
}

std::optional<Interval> signed_distance(const TriangleBox& t, int edge) {
    const auto a = area(t);
    if (!a || a->lo <= 0.0) return std::nullopt;
    const int i = edge;
    const int j = i == 0 ? 1 : 0;
    const int k = i == 2 ? 1 : 2;
    const Interval qi = sqr_iv(t.edge[i]);
    const Interval qj = sqr_iv(t.edge[j]);
    const Interval qk = sqr_iv(t.edge[k]);
    const Interval num = t.edge[i] * ((qj + qk) - qi);
    return num / (Interval(8.0) * *a);
}

Interval circumradius(const TriangleBox& t) {
    const auto a = area(t);
    const Interval prod = t.edge[0] * (t.edge[1] * t.edge[2]);
    if (!a || a->hi <= 0.0) return {kInf, kInf}; // degenerate-only box
    const double lo =
        a->hi > 0.0 ? detail::div_down(prod.lo, detail::mul_up(4.0, a->hi)) : kInf;
    const double hi = a->lo > 0.0 ? detail::div_up(prod.hi, detail::mul_down(4.0, a->lo)) : kInf;
    return {lo, hi};
}

// Lower bound on the circumradius through the law of sines, R = x_i / (2 sin
// phi_i): much tighter than the area form on flat boxes, where the area
// enclosure suffers badly from the dependency problem.
double circumradius_floor(const TriangleBox& t) {
    double best = 0.0;
    for (int i = 0; i < 3; ++i) {
        const int j = i == 0 ? 1 : 0;
        const int k = i == 2 ? 1 : 2;
        const Interval num = (sqr_iv(t.edge[j]) + sqr_iv(t.edge[k])) - sqr_iv(t.edge[i]);
        const Interval den = Interval(2.0) * t.edge[j] * t.edge[k];
        const Interval cosv = num / den;
        const double abs_cos_lo = std::min(abs_iv(cosv).lo, 1.0);
        const double sin_hi = detail::sqrt_up(
            std::max(0.0, detail::sub_up(1.0, detail::mul_down(abs_cos_lo, abs_cos_lo))));
        if (sin_hi <= 0.0) continue; // degenerate everywhere: unbounded radius
        best = std::max(best, detail::div_down(t.edge[i].lo, detail::mul_up(2.0, sin_hi)));
    }
    return best;
}

bool saturation_prune(const TriangleBox& t, const ProofConstants& c) {
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        if (t.edge[i].lo > detail::add_up(t.edge[j].hi, t.edge[k].hi)) return true;
    }
    const auto a = area(t);
    if (!a) return true; // radicand entirely negative: no real triangle either
    const Interval prod = t.edge[0] * (t.edge[1] * t.edge[2]);
    if (a->hi <= 0.0) return true;
    const double r_lo = detail::div_down(prod.lo, detail::mul_up(4.0, a->hi));
    if (r_lo > c.one_plus_r.hi) return true;
    if (circumradius_floor(t) > c.one_plus_r.hi) return true;
    // Area form of the same saturation bound.
    const Interval floor = prod / (Interval(4.0) * c.one_plus_r);
    return a->hi < floor.lo;
}

} // namespace compack
