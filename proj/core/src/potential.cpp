#include "compack/potential.hpp"

#include <limits>

namespace compack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SlopeSegment {
    double lo, hi; // applies to x0 in [lo, hi)
    double slope;
};

// f(d, x0, r, r): 0 below 1.8, 0.28 d up to 2.2, then 0.4 d.
constexpr SlopeSegment kSmallSmall[3] = {{-kInf, 1.8, 0.0}, {1.8, 2.2, 0.28}, {2.2, kInf, 0.4}};
// f(d, x0, r, 1) = f(d, x0, 1, r): 0 below 2.32, then 0.06 d.
constexpr SlopeSegment kMixed[2] = {{-kInf, 2.32, 0.0}, {2.32, kInf, 0.06}};

} // namespace

Potential::Potential(const ProofConstants& c) : Potential(c, c.slope_m, c.cap_v) {}

Potential::Potential(const ProofConstants& c, double slope_m, double cap)
    : c_(c), m_(slope_m), cap_(cap) {
    const Interval half(0.5);
    const Interval third = Interval(1.0) / Interval(3.0);
    const Interval one(1.0);

    // Small-disc vertex: neighbors (r,r) sit in a small equilateral triangle,
    // (r,1) in a beta triangle, (1,1) in an alpha triangle.
    base_value_[0][0] = third * c.excess_small;
    base_angle_[0][0] = c.angle_pi3;
    base_value_[0][1] = half * (one - c.param_y) * c.excess_beta;
    base_angle_[0][1] = c.angle_beta_prime;
    base_value_[0][2] = c.param_x * c.excess_alpha;
    base_angle_[0][2] = c.angle_alpha;

    // Large-disc vertex: (r,r) beta, (r,1) alpha, (1,1) large equilateral.
    base_value_[1][0] = c.param_y * c.excess_beta;
    base_angle_[1][0] = c.angle_beta;
    base_value_[1][1] = half * (one - c.param_x) * c.excess_alpha;
    base_angle_[1][1] = c.angle_alpha_prime;
    base_value_[1][2] = third * c.excess_large;
    base_angle_[1][2] = c.angle_pi3;

    radius_sq_[0] = sqr_iv(c.r);
    radius_sq_[1] = Interval(1.0);

    value_floor_ = base_value_[0][0].lo;
    for (int v = 0; v < 2; ++v)
        for (int p = 0; p < 3; ++p) value_floor_ = std::min(value_floor_, base_value_[v][p].lo);
}

Interval Potential::vertex_potential(const Interval& phi, DiscKind v, DiscKind n1,
                                     DiscKind n2) const {
    const int a = idx(v);
    const int b = pair_idx(n1, n2);
    return min_iv(base_value_[a][b] + m_ * abs_iv(phi - base_angle_[a][b]), cap_);
}

double Potential::first_slope_threshold(DiscKind e1, DiscKind e2) {
    const int p = pair_idx(e1, e2);
    if (p == 0) return kSmallSmall[1].lo;
    if (p == 1) return kMixed[1].lo;
    return kInf;
}

Interval Potential::edge_slope(const Interval& d, const Interval& x0, DiscKind e1,
                               DiscKind e2) const {
    const int p = pair_idx(e1, e2);
    if (p == 2) return Interval(0.0);
    const SlopeSegment* seg = p == 0 ? kSmallSmall : kMixed;
    const int nseg = p == 0 ? 3 : 2;
    bool first = true;
    Interval out(0.0);
    for (int s = 0; s < nseg; ++s) {
        if (!(x0.hi >= seg[s].lo && x0.lo < seg[s].hi)) continue;
        const Interval branch =
            seg[s].slope == 0.0 ? Interval(0.0) : Interval(seg[s].slope) * d;
        out = first ? branch : hull(out, branch);
        first = false;
    }
    return out;
}

// One pass over the box: squares and cosine numerators are shared between the
// angle, area and signed-distance formulas. Sums over vertices/edges 1 and 2
// are grouped as t0 + (t1 + t2), which makes the evaluation exactly symmetric
// under the x1 <-> x2 mirror (floating-point addition is commutative).
Potential::Eval Potential::margin(const TriangleBox& t, double delta_offset) const {
    const Interval q0 = sqr_iv(t.edge[0]);
    const Interval q1 = sqr_iv(t.edge[1]);
    const Interval q2 = sqr_iv(t.edge[2]);

    const Interval two(2.0);
    const Interval rad = ((two * q0 * (q1 + q2) + two * (q1 * q2)) - sqr_iv(q0)) -
                         (sqr_iv(q1) + sqr_iv(q2));
    if (rad.hi < 0.0) return {Status::infeasible, {}, {}};

    const Interval num0 = (q1 + q2) - q0;
    const Interval num1 = (q0 + q2) - q1;
    const Interval num2 = (q0 + q1) - q2;
    const Interval den0 = two * t.edge[1] * t.edge[2];
    const Interval den1 = two * t.edge[0] * t.edge[2];
    const Interval den2 = two * t.edge[0] * t.edge[1];

    const Interval cos0 = num0 / den0;
    const Interval cos1 = num1 / den1;
    const Interval cos2 = num2 / den2;
    if (cos0.lo > 1.0 || cos0.hi < -1.0 || cos1.lo > 1.0 || cos1.hi < -1.0 || cos2.lo > 1.0 ||
        cos2.hi < -1.0)
        return {Status::infeasible, {}, {}};

    const Interval phi0 = acos_iv(cos0);
    const Interval phi1 = acos_iv(cos1);
    const Interval phi2 = acos_iv(cos2);

    const Interval vsum =
        vertex_potential(phi0, t.disc[0], t.disc[1], t.disc[2]) +
        (vertex_potential(phi1, t.disc[1], t.disc[0], t.disc[2]) +
         vertex_potential(phi2, t.disc[2], t.disc[0], t.disc[1]));

    const Interval a = Interval(0.25) * sqrt_iv(rad);

    const Interval* nums[3] = {&num0, &num1, &num2};
    Interval eterm[3];
    for (int i = 0; i < 3; ++i) {
        const int j = i == 0 ? 1 : 0;
        const int k = i == 2 ? 1 : 2;
        const DiscKind d1 = t.disc[j];
        const DiscKind d2 = t.disc[k];
        if (t.edge[i].hi < first_slope_threshold(d1, d2)) {
            eterm[i] = Interval(0.0);
            continue;
        }
        if (a.lo <= 0.0) return {Status::edge_unbounded, {}, a};
        const Interval dist = t.edge[i] * *nums[i] / (Interval(8.0) * a);
        eterm[i] = edge_slope(dist, t.edge[i], d1, d2);
    }
    const Interval esum = eterm[0] + (eterm[1] + eterm[2]);
    const Interval total_pot = vsum + esum;

    const Interval half(0.5);
    const Interval cov = half * (phi0 * radius_sq_[idx(t.disc[0])] +
                                 (phi1 * radius_sq_[idx(t.disc[1])] +
                                  phi2 * radius_sq_[idx(t.disc[2])]));
    const Interval delta_eff =
        delta_offset == 0.0 ? c_.delta : c_.delta + Interval(delta_offset);
    const Interval exc = delta_eff * a - cov;

    return {Status::ok, exc - total_pot, a};
}

Potential::Eval Potential::total(const TriangleBox& t) const {
    const auto phi0 = angle(t, 0);
    const auto phi1 = angle(t, 1);
    const auto phi2 = angle(t, 2);
    const auto a = area(t);
    if (!phi0 || !phi1 || !phi2 || !a) return {Status::infeasible, {}, {}};

    const Interval vsum = vertex_potential(*phi0, t.disc[0], t.disc[1], t.disc[2]) +
                          (vertex_potential(*phi1, t.disc[1], t.disc[0], t.disc[2]) +
                           vertex_potential(*phi2, t.disc[2], t.disc[0], t.disc[1]));

    Interval eterm[3];
    for (int i = 0; i < 3; ++i) {
        const int j = i == 0 ? 1 : 0;
        const int k = i == 2 ? 1 : 2;
        const DiscKind d1 = t.disc[j];
        const DiscKind d2 = t.disc[k];
        if (t.edge[i].hi < first_slope_threshold(d1, d2)) {
            eterm[i] = Interval(0.0);
            continue;
        }
        const auto dist = signed_distance(t, i);
        if (!dist) return {Status::edge_unbounded, {}, {}};
        eterm[i] = edge_slope(*dist, t.edge[i], d1, d2);
    }
    return {Status::ok, vsum + (eterm[0] + (eterm[1] + eterm[2])), {}};
}

std::optional<Interval> Potential::coverage(const TriangleBox& t) const {
    const auto phi0 = angle(t, 0);
    const auto phi1 = angle(t, 1);
    const auto phi2 = angle(t, 2);
    if (!phi0 || !phi1 || !phi2) return std::nullopt;
    const Interval half(0.5);
    return half * (*phi0 * radius_sq_[idx(t.disc[0])] +
                   (*phi1 * radius_sq_[idx(t.disc[1])] + *phi2 * radius_sq_[idx(t.disc[2])]));
}

std::optional<Interval> Potential::excess(const TriangleBox& t) const {
    const auto cov = coverage(t);
    const auto a = area(t);
    if (!cov || !a) return std::nullopt;
    return c_.delta * *a - *cov;
}

} // namespace compack
