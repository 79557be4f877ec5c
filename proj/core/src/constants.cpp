#include "compack/constants.hpp"

#include <array>
#include <cmath>

namespace compack {

namespace {

const Interval kOne(1.0);
const Interval kTwo(2.0);

void require(bool ok, const char* what) {
    if (!ok) throw internal_error(std::string("constants self-check failed: ") + what);
}

} // namespace

Interval radius_octic(const Interval& t) {
    // r^8 - 8 r^7 - 44 r^6 - 232 r^5 - 482 r^4 - 24 r^3 + 388 r^2 - 120 r + 9,
    // Horner form; all coefficients are exactly representable.
    static const double coeff[9] = {1.0, -8.0, -44.0, -232.0, -482.0, -24.0, 388.0, -120.0, 9.0};
    Interval acc(coeff[0]);
    for (int i = 1; i < 9; ++i) acc = acc * t + Interval(coeff[i]);
    return acc;
}

Interval radius_quartic(const Interval& r) {
    const Interval s3 = sqrt_iv(Interval(3.0));
    const Interval c4 = Interval(7.0) + Interval(4.0) * s3;
    const Interval c3 = Interval(20.0) + Interval(12.0) * s3;
    const Interval c2 = Interval(6.0) + Interval(4.0) * s3;
    const Interval c1 = -(Interval(20.0) + Interval(4.0) * s3);
    const Interval c0(3.0);
    return (((c4 * r + c3) * r + c2) * r + c1) * r + c0;
}

Interval isolate_radius() {
    double lo = 0.54;
    double hi = 0.55;
    // The octic has several real roots; this seed brackets the physical one.
    require(radius_octic(Interval(lo)).is_pos(), "octic not positive at 0.54");
    require(radius_octic(Interval(hi)).is_neg(), "octic not negative at 0.55");

    while (hi - lo > 1e-12) {
        const double w = hi - lo;
        // Prefer the true midpoint; fall back to off-center probes if the
        // interval evaluation there cannot certify a sign.
        static const double frac[5] = {0.5, 0.46875, 0.53125, 0.4375, 0.5625};
        bool advanced = false;
        for (double f : frac) {
            const double mid = lo + f * w;
            if (mid <= lo || mid >= hi) continue;
            const Interval pm = radius_octic(Interval(mid));
            if (pm.is_pos()) {
                lo = mid;
                advanced = true;
                break;
            }
            if (pm.is_neg()) {
                hi = mid;
                advanced = true;
                break;
            }
        }
        require(advanced, "bisection could not certify a sign at any probe");
    }

    const Interval out(lo, hi);
    require(radius_octic(Interval(lo)).is_pos() && radius_octic(Interval(hi)).is_neg(),
            "octic sign change lost after bisection");
    require(out.lo > 0.545151042 - 1e-8 && out.hi < 0.545151042 + 1e-8,
            "isolated radius is not near 0.545151042");
    return out;
}

PackingAngles packing_angles(const Interval& r) {
    PackingAngles a;
    const Interval one_plus_r = kOne + r;
    // cos(alpha) = (r^2 + 2r - 1) / (1+r)^2
    const Interval cos_alpha = (sqr_iv(r) + kTwo * r - kOne) / sqr_iv(one_plus_r);
    a.alpha = acos_iv(cos_alpha);
    // sin(beta/2) = r / (1+r)
    a.beta = kTwo * asin_iv(r / one_plus_r);
    const Interval half(0.5);
    a.alpha_prime = half * (pi_iv() - a.alpha);
    a.beta_prime = half * (pi_iv() - a.beta);
    a.pi3 = pi_iv() / Interval(3.0);
    return a;
}

Interval packing_density(const Interval& r, Interval* cell_side) {
    const Interval s3 = sqrt_iv(Interval(3.0));
    const Interval l = kOne + r + s3 * r + sqrt_iv(kOne + kTwo * r);
    if (cell_side) *cell_side = l;
    return kTwo * s3 * pi_iv() * (kOne + sqr_iv(r)) / sqr_iv(l);
}

ProofConstants compute_constants() {
    ProofConstants c;
    c.sqrt3 = sqrt_iv(Interval(3.0));
    c.r = isolate_radius();
    require(c.r.width() <= 1e-12, "radius enclosure too wide");

    require(radius_quartic(c.r).contains(0.0), "tangency quartic does not vanish at r");

    c.one_plus_r = kOne + c.r;
    c.two_r = kTwo * c.r;

    const PackingAngles ang = packing_angles(c.r);
    c.angle_alpha = ang.alpha;
    c.angle_alpha_prime = ang.alpha_prime;
    c.angle_beta = ang.beta;
    c.angle_beta_prime = ang.beta_prime;
    c.angle_pi3 = ang.pi3;

    // Vertex angle sums of the two disc types in the optimal packing.
    const Interval small_sum = kTwo * c.angle_alpha + kTwo * c.angle_beta_prime + c.angle_pi3;
    const Interval large_sum = c.angle_beta + Interval(4.0) * c.angle_alpha_prime +
                               kTwo * c.angle_pi3;
    require(intersects(small_sum, two_pi_iv()), "small-disc angle identity failed");
    require(intersects(large_sum, two_pi_iv()), "large-disc angle identity failed");

    c.delta = packing_density(c.r, &c.cell_side);
    require(c.delta.width() <= 1e-9, "density enclosure too wide");

    const Interval half(0.5);
    const Interval r2 = sqr_iv(c.r);

    // Areas of the four tangent triangles, in the isoceles closed forms:
    //   alpha (2, 1+r, 1+r):   sqrt((1+r)^2 - 1)
    //   beta  (2r, 1+r, 1+r):  r*sqrt(1+2r)
    //   small equilateral 2r:  sqrt(3) r^2
    //   large equilateral 2:   sqrt(3)
    const Interval area_alpha = sqrt_iv(sqr_iv(c.one_plus_r) - kOne);
    const Interval area_beta = c.r * sqrt_iv(kOne + kTwo * c.r);
    const Interval area_small = c.sqrt3 * r2;
    const Interval area_large = c.sqrt3;

    // Disc coverage D = sum of (1/2) phi_i r_i^2 per triangle.
    const Interval cov_alpha = half * (c.angle_alpha * r2 + kTwo * c.angle_alpha_prime);
    const Interval cov_beta = half * (c.angle_beta + kTwo * c.angle_beta_prime * r2);
    const Interval cov_small = half * pi_iv() * r2;
    const Interval cov_large = half * pi_iv();

    c.excess_alpha = c.delta * area_alpha - cov_alpha;
    c.excess_beta = c.delta * area_beta - cov_beta;
    c.excess_small = c.delta * area_small - cov_small;
    c.excess_large = c.delta * area_large - cov_large;

    require(c.excess_alpha.is_neg(), "alpha excess not negative");
    require(c.excess_beta.is_neg(), "beta excess not negative");
    require(c.excess_small.is_pos(), "small equilateral excess not positive");
    require(c.excess_large.is_pos(), "large equilateral excess not positive");
    require(c.excess_alpha.width() <= 1e-8 && c.excess_beta.width() <= 1e-8 &&
                c.excess_small.width() <= 1e-8 && c.excess_large.width() <= 1e-8,
            "excess enclosure too wide");

    // Per unit cell: 6 alpha + 3 beta + 1 small + 2 large triangles tile it
    // exactly, so the excesses must sum to zero.
    const Interval excess_sum = Interval(6.0) * c.excess_alpha + Interval(3.0) * c.excess_beta +
                                c.excess_small + kTwo * c.excess_large;
    require(excess_sum.contains(0.0) && excess_sum.width() <= 1e-7,
            "unit-cell excess sum does not vanish");

    // Mixing parameters: x = 0, and y from -y E_beta = 2 E_alpha + (2/3) E_large,
    // cross-checked against the equivalent form -E_beta - (1/3) E_small.
    c.param_x = Interval(0.0);
    const Interval rhs_a = kTwo * c.excess_alpha + Interval(2.0) / Interval(3.0) * c.excess_large;
    const Interval rhs_b = -c.excess_beta - Interval(1.0) / Interval(3.0) * c.excess_small;
    require(intersects(rhs_a, rhs_b), "the two defining forms of y do not overlap");
    c.param_y = -rhs_a / c.excess_beta;

    c.area_floor = kTwo * c.r * r2 / c.one_plus_r;

    return c;
}

} // namespace compack
