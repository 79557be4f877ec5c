#include "compack/local_bounds.hpp"

#include <chrono>

namespace compack {

namespace {

// sin of the angle opposite edge a in the point triangle (a, b, c), via
// sqrt(1 - cos^2); valid on (0, pi) so no sign analysis is needed.
Interval sin_opposite(const Interval& a, const Interval& b, const Interval& c) {
    const Interval cosv = ((sqr_iv(b) + sqr_iv(c)) - sqr_iv(a)) / (Interval(2.0) * b * c);
    return sqrt_iv(Interval(1.0) - sqr_iv(cosv));
}

struct Corners {
    Interval x, y;
};

Corners family_corners(LocalFamily f, const ProofConstants& c) {
    switch (f) {
        case LocalFamily::rrr: return {c.two_r, c.two_r};
        case LocalFamily::lll: return {Interval(2.0), Interval(2.0)};
        case LocalFamily::lrr: return {c.two_r, c.one_plus_r};
        case LocalFamily::rll: return {Interval(2.0), c.one_plus_r};
    }
    return {};
}

} // namespace

const char* family_name(LocalFamily f) {
    switch (f) {
        case LocalFamily::rrr: return "rrr";
        case LocalFamily::lll: return "111";
        case LocalFamily::lrr: return "1rr";
        case LocalFamily::rll: return "r11";
    }
    return "?";
}

std::array<DiscKind, 3> family_discs(LocalFamily f) {
    const DiscKind s = DiscKind::small;
    const DiscKind l = DiscKind::large;
    switch (f) {
        case LocalFamily::rrr: return {s, s, s};
        case LocalFamily::lll: return {l, l, l};
        case LocalFamily::lrr: return {l, s, s};
        case LocalFamily::rll: return {s, l, l};
    }
    return {s, s, s};
}

FamilyBounds family_bounds(LocalFamily f, double epsilon, const ProofConstants& c) {
    const Corners cr = family_corners(f, c);
    const Interval eps(epsilon);
    const Interval x = cr.x, y = cr.y;
    const Interval xe = x + eps, ye = y + eps;
    const Interval one(1.0), two(2.0), eight(8.0);

    FamilyBounds out;
    out.family = f;
    out.epsilon = epsilon;
    out.corner_x = x;
    out.corner_y = y;

    // Acuteness over the box: smallest value of x_j^2 + x_k^2 - x_i^2 must be
    // positive for each i, evaluated at the adversarial corners.
    const Interval acute0 = (sqr_iv(y) + sqr_iv(y)) - sqr_iv(xe);
    const Interval acute1 = (sqr_iv(x) + sqr_iv(y)) - sqr_iv(ye);
    if (!(acute0.is_pos() && acute1.is_pos()))
        throw domain_error("epsilon too large: box contains non-acute triangles");

    // Largest area over the box: area increases in each edge.
    const Interval area_max =
        Interval(0.25) * xe * sqrt_iv(Interval(4.0) * sqr_iv(ye) - sqr_iv(xe));

    out.a0 = x * (two * sqr_iv(y) - sqr_iv(xe)) / (eight * area_max);
    out.a1 = y * ((sqr_iv(x) + sqr_iv(y)) - sqr_iv(ye)) / (eight * area_max);

    // phi0 is smallest at (x, y+e, y+e) and largest at (x+e, y, y); both
    // extremes stay acute, so the sine bounds follow the angle bounds.
    out.sin0_min = sin_opposite(x, ye, ye);
    out.sin0_max = sin_opposite(xe, y, y);
    // phi1 is smallest at x1 = y, x0 = x+e, x2 = y+e.
    out.sin1_min = sin_opposite(y, xe, ye);

    const Interval y3 = sqr_iv(y) * y;
    const Interval ye3 = sqr_iv(ye) * ye;

    out.d00 = xe / (sqr_iv(y) * out.sin0_min);
    out.c00 = x / (sqr_iv(ye) * out.sin0_max);
    out.c0i = -(((sqr_iv(ye) + sqr_iv(xe)) - sqr_iv(y)) / (two * y3 * out.sin0_min));
    out.d0i = -(((sqr_iv(y) + sqr_iv(x)) - sqr_iv(ye)) / (two * ye3 * out.sin0_max));

    // Upper bounds on |dphi1/dx_j|; phi2 bounds coincide by the x1 <-> x2
    // symmetry of the box.
    const Interval b11 = ye / (x * y * out.sin1_min);
    const Interval b10 =
        ((sqr_iv(xe) + sqr_iv(ye)) - sqr_iv(y)) / (two * sqr_iv(x) * y * out.sin1_min);
    const Interval b12 = (two * sqr_iv(ye) - sqr_iv(x)) / (two * sqr_iv(y) * x * out.sin1_min);

    out.b0 = out.d00 + two * b10;
    out.b1 = abs_iv(out.c0i) + (b11 + b12);

    // Slope thresholds. For the equilateral families the coverage D is
    // constant, so the thresholds are delta * a / b. For the mixed families
    // D varies through phi0 alone, contributing -(1-r^2)/2 * dphi0/dx_i with
    // the sign of the extremum chosen adversarially per edge.
    const Interval w = Interval(0.5) * (one - sqr_iv(c.r));
    switch (f) {
        case LocalFamily::rrr:
        case LocalFamily::lll:
            out.m0 = c.delta * out.a0 / out.b0;
            out.mi = c.delta * out.a1 / out.b1;
            break;
        case LocalFamily::lrr:
            out.m0 = (c.delta * out.a0 - w * out.d00) / out.b0;
            out.mi = (c.delta * out.a1 - w * out.d0i) / out.b1;
            break;
        case LocalFamily::rll:
            out.m0 = (c.delta * out.a0 + w * out.c00) / out.b0;
            out.mi = (c.delta * out.a1 + w * out.c0i) / out.b1;
            break;
    }

    out.face_lo = {x.lo, y.lo, y.lo};
    out.face_hi = {detail::add_up(x.hi, epsilon), detail::add_up(y.hi, epsilon),
                   detail::add_up(y.hi, epsilon)};
    return out;
}

LocalCertificate certify_local(double epsilon, double m, const ProofConstants& c) {
    const auto t0 = std::chrono::steady_clock::now();
    LocalCertificate cert;
    cert.epsilon = epsilon;
    cert.m = m;
    cert.pass = true;
    cert.area_slopes_positive = true;
    cert.edge_terms_vanish = true;

    const LocalFamily fams[4] = {LocalFamily::rrr, LocalFamily::lll, LocalFamily::lrr,
                                 LocalFamily::rll};
    for (int i = 0; i < 4; ++i) {
        FamilyBounds fb = family_bounds(fams[i], epsilon, c);
        cert.families[i] = fb;

        if (!(fb.a0.is_pos() && fb.a1.is_pos())) {
            cert.area_slopes_positive = false;
            cert.pass = false;
            cert.failure = std::string("area derivative bound not positive for family ") +
                           family_name(fams[i]);
        }
        // The mixed-family sign requirements on dphi0/dx_i.
        if ((fams[i] == LocalFamily::lrr || fams[i] == LocalFamily::rll) &&
            !(fb.c0i.is_neg() && fb.d0i.is_neg() && fb.c00.is_pos() && fb.d00.is_pos())) {
            cert.pass = false;
            cert.failure = std::string("angle derivative sign certification failed for ") +
                           family_name(fams[i]);
        }
        if (!(fb.m0.lo > m && fb.mi.lo > m)) {
            cert.pass = false;
            if (cert.failure.empty())
                cert.failure = std::string("slope threshold not above m for family ") +
                               family_name(fams[i]);
        }

        // The edge potential must vanish identically on the box: each edge's
        // largest length stays below the first nonzero slope threshold of its
        // disc pair.
        const auto discs = family_discs(fams[i]);
        for (int e = 0; e < 3; ++e) {
            const int j = e == 0 ? 1 : 0;
            const int k = e == 2 ? 1 : 2;
            const double thr = Potential::first_slope_threshold(discs[j], discs[k]);
            if (!(fb.face_hi[e] < thr)) {
                cert.edge_terms_vanish = false;
                cert.pass = false;
                cert.failure = std::string("edge potential not identically zero on family ") +
                               family_name(fams[i]);
            }
        }
    }

    cert.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

} // namespace compack
