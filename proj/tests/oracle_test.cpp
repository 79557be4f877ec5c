// Independent re-derivation of every frozen literal in expected_values.hpp
// with 256-bit MPFR arithmetic. Keeps the unit-test expectations honest: the
// oracle shares no code with the library under test.

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "expected_values.hpp"

namespace {

constexpr mpfr_prec_t kPrec = 256;

struct Real {
    mpfr_t v;
    Real() { mpfr_init2(v, kPrec); mpfr_set_d(v, 0.0, MPFR_RNDN); }
    explicit Real(double d) { mpfr_init2(v, kPrec); mpfr_set_d(v, d, MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(v, kPrec); mpfr_set(v, o.v, MPFR_RNDN); }
    Real& operator=(const Real& o) { mpfr_set(v, o.v, MPFR_RNDN); return *this; }
    ~Real() { mpfr_clear(v); }
    double d() const { return mpfr_get_d(v, MPFR_RNDN); }
};

Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v, a.v, b.v, MPFR_RNDN); return r; }
Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v, a.v, b.v, MPFR_RNDN); return r; }
Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v, a.v, b.v, MPFR_RNDN); return r; }
Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v, a.v, b.v, MPFR_RNDN); return r; }
Real operator-(const Real& a) { Real r; mpfr_neg(r.v, a.v, MPFR_RNDN); return r; }
Real sqrt(const Real& a) { Real r; mpfr_sqrt(r.v, a.v, MPFR_RNDN); return r; }
Real acos(const Real& a) { Real r; mpfr_acos(r.v, a.v, MPFR_RNDN); return r; }
Real asin(const Real& a) { Real r; mpfr_asin(r.v, a.v, MPFR_RNDN); return r; }
Real abs(const Real& a) { Real r; mpfr_abs(r.v, a.v, MPFR_RNDN); return r; }
Real min(const Real& a, const Real& b) { Real r; mpfr_min(r.v, a.v, b.v, MPFR_RNDN); return r; }
Real pi() { Real r; mpfr_const_pi(r.v, MPFR_RNDN); return r; }
int sgn(const Real& a) { return mpfr_sgn(a.v); }

Real octic(const Real& t) {
    static const double c[9] = {1, -8, -44, -232, -482, -24, 388, -120, 9};
    Real acc(c[0]);
    for (int i = 1; i < 9; ++i) acc = acc * t + Real(c[i]);
    return acc;
}

int g_failures = 0;

void check(const char* name, const Real& got, double frozen, double tol = 1e-13) {
    const double g = got.d();
    if (std::fabs(g - frozen) > tol * std::max(1.0, std::fabs(frozen))) {
        std::printf("MISMATCH %-22s oracle=%.18g frozen=%.18g\n", name, g, frozen);
        ++g_failures;
    }
}

struct Model {
    Real r, delta, alpha, alphap, beta, betap, ea, eb, es, el, y, opr;
};

Model derive() {
    Real lo(0.54), hi(0.55);
    for (int i = 0; i < 220; ++i) {
        const Real mid = (lo + hi) * Real(0.5);
        if (sgn(octic(mid)) > 0) lo = mid; else hi = mid;
    }
    Model m;
    m.r = (lo + hi) * Real(0.5);
    const Real one(1), two(2), half(0.5), s3 = sqrt(Real(3));
    m.opr = one + m.r;
    const Real r2 = m.r * m.r;
    const Real l = one + m.r + s3 * m.r + sqrt(one + two * m.r);
    m.delta = two * s3 * pi() * (one + r2) / (l * l);
    m.alpha = acos((r2 + two * m.r - one) / (m.opr * m.opr));
    m.alphap = half * (pi() - m.alpha);
    m.beta = two * asin(m.r / m.opr);
    m.betap = half * (pi() - m.beta);
    m.ea = m.delta * sqrt(m.opr * m.opr - one) - half * (m.alpha * r2 + two * m.alphap);
    m.eb = m.delta * (m.r * sqrt(one + two * m.r)) - half * (m.beta + two * m.betap * r2);
    m.es = m.delta * (s3 * r2) - half * pi() * r2;
    m.el = m.delta * s3 - half * pi();
    m.y = -(two * m.ea + Real(2) / Real(3) * m.el) / m.eb;
    return m;
}

// Vertex potential at 256 bits; center 0 = small disc, pair counts the large
// neighbors within the triangle.
Real vertex_pot(const Model& m, const Real& phi, int center, int pair) {
    Real base, ang;
    const Real third = Real(1) / Real(3);
    if (center == 0) {
        if (pair == 0) { base = m.es * third; ang = pi() / Real(3); }
        else if (pair == 1) { base = Real(0.5) * (Real(1) - m.y) * m.eb; ang = m.betap; }
        else { base = Real(0); ang = m.alpha; }
    } else {
        if (pair == 0) { base = m.y * m.eb; ang = m.beta; }
        else if (pair == 1) { base = Real(0.5) * m.ea; ang = m.alphap; }
        else { base = m.el * third; ang = pi() / Real(3); }
    }
    return min(base + Real(0.12) * abs(phi - ang), Real(0.1));
}

struct TriEval {
    Real area, phi0, phi1, phi2, d0;
};

TriEval tri_eval(const Real& x0, const Real& x1, const Real& x2) {
    const Real two(2);
    const Real q0 = x0 * x0, q1 = x1 * x1, q2 = x2 * x2;
    TriEval t;
    t.area = Real(0.25) *
             sqrt(two * (q0 * q1 + q0 * q2 + q1 * q2) - q0 * q0 - q1 * q1 - q2 * q2);
    t.phi0 = acos((q1 + q2 - q0) / (two * x1 * x2));
    t.phi1 = acos((q0 + q2 - q1) / (two * x0 * x2));
    t.phi2 = acos((q0 + q1 - q2) / (two * x0 * x1));
    t.d0 = x0 * (q1 + q2 - q0) / (Real(8) * t.area);
    return t;
}

// Derivative-bound thresholds per family at a given box half-width.
struct Thresholds {
    double m0, mi;
};

Thresholds thresholds(const Model& mo, double x_corner_of, double y_corner_of, double eps,
                      int kind) {
    // kind: 0 equilateral, 1 mixed with D increasing in phi0, 2 decreasing
    const Real two(2), half(0.5), eight(8);
    const Real x = x_corner_of == 0 ? two * mo.r : (x_corner_of == 1 ? Real(2.0) : Real(0));
    const Real y = y_corner_of == 0 ? two * mo.r
                                    : (y_corner_of == 1 ? Real(2.0) : mo.opr);
    const Real e(eps);
    const Real xe = x + e, ye = y + e;
    const Real amax = Real(0.25) * xe * sqrt(Real(4) * ye * ye - xe * xe);
    const Real a0 = x * (two * y * y - xe * xe) / (eight * amax);
    const Real a1 = y * (x * x + y * y - ye * ye) / (eight * amax);
    const auto sin_opp = [&](const Real& a, const Real& b, const Real& c) {
        const Real cv = (b * b + c * c - a * a) / (two * b * c);
        return sqrt(Real(1) - cv * cv);
    };
    const Real s0 = sin_opp(x, ye, ye);
    const Real s0p = sin_opp(xe, y, y);
    const Real s1 = sin_opp(y, xe, ye);
    const Real d00 = xe / (y * y * s0);
    const Real c00 = x / (ye * ye * s0p);
    const Real c0i = -((ye * ye + xe * xe - y * y) / (two * y * y * y * s0));
    const Real d0i = -((y * y + x * x - ye * ye) / (two * ye * ye * ye * s0p));
    const Real b11 = ye / (x * y * s1);
    const Real b10 = (xe * xe + ye * ye - y * y) / (two * x * x * y * s1);
    const Real b12 = (two * ye * ye - x * x) / (two * y * y * x * s1);
    const Real b0 = d00 + two * b10;
    const Real b1 = abs(c0i) + b11 + b12;
    const Real w = half * (Real(1) - mo.r * mo.r);
    Thresholds out{};
    if (kind == 0) {
        out.m0 = (mo.delta * a0 / b0).d();
        out.mi = (mo.delta * a1 / b1).d();
    } else if (kind == 1) {
        out.m0 = ((mo.delta * a0 - w * d00) / b0).d();
        out.mi = ((mo.delta * a1 - w * d0i) / b1).d();
    } else {
        out.m0 = ((mo.delta * a0 + w * c00) / b0).d();
        out.mi = ((mo.delta * a1 + w * c0i) / b1).d();
    }
    return out;
}

} // namespace

int main() {
    const Model m = derive();
    const Real one(1), two(2), half(0.5), s3 = sqrt(Real(3));
    const Real r2 = m.r * m.r;

    check("r", m.r, expected::kR);
    check("delta", m.delta, expected::kDelta);
    check("cell_side", one + m.r + s3 * m.r + sqrt(one + two * m.r), expected::kCellSide);
    check("area_floor", two * m.r * r2 / m.opr, expected::kAreaFloor);
    check("alpha", m.alpha, expected::kAlpha);
    check("alpha_prime", m.alphap, expected::kAlphaPrime);
    check("beta", m.beta, expected::kBeta);
    check("beta_prime", m.betap, expected::kBetaPrime);
    check("excess_alpha", m.ea, expected::kExcessAlpha);
    check("excess_beta", m.eb, expected::kExcessBeta);
    check("excess_small", m.es, expected::kExcessSmall);
    check("excess_large", m.el, expected::kExcessLarge);
    check("param_y", m.y, expected::kParamY);
    check("y_alt_form", -(-m.eb - Real(1) / Real(3) * m.es) / m.eb, expected::kParamY);
    check("two_one_plus_r", two * m.opr, expected::kTwoOnePlusR);
    check("min_packing_angle", asin(m.r / m.opr), expected::kMinPackingAngle);
    check("D_alpha", half * (m.alpha * r2 + two * m.alphap), expected::kDAlpha);
    check("A_alpha", sqrt(m.opr * m.opr - one), expected::kAAlpha);
    check("area_slope_rrr0", m.r / s3, expected::kAreaSlopeRrr0);
    check("area_slope_1110", one / s3, expected::kAreaSlope1110);
    check("circumradius_small_eq", two * m.r / s3, expected::kCircumradiusSmallEq);
    check("inv_sqrt3", one / s3, expected::kInvSqrt3);
    check("quartic_at_1", Real(16) + Real(16) * s3, expected::kQuarticAtOne);

    // Largest slope bound over vertex configurations: large disc, counts (4,4,0).
    {
        const Real cpart = Real(4) * (m.y * m.eb) + Real(4) * (half * m.ea);
        const Real deficit = two * pi() - Real(4) * m.beta - Real(4) * m.alphap;
        check("max_slope_bound", -cpart / abs(deficit), expected::kMaxSlopeBound);
    }

    // Slope thresholds against the frozen table (x/y corner codes: 0 -> 2r,
    // 1 -> 2, otherwise 1+r).
    const double tol = 5e-9;
    check("m_rrr(0)", Real(thresholds(m, 0, 0, 0.0, 0).m0), expected::kMrrr0, tol);
    check("m_rrr(eps)", Real(thresholds(m, 0, 0, 0.001, 0).m0), expected::kMrrrEps, tol);
    check("m_111(0)", Real(thresholds(m, 1, 1, 0.0, 0).m0), expected::kM1110, tol);
    check("m_111(eps)", Real(thresholds(m, 1, 1, 0.001, 0).m0), expected::kM111Eps, tol);
    check("m0_1rr(0)", Real(thresholds(m, 0, 2, 0.0, 1).m0), expected::kM0_1rr0, tol);
    check("m0_1rr(eps)", Real(thresholds(m, 0, 2, 0.001, 1).m0), expected::kM0_1rrEps, tol);
    check("mi_1rr(0)", Real(thresholds(m, 0, 2, 0.0, 1).mi), expected::kMi_1rr0, tol);
    check("mi_1rr(eps)", Real(thresholds(m, 0, 2, 0.001, 1).mi), expected::kMi_1rrEps, tol);
    check("m0_r11(0)", Real(thresholds(m, 1, 2, 0.0, 2).m0), expected::kM0_r110, tol);
    check("m0_r11(eps)", Real(thresholds(m, 1, 2, 0.001, 2).m0), expected::kM0_r11Eps, tol);
    check("mi_r11(0)", Real(thresholds(m, 1, 2, 0.0, 2).mi), expected::kMi_r110, tol);
    check("mi_r11(eps)", Real(thresholds(m, 1, 2, 0.001, 2).mi), expected::kMi_r11Eps, tol);

    // Flat beta-family triangle excess.
    {
        const TriEval t = tri_eval(Real(2.9), Real(1.55), Real(1.55));
        const Real d = half * (t.phi0 + (t.phi1 + t.phi2) * r2);
        check("excess_flat_beta", m.delta * t.area - d, expected::kExcessFlatBeta);
    }

    // Witness points where the correction potential exceeds the excess.
    {
        const TriEval t = tri_eval(two * m.r, two * m.r, Real(1.7973));
        const Real e = m.delta * t.area - half * (t.phi0 + t.phi1 + t.phi2) * r2;
        const Real f = vertex_pot(m, t.phi0, 0, 0) + vertex_pot(m, t.phi1, 0, 0) +
                       vertex_pot(m, t.phi2, 0, 0);
        check("witness_rrr_margin", e - f, expected::kWitnessRrrMargin);
    }
    {
        const TriEval t = tri_eval(Real(2.676), m.opr, m.opr);
        const Real e = m.delta * t.area - half * (t.phi0 + (t.phi1 + t.phi2) * r2);
        const Real f = vertex_pot(m, t.phi0, 1, 0) + vertex_pot(m, t.phi1, 0, 1) +
                       vertex_pot(m, t.phi2, 0, 1) + Real(0.4) * t.d0;
        check("witness_1rr_margin", e - f, expected::kWitness1rrMargin);
    }

    if (g_failures == 0) {
        std::printf("oracle: all %s frozen values confirmed\n", "expected");
        return 0;
    }
    std::printf("oracle: %d mismatches\n", g_failures);
    return 1;
}
