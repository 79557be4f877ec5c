#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace compack {

// Thrown when an interval operation is called outside its domain
// (division by an interval containing zero, sqrt of a negative
// interval, acos of an interval disjoint from [-1,1]).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline double prev_fp(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

inline double next_fp(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// Directed-rounding scalar kernels. Endpoints are produced by nudging the
// round-to-nearest result one ulp outward (predecessor/successor); when an
// error-free transformation certifies the operation was exact, the nudge is
// skipped so exact results (integer sums, perfect squares, ...) stay exact.
// No hardware rounding mode is ever touched.

inline double add_down(double a, double b) {
    const double s = a + b;
    if (std::isfinite(s)) {
        // Knuth two-sum: err == (a + b) - s exactly.
        const double bv = s - a;
        const double err = (a - (s - bv)) + (b - bv);
        if (std::isfinite(bv)) return err >= 0.0 ? s : prev_fp(s);
    }
    return prev_fp(s); // prev_fp(+inf) == DBL_MAX, a valid lower bound
}

inline double add_up(double a, double b) {
    const double s = a + b;
    if (std::isfinite(s)) {
        const double bv = s - a;
        const double err = (a - (s - bv)) + (b - bv);
        if (std::isfinite(bv)) return err <= 0.0 ? s : next_fp(s);
    }
    return next_fp(s);
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// The fma-based exactness tests below are valid only well inside the normal
// range; outside it we nudge unconditionally, which is always sound.
inline constexpr double kExactGuard = 1e-300;

inline double mul_down(double a, double b) {
    const double p = a * b;
    if (p == 0.0 && (a == 0.0 || b == 0.0)) return 0.0;
    if (std::isfinite(p) && std::fabs(p) > kExactGuard) {
        const double err = std::fma(a, b, -p); // (a*b) - p, exact
        return err >= 0.0 ? p : prev_fp(p);
    }
    return prev_fp(p);
}

inline double mul_up(double a, double b) {
    const double p = a * b;
    if (p == 0.0 && (a == 0.0 || b == 0.0)) return 0.0;
    if (std::isfinite(p) && std::fabs(p) > kExactGuard) {
        const double err = std::fma(a, b, -p);
        return err <= 0.0 ? p : next_fp(p);
    }
    return next_fp(p);
}

inline double div_down(double a, double b) {
    const double q = a / b;
    if (a == 0.0) return q == q ? 0.0 : q;
    if (std::isfinite(q) && std::fabs(q) > kExactGuard && std::fabs(a) > kExactGuard &&
        std::fabs(q) < 1e300) {
        const double rem = std::fma(q, b, -a); // q*b - a, exact here
        const bool q_is_lower = (b > 0.0) ? (rem <= 0.0) : (rem >= 0.0);
        return q_is_lower ? q : prev_fp(q);
    }
    return prev_fp(q);
}

inline double div_up(double a, double b) {
    const double q = a / b;
    if (a == 0.0) return q == q ? 0.0 : q;
    if (std::isfinite(q) && std::fabs(q) > kExactGuard && std::fabs(a) > kExactGuard &&
        std::fabs(q) < 1e300) {
        const double rem = std::fma(q, b, -a);
        const bool q_is_upper = (b > 0.0) ? (rem >= 0.0) : (rem <= 0.0);
        return q_is_upper ? q : next_fp(q);
    }
    return next_fp(q);
}

inline double sqrt_down(double x) {
    const double s = std::sqrt(x); // correctly rounded per IEEE 754
    if (s > kExactGuard && std::isfinite(s)) {
        const double err = std::fma(s, s, -x); // s*s - x, exact here
        return err <= 0.0 ? s : prev_fp(s);
    }
    return s == 0.0 ? 0.0 : prev_fp(s);
}

inline double sqrt_up(double x) {
    const double s = std::sqrt(x);
    if (s > kExactGuard && std::isfinite(s)) {
        const double err = std::fma(s, s, -x);
        return err >= 0.0 ? s : next_fp(s);
    }
    return s == 0.0 ? 0.0 : next_fp(s);
}

} // namespace detail

// A closed real interval [lo, hi] with directed-rounding endpoints: every
// operation returns an interval guaranteed to contain the true real result
// for all inputs drawn from the operand intervals. Endpoints are never NaN;
// infinities appear only as overflow artifacts. lo <= hi always; an empty
// intersection is reported through a domain_error or a caller-side signal,
// never by lo > hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    explicit constexpr Interval(double v) : lo(v), hi(v) {}
    constexpr Interval(double l, double h) : lo(l), hi(h) {}

    static constexpr Interval point(double v) { return Interval(v); }

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool is_nonneg() const { return lo >= 0.0; }
    bool is_pos() const { return lo > 0.0; }
    bool is_nonpos() const { return hi <= 0.0; }
    bool is_neg() const { return hi < 0.0; }
    bool straddles_zero() const { return lo < 0.0 && hi > 0.0; }

    bool valid() const { return lo <= hi && !std::isnan(lo) && !std::isnan(hi); }
};

inline bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}
inline bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator+(const Interval& a, const Interval& b) {
    return {detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi)};
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return {detail::sub_down(a.lo, b.hi), detail::sub_up(a.hi, b.lo)};
}

inline Interval operator*(const Interval& a, const Interval& b) {
    using detail::mul_down;
    using detail::mul_up;
    if (a.lo >= 0.0) {
        if (b.lo >= 0.0) return {mul_down(a.lo, b.lo), mul_up(a.hi, b.hi)};
        if (b.hi <= 0.0) return {mul_down(a.hi, b.lo), mul_up(a.lo, b.hi)};
        return {mul_down(a.hi, b.lo), mul_up(a.hi, b.hi)};
    }
    if (a.hi <= 0.0) {
        if (b.lo >= 0.0) return {mul_down(a.lo, b.hi), mul_up(a.hi, b.lo)};
        if (b.hi <= 0.0) return {mul_down(a.hi, b.hi), mul_up(a.lo, b.lo)};
        return {mul_down(a.lo, b.hi), mul_up(a.lo, b.lo)};
    }
    if (b.lo >= 0.0) return {mul_down(a.lo, b.hi), mul_up(a.hi, b.hi)};
    if (b.hi <= 0.0) return {mul_down(a.hi, b.lo), mul_up(a.lo, b.lo)};
    return {std::min(mul_down(a.lo, b.hi), mul_down(a.hi, b.lo)),
            std::max(mul_up(a.lo, b.lo), mul_up(a.hi, b.hi))};
}

inline Interval operator/(const Interval& a, const Interval& b) {
    using detail::div_down;
    using detail::div_up;
    if (b.lo > 0.0) {
        return {div_down(a.lo, a.lo >= 0.0 ? b.hi : b.lo),
                div_up(a.hi, a.hi >= 0.0 ? b.lo : b.hi)};
    }
    if (b.hi < 0.0) {
        return {div_down(a.hi, a.hi >= 0.0 ? b.hi : b.lo),
                div_up(a.lo, a.lo >= 0.0 ? b.lo : b.hi)};
    }
    throw domain_error("interval division by an interval containing zero");
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

// Tight square: exploits the sign correlation that a*a cannot see.
inline Interval sqr_iv(const Interval& a) {
    using detail::mul_down;
    using detail::mul_up;
    if (a.lo >= 0.0) return {mul_down(a.lo, a.lo), mul_up(a.hi, a.hi)};
    if (a.hi <= 0.0) return {mul_down(a.hi, a.hi), mul_up(a.lo, a.lo)};
    const double m = a.mag();
    return {0.0, mul_up(m, m)};
}

// Encloses sqrt(x) for all x in a intersected with [0, inf); the negative part
// of a is clipped. Callers needing full nonnegativity must check it themselves.
inline Interval sqrt_iv(const Interval& a) {
    if (a.hi < 0.0) throw domain_error("sqrt_iv of a negative interval");
    const double lo = a.lo < 0.0 ? 0.0 : a.lo;
    return {detail::sqrt_down(lo), detail::sqrt_up(a.hi)};
}

inline Interval abs_iv(const Interval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return {-a.hi, -a.lo};
    return {0.0, a.mag()};
}

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Interval min_iv(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

inline Interval max_iv(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline bool intersects(const Interval& a, const Interval& b) {
    return a.lo <= b.hi && b.lo <= a.hi;
}

// 2-ulp-wide enclosure of pi, precomputed once.
inline Interval pi_iv() {
    static const Interval p{detail::prev_fp(3.14159265358979323846),
                            detail::next_fp(3.14159265358979323846)};
    return p;
}

inline Interval two_pi_iv() {
    static const Interval p = Interval(2.0) * pi_iv();
    return p;
}

inline Interval half_pi_iv() {
    static const Interval p = Interval(0.5) * pi_iv();
    return p;
}

// Encloses arccos(x) for every x in a ∩ [-1, 1]. The input is clipped to
// [-1, 1] first: outward rounding upstream can push cosine values slightly
// outside the mathematical domain. Evaluation is monotone-decreasing (result
// lo from a.hi, result hi from a.lo) with a 2-ulp outward nudge covering the
// <=1-ulp accuracy of the platform arccos.
inline Interval acos_iv(const Interval& a) {
    const double xlo = std::max(a.lo, -1.0);
    const double xhi = std::min(a.hi, 1.0);
    if (xlo > xhi) throw domain_error("acos_iv of an interval disjoint from [-1,1]");
    double rlo = detail::prev_fp(detail::prev_fp(std::acos(xhi)));
    double rhi = detail::next_fp(detail::next_fp(std::acos(xlo)));
    if (rlo < 0.0) rlo = 0.0;                    // arccos >= 0 always
    if (rhi > pi_iv().hi) rhi = pi_iv().hi;      // arccos <= pi < pi_iv().hi
    return {rlo, rhi};
}

// asin via the one transcendental kernel: asin(x) = pi/2 - acos(x).
inline Interval asin_iv(const Interval& a) {
    return half_pi_iv() - acos_iv(a);
}

} // namespace compack
