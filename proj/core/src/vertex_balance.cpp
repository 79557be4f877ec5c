#include "compack/vertex_balance.hpp"

#include <chrono>
#include <cmath>

namespace compack {

namespace {

struct ConfigTerms {
    Interval constant; // sum of count * base_value
    Interval deficit;  // 2*pi - sum of count * base_angle
};

ConfigTerms config_terms(const VertexConfig& v, const Potential& pot) {
    const DiscKind s = DiscKind::small;
    const DiscKind l = DiscKind::large;
    const Interval b_rr = pot.base_value(v.center, s, s);
    const Interval b_m = pot.base_value(v.center, s, l);
    const Interval b_ll = pot.base_value(v.center, l, l);
    const Interval a_rr = pot.base_angle(v.center, s, s);
    const Interval a_m = pot.base_angle(v.center, s, l);
    const Interval a_ll = pot.base_angle(v.center, l, l);

    ConfigTerms t;
    t.constant = Interval(double(v.n_rr)) * b_rr + Interval(double(v.n_mixed)) * b_m +
                 Interval(double(v.n_ll)) * b_ll;
    t.deficit = two_pi_iv() - (Interval(double(v.n_rr)) * a_rr +
                               Interval(double(v.n_mixed)) * a_m +
                               Interval(double(v.n_ll)) * a_ll);
    return t;
}

} // namespace

Interval config_margin(const VertexConfig& v, const Potential& pot) {
    const ConfigTerms t = config_terms(v, pot);
    return t.constant + Interval(pot.slope_m()) * abs_iv(t.deficit);
}

std::optional<Interval> implied_slope_bound(const VertexConfig& v, const Potential& pot) {
    const ConfigTerms t = config_terms(v, pot);
    if (!t.constant.is_neg()) return std::nullopt; // nonnegative constant: no constraint
    const Interval mag = abs_iv(t.deficit);
    if (!(mag.lo > 0.0)) return std::nullopt; // deficit may vanish: no finite bound
    return -t.constant / mag;
}

VertexBalanceCertificate certify_vertex_balance(const Potential& pot, int n_max) {
    const auto t0 = std::chrono::steady_clock::now();
    const ProofConstants& c = pot.constants();

    VertexBalanceCertificate cert;
    cert.m = pot.slope_m();
    cert.n_max = n_max;
    cert.pass = true;

    // The two vertex figures of the optimal packing have margin exactly zero:
    // their constant part vanishes by the defining equation of y and their
    // angle deficit by the 2*pi identities certified with the constants.
    const VertexConfig zero_small{DiscKind::small, 1, 2, 2};
    const VertexConfig zero_large{DiscKind::large, 1, 4, 2};

    for (int center = 0; center < 2; ++center) {
        const DiscKind ck = center == 0 ? DiscKind::small : DiscKind::large;
        for (int n = 3; n <= n_max; ++n) {
            for (int n_rr = 0; n_rr <= n; ++n_rr) {
                for (int n_mixed = 0; n_mixed + n_rr <= n; ++n_mixed) {
                    const VertexConfig v{ck, n_rr, n_mixed, n - n_rr - n_mixed};
                    ++cert.configs_checked;

                    const ConfigTerms terms = config_terms(v, pot);
                    const Interval margin =
                        terms.constant + Interval(pot.slope_m()) * abs_iv(terms.deficit);

                    const bool is_zero_case = (v == zero_small) || (v == zero_large);
                    if (margin.lo >= 0.0) {
                        // certified nonnegative
                    } else if (is_zero_case && margin.contains(0.0) &&
                               margin.width() <= 1e-7 && terms.deficit.contains(0.0) &&
                               terms.constant.contains(0.0)) {
                        cert.zero_margin_configs.push_back(v);
                    } else {
                        cert.pass = false;
                        if (!cert.failed_config) {
                            cert.failed_config = v;
                            cert.failed_margin = margin;
                        }
                    }

                    if (const auto bound = implied_slope_bound(v, pot)) {
                        if (!cert.max_bound_config || bound->lo > cert.max_implied_bound.lo) {
                            cert.max_implied_bound = *bound;
                            cert.max_bound_config = v;
                        }
                    }
                }
            }
        }
    }

    // Tail: for n > n_max, each margin is at least
    //   n * (m * theta_min + value_floor) - 2*pi*m
    // once n * theta_min exceeds 2*pi, and that expression is increasing in n.
    Interval theta_min = pot.base_angle(DiscKind::small, DiscKind::small, DiscKind::small);
    Interval value_floor = pot.base_value(DiscKind::small, DiscKind::small, DiscKind::small);
    for (int center = 0; center < 2; ++center) {
        const DiscKind ck = center == 0 ? DiscKind::small : DiscKind::large;
        const DiscKind kinds[3][2] = {{DiscKind::small, DiscKind::small},
                                      {DiscKind::small, DiscKind::large},
                                      {DiscKind::large, DiscKind::large}};
        for (const auto& kn : kinds) {
            theta_min = min_iv(theta_min, pot.base_angle(ck, kn[0], kn[1]));
            value_floor = min_iv(value_floor, pot.base_value(ck, kn[0], kn[1]));
        }
    }
    cert.min_base_angle_lo = theta_min.lo;
    cert.value_floor = value_floor.lo;

    const Interval m_iv(pot.slope_m());
    const Interval angle_product = Interval(double(n_max)) * theta_min;
    const Interval per_term = m_iv * theta_min + value_floor; // m*theta_min - max negative base
    const Interval tail_margin =
        Interval(double(n_max + 1)) * per_term - two_pi_iv() * m_iv;
    cert.tail_margin_lo = tail_margin.lo;
    cert.tail_ok = angle_product.lo > two_pi_iv().hi && per_term.lo > 0.0 &&
                   tail_margin.lo > 0.0;

    // Cap case: every Delaunay angle of a saturated packing satisfies
    // sin(phi) >= r/(1+r), so the vertex degree is at most
    // floor(2*pi / asin(r/(1+r))); if any vertex term hits the cap, the ring
    // sum is at least cap + (degree-1) * value_floor.
    const Interval phi_floor = asin_iv(c.r / c.one_plus_r);
    const Interval degree = two_pi_iv() / phi_floor;
    cert.n_angle_bound = int(std::floor(degree.hi));
    const Interval cap_margin =
        Interval(pot.cap()) + Interval(double(cert.n_angle_bound - 1)) * value_floor;
    cert.cap_margin_lo = cap_margin.lo;
    cert.cap_ok = phi_floor.lo > 0.0 && cert.n_angle_bound <= n_max && cap_margin.lo > 0.0;

    if (!cert.tail_ok || !cert.cap_ok) cert.pass = false;

    cert.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

} // namespace compack
