#pragma once

#include <optional>
#include <vector>

#include "compack/potential.hpp"

namespace compack {

// A vertex configuration: a disc of kind `center` surrounded by a ring of n
// triangles, of which `n_rr` have two small-disc neighbors at the far
// vertices, `n_mixed` one of each, and `n_ll` two large. The balance
// inequality asks that the sum of the n vertex potentials be nonnegative for
// every such configuration with n >= 3.
struct VertexConfig {
    DiscKind center = DiscKind::small;
    int n_rr = 0;
    int n_mixed = 0;
    int n_ll = 0;

    int n() const { return n_rr + n_mixed + n_ll; }
    bool operator==(const VertexConfig&) const = default;
};

// Left side of the balance inequality at the potential's slope m:
//   sum of count * base_value  +  m * |2*pi - sum of count * base_angle|.
Interval config_margin(const VertexConfig& v, const Potential& pot);

// The lower bound on the slope m that this configuration imposes:
// (-constant part) / |angle deficit| when the constant part is provably
// negative and the deficit provably nonzero; nullopt when the configuration
// imposes no constraint.
std::optional<Interval> implied_slope_bound(const VertexConfig& v, const Potential& pot);

struct VertexBalanceCertificate {
    bool pass = false;
    double m = 0.0;
    int n_max = 0;

    long configs_checked = 0;
    std::vector<VertexConfig> zero_margin_configs; // margin encloses zero exactly
    Interval max_implied_bound;                    // largest lower bound on m found
    std::optional<VertexConfig> max_bound_config;
    std::optional<VertexConfig> failed_config; // first certification failure
    Interval failed_margin;

    // Tail completeness: for n > n_max every margin is provably positive.
    double min_base_angle_lo = 0.0; // certified lower bound on every base angle
    double tail_margin_lo = 0.0;    // margin lower bound at n = n_max + 1
    bool tail_ok = false;

    // Cap argument: the Delaunay vertex degree of a saturated packing is at
    // most n_angle_bound, so one capped term dominates the possible negatives.
    int n_angle_bound = 0;
    double value_floor = 0.0;   // certified lower bound on every vertex potential
    double cap_margin_lo = 0.0; // cap + (n_angle_bound - 1) * value_floor
    bool cap_ok = false;

    double runtime_seconds = 0.0;
};

// Enumerates every configuration with 3 <= n <= n_max and certifies the
// balance inequality at the potential's slope; the two configurations of the
// optimal packing have margin exactly zero and are accepted through the
// identity checks (angle deficit and constant part both enclose zero).
VertexBalanceCertificate certify_vertex_balance(const Potential& pot, int n_max = 24);

} // namespace compack
