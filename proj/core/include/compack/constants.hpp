#pragma once

#include <stdexcept>
#include <string>

#include "compack/interval.hpp"

namespace compack {

// Thrown when a self-check that must hold by construction fails
// (failed root isolation, inconsistent enclosures, ...).
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Rigorous enclosures of every constant the verification chain consumes.
// Computed once at startup, then shared immutably.
struct ProofConstants {
    Interval r;          // small disc radius, root of the degree-8 polynomial
    Interval delta;      // target packing density

    // Per-triangle excesses E = delta*A - D of the four tangent triangles.
    Interval excess_alpha;  // (2, 1+r, 1+r), discs r,1,1 — negative
    Interval excess_beta;   // (2r, 1+r, 1+r), discs 1,r,r — negative
    Interval excess_small;  // equilateral 2r — positive
    Interval excess_large;  // equilateral 2 — positive

    // Contact angles of the optimal packing, radians.
    Interval angle_alpha;        // at the small disc of the alpha triangle
    Interval angle_alpha_prime;  // at each large disc of the alpha triangle
    Interval angle_beta;         // at the large disc of the beta triangle
    Interval angle_beta_prime;   // at each small disc of the beta triangle
    Interval angle_pi3;          // pi/3

    Interval param_x;  // mixing parameter x, pinned to [0,0]
    Interval param_y;  // mixing parameter y, ~0.5288

    double slope_m = 0.12;  // vertex potential slope
    double cap_v = 0.1;     // vertex potential ceiling

    Interval cell_side;   // side length l of the packing's unit cell
    Interval area_floor;  // 2r^3/(1+r), minimum Delaunay triangle area when saturated

    // Derived values used throughout.
    Interval one_plus_r;
    Interval two_r;
    Interval sqrt3;
};

// The degree-8 polynomial whose root defines the small radius.
Interval radius_octic(const Interval& t);

// The tangency quartic (7+4√3)r⁴ + (20+12√3)r³ + (6+4√3)r² − (20+4√3)r + 3;
// evaluating it at the isolated radius must give an interval containing zero.
Interval radius_quartic(const Interval& r);

// Certified bisection on [0.54, 0.55]: returns an interval of width <= 1e-12
// on which the octic provably changes sign. Throws internal_error if sign
// certification ever fails (it cannot, for this polynomial and seed).
Interval isolate_radius();

struct PackingAngles {
    Interval alpha;
    Interval alpha_prime;
    Interval beta;
    Interval beta_prime;
    Interval pi3;
};

PackingAngles packing_angles(const Interval& r);

// Density of the compact packing: 2*sqrt(3)*pi*(1+r^2)/l^2 with
// l = 1 + r + sqrt(3)*r + sqrt(1+2r). Also returns l through *cell_side.
Interval packing_density(const Interval& r, Interval* cell_side = nullptr);

// Builds and self-checks the full set. Throws internal_error when any
// consistency condition fails (sign certificates, angle identities, the
// zero excess sum, overlap of the two defining forms of y, width targets).
ProofConstants compute_constants();

} // namespace compack
