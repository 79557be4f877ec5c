#pragma once

#include <array>
#include <string>

#include "compack/potential.hpp"

namespace compack {

// The four families of near-contact triangles, keyed by the disc kinds at
// the vertices in canonical order (distinguished disc at vertex 0):
//   rrr: x0,x1,x2 near 2r          (three small discs)
//   lll: x0,x1,x2 near 2           (three large discs)
//   lrr: x0 near 2r, x1,x2 near 1+r (large disc at vertex 0, two small)
//   rll: x0 near 2,  x1,x2 near 1+r (small disc at vertex 0, two large)
enum class LocalFamily { rrr, lll, lrr, rll };

const char* family_name(LocalFamily f);
std::array<DiscKind, 3> family_discs(LocalFamily f);

// Rigorous derivative bounds over the family's epsilon-box
// [x, x+eps] x [y, y+eps]^2, evaluated at the box corners exactly as the
// monotonicity analysis prescribes. All boxes must contain only acute
// triangles; a domain_error("epsilon too large") is thrown otherwise.
struct FamilyBounds {
    LocalFamily family{};
    double epsilon = 0.0;

    Interval corner_x, corner_y; // enclosures of the box corner coordinates

    Interval a0, a1; // lower bounds on dA/dx_0 and dA/dx_i (i = 1,2)
    Interval c00, d00; // min/max of dphi0/dx0 (both positive)
    Interval c0i, d0i; // min/max of dphi0/dx_i, i = 1,2 (both negative)
    Interval b0, b1;   // upper bounds on sum_i |dphi_i/dx_j| for j = 0 and j = 1,2
    Interval sin0_min, sin0_max, sin1_min; // S0, S0', S1

    Interval m0, mi; // slope thresholds for edge 0 and edges 1,2

    // Faces of the certified region, consumed by the global search: a box
    // whose feasible part lies inside [face_lo, face_hi] per edge is covered.
    std::array<double, 3> face_lo{};
    std::array<double, 3> face_hi{};
};

FamilyBounds family_bounds(LocalFamily f, double epsilon, const ProofConstants& c);

struct LocalCertificate {
    bool pass = false;
    double epsilon = 0.0;
    double m = 0.0;
    std::array<FamilyBounds, 4> families{};
    bool area_slopes_positive = false; // every a-bound has lo > 0
    bool edge_terms_vanish = false;    // every edge stays below its f threshold
    std::string failure;               // empty when pass
    double runtime_seconds = 0.0;
};

// Certifies E - F >= 0 on the four epsilon-boxes: every slope threshold must
// exceed m, the area derivative bounds must be positive, and the edge
// potential must be identically zero on each box.
LocalCertificate certify_local(double epsilon, double m, const ProofConstants& c);

} // namespace compack
