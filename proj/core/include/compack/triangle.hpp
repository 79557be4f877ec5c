#pragma once

#include <array>
#include <optional>

#include "compack/constants.hpp"
#include "compack/interval.hpp"

namespace compack {

enum class DiscKind : unsigned char { small, large };

inline Interval disc_radius(DiscKind k, const ProofConstants& c) {
    return k == DiscKind::large ? Interval(1.0) : c.r;
}

// A set of candidate Delaunay triangles: edge-length intervals (edge i is
// opposite vertex i, so edge i joins vertices j and k) plus the disc kind at
// each vertex. Every edge interval must have lo > 0.
struct TriangleBox {
    std::array<Interval, 3> edge;
    std::array<DiscKind, 3> disc;
};

// Checked constructor for proof boxes: enforces edge.lo >= lower bound of the
// sum of the two incident disc radii (discs cannot overlap). Throws
// std::invalid_argument on violation.
TriangleBox make_proof_box(const std::array<Interval, 3>& edges,
                           const std::array<DiscKind, 3>& discs, const ProofConstants& c);

// Enclosure of the angle at vertex i over every triangle in the box, from
// cos(phi_i) = (x_j^2 + x_k^2 - x_i^2) / (2 x_j x_k) with the cosine argument
// clipped to [-1, 1]. Returns nullopt when the argument interval is disjoint
// from [-1, 1]: the box contains no real triangle.
std::optional<Interval> angle(const TriangleBox& t, int vertex);

// Enclosure of the area; the radicand of the 16A^2 polynomial is clipped to
// [0, inf), so boxes containing degenerate triangles yield lo == 0. Returns
// nullopt when the radicand is entirely negative (no real triangle).
std::optional<Interval> area(const TriangleBox& t);

// Enclosure of the signed distance from the circumcenter to edge i, positive
// when the circumcenter lies on the same side as the opposite vertex:
// d_i = x_i (x_j^2 + x_k^2 - x_i^2) / (8 A). Requires an area enclosure with
// lo > 0; returns nullopt otherwise (caller must split or discard the box
// first — an unbounded distance would poison every downstream enclosure).
std::optional<Interval> signed_distance(const TriangleBox& t, int edge);

// Enclosure of the circumradius R = x0 x1 x2 / (4A). When the area enclosure
// touches zero the upper endpoint is +infinity.
Interval circumradius(const TriangleBox& t);

// Certified lower bound on the circumradius over the box, from the law of
// sines R = x_i / (2 sin phi_i); sharper than the area quotient on flat boxes.
double circumradius_floor(const TriangleBox& t);

// True iff the box provably contains no triangle of a saturated packing's
// Delaunay decomposition: triangle inequality certifiably violated, or the
// circumradius lower bound exceeds 1+r (a small disc would fit at the
// circumcenter), or equivalently the area upper bound falls below
// x0 x1 x2 / (4(1+r)).
bool saturation_prune(const TriangleBox& t, const ProofConstants& c);

} // namespace compack
