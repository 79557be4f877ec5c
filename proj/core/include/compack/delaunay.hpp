#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "compack/constants.hpp"
#include "compack/triangle.hpp"

namespace compack {

// Empirical validation layer: plain floating-point geometry with explicit
// tolerances. Nothing here is part of the certified chain; it cross-checks
// the certified inequalities on concrete packings.

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Disc {
    Vec2 center;
    DiscKind kind = DiscKind::large;
};

struct Rect {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
    bool contains(const Vec2& p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

// Translation lattice of a periodic packing patch; cells are indexed
// 0..ni-1 x 0..nj-1 from `origin` along `u` and `v`.
struct CellLattice {
    Vec2 origin, u, v;
    int ni = 0, nj = 0;
};

struct PackingInstance {
    std::vector<Disc> discs;
    Rect region;
    std::optional<CellLattice> lattice;

    double radius_of(int i, const ProofConstants& c) const {
        return discs[std::size_t(i)].kind == DiscKind::large ? 1.0 : c.r.mid();
    }
};

struct Triangulation {
    std::vector<std::array<int, 3>> triangles; // CCW disc-index triples
    std::vector<bool> hull_vertex;             // per disc: on the convex hull
};

// Delaunay triangulation of the disc centers by incremental insertion with
// circumcircle repair. Points are inserted in lexicographic order, which
// fixes the diagonal of every co-circular quadrilateral deterministically.
// Throws std::invalid_argument for fewer than 3 or all-collinear centers.
Triangulation build_delaunay(const PackingInstance& p);

struct DistanceLemmaReport {
    int edges_checked = 0;
    int edges_skipped = 0; // degenerate triangle on one side
    double min_sum = 0.0;  // smallest d + d' over shared edges
    bool ok = false;       // min_sum >= -1e-9
};

// For every interior shared edge, the two circumcenter signed distances must
// sum to a nonnegative value. Distances are evaluated through the certified
// triangle formulas on point boxes.
DistanceLemmaReport check_distance_lemma(const PackingInstance& p, const Triangulation& t);

struct DecompositionSums {
    double sum_excess = 0.0;
    double sum_potential = 0.0;
    double density = 0.0; // coverage over area, interior triangles only
    int triangles = 0;
};

// Sums E(T), F(T) and the density estimate over interior triangles. When the
// instance carries a lattice with at least one interior cell, a triangle is
// interior iff its centroid falls in a cell not on the boundary ring (the
// selection then covers whole unit cells exactly); otherwise interior means
// all three vertices off the convex hull. Edge potentials enter the F sum
// only when both triangles sharing the edge are interior, so every counted
// edge term is covered by the shared-edge pair inequality.
DecompositionSums sum_decomposition(const PackingInstance& p, const Triangulation& t,
                                    const ProofConstants& c);

enum class TriangleClass { alpha, beta, small_eq, large_eq, other };
const char* triangle_class_name(TriangleClass t);

// Classifies a triangle by its sorted edge lengths against the four contact
// triangles, within an absolute tolerance.
TriangleClass classify_triangle(const std::array<double, 3>& lengths, const ProofConstants& c,
                                double tol = 1e-6);

// Census of classified triangles with centroid in the given lattice cell.
std::array<int, 5> cell_census(const PackingInstance& p, const Triangulation& t,
                               const ProofConstants& c, int ci, int cj);

// A patch of the optimal packing: unit cells (3 large + 3 small discs each)
// tiled on the rhombic lattice of side l. All tangencies are validated to
// 1e-9 at construction (internal_error otherwise).
PackingInstance build_compact_patch(int n_cells, const ProofConstants& c);

// Triangular lattice of unit discs at spacing 2 (ni columns x nj rows).
PackingInstance build_triangular_lattice(int ni, int nj);

// Greedy random packing saturated in stages: random sequential insertion,
// then circumcenter-driven filling with small discs, then a grid sweep with
// local refinement verifying no small disc fits anywhere. Deterministic for
// a fixed seed.
PackingInstance random_saturated_packing(std::uint64_t seed, double width, double height,
                                         const ProofConstants& c);

} // namespace compack
