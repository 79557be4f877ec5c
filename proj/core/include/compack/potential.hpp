#pragma once

#include <optional>

#include "compack/constants.hpp"
#include "compack/interval.hpp"
#include "compack/triangle.hpp"

namespace compack {

// The per-triangle quantities of the density argument: disc coverage D(T),
// excess E(T) = delta*A(T) - D(T), the vertex and edge correction potentials,
// their total F(T), and the certified margin E(T) - F(T).
//
// The vertex potential at a vertex holding a disc of kind v surrounded (within
// the triangle) by discs of kinds n1, n2 is
//     min( base(v, {n1,n2}) + m * |phi - phi0(v, {n1,n2})|, cap )
// where (base, phi0) come from a six-entry table fixed by the four contact
// triangles and the mixing parameters x = 0, y. The edge potential on an edge
// of length x0 joining discs e1, e2 is f(d, x0, e1, e2), an odd increasing
// piecewise-linear function of the circumcenter signed distance d.
class Potential {
public:
    explicit Potential(const ProofConstants& c);
    Potential(const ProofConstants& c, double slope_m, double cap);

    const ProofConstants& constants() const { return c_; }
    double slope_m() const { return m_.lo; }
    double cap() const { return cap_.lo; }

    // Base value / minimizing angle of the vertex potential for a vertex disc
    // `v` with triangle neighbors `n1`, `n2` (symmetric in n1, n2).
    const Interval& base_value(DiscKind v, DiscKind n1, DiscKind n2) const {
        return base_value_[idx(v)][pair_idx(n1, n2)];
    }
    const Interval& base_angle(DiscKind v, DiscKind n1, DiscKind n2) const {
        return base_angle_[idx(v)][pair_idx(n1, n2)];
    }

    // Smallest lower bound over the six base values; the vertex potential can
    // never fall below it.
    double value_floor() const { return value_floor_; }

    // D(T) = sum of (1/2) phi_i r_i^2. nullopt: no real triangle in the box.
    std::optional<Interval> coverage(const TriangleBox& t) const;

    // E(T) = delta * A(T) - D(T). nullopt: no real triangle in the box.
    std::optional<Interval> excess(const TriangleBox& t) const;

    // Vertex potential over an angle enclosure.
    Interval vertex_potential(const Interval& phi, DiscKind v, DiscKind n1, DiscKind n2) const;

    // Edge slope function f over (d, x0) boxes. When x0 straddles a slope
    // threshold the result is the hull of the per-branch evaluations.
    Interval edge_slope(const Interval& d, const Interval& x0, DiscKind e1, DiscKind e2) const;

    // First edge length at which f becomes nonzero for the given disc pair;
    // +infinity for two large discs (f is identically zero there).
    static double first_slope_threshold(DiscKind e1, DiscKind e2);

    enum class Status {
        ok,
        infeasible,      // no real triangle in the box
        edge_unbounded,  // an edge term with nonzero slope needs a signed
                         // distance but the area enclosure touches zero
    };
    struct Eval {
        Status status = Status::infeasible;
        Interval value; // meaningful only when status == ok
        Interval area;  // filled unless status == infeasible
    };

    // F(T): three vertex potentials plus three edge potentials.
    Eval total(const TriangleBox& t) const;

    // E(T) - F(T) in one pass, sharing the angle and area enclosures.
    // delta_offset shifts delta inside E (sensitivity experiments only).
    Eval margin(const TriangleBox& t, double delta_offset = 0.0) const;

private:
    static int idx(DiscKind v) { return v == DiscKind::small ? 0 : 1; }
    static int pair_idx(DiscKind a, DiscKind b) {
        return (a == DiscKind::small ? 0 : 1) + (b == DiscKind::small ? 0 : 1);
    }

    ProofConstants c_;
    Interval m_, cap_;
    Interval base_value_[2][3];
    Interval base_angle_[2][3];
    Interval radius_sq_[2]; // r^2, [1,1]
    double value_floor_ = 0.0;
};

} // namespace compack
