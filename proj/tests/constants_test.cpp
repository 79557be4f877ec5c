#include <doctest.h>

#include "compack/constants.hpp"
#include "expected_values.hpp"

using namespace compack;

namespace {

const ProofConstants& consts() {
    static const ProofConstants c = compute_constants();
    return c;
}

bool encloses(const Interval& v, double x, double max_width) {
    return v.contains(x) && v.width() <= max_width;
}

Interval inflate10(const Interval& v) {
    const double mid = v.mid();
    const double h = 5.0 * v.width() + 1e-15;
    return {mid - h, mid + h};
}

} // namespace

TEST_SUITE_BEGIN("constants");

TEST_CASE("radius isolation") {
    const Interval r = isolate_radius();
    CHECK(r.width() <= 1e-12);
    CHECK(encloses(r, expected::kR, 1e-12));
    CHECK(radius_octic(r).contains(0.0));
    // strict opposite signs at the endpoints
    CHECK(radius_octic(Interval(r.lo)).is_pos());
    CHECK(radius_octic(Interval(r.hi)).is_neg());
}

TEST_CASE("octic away from the root") {
    const Interval at_half = radius_octic(Interval(0.5));
    CHECK_FALSE(at_half.contains(0.0));
    CHECK(at_half.contains(4.87890625)); // exact dyadic value of the polynomial at 1/2
    CHECK(at_half.width() < 1e-12);
}

TEST_CASE("tangency quartic") {
    CHECK(radius_quartic(consts().r).contains(0.0));
    const Interval at0 = radius_quartic(Interval(0.0));
    CHECK(encloses(at0, 3.0, 1e-14));
    CHECK(encloses(radius_quartic(Interval(1.0)), expected::kQuarticAtOne, 1e-12));
}

TEST_CASE("density and cell side") {
    const ProofConstants& c = consts();
    CHECK(encloses(c.delta, expected::kDelta, 1e-9));
    CHECK(encloses(c.cell_side, expected::kCellSide, 1e-9));
    CHECK(encloses(c.area_floor, expected::kAreaFloor, 1e-9));

    // widening r keeps the enclosure valid, just wider
    const Interval wide_r(c.r.lo - 5e-4, c.r.hi + 5e-4);
    const Interval wide_delta = packing_density(wide_r);
    CHECK(wide_delta.contains(expected::kDelta));
    CHECK(wide_delta.width() > c.delta.width());
}

TEST_CASE("packing angles and identities") {
    const ProofConstants& c = consts();
    CHECK(encloses(c.angle_alpha, expected::kAlpha, 1e-10));
    CHECK(encloses(c.angle_alpha_prime, expected::kAlphaPrime, 1e-10));
    CHECK(encloses(c.angle_beta, expected::kBeta, 1e-10));
    CHECK(encloses(c.angle_beta_prime, expected::kBetaPrime, 1e-10));

    const Interval small_sum =
        Interval(2.0) * c.angle_alpha + Interval(2.0) * c.angle_beta_prime + c.angle_pi3;
    const Interval large_sum = c.angle_beta + Interval(4.0) * c.angle_alpha_prime +
                               Interval(2.0) * c.angle_pi3;
    CHECK(intersects(small_sum, two_pi_iv()));
    CHECK(intersects(large_sum, two_pi_iv()));
}

TEST_CASE("excesses") {
    const ProofConstants& c = consts();
    CHECK(encloses(c.excess_alpha, expected::kExcessAlpha, 1e-8));
    CHECK(encloses(c.excess_beta, expected::kExcessBeta, 1e-8));
    CHECK(encloses(c.excess_small, expected::kExcessSmall, 1e-8));
    CHECK(encloses(c.excess_large, expected::kExcessLarge, 1e-8));
    CHECK(c.excess_alpha.is_neg());
    CHECK(c.excess_beta.is_neg());
    CHECK(c.excess_small.is_pos());
    CHECK(c.excess_large.is_pos());

    const Interval cell_sum = Interval(6.0) * c.excess_alpha + Interval(3.0) * c.excess_beta +
                              c.excess_small + Interval(2.0) * c.excess_large;
    CHECK(cell_sum.contains(0.0));
    CHECK(cell_sum.width() <= 1e-7);
}

TEST_CASE("sign conditions survive tenfold width inflation") {
    const ProofConstants& c = consts();
    CHECK(inflate10(c.excess_alpha).is_neg());
    CHECK(inflate10(c.excess_beta).is_neg());
    CHECK(inflate10(c.excess_small).is_pos());
    CHECK(inflate10(c.excess_large).is_pos());
    CHECK(inflate10(c.r).is_pos());
    CHECK(inflate10(c.delta).is_pos());
}

TEST_CASE("mixing parameters") {
    const ProofConstants& c = consts();
    CHECK(c.param_x == Interval(0.0));
    CHECK(encloses(c.param_y, expected::kParamY, 1e-7));

    // the two defining forms of y overlap
    const Interval form_a = Interval(2.0) * c.excess_alpha +
                            Interval(2.0) / Interval(3.0) * c.excess_large;
    const Interval form_b = -c.excess_beta - Interval(1.0) / Interval(3.0) * c.excess_small;
    CHECK(intersects(form_a, form_b));
}

TEST_CASE("pinned potential parameters") {
    CHECK(consts().slope_m == 0.12);
    CHECK(consts().cap_v == 0.1);
}

TEST_SUITE_END();
