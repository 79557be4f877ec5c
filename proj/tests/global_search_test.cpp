#include <cmath>
#include <random>

#include <doctest.h>

#include "compack/global_search.hpp"
#include "expected_values.hpp"

using namespace compack;

namespace {

const ProofConstants& consts() {
    static const ProofConstants c = compute_constants();
    return c;
}

const Potential& pot() {
    static const Potential p(consts());
    return p;
}

const LocalCertificate& local_cert() {
    static const LocalCertificate lc = certify_local(0.001, 0.12, consts());
    return lc;
}

constexpr DiscKind S = DiscKind::small;
constexpr DiscKind L = DiscKind::large;

// Scalar midpoint evaluation of E - F, for auditing interval decisions.
double scalar_margin(const TriangleBox& b) {
    TriangleBox mid = b;
    for (int i = 0; i < 3; ++i) mid.edge[i] = Interval(b.edge[i].mid());
    const auto ev = pot().margin(mid);
    REQUIRE(ev.status == Potential::Status::ok);
    return ev.value.mid();
}

} // namespace

TEST_SUITE_BEGIN("global_search");

TEST_CASE("initial boxes") {
    const auto roots = initial_boxes(consts());
    // three small discs
    CHECK(roots[0].edge[0].lo == consts().two_r.lo);
    CHECK(roots[0].edge[0].hi == (Interval(2.0) * consts().one_plus_r).hi);
    CHECK(roots[0].edge[0].hi == doctest::Approx(expected::kTwoOnePlusR));
    // one large at vertex 0, two small: edge 0 joins the smalls
    CHECK(roots[2].disc[0] == L);
    CHECK(roots[2].edge[0].lo == consts().two_r.lo);
    CHECK(roots[2].edge[1].lo == consts().one_plus_r.lo);
    // one small at vertex 0, two large: edge 0 joins the larges
    CHECK(roots[3].disc[0] == S);
    CHECK(roots[3].edge[0].lo == 2.0);
}

TEST_CASE("near-contact boxes are recognized") {
    const TriangleBox b{{Interval(2.0, 2.0009), Interval(2.0, 2.0009), Interval(2.0, 2.0009)},
                        {L, L, L}};
    const auto out = try_discard(b, LocalFamily::lll, pot(), local_cert());
    CHECK(out.discarded);
    CHECK(out.reason == DiscardReason::local_box);

    // the full half-width box, endpoints included
    const TriangleBox full{{Interval(2.0, 2.001), Interval(2.0, 2.001), Interval(2.0, 2.001)},
                           {L, L, L}};
    const auto out_full = try_discard(full, LocalFamily::lll, pot(), local_cert());
    CHECK(out_full.discarded);
    CHECK(out_full.reason == DiscardReason::local_box);

    // sticking out of the certified region is no longer a local discard
    const TriangleBox out_box{
        {Interval(2.0, 2.002), Interval(2.0, 2.001), Interval(2.0, 2.001)}, {L, L, L}};
    const auto kept = try_discard(out_box, LocalFamily::lll, pot(), local_cert());
    CHECK((!kept.discarded || kept.reason != DiscardReason::local_box));
}

TEST_CASE("fat boxes far from the contact corners have nonnegative margin") {
    const TriangleBox b{{Interval(2.5, 2.6), Interval(2.5, 2.6), Interval(2.5, 2.6)},
                        {S, S, S}};
    const auto out = try_discard(b, LocalFamily::rrr, pot(), local_cert());
    CHECK(out.discarded);
    CHECK(out.reason == DiscardReason::nonneg_margin);
    REQUIRE(out.margin);
    CHECK(out.margin->is_nonneg());
}

TEST_CASE("near-degenerate boxes fall to the saturation prune") {
    const TriangleBox b{
        {Interval(3.05, 3.0903), Interval(1.545, 1.56), Interval(1.545, 1.56)}, {L, S, S}};
    const auto out = try_discard(b, LocalFamily::lrr, pot(), local_cert());
    CHECK(out.discarded);
    CHECK(out.reason == DiscardReason::saturation);
}

TEST_CASE("impossible edge combinations are infeasible") {
    const TriangleBox b{{Interval(3.0, 3.05), Interval(1.2, 1.25), Interval(1.2, 1.25)},
                        {S, S, S}};
    const auto out = try_discard(b, LocalFamily::rrr, pot(), local_cert());
    CHECK(out.discarded);
    // either the triangle inequality or the radicand certifies emptiness
    CHECK((out.reason == DiscardReason::saturation ||
           out.reason == DiscardReason::infeasible));
}

TEST_CASE("discard decisions are mirror symmetric") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> lo(1.2, 2.9);
    std::uniform_real_distribution<double> w(0.0, 0.2);
    for (int i = 0; i < 5000; ++i) {
        TriangleBox b;
        b.disc = {(rng() & 1) ? S : L, S, S};
        for (int e = 0; e < 3; ++e) {
            const double a = lo(rng);
            b.edge[e] = Interval(a, a + w(rng));
        }
        const LocalFamily fam = b.disc[0] == L ? LocalFamily::lrr : LocalFamily::rrr;
        TriangleBox m = b;
        std::swap(m.edge[1], m.edge[2]);
        const auto ob = try_discard(b, fam, pot(), local_cert());
        const auto om = try_discard(m, fam, pot(), local_cert());
        REQUIRE(ob.discarded == om.discarded);
        if (ob.discarded) REQUIRE(ob.reason == om.reason);
    }
}

TEST_CASE("the all-large family completes and certifies") {
    // Run the full search on the large-equilateral family alone by feeding a
    // work list seeded with just that root.
    struct Item {
        TriangleBox box;
        int depth;
    };
    const TriangleBox root = initial_boxes(consts())[1];
    std::vector<Item> stack{{root, 0}};
    std::uint64_t boxes = 0;
    bool failed = false;
    double volume = 0.0, comp = 0.0; // Neumaier sum of discarded box volumes
    const auto add_volume = [&](const TriangleBox& b) {
        const double v = (b.edge[0].hi - b.edge[0].lo) * (b.edge[1].hi - b.edge[1].lo) *
                         (b.edge[2].hi - b.edge[2].lo);
        const double t = volume + v;
        comp += std::fabs(volume) >= std::fabs(v) ? (volume - t) + v : (v - t) + volume;
        volume = t;
    };
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        ++boxes;
        const auto out = try_discard(it.box, LocalFamily::lll, pot(), local_cert());
        if (out.discarded) {
            add_volume(it.box);
            continue;
        }
        int axis = 0;
        double w = it.box.edge[0].width();
        for (int e = 1; e < 3; ++e)
            if (it.box.edge[e].width() > w) {
                w = it.box.edge[e].width();
                axis = e;
            }
        if (w <= 1e-6 || it.depth >= 64) {
            failed = true;
            break;
        }
        const double mid = 0.5 * (it.box.edge[axis].lo + it.box.edge[axis].hi);
        TriangleBox a = it.box, b = it.box;
        a.edge[axis] = Interval(it.box.edge[axis].lo, mid);
        b.edge[axis] = Interval(mid, it.box.edge[axis].hi);
        stack.push_back({b, it.depth + 1});
        stack.push_back({a, it.depth + 1});
    }
    CHECK_FALSE(failed);
    CHECK(boxes > 1000);
    CHECK(boxes < 1000000);

    // the discarded boxes partition the root exactly
    const double root_volume = (root.edge[0].hi - root.edge[0].lo) *
                               (root.edge[1].hi - root.edge[1].lo) *
                               (root.edge[2].hi - root.edge[2].lo);
    CHECK(std::fabs((volume + comp) / root_volume - 1.0) <= 1e-9);
}

TEST_CASE("the full search reports the correction-potential gap honestly") {
    GlobalConfig cfg;
    cfg.threads = 1;
    const GlobalCertificate cert = run_global(pot(), local_cert(), cfg);
    CHECK_FALSE(cert.pass);
    REQUIRE(cert.counterexample);
    CHECK(cert.counterexample->why == "min_width");
    CHECK(cert.boxes_processed > 10000);

    // the witness points confirm the gap is real, not an interval artifact
    const double r = expected::kR;
    const TriangleBox rrr_witness{{Interval(2 * r), Interval(2 * r), Interval(1.7973)},
                                  {S, S, S}};
    CHECK(scalar_margin(rrr_witness) == doctest::Approx(expected::kWitnessRrrMargin).epsilon(1e-9));

    const double q = 1.0 + r;
    const TriangleBox lrr_witness{{Interval(2.676), Interval(q), Interval(q)}, {L, S, S}};
    CHECK(scalar_margin(lrr_witness) ==
          doctest::Approx(expected::kWitness1rrMargin).epsilon(1e-9));
}

TEST_CASE("single-thread runs are deterministic") {
    GlobalConfig cfg;
    cfg.threads = 1;
    const GlobalCertificate a = run_global(pot(), local_cert(), cfg);
    const GlobalCertificate b = run_global(pot(), local_cert(), cfg);
    CHECK(a.boxes_processed == b.boxes_processed);
    CHECK(a.max_depth_reached == b.max_depth_reached);
    for (int rsn = 0; rsn < kDiscardReasonCount; ++rsn)
        CHECK(a.discards[std::size_t(rsn)] == b.discards[std::size_t(rsn)]);
    REQUIRE((a.counterexample && b.counterexample));
    for (int e = 0; e < 3; ++e) {
        CHECK(a.counterexample->box.edge[e].lo == b.counterexample->box.edge[e].lo);
        CHECK(a.counterexample->box.edge[e].hi == b.counterexample->box.edge[e].hi);
    }
}

TEST_CASE("discard soundness audit on sampled boxes") {
    GlobalConfig cfg;
    cfg.threads = 1;
    cfg.log_samples = 2000;
    const GlobalCertificate cert = run_global(pot(), local_cert(), cfg);
    REQUIRE(!cert.samples.empty());
    int audited = 0;
    for (const auto& s : cert.samples) {
        if (s.reason != DiscardReason::nonneg_margin) continue;
        ++audited;
        const double mid = scalar_margin(s.box);
        REQUIRE(mid >= -2.0 * s.margin.width());
        REQUIRE(mid >= s.margin.lo);
    }
    REQUIRE(audited > 100);
}

TEST_CASE("raising the density target keeps every discard") {
    // with delta shifted up, excesses only grow
    GlobalConfig cfg;
    cfg.threads = 1;
    cfg.delta_offset = 1e-3;
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> lo(1.2, 2.9);
    std::uniform_real_distribution<double> w(0.0, 0.15);
    for (int i = 0; i < 3000; ++i) {
        TriangleBox b;
        b.disc = {S, S, S};
        for (int e = 0; e < 3; ++e) {
            const double a = lo(rng);
            b.edge[e] = Interval(a, a + w(rng));
        }
        const auto plain = try_discard(b, LocalFamily::rrr, pot(), local_cert());
        if (plain.discarded && plain.reason == DiscardReason::nonneg_margin) {
            const auto raised = try_discard(b, LocalFamily::rrr, pot(), local_cert(), 1e-3);
            REQUIRE(raised.discarded);
        }
    }
}

TEST_SUITE_END();
