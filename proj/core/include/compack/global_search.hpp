#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "compack/local_bounds.hpp"
#include "compack/potential.hpp"

namespace compack {

enum class DiscardReason : unsigned char {
    nonneg_margin = 0, // E - F enclosure entirely nonnegative
    local_box = 1,     // contained in a certified near-contact box
    saturation = 2,    // no saturated-packing triangle can live here
    infeasible = 3,    // no real triangle at all
};
constexpr int kDiscardReasonCount = 4;
const char* discard_reason_name(DiscardReason r);

struct GlobalConfig {
    int threads = 1;
    int max_depth = 64;
    double min_width = 1e-6;
    int log_samples = 0; // reservoir size for the sampled discard log
    std::uint64_t log_seed = 0x9e3779b97f4a7c15ull;
    double delta_offset = 0.0; // sensitivity experiments only
};

struct BoxTask {
    TriangleBox box;
    int depth = 0;
};

struct DiscardSample {
    LocalFamily family{};
    TriangleBox box;
    DiscardReason reason{};
    Interval margin; // E - F enclosure (nonneg_margin discards only)
};

struct FamilyReport {
    LocalFamily family{};
    std::uint64_t boxes = 0;
    std::array<std::uint64_t, kDiscardReasonCount> discards{};
    int max_depth = 0;
    std::optional<Interval> min_positive_margin;
    double volume_ratio = 0.0; // discarded volume over initial volume
};

struct Counterexample {
    LocalFamily family{};
    TriangleBox box;
    int depth = 0;
    std::optional<Interval> margin;
    std::string why; // "min_width" or "max_depth"
};

struct GlobalCertificate {
    bool pass = false;
    std::uint64_t boxes_processed = 0;
    std::array<std::uint64_t, kDiscardReasonCount> discards{};
    int max_depth_reached = 0;
    std::optional<Interval> min_positive_margin;
    double runtime_seconds = 0.0;
    std::optional<Counterexample> counterexample;
    std::array<FamilyReport, 4> families{};
    std::vector<DiscardSample> samples;
    GlobalConfig config;
    double m = 0.0;
};

// The four starting parallelepipeds, one per canonical disc multiset with the
// distinguished disc at vertex 0: each edge runs from the non-overlap bound
// r_j + r_k up to 2(1+r), the largest edge a saturated packing permits.
std::array<TriangleBox, 4> initial_boxes(const ProofConstants& c);

struct DiscardOutcome {
    bool discarded = false;
    DiscardReason reason{};
    std::optional<Interval> margin; // E - F enclosure when it was computed
};

// Decides one box: certified near-contact region, saturation pruning,
// feasibility, then the sign of the E - F enclosure. A box whose edge term
// cannot be bounded (area enclosure touching zero with a live slope) is kept
// for splitting.
DiscardOutcome try_discard(const TriangleBox& b, LocalFamily f, const Potential& pot,
                           const LocalCertificate& local, double delta_offset = 0.0);

// Exhaustive subdivision of the four families; requires a passing local
// certificate (its boxes justify the local_box discards) produced at the same
// slope m. Splitting bisects the widest edge, ties to the lowest index.
// Throws std::invalid_argument when the local certificate does not match.
GlobalCertificate run_global(const Potential& pot, const LocalCertificate& local,
                             const GlobalConfig& cfg = {});

} // namespace compack
