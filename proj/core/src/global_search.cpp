#include "compack/global_search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace compack {

const char* discard_reason_name(DiscardReason r) {
    switch (r) {
        case DiscardReason::nonneg_margin: return "nonneg_margin";
        case DiscardReason::local_box: return "local_box";
        case DiscardReason::saturation: return "saturation_prune";
        case DiscardReason::infeasible: return "infeasible";
    }
    return "?";
}

std::array<TriangleBox, 4> initial_boxes(const ProofConstants& c) {
    const LocalFamily fams[4] = {LocalFamily::rrr, LocalFamily::lll, LocalFamily::lrr,
                                 LocalFamily::rll};
    const double hi = (Interval(2.0) * c.one_plus_r).hi;
    std::array<TriangleBox, 4> out;
    for (int f = 0; f < 4; ++f) {
        const auto discs = family_discs(fams[f]);
        std::array<Interval, 3> edges;
        for (int i = 0; i < 3; ++i) {
            const int j = i == 0 ? 1 : 0;
            const int k = i == 2 ? 1 : 2;
            const Interval floor = disc_radius(discs[j], c) + disc_radius(discs[k], c);
            edges[i] = Interval(floor.lo, hi);
        }
        out[f] = make_proof_box(edges, discs, c);
    }
    return out;
}

namespace {

struct WorkerStats {
    std::uint64_t boxes = 0;
    std::array<std::uint64_t, kDiscardReasonCount> discards{};
    int max_depth = 0;
    std::optional<Interval> min_margin;
    double vol_sum = 0.0;
    double vol_comp = 0.0; // Neumaier compensation

    void add_volume(const TriangleBox& b) {
        const double v = (b.edge[0].hi - b.edge[0].lo) * (b.edge[1].hi - b.edge[1].lo) *
                         (b.edge[2].hi - b.edge[2].lo);
        const double t = vol_sum + v;
        if (std::fabs(vol_sum) >= std::fabs(v))
            vol_comp += (vol_sum - t) + v;
        else
            vol_comp += (v - t) + vol_sum;
        vol_sum = t;
    }
    void note_margin(const Interval& m) {
        if (!min_margin || m.lo < min_margin->lo ||
            (m.lo == min_margin->lo && m.hi < min_margin->hi))
            min_margin = m;
    }
};

struct FamilyContext {
    LocalFamily family{};
    std::array<double, 3> face_lo{};
    std::array<double, 3> face_hi{};
    TriangleBox root;
    double init_volume = 0.0;
};

struct GlobalTask {
    int family = 0;
    BoxTask task;
};

struct Shared {
    std::mutex mu;
    std::condition_variable cv;
    std::vector<GlobalTask> queue;
    std::atomic<int> queue_size{0};
    bool done = false;
    std::atomic<bool> abort{false};
    std::atomic<long long> outstanding{0};
    std::optional<Counterexample> counterexample;
    std::string error;
    std::array<WorkerStats, 4> merged{};
    std::vector<DiscardSample> samples;
};

DiscardOutcome decide(const TriangleBox& b, const FamilyContext& fc, const Potential& pot,
                      double delta_offset, double one_plus_r_hi) {
    if (b.edge[0].lo >= fc.face_lo[0] && b.edge[0].hi <= fc.face_hi[0] &&
        b.edge[1].lo >= fc.face_lo[1] && b.edge[1].hi <= fc.face_hi[1] &&
        b.edge[2].lo >= fc.face_lo[2] && b.edge[2].hi <= fc.face_hi[2])
        return {true, DiscardReason::local_box, std::nullopt};

    for (int i = 0; i < 3; ++i) {
        const int j = i == 0 ? 1 : 0;
        const int k = i == 2 ? 1 : 2;
        if (b.edge[i].lo > detail::add_up(b.edge[j].hi, b.edge[k].hi))
            return {true, DiscardReason::saturation, std::nullopt};
    }

    const Potential::Eval ev = pot.margin(b, delta_offset);
    if (ev.status == Potential::Status::infeasible)
        return {true, DiscardReason::infeasible, std::nullopt};

    if (ev.area.hi <= 0.0) return {true, DiscardReason::saturation, std::nullopt};
    const Interval prod = b.edge[0] * (b.edge[1] * b.edge[2]);
    const double r_lo = detail::div_down(prod.lo, detail::mul_up(4.0, ev.area.hi));
    if (r_lo > one_plus_r_hi) return {true, DiscardReason::saturation, std::nullopt};
    if (ev.status != Potential::Status::ok || ev.value.lo < 0.0) {
        // the margin cannot settle it; try the sharper radius floor
        if (circumradius_floor(b) > one_plus_r_hi)
            return {true, DiscardReason::saturation, std::nullopt};
    }

    if (ev.status == Potential::Status::ok) {
        if (ev.value.lo >= 0.0) return {true, DiscardReason::nonneg_margin, ev.value};
        return {false, {}, ev.value};
    }
    return {false, {}, std::nullopt}; // edge term unbounded: force a split
}

void worker(int wid, int nthreads, const Potential& pot,
            const std::array<FamilyContext, 4>& fams, const GlobalConfig& cfg, Shared& sh) {
    std::vector<GlobalTask> local;
    local.reserve(512);
    std::array<WorkerStats, 4> stats{};
    std::mt19937_64 rng(cfg.log_seed + 0x9e3779b9u * std::uint64_t(wid + 1));
    std::vector<DiscardSample> reservoir;
    std::uint64_t sampled_seen = 0;
    const double one_plus_r_hi = pot.constants().one_plus_r.hi;

    auto finish_one = [&]() {
        if (sh.outstanding.fetch_sub(1, std::memory_order_acq_rel) - 1 == 0) {
            std::lock_guard lk(sh.mu);
            sh.done = true;
            sh.cv.notify_all();
        }
    };

    try {
        for (;;) {
            if (sh.abort.load(std::memory_order_relaxed)) break;
            GlobalTask gt;
            if (!local.empty()) {
                gt = local.back();
                local.pop_back();
            } else {
                std::unique_lock lk(sh.mu);
                sh.cv.wait(lk, [&] { return sh.done || !sh.queue.empty(); });
                if (sh.queue.empty()) break; // done
                gt = sh.queue.back();
                sh.queue.pop_back();
                sh.queue_size.fetch_sub(1, std::memory_order_relaxed);
            }

            const FamilyContext& fc = fams[std::size_t(gt.family)];
            WorkerStats& st = stats[std::size_t(gt.family)];
            ++st.boxes;
            st.max_depth = std::max(st.max_depth, gt.task.depth);

            const DiscardOutcome out =
                decide(gt.task.box, fc, pot, cfg.delta_offset, one_plus_r_hi);
            if (out.discarded) {
                ++st.discards[std::size_t(out.reason)];
                st.add_volume(gt.task.box);
                if (out.reason == DiscardReason::nonneg_margin && out.margin)
                    st.note_margin(*out.margin);
                if (cfg.log_samples > 0) {
                    ++sampled_seen;
                    if (reservoir.size() < std::size_t(cfg.log_samples)) {
                        reservoir.push_back(
                            {fc.family, gt.task.box, out.reason,
                             out.margin.value_or(Interval(0.0))});
                    } else if (std::uint64_t j = rng() % sampled_seen;
                               j < std::uint64_t(cfg.log_samples)) {
                        reservoir[std::size_t(j)] = {fc.family, gt.task.box, out.reason,
                                                     out.margin.value_or(Interval(0.0))};
                    }
                }
                finish_one();
                continue;
            }

            // Undischarged: split the widest edge, or report a counterexample
            // when the box can shrink no further.
            const TriangleBox& b = gt.task.box;
            int axis = 0;
            double w = b.edge[0].hi - b.edge[0].lo;
            for (int i = 1; i < 3; ++i) {
                const double wi = b.edge[i].hi - b.edge[i].lo;
                if (wi > w) {
                    w = wi;
                    axis = i;
                }
            }
            if (w <= cfg.min_width || gt.task.depth >= cfg.max_depth) {
                std::lock_guard lk(sh.mu);
                if (!sh.counterexample)
                    sh.counterexample = Counterexample{
                        fc.family, b, gt.task.depth, out.margin,
                        w <= cfg.min_width ? "min_width" : "max_depth"};
                sh.abort.store(true, std::memory_order_relaxed);
                sh.done = true;
                sh.cv.notify_all();
                break;
            }

            const double mid = 0.5 * (b.edge[axis].lo + b.edge[axis].hi);
            TriangleBox lo_child = b, hi_child = b;
            lo_child.edge[axis] = Interval(b.edge[axis].lo, mid);
            hi_child.edge[axis] = Interval(mid, b.edge[axis].hi);

            sh.outstanding.fetch_add(1, std::memory_order_acq_rel);
            const GlobalTask hi_task{gt.family, {hi_child, gt.task.depth + 1}};
            if (nthreads > 1 &&
                sh.queue_size.load(std::memory_order_relaxed) < 2 * nthreads) {
                {
                    std::lock_guard lk(sh.mu);
                    sh.queue.push_back(hi_task);
                    sh.queue_size.fetch_add(1, std::memory_order_relaxed);
                }
                sh.cv.notify_one();
            } else {
                local.push_back(hi_task);
            }
            local.push_back({gt.family, {lo_child, gt.task.depth + 1}});
        }
    } catch (const std::exception& e) {
        std::lock_guard lk(sh.mu);
        if (sh.error.empty()) sh.error = e.what();
        sh.abort.store(true, std::memory_order_relaxed);
        sh.done = true;
        sh.cv.notify_all();
    }

    std::lock_guard lk(sh.mu);
    for (int f = 0; f < 4; ++f) {
        WorkerStats& dst = sh.merged[std::size_t(f)];
        const WorkerStats& src = stats[std::size_t(f)];
        dst.boxes += src.boxes;
        for (int r = 0; r < kDiscardReasonCount; ++r) dst.discards[std::size_t(r)] += src.discards[std::size_t(r)];
        dst.max_depth = std::max(dst.max_depth, src.max_depth);
        if (src.min_margin) dst.note_margin(*src.min_margin);
        dst.vol_sum += src.vol_sum + src.vol_comp;
    }
    for (const auto& s : reservoir) sh.samples.push_back(s);
}

} // namespace

DiscardOutcome try_discard(const TriangleBox& b, LocalFamily f, const Potential& pot,
                           const LocalCertificate& local, double delta_offset) {
    const auto& fb = local.families[std::size_t(f)];
    if (fb.family != f) throw std::invalid_argument("local certificate family mismatch");
    FamilyContext fc;
    fc.family = f;
    fc.face_lo = fb.face_lo;
    fc.face_hi = fb.face_hi;
    return decide(b, fc, pot, delta_offset, pot.constants().one_plus_r.hi);
}

GlobalCertificate run_global(const Potential& pot, const LocalCertificate& local,
                             const GlobalConfig& cfg) {
    if (!local.pass)
        throw std::invalid_argument("global search requires a passing local certificate");
    if (local.m != pot.slope_m())
        throw std::invalid_argument("local certificate was produced at a different slope m");

    const auto t0 = std::chrono::steady_clock::now();
    const ProofConstants& c = pot.constants();
    const auto roots = initial_boxes(c);

    std::array<FamilyContext, 4> fams;
    for (int f = 0; f < 4; ++f) {
        const auto& fb = local.families[std::size_t(f)];
        fams[std::size_t(f)].family = fb.family;
        fams[std::size_t(f)].face_lo = fb.face_lo;
        fams[std::size_t(f)].face_hi = fb.face_hi;
        fams[std::size_t(f)].root = roots[std::size_t(f)];
        const auto& e = roots[std::size_t(f)].edge;
        fams[std::size_t(f)].init_volume =
            (e[0].hi - e[0].lo) * (e[1].hi - e[1].lo) * (e[2].hi - e[2].lo);
    }

    Shared sh;
    sh.outstanding.store(4);
    for (int f = 0; f < 4; ++f) {
        sh.queue.push_back({f, {roots[std::size_t(f)], 0}});
    }
    sh.queue_size.store(4);

    const int nthreads = std::clamp(cfg.threads, 1, 256);
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nthreads));
    for (int w = 0; w < nthreads; ++w)
        pool.emplace_back(worker, w, nthreads, std::cref(pot), std::cref(fams),
                          std::cref(cfg), std::ref(sh));
    for (auto& th : pool) th.join();

    GlobalCertificate cert;
    cert.config = cfg;
    cert.m = pot.slope_m();
    cert.counterexample = sh.counterexample;
    if (!sh.error.empty() && !cert.counterexample) {
        Counterexample ce;
        ce.why = "exception: " + sh.error;
        cert.counterexample = ce;
    }
    for (int f = 0; f < 4; ++f) {
        const WorkerStats& st = sh.merged[std::size_t(f)];
        FamilyReport& fr = cert.families[std::size_t(f)];
        fr.family = fams[std::size_t(f)].family;
        fr.boxes = st.boxes;
        fr.discards = st.discards;
        fr.max_depth = st.max_depth;
        fr.min_positive_margin = st.min_margin;
        fr.volume_ratio = st.vol_sum / fams[std::size_t(f)].init_volume;

        cert.boxes_processed += st.boxes;
        for (int r = 0; r < kDiscardReasonCount; ++r)
            cert.discards[std::size_t(r)] += st.discards[std::size_t(r)];
        cert.max_depth_reached = std::max(cert.max_depth_reached, st.max_depth);
        if (st.min_margin) {
            if (!cert.min_positive_margin || st.min_margin->lo < cert.min_positive_margin->lo)
                cert.min_positive_margin = st.min_margin;
        }
    }
    cert.samples = std::move(sh.samples);
    cert.pass = !cert.counterexample && !sh.abort.load();
    cert.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

} // namespace compack
