// compack: verification engine for the two-size compact disc packing density
// bound. Subcommands certify each proof stage, run the full chain, and emit
// packings and empirical reports.

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "compack/certificate.hpp"
#include "compack/delaunay.hpp"

using namespace compack;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCertFailure = 1;
constexpr int kExitUsage = 2;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct CommonOpts {
    std::string report_path;
    int threads = 1;
    bool json_stdout = false;
    bool experimental = false;
};

void deliver(const CommonOpts& opts, const std::string& json_text,
             const std::string& summary) {
    if (!opts.report_path.empty()) write_file(opts.report_path, json_text);
    if (opts.json_stdout)
        std::fputs((json_text + "\n").c_str(), stdout);
    else
        std::fputs(summary.c_str(), stdout);
}

int cmd_constants(const CommonOpts& opts) {
    const ProofConstants c = compute_constants();
    const std::string json = constants_json(c);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "constants: r in [%.12f, %.12f], density in [%.12f, %.12f]\n", c.r.lo, c.r.hi,
                  c.delta.lo, c.delta.hi);
    deliver(opts, json, buf);
    return kExitPass;
}

int cmd_verify_vertex(const CommonOpts& opts, double m, int n_max) {
    const ProofConstants c = compute_constants();
    const Potential pot(c, m, c.cap_v);
    const VertexBalanceCertificate cert = certify_vertex_balance(pot, n_max);
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "vertex balance at m=%g: %s (%ld configurations, %zu zero-margin, max "
                  "implied bound [%.9f, %.9f])\n",
                  m, cert.pass ? "pass" : "FAIL", cert.configs_checked,
                  cert.zero_margin_configs.size(), cert.max_implied_bound.lo,
                  cert.max_implied_bound.hi);
    deliver(opts, to_json(cert), buf);
    return cert.pass ? kExitPass : kExitCertFailure;
}

int cmd_verify_local(const CommonOpts& opts, double epsilon, double m) {
    const ProofConstants c = compute_constants();
    const LocalCertificate cert = certify_local(epsilon, m, c);
    std::string summary = "local bounds at epsilon=" + std::to_string(epsilon) +
                          ", m=" + std::to_string(m) + ": " + (cert.pass ? "pass" : "FAIL");
    if (!cert.failure.empty()) summary += " (" + cert.failure + ")";
    summary += "\n";
    for (const auto& fb : cert.families) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-3s m0 >= %.6f, mi >= %.6f\n",
                      family_name(fb.family), fb.m0.lo, fb.mi.lo);
        summary += line;
    }
    deliver(opts, to_json(cert), summary);
    return cert.pass ? kExitPass : kExitCertFailure;
}

int cmd_verify_global(const CommonOpts& opts, double m, double epsilon, int max_depth,
                      double min_width, int log_samples, const std::string& log_path,
                      double delta_offset) {
    const ProofConstants c = compute_constants();
    const Potential pot(c, m, c.cap_v);
    const LocalCertificate local = certify_local(epsilon, m, c);
    if (!local.pass) {
        std::fprintf(stderr, "local certificate failed; global search not started (%s)\n",
                     local.failure.c_str());
        return kExitCertFailure;
    }
    GlobalConfig cfg;
    cfg.threads = opts.threads;
    cfg.max_depth = max_depth;
    cfg.min_width = min_width;
    cfg.log_samples = log_samples;
    cfg.delta_offset = delta_offset;
    const GlobalCertificate cert = run_global(pot, local, cfg);
    if (!log_path.empty()) write_file(log_path, discard_log_lines(cert));

    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "global search: %s (%llu boxes, max depth %d, %.1f s)\n",
                  cert.pass ? "pass" : "FAIL",
                  static_cast<unsigned long long>(cert.boxes_processed),
                  cert.max_depth_reached, cert.runtime_seconds);
    std::string summary = buf;
    if (cert.counterexample) {
        const auto& ce = *cert.counterexample;
        std::snprintf(buf, sizeof buf,
                      "  counterexample (%s, %s): box [%.9f,%.9f]x[%.9f,%.9f]x[%.9f,%.9f]\n",
                      family_name(ce.family), ce.why.c_str(), ce.box.edge[0].lo,
                      ce.box.edge[0].hi, ce.box.edge[1].lo, ce.box.edge[1].hi,
                      ce.box.edge[2].lo, ce.box.edge[2].hi);
        summary += buf;
        if (ce.margin) {
            std::snprintf(buf, sizeof buf, "  margin enclosure [%.3e, %.3e]\n", ce.margin->lo,
                          ce.margin->hi);
            summary += buf;
        }
    }
    deliver(opts, to_json(cert), summary);
    return cert.pass ? kExitPass : kExitCertFailure;
}

int cmd_prove(const CommonOpts& opts, ProofConfig cfg) {
    cfg.threads = opts.threads;
    cfg.experimental = opts.experimental;
    const ProofReport report = run_full_proof(cfg);

    std::string summary;
    const auto stage_line = [&](const char* name, bool present, bool pass) {
        summary += std::string("  ") + name + ": " +
                   (present ? (pass ? "pass" : "FAIL") : "not run") + "\n";
    };
    summary = std::string("proof: ") + (report.overall_pass ? "pass" : "FAIL") + "\n";
    stage_line("constants", bool(report.constants), bool(report.constants));
    stage_line("vertex_balance", bool(report.vertex), report.vertex && report.vertex->pass);
    stage_line("local_bounds", bool(report.local), report.local && report.local->pass);
    stage_line("global_search", bool(report.global), report.global && report.global->pass);
    deliver(opts, to_json(report), summary);
    return report.overall_pass ? kExitPass : kExitCertFailure;
}

int cmd_emit_packing(const CommonOpts& opts, int cells, const std::string& out_path) {
    const ProofConstants c = compute_constants();
    const PackingInstance p = build_compact_patch(cells, c);
    const Triangulation t = build_delaunay(p);

    ordered_json discs = ordered_json::array();
    for (const auto& d : p.discs)
        discs.push_back(ordered_json{{"x", d.center.x},
                                     {"y", d.center.y},
                                     {"r", d.kind == DiscKind::large ? 1.0 : c.r.mid()}});
    ordered_json tris = ordered_json::array();
    ordered_json classes = ordered_json::array();
    for (const auto& tri : t.triangles) {
        tris.push_back(ordered_json::array({tri[0], tri[1], tri[2]}));
        const auto& a = p.discs[std::size_t(tri[0])].center;
        const auto& b = p.discs[std::size_t(tri[1])].center;
        const auto& d = p.discs[std::size_t(tri[2])].center;
        const auto len = [](const Vec2& u, const Vec2& v) {
            return std::hypot(u.x - v.x, u.y - v.y);
        };
        classes.push_back(triangle_class_name(
            classify_triangle({len(b, d), len(a, d), len(a, b)}, c)));
    }
    const ordered_json j{{"discs", discs}, {"triangles", tris}, {"classes", classes}};
    const std::string text = j.dump(2);
    if (!out_path.empty()) write_file(out_path, text);
    char buf[160];
    std::snprintf(buf, sizeof buf, "packing: %zu discs, %zu triangles -> %s\n", p.discs.size(),
                  t.triangles.size(), out_path.empty() ? "(stdout)" : out_path.c_str());
    if (out_path.empty())
        std::fputs((text + "\n").c_str(), stdout);
    else
        deliver(opts, text, buf);
    return kExitPass;
}

int cmd_empirical(const CommonOpts& opts, std::uint64_t seed, const std::string& region) {
    double w = 0, h = 0;
    if (std::sscanf(region.c_str(), "%lfx%lf", &w, &h) != 2 || w < 6 || h < 6) {
        std::fprintf(stderr, "--region must be WxH with W,H >= 6 (e.g. 14x12)\n");
        return kExitUsage;
    }
    const ProofConstants c = compute_constants();
    const PackingInstance p = random_saturated_packing(seed, w, h, c);
    const Triangulation t = build_delaunay(p);
    const DistanceLemmaReport lemma = check_distance_lemma(p, t);
    const DecompositionSums sums = sum_decomposition(p, t, c);

    ordered_json j{{"seed", seed},
                   {"region", ordered_json{{"w", w}, {"h", h}}},
                   {"discs", p.discs.size()},
                   {"triangles", t.triangles.size()},
                   {"distance_lemma", ordered_json{{"edges_checked", lemma.edges_checked},
                                                   {"edges_skipped", lemma.edges_skipped},
                                                   {"min_sum", lemma.min_sum},
                                                   {"ok", lemma.ok}}},
                   {"interior", ordered_json{{"triangles", sums.triangles},
                                             {"sum_excess", sums.sum_excess},
                                             {"sum_potential", sums.sum_potential},
                                             {"density", sums.density}}}};
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "packing seed=%llu: %zu discs, lemma %s (min sum %.2e), interior density "
                  "%.6f\n",
                  static_cast<unsigned long long>(seed), p.discs.size(),
                  lemma.ok ? "ok" : "VIOLATED", lemma.min_sum, sums.density);
    deliver(opts, j.dump(2), buf);
    return lemma.ok ? kExitPass : kExitCertFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification engine for the densest two-size compact disc packing"};
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--report", opts.report_path, "write the certificate/report JSON here");
    app.add_option("--threads", opts.threads, "worker threads for the global search")
        ->check(CLI::Range(1, 256));
    app.add_flag("--json", opts.json_stdout, "print machine-readable JSON on stdout");
    app.add_flag("--experimental", opts.experimental,
                 "allow non-default m/epsilon in the certified chain");

    // global flags may appear after the subcommand name
    app.fallthrough();

    auto* c_const = app.add_subcommand("constants", "rigorous enclosures of every constant");
    c_const->fallthrough();

    double m = 0.12;
    int n_max = 24;
    auto* c_vertex = app.add_subcommand("verify-vertex", "certify the vertex balance");
    c_vertex->fallthrough();
    c_vertex->add_option("--m", m, "vertex potential slope")->capture_default_str();
    c_vertex->add_option("--n-max", n_max, "enumeration bound")->capture_default_str();

    double epsilon = 0.001;
    auto* c_local = app.add_subcommand("verify-local", "certify the near-contact boxes");
    c_local->fallthrough();
    c_local->add_option("--epsilon", epsilon, "box half-width")->capture_default_str();
    c_local->add_option("--m", m, "vertex potential slope")->capture_default_str();

    int max_depth = 64;
    double min_width = 1e-6;
    int log_samples = 0;
    std::string log_path;
    double delta_offset = 0.0;
    auto* c_global = app.add_subcommand("verify-global", "exhaustive box subdivision");
    c_global->fallthrough();
    c_global->add_option("--m", m, "vertex potential slope")->capture_default_str();
    c_global->add_option("--epsilon", epsilon, "near-contact box half-width")
        ->capture_default_str();
    c_global->add_option("--max-depth", max_depth, "split depth cap")->capture_default_str();
    c_global->add_option("--min-width", min_width, "smallest splittable box width")
        ->capture_default_str();
    c_global->add_option("--log-samples", log_samples, "reservoir size for the discard log")
        ->capture_default_str();
    c_global->add_option("--log-file", log_path, "write sampled discards (LD-JSON) here");
    c_global->add_option("--delta-offset", delta_offset,
                         "shift the target density (requires --experimental)");

    ProofConfig pcfg;
    auto* c_prove = app.add_subcommand("prove", "full certification chain");
    c_prove->fallthrough();
    c_prove->add_option("--m", pcfg.m, "vertex potential slope")->capture_default_str();
    c_prove->add_option("--epsilon", pcfg.epsilon, "near-contact box half-width")
        ->capture_default_str();
    c_prove->add_option("--max-depth", pcfg.max_depth, "split depth cap")
        ->capture_default_str();
    c_prove->add_option("--min-width", pcfg.min_width, "smallest splittable box width")
        ->capture_default_str();
    c_prove->add_flag("--skip-global", pcfg.skip_global, "stop after the local stage");

    int cells = 1;
    std::string out_path;
    auto* c_emit = app.add_subcommand("emit-packing", "write a patch of the optimal packing");
    c_emit->fallthrough();
    c_emit->add_option("--cells", cells, "number of unit cells")
        ->required()
        ->check(CLI::PositiveNumber);
    c_emit->add_option("--out", out_path, "output JSON path");

    std::uint64_t seed = 1;
    std::string region = "14x12";
    auto* c_emp = app.add_subcommand("empirical", "random saturated packing report");
    c_emp->fallthrough();
    c_emp->add_option("--seed", seed, "random seed")->capture_default_str();
    c_emp->add_option("--region", region, "region size WxH")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (c_const->parsed()) return cmd_constants(opts);
        if (c_vertex->parsed()) return cmd_verify_vertex(opts, m, n_max);
        if (c_local->parsed()) return cmd_verify_local(opts, epsilon, m);
        if (c_global->parsed()) {
            if (delta_offset != 0.0 && !opts.experimental) {
                std::fprintf(stderr, "--delta-offset requires --experimental\n");
                return kExitUsage;
            }
            return cmd_verify_global(opts, m, epsilon, max_depth, min_width, log_samples,
                                     log_path, delta_offset);
        }
        if (c_prove->parsed()) {
            if ((pcfg.m != 0.12 || pcfg.epsilon != 0.001) && !opts.experimental) {
                std::fprintf(stderr,
                             "non-default m/epsilon change the certified statement; pass "
                             "--experimental to run anyway\n");
                return kExitUsage;
            }
            return cmd_prove(opts, pcfg);
        }
        if (c_emit->parsed()) return cmd_emit_packing(opts, cells, out_path);
        if (c_emp->parsed()) return cmd_empirical(opts, seed, region);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
