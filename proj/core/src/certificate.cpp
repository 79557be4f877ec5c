#include "compack/certificate.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include <json.hpp>

namespace compack {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json interval_node(const Interval& v) {
    return ordered_json{{"lo", v.lo}, {"hi", v.hi}};
}

ordered_json config_node(const VertexConfig& v) {
    return ordered_json{{"center", v.center == DiscKind::small ? "small" : "large"},
                        {"n_rr", v.n_rr},
                        {"n_mixed", v.n_mixed},
                        {"n_ll", v.n_ll}};
}

ordered_json box_node(const TriangleBox& b) {
    ordered_json edges = ordered_json::array();
    for (const auto& e : b.edge) edges.push_back(interval_node(e));
    std::string discs;
    for (const auto d : b.disc) discs += d == DiscKind::small ? 'r' : '1';
    return ordered_json{{"edges", edges}, {"discs", discs}};
}

const char* status_str(bool pass) { return pass ? "pass" : "fail"; }

ordered_json vertex_node(const VertexBalanceCertificate& cert) {
    ordered_json zero = ordered_json::array();
    for (const auto& z : cert.zero_margin_configs) zero.push_back(config_node(z));
    ordered_json j{{"stage", "vertex_balance"},
                   {"status", status_str(cert.pass)},
                   {"m", cert.m},
                   {"n_max", cert.n_max},
                   {"configs_checked", cert.configs_checked},
                   {"zero_margin_configs", zero},
                   {"max_implied_bound", interval_node(cert.max_implied_bound)}};
    if (cert.max_bound_config) j["max_bound_config"] = config_node(*cert.max_bound_config);
    if (cert.failed_config) {
        j["failed_config"] = config_node(*cert.failed_config);
        j["failed_margin"] = interval_node(cert.failed_margin);
    }
    j["tail_threshold"] = cert.n_max;
    j["tail"] = ordered_json{{"min_base_angle_lo", cert.min_base_angle_lo},
                             {"margin_lo_at_next_n", cert.tail_margin_lo},
                             {"ok", cert.tail_ok}};
    j["cap"] = ordered_json{{"degree_bound", cert.n_angle_bound},
                            {"value_floor", cert.value_floor},
                            {"margin_lo", cert.cap_margin_lo},
                            {"ok", cert.cap_ok}};
    j["runtime_seconds"] = cert.runtime_seconds;
    return j;
}

ordered_json local_node(const LocalCertificate& cert) {
    ordered_json fams = ordered_json::array();
    for (const auto& fb : cert.families) {
        ordered_json faces_lo = ordered_json::array();
        ordered_json faces_hi = ordered_json::array();
        for (int i = 0; i < 3; ++i) {
            faces_lo.push_back(fb.face_lo[std::size_t(i)]);
            faces_hi.push_back(fb.face_hi[std::size_t(i)]);
        }
        fams.push_back(ordered_json{{"family", family_name(fb.family)},
                                    {"m0", interval_node(fb.m0)},
                                    {"mi", interval_node(fb.mi)},
                                    {"a0", interval_node(fb.a0)},
                                    {"a1", interval_node(fb.a1)},
                                    {"b0", interval_node(fb.b0)},
                                    {"b1", interval_node(fb.b1)},
                                    {"face_lo", faces_lo},
                                    {"face_hi", faces_hi}});
    }
    ordered_json j{{"stage", "local_bounds"},
                   {"status", status_str(cert.pass)},
                   {"epsilon", cert.epsilon},
                   {"m", cert.m},
                   {"families", fams},
                   {"area_slopes_positive", cert.area_slopes_positive},
                   {"edge_terms_vanish", cert.edge_terms_vanish}};
    if (!cert.failure.empty()) j["failure"] = cert.failure;
    j["runtime_seconds"] = cert.runtime_seconds;
    return j;
}

ordered_json global_node(const GlobalCertificate& cert) {
    const auto discard_map = [](const std::array<std::uint64_t, kDiscardReasonCount>& d) {
        ordered_json m;
        for (int r = 0; r < kDiscardReasonCount; ++r)
            m[discard_reason_name(DiscardReason(r))] = d[std::size_t(r)];
        return m;
    };
    ordered_json fams = ordered_json::array();
    for (const auto& fr : cert.families) {
        ordered_json f{{"family", family_name(fr.family)},
                       {"boxes", fr.boxes},
                       {"discards_by_reason", discard_map(fr.discards)},
                       {"max_depth", fr.max_depth},
                       {"volume_ratio", fr.volume_ratio}};
        if (fr.min_positive_margin)
            f["min_positive_margin"] = interval_node(*fr.min_positive_margin);
        fams.push_back(f);
    }
    ordered_json j{{"stage", "global_search"},
                   {"status", status_str(cert.pass)},
                   {"boxes_processed", cert.boxes_processed},
                   {"discards_by_reason", discard_map(cert.discards)},
                   {"max_depth_reached", cert.max_depth_reached}};
    if (cert.min_positive_margin)
        j["min_positive_margin"] = interval_node(*cert.min_positive_margin);
    if (cert.counterexample) {
        const auto& ce = *cert.counterexample;
        ordered_json cj{{"family", family_name(ce.family)},
                        {"box", box_node(ce.box)},
                        {"depth", ce.depth},
                        {"why", ce.why}};
        if (ce.margin) cj["margin"] = interval_node(*ce.margin);
        j["counterexample"] = cj;
    }
    j["families"] = fams;
    j["config"] = ordered_json{{"threads", cert.config.threads},
                               {"max_depth", cert.config.max_depth},
                               {"min_width", cert.config.min_width},
                               {"log_samples", cert.config.log_samples},
                               {"delta_offset", cert.config.delta_offset}};
    j["m"] = cert.m;
    j["prune_rule"] = "circumradius_lower_bound_exceeds_one_plus_r";
    j["runtime_seconds"] = cert.runtime_seconds;
    return j;
}

} // namespace

std::string constants_json(const ProofConstants& c) {
    struct Row {
        const char* name;
        Interval v;
    };
    const Row rows[] = {
        {"r", c.r},
        {"delta", c.delta},
        {"excess_alpha", c.excess_alpha},
        {"excess_beta", c.excess_beta},
        {"excess_small", c.excess_small},
        {"excess_large", c.excess_large},
        {"angle_alpha", c.angle_alpha},
        {"angle_alpha_prime", c.angle_alpha_prime},
        {"angle_beta", c.angle_beta},
        {"angle_beta_prime", c.angle_beta_prime},
        {"angle_pi3", c.angle_pi3},
        {"param_x", c.param_x},
        {"param_y", c.param_y},
        {"slope_m", Interval(c.slope_m)},
        {"cap_v", Interval(c.cap_v)},
        {"cell_side", c.cell_side},
        {"area_floor", c.area_floor},
    };
    std::string out = "[\n";
    bool first = true;
    for (const auto& row : rows) {
        if (!first) out += ",\n";
        first = false;
        out += "  {\"name\": \"" + std::string(row.name) + "\", \"lo\": " + fmt17(row.v.lo) +
               ", \"hi\": " + fmt17(row.v.hi) + "}";
    }
    out += "\n]\n";
    return out;
}

std::string to_json(const VertexBalanceCertificate& cert, bool pretty) {
    return vertex_node(cert).dump(pretty ? 2 : -1);
}

std::string to_json(const LocalCertificate& cert, bool pretty) {
    return local_node(cert).dump(pretty ? 2 : -1);
}

std::string to_json(const GlobalCertificate& cert, bool pretty) {
    return global_node(cert).dump(pretty ? 2 : -1);
}

std::string discard_log_lines(const GlobalCertificate& cert) {
    std::string out;
    for (const auto& s : cert.samples) {
        ordered_json j{{"family", family_name(s.family)},
                       {"box", box_node(s.box)},
                       {"reason", discard_reason_name(s.reason)},
                       {"margin_lo", s.margin.lo}};
        out += j.dump(-1);
        out += '\n';
    }
    return out;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string to_json(const ProofReport& report, bool pretty) {
    ordered_json j;
    j["tool"] = kToolName;
    j["tool_version"] = kToolVersion;
    j["timestamp"] = report.timestamp;
    j["configuration"] = ordered_json{{"m", report.config.m},
                                      {"epsilon", report.config.epsilon},
                                      {"threads", report.config.threads},
                                      {"max_depth", report.config.max_depth},
                                      {"min_width", report.config.min_width},
                                      {"skip_global", report.config.skip_global},
                                      {"experimental", report.config.experimental}};
    if (report.constants) j["constants"] = ordered_json::parse(constants_json(*report.constants));

    ordered_json stages = ordered_json::array();
    ordered_json not_run = ordered_json::array();
    if (report.vertex)
        stages.push_back(vertex_node(*report.vertex));
    else
        not_run.push_back("vertex_balance");
    if (report.local)
        stages.push_back(local_node(*report.local));
    else
        not_run.push_back("local_bounds");
    if (report.global)
        stages.push_back(global_node(*report.global));
    else
        not_run.push_back("global_search");
    j["stage_certificates"] = stages;
    j["stages_not_run"] = not_run;
    j["overall_status"] = status_str(report.overall_pass);
    j["runtime_seconds"] = report.runtime_seconds;
    return j.dump(pretty ? 2 : -1);
}

ProofReport run_full_proof(const ProofConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ProofReport report;
    report.config = cfg;
    report.timestamp = iso8601_utc_now();

    report.constants = compute_constants();
    const Potential pot(*report.constants, cfg.m, report.constants->cap_v);

    report.vertex = certify_vertex_balance(pot);
    if (report.vertex->pass) {
        report.local = certify_local(cfg.epsilon, cfg.m, *report.constants);
        if (report.local->pass && !cfg.skip_global) {
            GlobalConfig gcfg;
            gcfg.threads = cfg.threads;
            gcfg.max_depth = cfg.max_depth;
            gcfg.min_width = cfg.min_width;
            report.global = run_global(pot, *report.local, gcfg);
        }
    }

    // Pass requires all three stage certificates; a partial run (skipped or
    // aborted stages) never certifies the theorem.
    report.overall_pass = report.vertex && report.vertex->pass && report.local &&
                          report.local->pass && report.global && report.global->pass;
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace compack
