#pragma once

#include <optional>
#include <string>

#include "compack/constants.hpp"
#include "compack/global_search.hpp"
#include "compack/local_bounds.hpp"
#include "compack/vertex_balance.hpp"

namespace compack {

inline constexpr const char* kToolName = "compack";
inline constexpr const char* kToolVersion = "1.0.0";

// Machine-readable emission of every certificate. Certificates round-trip
// byte-identically through parse/serialize (modulo the report timestamp).

// The constants listing: a JSON array of {name, lo, hi} with endpoints
// printed to 17 significant digits.
std::string constants_json(const ProofConstants& c);

std::string to_json(const VertexBalanceCertificate& cert, bool pretty = true);
std::string to_json(const LocalCertificate& cert, bool pretty = true);
std::string to_json(const GlobalCertificate& cert, bool pretty = true);

// Line-delimited JSON log of the sampled discards of a global run:
// one {family, box, reason, margin_lo} object per line.
std::string discard_log_lines(const GlobalCertificate& cert);

struct ProofConfig {
    double m = 0.12;
    double epsilon = 1e-3;
    int threads = 1;
    int max_depth = 64;
    double min_width = 1e-6;
    bool skip_global = false;
    bool experimental = false;
};

struct ProofReport {
    ProofConfig config;
    std::optional<ProofConstants> constants;
    std::optional<VertexBalanceCertificate> vertex;
    std::optional<LocalCertificate> local;
    std::optional<GlobalCertificate> global;
    bool overall_pass = false;
    std::string timestamp; // ISO 8601 UTC
    double runtime_seconds = 0.0;
};

std::string to_json(const ProofReport& report, bool pretty = true);

// Runs the full chain constants -> vertex balance -> local bounds -> global
// search, stopping at the first failing stage. The global stage runs only
// when the local certificate passed.
ProofReport run_full_proof(const ProofConfig& cfg);

std::string iso8601_utc_now();

} // namespace compack
