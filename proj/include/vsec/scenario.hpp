#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsec/protocol.hpp"

namespace vsec {

struct ScriptedCsi {
    CsiMessage csi;
    std::int64_t rx_ms = 0;  // host clock at reception; defaults to the CSI timestamp
};

/// A protocol run: link parameters, protocol policy, and the CSI script.
struct ScenarioFile {
    std::string name;
    LinkScenario link;
    ProtocolConfig protocol;
    std::vector<ScriptedCsi> csi_script;
};

/// YAML schema (unknown keys are rejected, errors carry a dotted field path):
///
///   name: <string>                      optional
///   link:                               required
///     r_m: <m>                          required, > 0
///     alpha: <exponent>                 required, > 0
///     tau_s: <s>                        optional, default 0.2
///     pn0_db: <dB>                      required, P/N0 with N0 = 1
///   protocol:                           optional
///     thresholds: [{from_mps, to_mps?, value}, ...]     to_mps omitted = infinity
///     boost: {step_db, cap_db, max_iterations}
///     strategy_order: [relay | power_boost | v2i, ...]
///     csi_max_age_ms: <ms>
///   relays: [{id, h_rb, h_re, max_power_db}, ...]      optional
///   csi_script:                         required, non-empty
///     - "CSI1|..."                      or {line: "CSI1|...", rx_ms: <ms>}
ScenarioFile parse_scenario(std::string_view yaml_text);
ScenarioFile load_scenario(const std::string& path);

struct TraceRecord {
    std::size_t index = 0;
    ScriptedCsi input;
    std::optional<LinkDecision> decision;
    std::string status = "ok";  // "ok" or the rejection reason
};

/// One record per scripted CSI message, in script order.
std::vector<TraceRecord> run_protocol_trace(const ScenarioFile& scenario);

inline constexpr std::string_view kTraceCsvHeader =
    "index,sender_id,seq,timestamp_ms,rx_ms,speed_mps,speed_kmh,snr_db,threshold,cs_direct,mode,relay_id,"
    "relay_power,boost_db,boost_iterations,cs_achieved,status";

std::string write_trace_csv(const std::vector<TraceRecord>& records);

}  // namespace vsec
