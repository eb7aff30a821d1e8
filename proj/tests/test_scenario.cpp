#include <doctest.h>

#include <string>

#include "vsec/csi.hpp"
#include "vsec/errors.hpp"
#include "vsec/scenario.hpp"

using namespace vsec;

namespace {

std::string line(std::uint64_t seq, std::int64_t ts, double speed, const std::string& id = "veh-1") {
    return encode_csi(CsiMessage::make(id, seq, ts, 20.0, -60.0, -95.0, speed));
}

constexpr const char* kFarLink = "link:\n  r_m: 1000\n  alpha: 1.4\n  tau_s: 0.2\n  pn0_db: 70\n";
// The eavesdropper sits 30 m away, close enough for jamming to matter.
constexpr const char* kCloseLink = "link:\n  r_m: 30\n  alpha: 2\n  tau_s: 0.4\n  pn0_db: 60\n";

std::string base_yaml(const std::string& protocol, const std::string& extra, const std::string& script,
                      const char* link = kFarLink) {
    return std::string("name: t\n") + link + protocol + extra + "csi_script:\n" + script;
}

std::string accel_script(int count) {
    std::string s;
    for (int i = 0; i < count; ++i) s += "  - \"" + line(i + 1, 100 * i, 22.0 + 0.25 * i) + "\"\n";
    return s;
}

std::string config_error_path(const std::string& yaml) {
    try {
        parse_scenario(yaml);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("parse a full scenario") {
    const std::string yaml = base_yaml(
        "protocol:\n"
        "  thresholds:\n    - {from_mps: 0, to_mps: 25, value: 17}\n    - {from_mps: 25, value: 16}\n"
        "  boost: {step_db: 1, cap_db: 6, max_iterations: 4}\n"
        "  strategy_order: [power_boost, relay, v2i]\n"
        "  csi_max_age_ms: 300\n",
        "relays:\n  - {id: R1, h_rb: 0.5, h_re: 0.01, max_power_db: 60}\n",
        "  - \"" + line(1, 0, 20) + "\"\n  - {line: \"" + line(2, 100, 21) + "\", rx_ms: 150}\n");
    const auto sc = parse_scenario(yaml);
    CHECK(sc.name == "t");
    CHECK(sc.link.r_m == 1000);
    CHECK(sc.link.tau.tau() == 0.2);
    CHECK(sc.protocol.thresholds.lookup(10) == 17);
    CHECK(sc.protocol.thresholds.lookup(30) == 16);
    CHECK(sc.protocol.boost.step_db == 1);
    CHECK(sc.protocol.strategy_order.front() == Strategy::PowerBoost);
    CHECK(sc.protocol.csi_max_age_ms == 300);
    REQUIRE(sc.protocol.relays.size() == 1);
    CHECK(sc.protocol.relays[0].max_power == doctest::Approx(1e6));
    REQUIRE(sc.csi_script.size() == 2);
    CHECK(sc.csi_script[0].rx_ms == 0);
    CHECK(sc.csi_script[1].rx_ms == 150);
    CHECK(sc.csi_script[1].csi.speed_mps == 21);
}

TEST_CASE("schema errors carry field paths") {
    const std::string ok_script = "  - \"" + line(1, 0, 20) + "\"\n";
    CHECK(config_error_path(base_yaml("bogus: 1\n", "", ok_script)) == "bogus");
    CHECK(config_error_path("link:\n  alpha: 1.4\n  pn0_db: 70\ncsi_script:\n" + ok_script) == "link.r_m");
    CHECK(config_error_path(base_yaml("", "", "")) == "csi_script");
    CHECK(config_error_path(base_yaml("", "", "  - \"CSI1|a|1\"\n")) == "csi_script[0]");
    CHECK(config_error_path(base_yaml("protocol:\n  thresholds:\n    - {from_mps: 0, to_mps: 10, value: 2}\n"
                                      "    - {from_mps: 12, value: 1}\n",
                                      "", ok_script))
              .rfind("protocol.thresholds", 0) == 0);
    CHECK(config_error_path(base_yaml("protocol:\n  strategy_order: [teleport]\n", "", ok_script)) ==
          "protocol.strategy_order[0]");
    CHECK(config_error_path(base_yaml("", "relays:\n  - {id: R1, h_rb: -1, h_re: 1, max_power_db: 10}\n", ok_script))
              .rfind("relays[0]", 0) == 0);
    CHECK(config_error_path("link:\n  r_m: x\n  alpha: 1.4\n  pn0_db: 70\ncsi_script:\n" + ok_script) == "link.r_m");
    CHECK(config_error_path("[1, 2]\n") == "<root>");
    CHECK_THROWS_AS(parse_scenario("link: {r_m: 1\n"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), ConfigError);
}

TEST_CASE("trace replay is deterministic and feasible") {
    const auto sc = parse_scenario(base_yaml("protocol:\n  thresholds:\n    - {from_mps: 0, value: 16.5}\n", "",
                                             accel_script(40)));
    const auto a = run_protocol_trace(sc);
    const auto b = run_protocol_trace(sc);
    CHECK(write_trace_csv(a) == write_trace_csv(b));
    REQUIRE(a.size() == 40);
    bool saw_direct = false, saw_fallback = false;
    for (const auto& r : a) {
        REQUIRE(r.decision);
        CHECK(r.status == "ok");
        if (r.decision->mode == LinkMode::Direct) {
            saw_direct = true;
            CHECK(r.decision->cs_direct >= r.decision->threshold_used);
        } else {
            saw_fallback = true;
        }
    }
    CHECK(saw_direct);
    CHECK(saw_fallback);
    const auto csv = write_trace_csv(a);
    CHECK(csv.substr(0, csv.find('\n')) == kTraceCsvHeader);
}

TEST_CASE("stale and regressed messages are rejected without disturbing the stream") {
    const std::string script = "  - \"" + line(5, 1000, 20) + "\"\n" +
                               "  - \"" + line(4, 1100, 20) + "\"\n" +
                               "  - {line: \"" + line(6, 1200, 20) + "\", rx_ms: 1800}\n" +
                               "  - \"" + line(6, 1300, 20) + "\"\n" +
                               "  - \"" + line(1, 1400, 20, "veh-2") + "\"\n";
    const auto trace = run_protocol_trace(parse_scenario(base_yaml("", "", script)));
    REQUIRE(trace.size() == 5);
    CHECK(trace[0].status == "ok");
    CHECK(trace[1].status == "rejected: seq regression");
    CHECK_FALSE(trace[1].decision);
    CHECK(trace[2].status == "rejected: stale csi");
    CHECK(trace[3].status == "ok");
    CHECK(trace[4].status == "ok");
    const auto csv = write_trace_csv(trace);
    CHECK(csv.find("rejected: stale csi") != std::string::npos);
}

TEST_CASE("no relays and an unreachable threshold fall back to V2I") {
    const auto sc = parse_scenario(base_yaml("protocol:\n  thresholds:\n    - {from_mps: 0, value: 1000}\n", "",
                                             accel_script(10)));
    for (const auto& r : run_protocol_trace(sc)) {
        REQUIRE(r.decision);
        CHECK(r.decision->mode == LinkMode::V2IFallback);
    }
}

TEST_CASE("a jamming relay is chosen exactly when it rescues the link") {
    const auto sc = parse_scenario(base_yaml("protocol:\n  thresholds:\n    - {from_mps: 0, value: 6}\n",
                                             "relays:\n  - {id: J, h_rb: 1e-8, h_re: 1e-2, max_power_db: 60}\n",
                                             accel_script(40), kCloseLink));
    int relays = 0, beyond_reach = 0;
    for (const auto& r : run_protocol_trace(sc)) {
        REQUIRE(r.decision);
        const auto& d = *r.decision;
        if (d.cs_direct >= d.threshold_used) {
            CHECK(d.mode == LinkMode::Direct);
            continue;
        }
        const auto sel = select_relay(sc.protocol.relays, sc.link.relay_link(r.input.csi.speed_mps));
        if (sel.capacity.clamped >= d.threshold_used) {
            CHECK(d.mode == LinkMode::Relay);
            CHECK(d.relay_id == "J");
            CHECK(d.cs_achieved == sel.capacity.clamped);
            ++relays;
        } else {
            CHECK(d.mode != LinkMode::Relay);
            ++beyond_reach;
        }
    }
    CHECK(relays > 0);
    CHECK(beyond_reach > 0);
}
