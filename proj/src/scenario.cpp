#include "vsec/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "vsec/errors.hpp"
#include "vsec/sweep.hpp"

namespace vsec {

namespace {

std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

void require_map(const YAML::Node& node, const std::string& path) {
    if (!node.IsMap()) throw ConfigError(path.empty() ? "<root>" : path, "expected a mapping");
}

void reject_unknown(const YAML::Node& node, const std::string& path, std::initializer_list<std::string_view> known) {
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) throw ConfigError(join(path, key), "unknown key");
    }
}

double get_number(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) throw ConfigError(path, "expected a number");
    try {
        const double v = node.as<double>();
        if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
        return v;
    } catch (const YAML::Exception&) {
        throw ConfigError(path, "expected a number, got '" + node.Scalar() + "'");
    }
}

std::int64_t get_integer(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) throw ConfigError(path, "expected an integer");
    try {
        return node.as<std::int64_t>();
    } catch (const YAML::Exception&) {
        throw ConfigError(path, "expected an integer, got '" + node.Scalar() + "'");
    }
}

std::string get_string(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) throw ConfigError(path, "expected a string");
    return node.Scalar();
}

double required_number(const YAML::Node& map, const std::string& path, const char* key) {
    const auto n = map[key];
    if (!n) throw ConfigError(join(path, key), "required");
    return get_number(n, join(path, key));
}

double optional_number(const YAML::Node& map, const std::string& path, const char* key, double fallback) {
    const auto n = map[key];
    return n ? get_number(n, join(path, key)) : fallback;
}

template <class Fn>
auto with_path(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
}

LinkScenario parse_link(const YAML::Node& node) {
    const std::string path = "link";
    if (!node) throw ConfigError(path, "required");
    require_map(node, path);
    reject_unknown(node, path, {"r_m", "alpha", "tau_s", "pn0_db"});
    LinkScenario link;
    link.r_m = required_number(node, path, "r_m");
    if (!(link.r_m > 0.0)) throw ConfigError("link.r_m", "must be > 0");
    const double alpha = required_number(node, path, "alpha");
    link.alpha = with_path("link.alpha", [&] { return PathLossExponent(alpha); });
    const double tau = optional_number(node, path, "tau_s", AccParams::kDefaultTau);
    link.tau = with_path("link.tau_s", [&] { return AccParams(tau); });
    const double pn0 = required_number(node, path, "pn0_db");
    link.power = with_path("link.pn0_db", [&] { return PowerBudget::from_snr_db(pn0); });
    return link;
}

Strategy parse_strategy(const std::string& s, const std::string& path) {
    if (s == "relay") return Strategy::Relay;
    if (s == "power_boost") return Strategy::PowerBoost;
    if (s == "v2i") return Strategy::V2IFallback;
    throw ConfigError(path, "unknown strategy '" + s + "' (relay, power_boost, v2i)");
}

void parse_protocol(const YAML::Node& node, ProtocolConfig& cfg) {
    if (!node) return;
    const std::string path = "protocol";
    require_map(node, path);
    reject_unknown(node, path, {"thresholds", "boost", "strategy_order", "csi_max_age_ms"});

    if (const auto t = node["thresholds"]) {
        if (!t.IsSequence()) throw ConfigError("protocol.thresholds", "expected a list of bands");
        std::vector<ThresholdBand> bands;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string bp = "protocol.thresholds[" + std::to_string(i) + "]";
            require_map(t[i], bp);
            reject_unknown(t[i], bp, {"from_mps", "to_mps", "value"});
            ThresholdBand b;
            b.low_mps = required_number(t[i], bp, "from_mps");
            b.high_mps = optional_number(t[i], bp, "to_mps", std::numeric_limits<double>::infinity());
            b.threshold = required_number(t[i], bp, "value");
            bands.push_back(b);
        }
        try {
            cfg.thresholds = ThresholdSchedule::make(std::move(bands));
        } catch (const ConfigError& e) {
            throw ConfigError("protocol." + e.path(), std::string(e.what()).substr(e.path().size() + 2));
        }
    }
    if (const auto b = node["boost"]) {
        require_map(b, "protocol.boost");
        reject_unknown(b, "protocol.boost", {"step_db", "cap_db", "max_iterations"});
        cfg.boost.step_db = optional_number(b, "protocol.boost", "step_db", cfg.boost.step_db);
        cfg.boost.cap_db = optional_number(b, "protocol.boost", "cap_db", cfg.boost.cap_db);
        if (const auto it = b["max_iterations"])
            cfg.boost.max_iterations = static_cast<int>(get_integer(it, "protocol.boost.max_iterations"));
    }
    if (const auto s = node["strategy_order"]) {
        if (!s.IsSequence()) throw ConfigError("protocol.strategy_order", "expected a list");
        cfg.strategy_order.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string sp = "protocol.strategy_order[" + std::to_string(i) + "]";
            cfg.strategy_order.push_back(parse_strategy(get_string(s[i], sp), sp));
        }
    }
    if (const auto a = node["csi_max_age_ms"]) cfg.csi_max_age_ms = get_integer(a, "protocol.csi_max_age_ms");
}

std::vector<RelayCandidate> parse_relays(const YAML::Node& node, double n0) {
    std::vector<RelayCandidate> out;
    if (!node) return out;
    if (!node.IsSequence()) throw ConfigError("relays", "expected a list");
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string rp = "relays[" + std::to_string(i) + "]";
        require_map(node[i], rp);
        reject_unknown(node[i], rp, {"id", "h_rb", "h_re", "max_power_db"});
        RelayCandidate c;
        if (!node[i]["id"]) throw ConfigError(rp + ".id", "required");
        c.id = get_string(node[i]["id"], rp + ".id");
        if (c.id.find(',') != std::string::npos) throw ConfigError(rp + ".id", "must not contain ','");
        c.h_rb = required_number(node[i], rp, "h_rb");
        c.h_re = required_number(node[i], rp, "h_re");
        c.max_power = n0 * db_to_linear(required_number(node[i], rp, "max_power_db"));
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<ScriptedCsi> parse_script(const YAML::Node& node) {
    if (!node) throw ConfigError("csi_script", "required");
    if (!node.IsSequence() || node.size() == 0) throw ConfigError("csi_script", "expected a non-empty list");
    std::vector<ScriptedCsi> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string sp = "csi_script[" + std::to_string(i) + "]";
        std::string line;
        std::optional<std::int64_t> rx;
        if (node[i].IsScalar()) {
            line = node[i].Scalar();
        } else {
            require_map(node[i], sp);
            reject_unknown(node[i], sp, {"line", "rx_ms"});
            if (!node[i]["line"]) throw ConfigError(sp + ".line", "required");
            line = get_string(node[i]["line"], sp + ".line");
            if (const auto r = node[i]["rx_ms"]) rx = get_integer(r, sp + ".rx_ms");
        }
        ScriptedCsi entry;
        try {
            entry.csi = parse_csi(line);
        } catch (const CsiError& e) {
            throw ConfigError(sp, e.what());
        }
        if (entry.csi.sender_id.find(',') != std::string::npos)
            throw ConfigError(sp, "sender_id must not contain ','");
        entry.rx_ms = rx.value_or(entry.csi.timestamp_ms);
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace

ScenarioFile parse_scenario(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw ConfigError("", std::string("YAML syntax: ") + e.what());
    }
    require_map(root, "");
    reject_unknown(root, "", {"name", "link", "protocol", "relays", "csi_script"});

    ScenarioFile s;
    if (const auto n = root["name"]) s.name = get_string(n, "name");
    s.link = parse_link(root["link"]);
    parse_protocol(root["protocol"], s.protocol);
    s.protocol.relays = parse_relays(root["relays"], s.link.power.n0_linear);
    s.protocol.validate();
    s.csi_script = parse_script(root["csi_script"]);
    return s;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open scenario file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::vector<TraceRecord> run_protocol_trace(const ScenarioFile& scenario) {
    ProtocolSession session(scenario.link, scenario.protocol);
    std::vector<TraceRecord> log;
    for (std::size_t i = 0; i < scenario.csi_script.size(); ++i) {
        TraceRecord rec;
        rec.index = i;
        rec.input = scenario.csi_script[i];
        try {
            rec.decision = session.on_csi(rec.input.csi, rec.input.rx_ms);
        } catch (const CsiError& e) {
            rec.status = std::string("rejected: ") + to_string(e.code());
        } catch (const DomainError&) {
            rec.status = std::string("rejected: domain error");
        }
        log.push_back(std::move(rec));
    }
    return log;
}

std::string write_trace_csv(const std::vector<TraceRecord>& records) {
    std::string out(kTraceCsvHeader);
    out += '\n';
    auto num = [](double v) { return format_csv_number(v); };
    for (const auto& r : records) {
        const auto& c = r.input.csi;
        out += std::to_string(r.index) + ',' + c.sender_id + ',' + std::to_string(c.seq) + ',' +
               std::to_string(c.timestamp_ms) + ',' + std::to_string(r.input.rx_ms) + ',' + num(c.speed_mps) + ',' +
               num(ms_to_kmh(c.speed_mps)) + ',' + num(c.snr_db) + ',';
        if (r.decision) {
            const auto& d = *r.decision;
            out += num(d.threshold_used) + ',' + num(d.cs_direct) + ',' + to_string(d.mode) + ',' + d.relay_id + ',' +
                   num(d.relay_power) + ',' + num(d.boost_db) + ',' + std::to_string(d.boost_iterations) + ',' +
                   num(d.cs_achieved);
        } else {
            out += ",,,,,,,";
        }
        out += ',' + r.status + '\n';
    }
    return out;
}

}  // namespace vsec
