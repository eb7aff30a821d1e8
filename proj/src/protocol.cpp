#include "vsec/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "vsec/errors.hpp"

namespace vsec {

namespace {

constexpr int kGoldenIterations = 80;
constexpr double kTieTolerance = 1e-12;

bool same_capacity(double x, double y) {
    return std::abs(x - y) <= kTieTolerance * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

// Strict preference with the tie rules: capacity, then lower power, then id.
bool better(double cap, double power, const std::string& id, const RelaySelection& best) {
    if (!same_capacity(cap, best.capacity.raw)) return cap > best.capacity.raw;
    if (power != best.relay_power) return power < best.relay_power;
    return id < best.relay_id;
}

struct CandidateOptimum {
    double p_r = 0.0;
    double capacity = -std::numeric_limits<double>::infinity();
};

CandidateOptimum optimize_candidate(const RelayCandidate& c, const RelayLink& link,
                                    std::vector<RelayProbe>& probes) {
    CandidateOptimum best;
    const std::size_t first_probe = probes.size();
    auto eval = [&](double p_r) {
        const double cap = relay_secrecy(link.with(c, p_r)).raw;
        probes.push_back({c.id, p_r, cap});
        if (probes.size() == first_probe + 1 || (cap > best.capacity && !same_capacity(cap, best.capacity))) {
            best = {p_r, cap};
        } else if (same_capacity(cap, best.capacity) && p_r < best.p_r) {
            best.p_r = p_r;
        }
        return cap;
    };

    const double step = c.max_power / (kRelayGridPoints - 1);
    int best_index = 0;
    double best_grid = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < kRelayGridPoints; ++j) {
        const double cap = eval(step * j);
        if (cap > best_grid) {
            best_grid = cap;
            best_index = j;
        }
    }
    if (c.max_power == 0.0) return best;

    // Golden-section search over the two grid cells adjacent to the best grid point.
    double lo = step * std::max(0, best_index - 1);
    double hi = step * std::min(kRelayGridPoints - 1, best_index + 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = eval(x1);
    double f2 = eval(x2);
    for (int it = 0; it < kGoldenIterations && hi - lo > 1e-12 * c.max_power; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval(x1);
        }
    }
    return best;
}

}  // namespace

ThresholdSchedule ThresholdSchedule::make(std::vector<ThresholdBand> bands) {
    if (bands.empty()) throw ConfigError("thresholds", "schedule needs at least one band");
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const auto& b = bands[i];
        const std::string path = "thresholds[" + std::to_string(i) + "]";
        if (!(b.threshold >= 0.0) || !std::isfinite(b.threshold))
            throw ConfigError(path + ".value", "threshold must be finite and >= 0");
        if (!(b.high_mps > b.low_mps)) throw ConfigError(path, "band must satisfy low < high");
        if (i == 0 && b.low_mps != 0.0) throw ConfigError(path + ".from_mps", "first band must start at 0");
        if (i > 0) {
            const double prev_high = bands[i - 1].high_mps;
            if (b.low_mps > prev_high) throw ConfigError(path + ".from_mps", "gap before this band");
            if (b.low_mps < prev_high) throw ConfigError(path + ".from_mps", "overlaps the previous band");
        }
    }
    if (!std::isinf(bands.back().high_mps))
        throw ConfigError("thresholds[" + std::to_string(bands.size() - 1) + "].to_mps",
                          "last band must extend to infinity");
    ThresholdSchedule s;
    s.bands_ = std::move(bands);
    return s;
}

ThresholdSchedule ThresholdSchedule::constant(double threshold) {
    return make({{0.0, std::numeric_limits<double>::infinity(), threshold}});
}

ThresholdSchedule ThresholdSchedule::default_schedule() {
    return make({{0.0, 25.0, 2.0}, {25.0, std::numeric_limits<double>::infinity(), 1.0}});
}

double ThresholdSchedule::lookup(double speed_mps) const {
    if (!(speed_mps >= 0.0)) throw DomainError("speed must be >= 0");
    for (const auto& b : bands_)
        if (speed_mps >= b.low_mps && speed_mps < b.high_mps) return b.threshold;
    return bands_.back().threshold;  // unreachable for a validated partition
}

double derive_threshold(double speed_mps, const ThresholdSchedule& schedule) { return schedule.lookup(speed_mps); }

RelayConfig RelayLink::with(const RelayCandidate& c, double p_r) const {
    RelayConfig cfg;
    cfg.p_a = p_a;
    cfg.p_r = p_r;
    cfg.h_ab = h_ab;
    cfg.h_rb = c.h_rb;
    cfg.h_ae = h_ae;
    cfg.h_re = c.h_re;
    cfg.sigma_b2 = sigma_b2;
    cfg.sigma_e2 = sigma_e2;
    cfg.w = w;
    return cfg;
}

SecrecyResult LinkScenario::secrecy_at(double speed_mps, double p_linear) const {
    return velocity_secrecy(PowerBudget::make(p_linear, power.n0_linear), speed_mps, tau, r_m, alpha);
}

RelayLink LinkScenario::relay_link(double speed_mps) const {
    const auto geom = LinkGeometry::from_velocity(r_m, speed_mps, tau);
    const double h_ab = path_loss_amplitude(geom.d, alpha);
    const double h_ae = path_loss_amplitude(geom.r, alpha);
    RelayLink link;
    link.p_a = power.p_linear;
    link.h_ab = h_ab * h_ab;
    link.h_ae = h_ae * h_ae;
    link.sigma_b2 = power.n0_linear;
    link.sigma_e2 = power.n0_linear;
    return link;
}

RelaySelection select_relay(const std::vector<RelayCandidate>& candidates, const RelayLink& link) {
    if (candidates.empty()) throw NoRelayError("select_relay: no relay candidates");
    RelaySelection best;
    best.capacity.raw = -std::numeric_limits<double>::infinity();
    std::vector<RelayProbe> probes;
    for (const auto& c : candidates) {
        if (!(c.max_power >= 0.0) || !std::isfinite(c.max_power))
            throw DomainError("relay " + c.id + ": max_power must be finite and >= 0");
        const auto opt = optimize_candidate(c, link, probes);
        if (best.relay_id.empty() || better(opt.capacity, opt.p_r, c.id, best)) {
            best.relay_id = c.id;
            best.relay_power = opt.p_r;
            best.capacity = SecrecyResult::from_raw(opt.capacity);
        }
    }
    best.probes = std::move(probes);
    return best;
}

const char* to_string(LinkMode mode) {
    switch (mode) {
        case LinkMode::Direct: return "direct";
        case LinkMode::Relay: return "relay";
        case LinkMode::PowerBoost: return "power_boost";
        case LinkMode::V2IFallback: return "v2i";
    }
    return "?";
}

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Relay: return "relay";
        case Strategy::PowerBoost: return "power_boost";
        case Strategy::V2IFallback: return "v2i";
    }
    return "?";
}

void ProtocolConfig::validate() const {
    if (!(boost.step_db > 0.0)) throw ConfigError("protocol.boost.step_db", "must be > 0");
    if (!(boost.cap_db >= 0.0)) throw ConfigError("protocol.boost.cap_db", "must be >= 0");
    if (boost.max_iterations < 1) throw ConfigError("protocol.boost.max_iterations", "must be >= 1");
    if (csi_max_age_ms < 0) throw ConfigError("protocol.csi_max_age_ms", "must be >= 0");
    for (std::size_t i = 0; i < relays.size(); ++i) {
        const auto& r = relays[i];
        const std::string path = "relays[" + std::to_string(i) + "]";
        if (r.id.empty()) throw ConfigError(path + ".id", "must be non-empty");
        if (!(r.h_rb >= 0.0)) throw ConfigError(path + ".h_rb", "must be >= 0");
        if (!(r.h_re >= 0.0)) throw ConfigError(path + ".h_re", "must be >= 0");
        if (!(r.max_power >= 0.0) || !std::isfinite(r.max_power))
            throw ConfigError(path + ".max_power", "must be finite and >= 0");
        for (std::size_t j = 0; j < i; ++j)
            if (relays[j].id == r.id) throw ConfigError(path + ".id", "duplicate relay id '" + r.id + "'");
    }
    for (std::size_t i = 0; i < strategy_order.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (strategy_order[i] == strategy_order[j])
                throw ConfigError("protocol.strategy_order[" + std::to_string(i) + "]", "duplicate strategy");
}

LinkDecision decide(const CsiMessage& csi, const LinkScenario& scenario, const ProtocolConfig& config) {
    const double v = csi.speed_mps;
    LinkDecision d;
    d.threshold_used = derive_threshold(v, config.thresholds);
    d.cs_direct = scenario.secrecy_at(v, scenario.power.p_linear).clamped;
    d.cs_achieved = d.cs_direct;

    if (d.cs_direct >= d.threshold_used) {
        d.mode = LinkMode::Direct;
        return d;
    }

    for (const Strategy s : config.strategy_order) {
        switch (s) {
            case Strategy::Relay: {
                if (config.relays.empty()) break;
                const auto sel = select_relay(config.relays, scenario.relay_link(v));
                if (sel.capacity.clamped >= d.threshold_used) {
                    d.mode = LinkMode::Relay;
                    d.relay_id = sel.relay_id;
                    d.relay_power = sel.relay_power;
                    d.cs_achieved = sel.capacity.clamped;
                    return d;
                }
                break;
            }
            case Strategy::PowerBoost: {
                for (int i = 1; i <= config.boost.max_iterations; ++i) {
                    const double boost_db = config.boost.step_db * i;
                    if (boost_db > config.boost.cap_db * (1.0 + 1e-12)) break;
                    const double p = scenario.power.p_linear * db_to_linear(boost_db);
                    const double cs = scenario.secrecy_at(v, p).clamped;
                    if (cs >= d.threshold_used) {
                        d.mode = LinkMode::PowerBoost;
                        d.new_power = p;
                        d.boost_db = boost_db;
                        d.boost_iterations = i;
                        d.cs_achieved = cs;
                        return d;
                    }
                }
                break;
            }
            case Strategy::V2IFallback:
                d.mode = LinkMode::V2IFallback;
                return d;
        }
    }
    d.mode = LinkMode::V2IFallback;
    return d;
}

ProtocolSession::ProtocolSession(LinkScenario scenario, ProtocolConfig config)
    : scenario_(std::move(scenario)), config_(std::move(config)) {
    config_.validate();
}

LinkDecision ProtocolSession::on_csi(const CsiMessage& csi, std::int64_t now_ms) {
    sequence_.check_sequence(csi);
    if (now_ms - csi.timestamp_ms > config_.csi_max_age_ms)
        throw CsiError(CsiErrorCode::Stale, csi.sender_id + " seq " + std::to_string(csi.seq) + " is " +
                                                std::to_string(now_ms - csi.timestamp_ms) + " ms old");
    LinkDecision d = decide(csi, scenario_, config_);
    sequence_.commit(csi);
    return d;
}

}  // namespace vsec
