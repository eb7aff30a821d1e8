#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "vsec/channel.hpp"
#include "vsec/csi.hpp"
#include "vsec/kinematics.hpp"
#include "vsec/secrecy.hpp"

namespace vsec {

struct ThresholdBand {
    double low_mps = 0.0;
    double high_mps = std::numeric_limits<double>::infinity();  // exclusive
    double threshold = 0.0;                                     // bits/s/Hz
};

/// Piecewise-constant secrecy threshold over speed bands partitioning [0, inf).
class ThresholdSchedule {
public:
    /// Throws ConfigError on a gap, an overlap, a negative threshold, or a partition
    /// that does not start at 0 and end at infinity.
    static ThresholdSchedule make(std::vector<ThresholdBand> bands);
    static ThresholdSchedule constant(double threshold);
    /// {[0, 25): 2.0, [25, inf): 1.0}
    static ThresholdSchedule default_schedule();

    double lookup(double speed_mps) const;
    const std::vector<ThresholdBand>& bands() const { return bands_; }

private:
    std::vector<ThresholdBand> bands_;
};

double derive_threshold(double speed_mps, const ThresholdSchedule& schedule);

struct RelayCandidate {
    std::string id;
    double h_rb = 0.0;       // relay -> target power gain
    double h_re = 0.0;       // relay -> eavesdropper power gain
    double max_power = 1.0;  // upper end of the relay power search, linear
};

/// The direct link a relay would assist, in the relay model's terms.
struct RelayLink {
    double p_a = 1.0;
    double h_ab = 1.0;
    double h_ae = 0.0;
    double sigma_b2 = 1.0;
    double sigma_e2 = 1.0;
    double w = 1.0;

    RelayConfig with(const RelayCandidate& c, double p_r) const;
};

/// Static link parameters a protocol session evaluates CSI against.
struct LinkScenario {
    double r_m = 1000.0;
    PathLossExponent alpha{1.4};
    AccParams tau{};
    PowerBudget power = PowerBudget::from_snr_db(70.0);

    SecrecyResult secrecy_at(double speed_mps, double p_linear) const;
    /// Relay-model view at the given speed: h_ab = (v tau)^-2alpha, h_ae = r^-2alpha.
    RelayLink relay_link(double speed_mps) const;
};

struct RelayProbe {
    std::string relay_id;
    double p_r = 0.0;
    double capacity = 0.0;  // raw relay secrecy, bits/s
};

struct RelaySelection {
    std::string relay_id;
    double relay_power = 0.0;
    SecrecyResult capacity;
    std::vector<RelayProbe> probes;  // every evaluation, all candidates
};

inline constexpr int kRelayGridPoints = 32;

/// Per candidate: 32-point grid over [0, max_power], then golden-section refinement
/// around the best grid point. Returns the argmax candidate; ties go to lower relay
/// power, then lexicographically smaller id. Throws NoRelayError on an empty list.
RelaySelection select_relay(const std::vector<RelayCandidate>& candidates, const RelayLink& link);

enum class Strategy { Relay, PowerBoost, V2IFallback };
enum class LinkMode { Direct, Relay, PowerBoost, V2IFallback };

const char* to_string(LinkMode mode);
const char* to_string(Strategy s);

struct BoostPolicy {
    double step_db = 2.0;
    double cap_db = 10.0;
    int max_iterations = 5;
};

struct ProtocolConfig {
    ThresholdSchedule thresholds = ThresholdSchedule::default_schedule();
    BoostPolicy boost;
    std::vector<RelayCandidate> relays;
    std::vector<Strategy> strategy_order{Strategy::Relay, Strategy::PowerBoost, Strategy::V2IFallback};
    std::int64_t csi_max_age_ms = 500;

    void validate() const;
};

struct LinkDecision {
    LinkMode mode = LinkMode::V2IFallback;
    std::string relay_id;
    double relay_power = 0.0;
    double new_power = 0.0;  // PowerBoost: boosted linear power
    double boost_db = 0.0;
    int boost_iterations = 0;
    double cs_direct = 0.0;    // clamped, at the original power
    double cs_achieved = 0.0;  // clamped, in the chosen mode
    double threshold_used = 0.0;

    bool operator==(const LinkDecision&) const = default;
};

/// Pure decision for one CSI report: direct if secrecy clears the speed threshold,
/// otherwise the configured strategies in order, with V2I as the terminal fallback.
LinkDecision decide(const CsiMessage& csi, const LinkScenario& scenario, const ProtocolConfig& config);

/// One sequential link session: enforces seq order and CSI freshness, then decides.
class ProtocolSession {
public:
    ProtocolSession(LinkScenario scenario, ProtocolConfig config);

    /// Throws CsiError(SeqRegression | Stale); a rejected message leaves the session unchanged.
    LinkDecision on_csi(const CsiMessage& csi, std::int64_t now_ms);

    const LinkScenario& scenario() const { return scenario_; }
    const ProtocolConfig& config() const { return config_; }

private:
    LinkScenario scenario_;
    ProtocolConfig config_;
    CsiStream sequence_;
};

}  // namespace vsec
