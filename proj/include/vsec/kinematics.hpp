#pragma once

namespace vsec {

// Internal units are SI throughout: m, s, m/s, m/s^2.

struct BrakingProfile {
    double t_a = 0.0;    // response period
    double t_b = 0.0;    // braking clearance period
    double t_c = 0.0;    // braking force applying period
    double a_max = 1.0;  // maximum deceleration
};

/// Cruise-control time constant tau (s) coupling speed to spacing.
class AccParams {
public:
    static constexpr double kDefaultTau = 0.2;

    explicit AccParams(double tau = kDefaultTau);
    double tau() const { return tau_; }

private:
    double tau_;
};

struct VehicleState {
    double speed = 0.0;         // m/s
    double acceleration = 1.0;  // braking capability, m/s^2
};

/// Distance covered from the braking trigger to standstill:
/// v0 (t_a + t_b + t_c/2) + v0^2 / (2 a_max).
double braking_distance(double v0, const BrakingProfile& profile);

/// v1 tau + V1^2/(2 a1) - V2^2/(2 a2). Negative results are returned unclamped.
double safety_distance_full(const VehicleState& host, const VehicleState& target, AccParams tau);

/// Steady-cruise reduction (equal speeds and decelerations): v tau.
double safety_distance_cruise(double v, AccParams tau);

constexpr double kmh_to_ms(double kmh) { return kmh / 3.6; }
constexpr double ms_to_kmh(double ms) { return ms * 3.6; }

}  // namespace vsec
