#include "vsec/kinematics.hpp"

#include <cmath>

#include "vsec/errors.hpp"

namespace vsec {

AccParams::AccParams(double tau) : tau_(tau) {
    if (!std::isfinite(tau) || tau <= 0.0) throw DomainError("ACC tau must be > 0");
}

double braking_distance(double v0, const BrakingProfile& profile) {
    if (!(profile.a_max > 0.0) || !std::isfinite(profile.a_max)) throw DomainError("a_max must be > 0");
    if (profile.t_a < 0.0 || profile.t_b < 0.0 || profile.t_c < 0.0)
        throw DomainError("braking periods must be >= 0");
    if (!(v0 >= 0.0) || !std::isfinite(v0)) throw DomainError("initial speed must be >= 0");
    return v0 * (profile.t_a + profile.t_b + profile.t_c / 2.0) + v0 * v0 / (2.0 * profile.a_max);
}

double safety_distance_full(const VehicleState& host, const VehicleState& target, AccParams tau) {
    if (!(host.acceleration > 0.0) || !(target.acceleration > 0.0))
        throw DomainError("acceleration capability must be > 0");
    if (!(host.speed >= 0.0) || !(target.speed >= 0.0)) throw DomainError("speed must be >= 0");
    // Equal speeds and decelerations cancel exactly, leaving v1 tau bit-for-bit.
    const double host_stop = host.speed * host.speed / (2.0 * host.acceleration);
    const double target_stop = target.speed * target.speed / (2.0 * target.acceleration);
    return host.speed * tau.tau() + (host_stop - target_stop);
}

double safety_distance_cruise(double v, AccParams tau) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("speed must be >= 0");
    return v * tau.tau();
}

}  // namespace vsec
