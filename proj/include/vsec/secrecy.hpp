#pragma once

#include <cstdint>
#include <vector>

#include "vsec/channel.hpp"
#include "vsec/kinematics.hpp"

namespace vsec {

/// Host A, target B, eavesdropper E with |AE| ~ |BE| = r and |AB| = d = r theta.
struct LinkGeometry {
    double r = 1.0;      // host to eavesdropper, m
    double theta = 1.0;  // angle AEB, rad
    double d = 1.0;      // host to target, m

    static LinkGeometry from_angle(double r, double theta);
    static LinkGeometry from_separation(double r, double d);
    /// d = v tau wins over any angle; theta is derived as d / r.
    static LinkGeometry from_velocity(double r, double v, AccParams tau);

    void validate() const;
};

struct WiretapNoise {
    double n_m = 1.0;  // legitimate receiver
    double n_w = 1.0;  // eavesdropper
};

/// One relay between A and B. The h_* fields are power-domain gains.
struct RelayConfig {
    double p_a = 1.0;
    double p_r = 0.0;
    double h_ab = 1.0;
    double h_rb = 0.0;
    double h_ae = 0.0;
    double h_re = 0.0;
    double sigma_b2 = 1.0;
    double sigma_e2 = 1.0;
    double w = 1.0;

    void validate() const;
};

/// Secrecy capacity as evaluated (`raw`, may be negative) and as a rate (`clamped`).
struct SecrecyResult {
    double raw = 0.0;
    double clamped = 0.0;

    static SecrecyResult from_raw(double raw);
};

/// 1/2 log2(1 + P/N_m) - 1/2 log2(1 + P/N_w).
SecrecyResult gaussian_wiretap(double p, const WiretapNoise& noise);

/// log2(1 + P|h_ab|^2/N0) - log2(1 + P|h_ae|^2/N0) with amplitude coefficients.
SecrecyResult fading_secrecy(const PowerBudget& p, double h_ab, double h_ae);

/// fading_secrecy with h_ab = d^-alpha and h_ae = r^-alpha.
SecrecyResult geometric_secrecy(const PowerBudget& p, const LinkGeometry& geom, PathLossExponent alpha);

/// geometric_secrecy with d = v tau.
SecrecyResult velocity_secrecy(const PowerBudget& p, double v, AccParams tau, double r, PathLossExponent alpha);

/// W [log2(1 + P_A h_AB/(P_R h_RB + s_B)) - log2(1 + P_A h_AE/(P_R h_RE + s_E))], bits/s.
SecrecyResult relay_secrecy(const RelayConfig& cfg);

// ---------------------------------------------------------------------------
// Ergodic secrecy capacity

struct ErgodicSpec {
    static constexpr std::size_t kDefaultSamples = 100000;
    static constexpr std::uint64_t kDefaultSeed = 0x5ec7e7c0ffeeULL;

    FadingModel legit_fading = FadingModel::rayleigh();
    FadingModel eaves_fading = FadingModel::rayleigh();
    double sigma_b2 = 1.0;
    double sigma_e2 = 1.0;
    double p_budget = 1.0;
    std::size_t n_samples = kDefaultSamples;
    std::uint64_t seed = kDefaultSeed;

    void validate() const;
};

/// Per-state effective SNR gains a = |h_AB|^2/s_B and b = |h_AE|^2/s_E.
struct FadingStates {
    std::vector<double> legit;
    std::vector<double> eaves;

    std::size_t size() const { return legit.size(); }
};

struct ErgodicResult {
    double capacity = 0.0;            // bits/s/Hz
    double achieved_avg_power = 0.0;  // E[gamma]
    double ci_halfwidth = 0.0;        // 95% normal-approximation halfwidth
    double set_a_fraction = 0.0;      // empirical measure of {a > b}
    double multiplier = 0.0;          // Lagrange multiplier, natural-log units
    int iterations = 0;               // bisection steps
};

/// Draws the sample set. Sample i uses its own stream derived from (seed, i),
/// so the result does not depend on how the work is split across threads.
FadingStates sample_states(const ErgodicSpec& spec);

/// Optimal power for one state in A at multiplier mu (natural-log units):
/// positive root of ab g^2 + (a + b) g + 1 - (a - b)/mu = 0, clamped at 0.
double optimal_state_power(double a, double b, double mu);

/// Maximizes the average secrecy rate over gamma(a, b) >= 0 with E[gamma] <= p_budget.
/// Throws ConvergenceError if bisection on the multiplier misses its stopping rule.
ErgodicResult optimize_power(const FadingStates& states, double p_budget);

/// Constant power p_budget / Pr(A) on A, zero elsewhere; same sample set.
ErgodicResult constant_power_baseline(const FadingStates& states, double p_budget);

ErgodicResult ergodic_secrecy(const ErgodicSpec& spec);

}  // namespace vsec
