#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vsec {

/// Transmit power and noise variance on a common linear scale.
struct PowerBudget {
    double p_linear = 1.0;
    double n0_linear = 1.0;

    /// Throws DomainError unless both values are positive and their ratio is finite.
    static PowerBudget make(double p_linear, double n0_linear);
    /// P/N0 given in dB, with N0 normalized to 1.
    static PowerBudget from_snr_db(double snr_db);

    double snr() const { return p_linear / n0_linear; }
    double snr_db() const;
};

class PathLossExponent {
public:
    explicit PathLossExponent(double alpha);
    double value() const { return alpha_; }

private:
    double alpha_;
};

/// Fading amplitude law. Rayleigh, Rician and Nakagami are normalized to E[|h|^2] = 1.
/// Fixed is a non-fading reference link with a constant amplitude.
struct FadingModel {
    enum class Kind { Rayleigh, Rician, Nakagami, Fixed };

    Kind kind = Kind::Rayleigh;
    double param = 0.0;  // Rician K-factor, Nakagami m, or Fixed amplitude

    static FadingModel rayleigh() { return {Kind::Rayleigh, 0.0}; }
    static FadingModel rician(double k_factor);
    static FadingModel nakagami(double m);
    static FadingModel fixed(double amplitude);

    void validate() const;
};

/// Counter-friendly 64-bit generator; satisfies UniformRandomBitGenerator.
/// Used where independent per-index streams must be cheap to construct.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();

    /// Seed for the stream at `index` derived from a base seed.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

private:
    std::uint64_t state_;
};

// W log2(1 + snr)
double shannon_capacity(double bandwidth_hz, double snr);

/// Amplitude gain d^-alpha of the unbounded path-loss model; d <= 0 is rejected.
double path_loss_amplitude(double distance_m, PathLossExponent alpha);

double db_to_linear(double db);
double linear_to_db(double linear);

/// log2(1 + x), accurate for tiny x.
double log2_1p(double x);

// log2(1 + P g / N0) in bits/s/Hz.
double awgn_capacity(const PowerBudget& p, double gain_power);

template <class Rng>
double sample_fading(const FadingModel& model, Rng& rng) {
    using Kind = FadingModel::Kind;
    model.validate();
    switch (model.kind) {
        case Kind::Rayleigh: {
            // |h|^2 ~ Exp(1)
            std::exponential_distribution<double> power(1.0);
            return std::sqrt(power(rng));
        }
        case Kind::Rician: {
            const double k = model.param;
            const double los = std::sqrt(k / (k + 1.0));
            std::normal_distribution<double> scatter(0.0, std::sqrt(0.5 / (k + 1.0)));
            const double re = los + scatter(rng);
            const double im = scatter(rng);
            return std::hypot(re, im);
        }
        case Kind::Nakagami: {
            // |h|^2 ~ Gamma(m, 1/m)
            const double m = model.param;
            std::gamma_distribution<double> power(m, 1.0 / m);
            return std::sqrt(power(rng));
        }
        case Kind::Fixed:
            return model.param;
    }
    return 0.0;
}

}  // namespace vsec
