#include "vsec/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vsec/errors.hpp"

namespace vsec {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

PowerBudget PowerBudget::make(double p_linear, double n0_linear) {
    require_finite(p_linear, "transmit power");
    require_finite(n0_linear, "noise variance");
    if (p_linear <= 0.0) throw DomainError("transmit power must be > 0");
    if (n0_linear <= 0.0) throw DomainError("noise variance must be > 0");
    if (!std::isfinite(p_linear / n0_linear)) throw DomainError("P/N0 overflows");
    return {p_linear, n0_linear};
}

PowerBudget PowerBudget::from_snr_db(double snr_db) {
    return make(db_to_linear(snr_db), 1.0);
}

double PowerBudget::snr_db() const { return linear_to_db(snr()); }

PathLossExponent::PathLossExponent(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0) throw DomainError("path-loss exponent must be > 0");
}

FadingModel FadingModel::rician(double k_factor) {
    FadingModel m{Kind::Rician, k_factor};
    m.validate();
    return m;
}

FadingModel FadingModel::nakagami(double shape) {
    FadingModel m{Kind::Nakagami, shape};
    m.validate();
    return m;
}

FadingModel FadingModel::fixed(double amplitude) {
    FadingModel m{Kind::Fixed, amplitude};
    m.validate();
    return m;
}

void FadingModel::validate() const {
    switch (kind) {
        case Kind::Rayleigh:
            return;
        case Kind::Rician:
            if (!std::isfinite(param) || param < 0.0) throw DomainError("Rician K-factor must be >= 0");
            return;
        case Kind::Nakagami:
            if (!std::isfinite(param) || param < 0.5) throw DomainError("Nakagami m must be >= 0.5");
            return;
        case Kind::Fixed:
            if (!std::isfinite(param) || param < 0.0) throw DomainError("fixed amplitude must be >= 0");
            return;
    }
}

SplitMix64::result_type SplitMix64::operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::derive(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 a(seed);
    SplitMix64 b(a() ^ (index * 0xd1b54a32d192ed03ULL));
    return b();
}

double shannon_capacity(double bandwidth_hz, double snr) {
    require_finite(bandwidth_hz, "bandwidth");
    require_finite(snr, "snr");
    if (bandwidth_hz <= 0.0) throw DomainError("bandwidth must be > 0");
    if (snr < 0.0) throw DomainError("snr must be >= 0");
    return bandwidth_hz * log2_1p(snr);
}

double path_loss_amplitude(double distance_m, PathLossExponent alpha) {
    require_finite(distance_m, "distance");
    if (distance_m <= 0.0) throw DomainError("path-loss distance must be > 0 (model is singular at d = 0)");
    return std::pow(distance_m, -alpha.value());
}

double db_to_linear(double db) {
    require_finite(db, "dB value");
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear) {
    require_finite(linear, "linear value");
    if (linear <= 0.0) throw DomainError("linear_to_db requires x > 0");
    return 10.0 * std::log10(linear);
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

double awgn_capacity(const PowerBudget& p, double gain_power) {
    require_finite(gain_power, "gain");
    if (gain_power < 0.0) throw DomainError("gain must be >= 0");
    return shannon_capacity(1.0, p.p_linear * gain_power / p.n0_linear);
}

}  // namespace vsec
