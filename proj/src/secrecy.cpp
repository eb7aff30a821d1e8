#include "vsec/secrecy.hpp"

#include <algorithm>
#include <cmath>

#include "vsec/errors.hpp"

namespace vsec {

namespace {

void require_budget(const PowerBudget& p) {
    if (!(p.p_linear > 0.0) || !std::isfinite(p.p_linear)) throw DomainError("transmit power must be > 0");
    if (!(p.n0_linear > 0.0) || !std::isfinite(p.n0_linear)) throw DomainError("noise variance must be > 0");
}

}  // namespace

LinkGeometry LinkGeometry::from_angle(double r, double theta) {
    LinkGeometry g{r, theta, r * theta};
    g.validate();
    return g;
}

LinkGeometry LinkGeometry::from_separation(double r, double d) {
    LinkGeometry g{r, d / r, d};
    g.validate();
    return g;
}

LinkGeometry LinkGeometry::from_velocity(double r, double v, AccParams tau) {
    if (!(v > 0.0)) throw DomainError("speed must be > 0 (d = v tau = 0 is a path-loss singularity)");
    return from_separation(r, safety_distance_cruise(v, tau));
}

void LinkGeometry::validate() const {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("eavesdropper distance r must be > 0");
    if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("host-target distance d must be > 0");
    if (!std::isfinite(theta) || std::abs(d - r * theta) > 1e-9 * d)
        throw DomainError("geometry must satisfy d = r theta");
}

void RelayConfig::validate() const {
    if (!(p_a > 0.0)) throw DomainError("relay config: p_a must be > 0");
    if (!(p_r >= 0.0)) throw DomainError("relay config: p_r must be >= 0");
    if (!(h_ab >= 0.0) || !(h_rb >= 0.0) || !(h_ae >= 0.0) || !(h_re >= 0.0))
        throw DomainError("relay config: channel gains must be >= 0");
    if (!(sigma_b2 > 0.0) || !(sigma_e2 > 0.0)) throw DomainError("relay config: noise variances must be > 0");
    if (!(w > 0.0)) throw DomainError("relay config: bandwidth must be > 0");
}

SecrecyResult SecrecyResult::from_raw(double raw) { return {raw, std::max(0.0, raw)}; }

SecrecyResult gaussian_wiretap(double p, const WiretapNoise& noise) {
    if (!(p > 0.0)) throw DomainError("transmit power must be > 0");
    if (!(noise.n_m > 0.0) || !(noise.n_w > 0.0)) throw DomainError("noise must be > 0");
    return SecrecyResult::from_raw(0.5 * log2_1p(p / noise.n_m) - 0.5 * log2_1p(p / noise.n_w));
}

SecrecyResult fading_secrecy(const PowerBudget& p, double h_ab, double h_ae) {
    require_budget(p);
    if (!(h_ab >= 0.0) || !(h_ae >= 0.0)) throw DomainError("fading amplitudes must be >= 0");
    const double snr = p.snr();
    return SecrecyResult::from_raw(log2_1p(snr * h_ab * h_ab) - log2_1p(snr * h_ae * h_ae));
}

SecrecyResult geometric_secrecy(const PowerBudget& p, const LinkGeometry& geom, PathLossExponent alpha) {
    geom.validate();
    return fading_secrecy(p, path_loss_amplitude(geom.d, alpha), path_loss_amplitude(geom.r, alpha));
}

SecrecyResult velocity_secrecy(const PowerBudget& p, double v, AccParams tau, double r, PathLossExponent alpha) {
    return geometric_secrecy(p, LinkGeometry::from_velocity(r, v, tau), alpha);
}

SecrecyResult relay_secrecy(const RelayConfig& cfg) {
    cfg.validate();
    const double legit = cfg.p_a * cfg.h_ab / (cfg.p_r * cfg.h_rb + cfg.sigma_b2);
    const double eaves = cfg.p_a * cfg.h_ae / (cfg.p_r * cfg.h_re + cfg.sigma_e2);
    return SecrecyResult::from_raw(cfg.w * (log2_1p(legit) - log2_1p(eaves)));
}

}  // namespace vsec
