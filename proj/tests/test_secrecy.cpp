#include <doctest.h>

#include <cmath>
#include <random>

#include "mp_oracle.hpp"
#include "vsec/errors.hpp"
#include "vsec/kinematics.hpp"
#include "vsec/secrecy.hpp"

using namespace vsec;

namespace {

// 50-digit evaluation of log2(1+1e7/4.444^2.8) - log2(1+1e7/1000^2.8).
constexpr double kHandValue = 17.171980443434384;

}  // namespace

TEST_CASE("gaussian wiretap") {
    CHECK(gaussian_wiretap(7.0, {2.0, 2.0}).raw == 0.0);
    CHECK(gaussian_wiretap(15.0, {1.0, 15.0}).raw == doctest::Approx(1.5).epsilon(1e-15));
    const auto degraded = gaussian_wiretap(10.0, {3.0, 1.0});
    CHECK(degraded.raw < 0.0);
    CHECK(degraded.clamped == 0.0);
    CHECK(gaussian_wiretap(10.0, {1.0, 3.0}).raw > 0.0);
    CHECK_THROWS_AS(gaussian_wiretap(10.0, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(gaussian_wiretap(0.0, {1.0, 1.0}), DomainError);
}

TEST_CASE("fading secrecy") {
    const auto p = PowerBudget::from_snr_db(70.0);
    CHECK(fading_secrecy(p, 0.3, 0.3).raw == 0.0);

    const double h_ab = path_loss_amplitude(4.444, PathLossExponent(1.4));
    const double h_ae = path_loss_amplitude(1000.0, PathLossExponent(1.4));
    CHECK(fading_secrecy(p, h_ab, h_ae).raw == doctest::Approx(kHandValue).epsilon(1e-12));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> amp(0.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        const double x = amp(rng), y = amp(rng);
        const auto fwd = fading_secrecy(p, x, y), rev = fading_secrecy(p, y, x);
        CHECK(fwd.raw == -rev.raw);
        CHECK((fwd.raw > 0) == (x > y));
        CHECK(fwd.clamped == std::max(0.0, fwd.raw));
    }
    CHECK_THROWS_AS(fading_secrecy({0.0, 1.0}, 1, 1), DomainError);
    CHECK_THROWS_AS(fading_secrecy({1.0, 0.0}, 1, 1), DomainError);
    CHECK_THROWS_AS(fading_secrecy(p, -0.1, 1), DomainError);
}

TEST_CASE("geometry") {
    const auto g = LinkGeometry::from_angle(1000.0, 0.1);
    CHECK(g.d == doctest::Approx(100.0));
    const auto v = LinkGeometry::from_velocity(1000.0, 20.0, AccParams(0.2));
    CHECK(v.d == doctest::Approx(4.0));
    CHECK(v.theta == doctest::Approx(0.004));
    CHECK_THROWS_AS(LinkGeometry::from_angle(1000.0, 0.0), DomainError);
    CHECK_THROWS_AS(LinkGeometry::from_separation(0.0, 5.0), DomainError);
    CHECK_THROWS_AS(LinkGeometry::from_velocity(1000.0, 0.0, AccParams(0.2)), DomainError);
    CHECK_THROWS_AS((LinkGeometry{100.0, 0.5, 10.0}.validate()), DomainError);
}

TEST_CASE("geometric secrecy") {
    const auto p = PowerBudget::from_snr_db(70.0);
    CHECK(geometric_secrecy(p, LinkGeometry::from_angle(1000.0, 1.0), PathLossExponent(3.5)).raw == 0.0);

    // r = 1000, theta = 0.1, alpha = 3.5: positive and decreasing as d grows.
    double prev = INFINITY;
    for (double d = 100.0; d < 1000.0; d += 50.0) {
        const double cs = geometric_secrecy(p, LinkGeometry::from_separation(1000.0, d), PathLossExponent(3.5)).raw;
        CHECK(cs < prev);
        CHECK(cs > 0.0);
        prev = cs;
    }
    CHECK(geometric_secrecy(p, LinkGeometry::from_separation(1000.0, 4.444), PathLossExponent(1.4)).raw ==
          doctest::Approx(kHandValue).epsilon(1e-12));
    CHECK(geometric_secrecy(p, LinkGeometry::from_separation(1000.0, 1500.0), PathLossExponent(2)).raw < 0.0);
}

TEST_CASE("velocity secrecy") {
    const auto p = PowerBudget::from_snr_db(70.0);
    CHECK(velocity_secrecy(p, 22.22, AccParams(0.2), 1000.0, PathLossExponent(1.4)).raw ==
          doctest::Approx(kHandValue).epsilon(1e-12));

    const PathLossExponent a35(3.5);
    const double c80 = velocity_secrecy(p, kmh_to_ms(80), AccParams(0.2), 1000.0, a35).clamped;
    const double c100 = velocity_secrecy(p, kmh_to_ms(100), AccParams(0.2), 1000.0, a35).clamped;
    const double c120 = velocity_secrecy(p, kmh_to_ms(120), AccParams(0.2), 1000.0, a35).clamped;
    CHECK(c80 > c100);
    CHECK(c100 > c120);

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> v(1.0, 60.0), tau(0.05, 1.0), alpha(1.0, 4.0), db(20.0, 90.0);
    for (int i = 0; i < 300; ++i) {
        const double speed = v(rng), t = tau(rng);
        const PathLossExponent a(alpha(rng));
        const auto budget = PowerBudget::from_snr_db(db(rng));
        const auto direct = velocity_secrecy(budget, speed, AccParams(t), 1000.0, a);
        const auto geom = geometric_secrecy(budget, LinkGeometry::from_angle(1000.0, speed * t / 1000.0), a);
        CHECK(direct.raw == doctest::Approx(geom.raw).epsilon(1e-12));
        CHECK(direct.raw == doctest::Approx(test::mp_velocity_secrecy(budget.snr(), speed, t, 1000.0, a.value()))
                                .epsilon(1e-9));
    }
    CHECK_THROWS_AS(velocity_secrecy(p, 0.0, AccParams(0.2), 1000.0, a35), DomainError);
    CHECK_THROWS_AS(velocity_secrecy(p, -5.0, AccParams(0.2), 1000.0, a35), DomainError);
}

TEST_CASE("velocity secrecy follows the parameter monotonicity table") {
    const double r = 1000.0;
    for (double alpha : {1.4, 2.0, 4.0}) {
        const PathLossExponent a(alpha);
        for (double db : {40.0, 55.0, 70.0}) {
            const auto p = PowerBudget::from_snr_db(db);
            for (double v = 5.0; v < 50.0; v *= 1.1) {
                const double base = velocity_secrecy(p, v, AccParams(0.2), r, a).raw;
                CHECK(velocity_secrecy(p, v * 1.1, AccParams(0.2), r, a).raw < base);
                CHECK(velocity_secrecy(p, v, AccParams(0.22), r, a).raw < base);
                CHECK(velocity_secrecy(PowerBudget::from_snr_db(db + 1), v, AccParams(0.2), r, a).raw > base);
            }
        }
    }
}

TEST_CASE("relay secrecy") {
    RelayConfig cfg;
    cfg.p_a = 10;
    cfg.h_ab = 1;
    cfg.p_r = 1;
    cfg.h_rb = 0.1;
    cfg.sigma_b2 = 1;
    cfg.h_ae = 0.5;
    cfg.h_re = 1;
    cfg.sigma_e2 = 1;
    cfg.w = 1;
    CHECK(relay_secrecy(cfg).raw == doctest::Approx(1.5276293256552046).epsilon(1e-14));

    cfg.w = 20e6;
    CHECK(relay_secrecy(cfg).raw == doctest::Approx(20e6 * 1.5276293256552046).epsilon(1e-14));
    cfg.w = 1;

    // Eavesdropper term vanishes as h_re grows.
    const double legit_only = std::log2(1 + 10.0 / 1.1);
    cfg.h_re = 1e12;
    CHECK(relay_secrecy(cfg).raw == doctest::Approx(legit_only).epsilon(1e-10));

    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> g(0.0, 3.0), pw(0.1, 1e4);
    for (int i = 0; i < 300; ++i) {
        RelayConfig off;
        off.p_a = pw(rng);
        off.h_ab = g(rng);
        off.h_ae = g(rng);
        off.h_rb = g(rng);
        off.h_re = g(rng);
        off.p_r = 0.0;
        const double n0 = 0.5 + g(rng);
        off.sigma_b2 = off.sigma_e2 = n0;
        const auto expect = fading_secrecy(PowerBudget::make(off.p_a, n0), std::sqrt(off.h_ab), std::sqrt(off.h_ae));
        CHECK(relay_secrecy(off).raw == doctest::Approx(expect.raw).epsilon(1e-12));
    }

    RelayConfig bad;
    bad.p_a = 0;
    CHECK_THROWS_AS(relay_secrecy(bad), DomainError);
    bad = {};
    bad.sigma_e2 = 0;
    CHECK_THROWS_AS(relay_secrecy(bad), DomainError);
    bad = {};
    bad.h_re = -1;
    CHECK_THROWS_AS(relay_secrecy(bad), DomainError);
}
