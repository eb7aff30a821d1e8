#include <doctest.h>

#include <random>

#include "vsec/errors.hpp"
#include "vsec/kinematics.hpp"

using namespace vsec;

TEST_CASE("braking distance") {
    const BrakingProfile p{0.5, 0.3, 0.4, 7.5};  // t_a + t_b + t_c/2 = 1 s
    CHECK(braking_distance(0.0, p) == 0.0);
    CHECK(braking_distance(30.0, p) == doctest::Approx(90.0).epsilon(1e-14));
    CHECK(braking_distance(20.0, p) > 2.0 * braking_distance(10.0, p));

    CHECK_THROWS_AS(braking_distance(10.0, BrakingProfile{0.1, 0.1, 0.1, 0.0}), DomainError);
    CHECK_THROWS_AS(braking_distance(10.0, BrakingProfile{-0.1, 0.1, 0.1, 5.0}), DomainError);
    CHECK_THROWS_AS(braking_distance(-1.0, p), DomainError);
}

TEST_CASE("braking distance is increasing and convex on a grid") {
    const BrakingProfile p{0.8, 0.2, 0.3, 6.0};
    const double h = 0.25;
    for (double v = h; v < 60.0; v += h) {
        const double lo = braking_distance(v - h, p), mid = braking_distance(v, p), hi = braking_distance(v + h, p);
        CHECK(mid > lo);
        CHECK(hi - 2 * mid + lo > 0.0);
    }
}

TEST_CASE("full safety distance") {
    const AccParams tau(0.2);
    CHECK(safety_distance_full({20, 5}, {20, 5}, tau) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(safety_distance_full({20, 5}, {10, 5}, tau) == doctest::Approx(34.0).epsilon(1e-15));
    // Target out-brakes the host: negative result is returned as is.
    CHECK(safety_distance_full({10, 8}, {30, 2}, tau) < 0.0);
    CHECK_THROWS_AS(safety_distance_full({20, 0}, {20, 5}, tau), DomainError);
    CHECK_THROWS_AS(safety_distance_full({20, 5}, {20, 0}, tau), DomainError);
}

TEST_CASE("cruise safety distance equals the full formula at equal speed and deceleration") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> v(0.0, 70.0), a(0.1, 12.0), t(0.01, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double speed = v(rng), acc = a(rng);
        const AccParams tau(t(rng));
        CHECK(safety_distance_cruise(speed, tau) == safety_distance_full({speed, acc}, {speed, acc}, tau));
    }
    CHECK(safety_distance_cruise(0.0, AccParams(0.2)) == 0.0);
    CHECK(safety_distance_cruise(kmh_to_ms(80.0), AccParams(0.2)) == doctest::Approx(4.4444444444).epsilon(1e-9));
    CHECK_THROWS_AS(AccParams(0.0), DomainError);
    CHECK(AccParams().tau() == 0.2);
}

TEST_CASE("unit conversion") {
    CHECK(kmh_to_ms(0.0) == 0.0);
    CHECK(kmh_to_ms(36.0) == 10.0);
    CHECK(kmh_to_ms(80.0) == doctest::Approx(22.222222222222).epsilon(1e-12));
    for (double x = 0.0; x < 100.0; x += 0.37) CHECK(kmh_to_ms(3.6 * x) == doctest::Approx(x).epsilon(1e-15));
}
