#include <doctest.h>

#include <cmath>
#include <random>

#include "phonsim/params.hpp"

using namespace phonsim;

TEST_CASE("linewidth gamma = omega/Q") {
    // omega/2pi = 3 GHz, Q = 1e7 -> gamma/2pi = 300 Hz
    const double two_pi = 2.0 * M_PI;
    CHECK(linewidth(two_pi * 3e9, 1e7) == doctest::Approx(two_pi * 300.0));
    // proportionality in 1/Q
    CHECK(linewidth(two_pi * 3e9, 1e8) ==
          doctest::Approx(linewidth(two_pi * 3e9, 1e7) / 10.0));
    CHECK(linewidth(42.0, 42.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(linewidth(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(linewidth(1.0, -2.0), std::domain_error);
}

TEST_CASE("spin-induced Kerr strength") {
    CHECK(nonlinearity_from_spin(1.0, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(nonlinearity_from_spin(10.0, 100.0, 100.0) == doctest::Approx(0.01));
    CHECK_THROWS_AS(nonlinearity_from_spin(1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(nonlinearity_from_spin(1.0, 1.0, 0.0), std::domain_error);

    SUBCASE("invariant under sign flip of the spin detuning") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(0.1, 10.0);
        for (int i = 0; i < 50; ++i) {
            const double g = dist(rng), rabi = dist(rng), d = dist(rng);
            CHECK(nonlinearity_from_spin(g, rabi, d) ==
                  doctest::Approx(nonlinearity_from_spin(g, rabi, -d)));
        }
    }

    SUBCASE("device-scale inputs land in the kHz range") {
        // MHz-scale coupling, dispersive Rabi/detuning, rates in rad/s
        const double two_pi = 2.0 * M_PI;
        const double g = two_pi * 2e6;
        const double detuning = two_pi * 100e6;
        const double rabi = two_pi * 10e6;
        const double u = nonlinearity_from_spin(g, rabi, detuning);
        CHECK(u / two_pi > 0.0);
        CHECK(u / two_pi < 12e3);
    }
}

TEST_CASE("Sagnac shift") {
    SystemParams p;
    p.chirality_mag = 0.12;

    SUBCASE("zero for a non-rotating cavity") {
        p.rotation_omega = 0.0;
        p.direction = DriveDirection::LeftPort;
        CHECK(sagnac_shift(p) == 0.0);
        p.direction = DriveDirection::RightPort;
        CHECK(sagnac_shift(p) == 0.0);
    }

    SUBCASE("left port at Omega = 10/0.12 gives +10 gamma") {
        p.rotation_omega = 10.0 / 0.12;
        p.direction = DriveDirection::LeftPort;
        CHECK(sagnac_shift(p) == doctest::Approx(10.0));
    }

    SUBCASE("direction swap flips the sign exactly") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> dist(0.0, 200.0);
        for (int i = 0; i < 100; ++i) {
            p.rotation_omega = dist(rng);
            CHECK(sagnac_shift(with_direction(p, DriveDirection::LeftPort)) ==
                  -sagnac_shift(with_direction(p, DriveDirection::RightPort)));
        }
    }
}

TEST_CASE("parameter validation") {
    SystemParams p;
    CHECK_NOTHROW(validate(p));
    p.rotation_omega = -1.0;
    CHECK_THROWS_AS(validate(p), std::domain_error);
    p.rotation_omega = 0.0;
    p.chirality_mag = 0.0;
    CHECK_THROWS_AS(validate(p), std::domain_error);
    p.chirality_mag = 0.12;
    p.gamma = 0.0;
    CHECK_THROWS_AS(validate(p), std::domain_error);
    p.gamma = 1.0;
    p.nonlinearity_u = std::nan("");
    CHECK_THROWS_AS(validate(p), std::domain_error);
}
