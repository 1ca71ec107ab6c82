#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "thermoq/perturbation.hpp"

using namespace thermoq;

namespace {
const SystemSpec kBox3{Box{3.0}};
const SystemSpec kOsc1{Oscillator{1.0}};
} // namespace

TEST_CASE("partition trace matches the direct Boltzmann sum") {
    const LevelSet osc = make_levels(kOsc1);
    CHECK(partition_trace(osc, ThermalPoint::at(1.0)) ==
          doctest::Approx(0.95947381364601067).epsilon(1e-14));
    const LevelSet box = make_levels(kBox3);
    for (double T : {0.3, 1.0, 2.7}) {
        long double direct = 0.0L;
        for (double e : box.energies)
            direct += std::exp(-static_cast<long double>(e) / T);
        CHECK(partition_trace(box, ThermalPoint::at(T)) ==
              doctest::Approx(static_cast<double>(direct)).epsilon(1e-14));
    }
}

TEST_CASE("ep pins the frozen reference values") {
    CHECK(ep_of(kBox3, ThermalPoint::at(2.0)).ep ==
          doctest::Approx(0.35221918929911274).epsilon(1e-13));
    CHECK(ep_of(kBox3, ThermalPoint::at(1.57)).ep ==
          doctest::Approx(-5.9713153279049606e-4).epsilon(1e-10));
    CHECK(ep_of(kOsc1, ThermalPoint::at(1.0)).ep ==
          doctest::Approx(-0.041370255573288598).epsilon(1e-13));
    CHECK(ep_of(kOsc1, ThermalPoint::at(1.1)).ep ==
          doctest::Approx(0.067095951951815697).epsilon(1e-13));
    CHECK(ep_of(kOsc1, ThermalPoint::at(0.1)).ep ==
          doctest::Approx(-0.49999545990396295).epsilon(1e-13));
    CHECK(ep_free(ThermalPoint::at(0.5)).ep ==
          doctest::Approx(0.28618247146235004).epsilon(1e-13));
}

TEST_CASE("ep agrees with the long-double oracle across temperatures") {
    const LevelSet levels = make_levels(kBox3);
    for (double T : {0.8, 1.2, 1.9, 3.4})
        CHECK(ep_discrete(levels, ThermalPoint::at(T)).ep ==
              doctest::Approx(oracle::ep_direct(levels.energies, T)).epsilon(1e-12));
}

TEST_CASE("validity flag follows the threshold") {
    const PerturbationResult r = ep_of(kBox3, ThermalPoint::at(2.0));
    CHECK(r.threshold == kValidityThreshold);
    CHECK_FALSE(r.within_validity); // |0.352| > 0.1
    CHECK(ep_of(kBox3, ThermalPoint::at(2.0), {}, 0.5).within_validity);
    CHECK(ep_of(kBox3, ThermalPoint::at(1.57)).within_validity);
    // The collapsing oscillator is flagged, not rejected.
    const PerturbationResult cold = ep_of(kOsc1, ThermalPoint::at(0.1));
    CHECK_FALSE(cold.within_validity);
}

TEST_CASE("ep requires positive temperature") {
    CHECK_THROWS_AS(ep_discrete(make_levels(kBox3), ThermalPoint::at(0.0)), DomainError);
    CHECK_THROWS_AS(ep_free(ThermalPoint::at(0.0)), DomainError);
}

TEST_CASE("free-particle correction vanishes at 1/(2 pi m k_B)") {
    CHECK(std::abs(ep_free(ThermalPoint::at(0.15915494309189534)).ep) <= 1e-15);
    // Mass rescaling moves the zero accordingly.
    UnitsConfig units;
    units.mass_unit = 2.0;
    CHECK(std::abs(ep_free(ThermalPoint::at(0.15915494309189534 / 2.0), 1.0, units).ep) <=
          1e-15);
}

TEST_CASE("corrected energies shift rigidly") {
    const PerturbationResult r = ep_of(kBox3, ThermalPoint::at(2.0));
    const double e1 = level_energy(kBox3, 1);
    const double e2 = level_energy(kBox3, 2);
    CHECK(corrected_energy(e1, r) == doctest::Approx(0.90053054491518822).epsilon(1e-13));
    CHECK(corrected_energy(e2, r) - corrected_energy(e1, r) ==
          doctest::Approx(e2 - e1).epsilon(1e-15));
}

TEST_CASE("shift covariance: ep(E + c) = ep(E) - c") {
    const LevelSet base = make_levels(kBox3);
    const ThermalPoint tp = ThermalPoint::at(2.0);
    const double ep0 = ep_discrete(base, tp).ep;
    for (double c : {-3.7, -0.2, 1.4, 4.9}) {
        LevelSet shifted = base;
        for (double& e : shifted.energies)
            e += c;
        CHECK(ep_discrete(shifted, tp).ep ==
              doctest::Approx(ep0 - c).epsilon(1e-13));
    }
}

TEST_CASE("self-consistent trace alternates with period two") {
    const LevelSet levels = make_levels(kBox3);
    const ThermalPoint tp = ThermalPoint::at(2.0);
    const double c = ep_discrete(levels, tp).ep;

    const IterationTrace trace = self_consistent_iterate(levels, tp, 5, 1e-9);
    REQUIRE(trace.corrections.size() == 5);
    for (std::size_t i = 0; i < trace.corrections.size(); ++i)
        CHECK(trace.corrections[i] ==
              doctest::Approx(i % 2 == 0 ? c : 0.0).epsilon(1e-13));
    CHECK_FALSE(trace.converged);
    CHECK(trace.tolerance == 1e-9);

    // Converges exactly when the tolerance admits the |c - 0| alternation.
    CHECK(self_consistent_iterate(levels, tp, 5, std::abs(c) * 1.01).converged);
    CHECK_FALSE(self_consistent_iterate(levels, tp, 5, std::abs(c) * 0.99).converged);
    // A single iteration compares against the implicit zero.
    const IterationTrace one = self_consistent_iterate(levels, tp, 1, std::abs(c) * 1.01);
    REQUIRE(one.corrections.size() == 1);
    CHECK(one.converged);
    CHECK_THROWS_AS(self_consistent_iterate(levels, tp, 0, 1e-9), DomainError);
}

TEST_CASE("low-temperature limit is minus the ground energy") {
    const LevelSet box = make_levels(kBox3);
    CHECK(low_temperature_limit(box) == -box.min_energy());
    CHECK(std::abs(ep_discrete(box, ThermalPoint::at(1e-4)).ep -
                   low_temperature_limit(box)) <= 1e-3);
    const LevelSet osc = make_levels(kOsc1);
    CHECK(low_temperature_limit(osc) == -0.5);
    CHECK(std::abs(ep_free(ThermalPoint::at(1e-6)).ep) <= 1e-5);
}

TEST_CASE("validity scan refines interval edges and crossings") {
    const ValidityScan scan = validity_range(kBox3, 0.5, 3.0);
    REQUIRE(scan.intervals.size() == 1);
    CHECK(scan.intervals[0].lo == doctest::Approx(1.4327763083268497).epsilon(1e-9));
    CHECK(scan.intervals[0].hi == doctest::Approx(1.7002356092574718).epsilon(1e-9));
    REQUIRE(scan.zero_crossings.size() == 1);
    CHECK(scan.zero_crossings[0] ==
          doctest::Approx(1.5707963267915945).epsilon(1e-11));
    CHECK(scan.threshold == kValidityThreshold);

    // Edges sit where |E_p| meets the threshold.
    for (double edge : {scan.intervals[0].lo, scan.intervals[0].hi})
        CHECK(std::abs(ep_of(kBox3, ThermalPoint::at(edge)).ep) ==
              doctest::Approx(kValidityThreshold).epsilon(1e-8));
}

TEST_CASE("validity scan covers the free particle and whole-range validity") {
    const ValidityScan scan = validity_range(SystemSpec{Free{}}, 0.05, 0.5);
    REQUIRE(scan.zero_crossings.size() == 1);
    CHECK(scan.zero_crossings[0] ==
          doctest::Approx(0.15915494309189534).epsilon(1e-11));

    // A scan window sitting entirely inside the valid band yields one
    // interval spanning the window.
    const ValidityScan inside = validity_range(kBox3, 1.5, 1.65);
    REQUIRE(inside.intervals.size() == 1);
    CHECK(inside.intervals[0].lo == 1.5);
    CHECK(inside.intervals[0].hi == 1.65);

    CHECK_THROWS_AS(validity_range(kBox3, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(validity_range(kBox3, 2.0, 1.0), DomainError);
}
