#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "thermoq/numerics.hpp"
#include "thermoq/wavefunctions.hpp"

using namespace thermoq;

TEST_CASE("mode alpha pins the frozen ratios") {
    const SystemSpec box{Box{3.0}};
    const ThermalPoint tp = ThermalPoint::at(2.0);
    CHECK(mode_alpha(box, 1, tp) ==
          doctest::Approx(0.32118538645197660).epsilon(1e-13));
    CHECK(mode_alpha(box, 2, tp) ==
          doctest::Approx(0.080296346612994149).epsilon(1e-13));
    CHECK(mode_alpha(box, 1, ThermalPoint::at(0.0)) == 0.0);
    CHECK_THROWS_AS(mode_alpha(SystemSpec{Free{}}, 1, tp), DomainError);
}

TEST_CASE("box wave leaks through the wall at T = 2") {
    const Box box{3.0};
    const BoxWave w = BoxWave::make(box, 1, ThermalPoint::at(2.0));
    CHECK(w.energy == doctest::Approx(0.90053054491518822).epsilon(1e-13));
    CHECK(w.k_eff == doctest::Approx(1.3420361730707472).epsilon(1e-13));
    CHECK(box_psi(w, 0.0) == 0.0);
    CHECK(box_psi(w, box.L) ==
          doctest::Approx(-0.63164853129533508).epsilon(1e-12));
    CHECK_FALSE(w.pert.within_validity);
}

TEST_CASE("box wave nearly vanishes at the wall near the zero crossing") {
    const Box box{3.0};
    const double amp = std::sqrt(2.0 / box.L);
    const BoxWave w1 = BoxWave::make(box, 1, ThermalPoint::at(1.57));
    CHECK(std::abs(box_psi(w1, box.L)) / amp ==
          doctest::Approx(0.0017111).epsilon(1e-3));
    const BoxWave w2 = BoxWave::make(box, 2, ThermalPoint::at(1.57));
    CHECK(std::abs(box_psi(w2, box.L)) / amp ==
          doctest::Approx(0.00085539).epsilon(1e-3));
    // At T = 0 the unperturbed node is exact up to sin(pi) rounding.
    const BoxWave w0 = BoxWave::make(box, 1, ThermalPoint::at(0.0));
    CHECK(std::abs(box_psi(w0, box.L)) <= 1e-15);
    CHECK(w0.k_eff == doctest::Approx(std::numbers::pi / box.L).epsilon(1e-15));
}

TEST_CASE("box wave domain clamp") {
    const Box box{3.0};
    const BoxWave w = BoxWave::make(box, 1, ThermalPoint::at(2.0));
    CHECK_THROWS_AS(box_psi(w, -0.1), DomainError);
    CHECK_THROWS_AS(box_psi(w, box.L + 0.1), DomainError);
    const BoxWave open = BoxWave::make(box, 1, ThermalPoint::at(2.0), {}, false);
    CHECK_NOTHROW(box_psi(open, box.L + 0.1));
    CHECK_THROWS_AS(BoxWave::make(box, 0, ThermalPoint::at(2.0)), IndexError);
}

TEST_CASE("free wavenumber shift: exact, approximate, evanescent") {
    CHECK(free_k(1.0, ThermalPoint::at(0.5)) ==
          doctest::Approx(1.2539397684596737).epsilon(1e-13));
    CHECK(free_k_approx(1.0, ThermalPoint::at(0.5)) ==
          doctest::Approx(1.2861824714623500).epsilon(1e-13));
    CHECK(free_k(1.0, ThermalPoint::at(0.01)) ==
          doctest::Approx(0.98606646267085493).epsilon(1e-13));
    const double gap = std::abs(free_k(1.0, ThermalPoint::at(0.01)) -
                                free_k_approx(1.0, ThermalPoint::at(0.01)));
    CHECK(gap == doctest::Approx(9.7071731251339551e-5).epsilon(1e-8));
    CHECK(gap < 1e-4);
    CHECK(free_k(1.0, ThermalPoint::at(0.0)) == 1.0);
    CHECK_THROWS_AS(free_k(0.1, ThermalPoint::at(0.05)), DomainError);
    CHECK_THROWS_AS(free_k(0.0, ThermalPoint::at(0.5)), DomainError);
}

TEST_CASE("free wave is a unit-modulus plane wave at the shifted wavenumber") {
    const FreeWave w = FreeWave::make(1.0, ThermalPoint::at(0.5));
    const std::complex<double> psi = free_psi(w, 1.0);
    CHECK(psi.real() == doctest::Approx(0.31158114521699497).epsilon(1e-13));
    CHECK(psi.imag() == doctest::Approx(0.95021954828621890).epsilon(1e-13));
    CHECK(std::abs(psi) == doctest::Approx(1.0).epsilon(1e-15));

    const FreeWave left = FreeWave::make(1.0, ThermalPoint::at(0.5), Direction::Left);
    const std::complex<double> mirror = free_psi(left, 1.0);
    CHECK(mirror.real() == doctest::Approx(psi.real()).epsilon(1e-15));
    CHECK(mirror.imag() == doctest::Approx(-psi.imag()).epsilon(1e-15));

    // T = 0 reduces to exp(i k x).
    const FreeWave cold = FreeWave::make(2.0, ThermalPoint::at(0.0));
    CHECK(cold.k_T == 2.0);
    CHECK(free_psi(cold, 0.25).real() == doctest::Approx(std::cos(0.5)).epsilon(1e-15));
}

TEST_CASE("oscillator wave pins the shifted frequency and value") {
    const Oscillator osc{1.0};
    const OscWave w = OscWave::make(osc, 0, ThermalPoint::at(1.1));
    CHECK(w.Omega == doctest::Approx(1.1341919039036314).epsilon(1e-13));
    CHECK(w.x0 == doctest::Approx(0.93898083573670607).epsilon(1e-13));
    CHECK(osc_psi(w, 1.0) == doctest::Approx(0.43964032971754416).epsilon(1e-12));
    CHECK(osc_omega(osc, 2, ThermalPoint::at(1.1)) ==
          doctest::Approx(1.0268383807807263).epsilon(1e-13));
    // Gaussian peak at the origin: pi^{-1/4} / sqrt(x0).
    CHECK(osc_psi(w, 0.0) ==
          doctest::Approx(0.75112554446494248 / std::sqrt(w.x0)).epsilon(1e-13));
}

TEST_CASE("oscillator near frequency collapse is flagged, not rejected") {
    const OscWave w = OscWave::make(Oscillator{1.0}, 0, ThermalPoint::at(0.1));
    CHECK(w.Omega == doctest::Approx(9.0801920740978419e-6).epsilon(1e-6));
    CHECK(w.Omega > 0.0);
    CHECK_FALSE(w.pert.within_validity);
}

TEST_CASE("oscillator wave is normalized and orthogonal by quadrature") {
    const Oscillator osc{1.0};
    const ThermalPoint tp = ThermalPoint::at(1.1);
    const OscWave w3 = OscWave::make(osc, 3, tp);
    const double norm = oracle::simpson(
        [&](double x) {
            const double p = osc_psi(w3, x);
            return p * p;
        },
        -12.0 * w3.x0, 12.0 * w3.x0);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));

    // Same-frequency modes (T = 0) are orthogonal; per-mode thermal shifts
    // give each n its own Omega, so finite-T cross terms need not vanish.
    const OscWave c1 = OscWave::make(osc, 1, ThermalPoint::at(0.0));
    const OscWave c3 = OscWave::make(osc, 3, ThermalPoint::at(0.0));
    const double cross = oracle::simpson(
        [&](double x) { return osc_psi(c1, x) * osc_psi(c3, x); }, -12.0, 12.0);
    CHECK(std::abs(cross) <= 1e-10);
    const OscWave w1 = OscWave::make(osc, 1, tp);
    const double warm_cross = oracle::simpson(
        [&](double x) { return osc_psi(w1, x) * osc_psi(w3, x); }, -12.0 * w3.x0,
        12.0 * w3.x0);
    CHECK(std::abs(warm_cross) > 1e-3);
    CHECK_THROWS_AS(OscWave::make(osc, -1, tp), IndexError);
}

TEST_CASE("oscillator at T = 0 reduces to the textbook mode") {
    const OscWave w = OscWave::make(Oscillator{1.0}, 0, ThermalPoint::at(0.0));
    CHECK(w.Omega == 1.0);
    CHECK(w.x0 == 1.0);
    CHECK(osc_psi(w, 0.0) == doctest::Approx(0.75112554446494248).epsilon(1e-15));
}
