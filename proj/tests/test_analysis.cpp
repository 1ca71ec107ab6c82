#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "thermoq/analysis.hpp"

using namespace thermoq;

TEST_CASE("residual closed form pins the frozen values") {
    CHECK(residual_probability(1, 0.1) ==
          doctest::Approx(0.089421058462133270).epsilon(1e-14));
    CHECK(residual_probability(1, 0.1, OverlapDomain::Physical) ==
          doctest::Approx(0.085044480344421730).epsilon(1e-14));
    // Peak of the n = 1 symmetric curve.
    CHECK(residual_probability(1, 0.43029665312420276) ==
          doctest::Approx(0.21723362821122166).epsilon(1e-14));
    CHECK(std::abs(residual_probability(3, 1e-6)) <= 1e-5);
    CHECK_THROWS_AS(residual_probability(0, 0.1), IndexError);
    CHECK_THROWS_AS(residual_probability(1, -1.0), DomainError);
}

TEST_CASE("residual quadrature equals the closed form on a grid") {
    const Box box{3.0};
    for (int n : {1, 2, 3})
        for (double a : {0.05, 0.3, 1.0})
            for (OverlapDomain d : {OverlapDomain::Symmetric, OverlapDomain::Physical})
                CHECK(residual_quadrature(box, n, a, d) ==
                      doctest::Approx(residual_probability(n, a, d))
                          .epsilon(1e-10)
                          .scale(1.0));
    // And via the thermal route at T = 2 for the ground mode.
    const double at = residual_at(box, 1, ThermalPoint::at(2.0));
    CHECK(at ==
          doctest::Approx(residual_probability(1, 0.32118538645197660)).epsilon(1e-10));
}

TEST_CASE("box overlaps pin the convention-dependent frozen values") {
    const Box box{3.0};
    const ThermalPoint tp = ThermalPoint::at(2.0);
    CHECK(box_overlap(box, 1, 1, tp, {AlphaMode::PerMode, OverlapDomain::Symmetric}) ==
          doctest::Approx(0.79609884775008902).epsilon(1e-10));
    CHECK(box_overlap(box, 1, 3, tp, {AlphaMode::PerMode, OverlapDomain::Symmetric}) ==
          doctest::Approx(0.20722818277405676).epsilon(1e-9));
    CHECK(box_overlap(box, 1, 3, tp, {AlphaMode::SharedAlpha, OverlapDomain::Symmetric}) ==
          doctest::Approx(-2.1588165830175692e-4).epsilon(1e-6).scale(1.0));
    CHECK(box_overlap(box, 1, 2, tp, {AlphaMode::PerMode, OverlapDomain::Physical}) ==
          doctest::Approx(0.27457512117365221).epsilon(1e-9));
    CHECK(box_overlap(box, 1, 2, tp, {AlphaMode::SharedAlpha, OverlapDomain::Physical}) ==
          doctest::Approx(-0.0061085128113215582).epsilon(1e-8).scale(1.0));
    // Opposite parity on the symmetric domain vanishes identically.
    CHECK(std::abs(box_overlap(box, 1, 2, tp,
                               {AlphaMode::PerMode, OverlapDomain::Symmetric})) <= 1e-12);
    // The diagonal ties back to the residual identity.
    CHECK(box_overlap(box, 1, 1, tp, {AlphaMode::SharedAlpha, OverlapDomain::Symmetric}) ==
          doctest::Approx(1.0 - residual_probability(1, 0.32118538645197660))
              .epsilon(1e-10));
    CHECK_THROWS_AS(box_overlap(box, 1, 1, tp,
                                {AlphaMode::PerMode, OverlapDomain::FullLine}),
                    DomainError);
    CHECK_THROWS_AS(box_overlap(box, 0, 1, tp, {}), IndexError);
}

TEST_CASE("oscillator overlaps: exact modes and the literal shared form") {
    const Oscillator osc{1.0};
    const ThermalPoint tp = ThermalPoint::at(1.1);
    CHECK(osc_overlap(osc, 0, 2, tp, {AlphaMode::PerMode, OverlapDomain::FullLine}) ==
          doctest::Approx(-0.035105258956418449).epsilon(1e-9).scale(1.0));
    CHECK(std::abs(osc_overlap(osc, 0, 2, tp,
                               {AlphaMode::PerMode, OverlapDomain::FullLine})) <= 0.05);
    // Same-frequency diagonal stays normalized.
    CHECK(osc_overlap(osc, 1, 1, tp, {AlphaMode::PerMode, OverlapDomain::FullLine}) ==
          doctest::Approx(1.0).epsilon(1e-9));
    // The literal shared-alpha integrand reproduces the expanded factor.
    for (int n : {0, 1, 2}) {
        const double a = mode_alpha(SystemSpec{osc}, n, tp);
        CHECK(osc_overlap(osc, n, n, tp, {AlphaMode::SharedAlpha, OverlapDomain::FullLine}) ==
              doctest::Approx(expanded_overlap_factor(n, n, a)).epsilon(1e-9));
    }
    // Different parity vanishes; the shared convention keeps it exact.
    CHECK(std::abs(osc_overlap(osc, 0, 1, tp,
                               {AlphaMode::SharedAlpha, OverlapDomain::FullLine})) <=
          1e-10);
    CHECK_THROWS_AS(osc_overlap(osc, 0, 1, tp,
                                {AlphaMode::PerMode, OverlapDomain::Symmetric}),
                    DomainError);
}

TEST_CASE("expanded overlap factor and quadrature") {
    CHECK(expanded_overlap_factor(0, 0, 0.1) ==
          doctest::Approx(0.99225).epsilon(1e-15));
    const double a = 0.05;
    CHECK(expanded_overlap_factor(2, 2, a) ==
          doctest::Approx(1.0 - 0.75 * a * a - 0.25 * a * a * a).epsilon(1e-15));
    CHECK(expanded_overlap_factor(1, 2, a) == 0.0);
    CHECK(expanded_overlap_quadrature(1, 1, a) ==
          doctest::Approx(expanded_overlap_factor(1, 1, a)).epsilon(1e-9));
    CHECK(std::abs(expanded_overlap_quadrature(0, 2, a)) <= 1e-10);
    CHECK_THROWS_AS(expanded_overlap_quadrature(0, 0, 1.0), DomainError);
    CHECK_THROWS_AS(expanded_overlap_quadrature(-1, 0, a), IndexError);
}

TEST_CASE("curve table validation") {
    CurveTable t;
    t.label = "demo";
    t.column_names = {"x", "y"};
    t.columns = {{1.0, 2.0}, {3.0, 4.0}};
    CHECK_NOTHROW(t.validate());
    CHECK(t.n_rows() == 2);
    t.columns[1].pop_back();
    CHECK_THROWS_AS(t.validate(), DomainError);
    t.columns[1].push_back(4.0);
    t.label.clear();
    CHECK_THROWS_AS(t.validate(), DomainError);
    t.label = "demo";
    t.column_names.pop_back();
    CHECK_THROWS_AS(t.validate(), DomainError);
}

TEST_CASE("figure panels enumerate and validate") {
    const auto& panels = figure_panels();
    REQUIRE(panels.size() == 8);
    CHECK(panels.front() == "2a");
    CHECK(panels.back() == "7");
    CHECK_THROWS_AS(figure_curves("9"), DomainError);
    FigureParams tiny;
    tiny.samples = 1;
    CHECK_THROWS_AS(figure_curves("2a", tiny), DomainError);
}

TEST_CASE("panel 2a: corrected box modes at both temperatures") {
    FigureParams p;
    p.samples = 41;
    const auto tables = figure_curves("2a", p);
    REQUIRE(tables.size() == 4);
    CHECK(tables[0].label == "n1_T1.57");
    CHECK(tables[3].label == "n2_T2");
    for (const auto& t : tables) {
        CHECK(t.column_names == std::vector<std::string>{"x", "x_over_L", "psi"});
        CHECK(t.n_rows() == 41);
        CHECK(t.meta.contains("k_eff"));
        CHECK(t.columns[0].front() == 0.0);
        CHECK(t.columns[0].back() == 3.0);
    }
    // The T = 2 ground mode ends at the frozen wall value.
    CHECK(tables[1].columns[2].back() ==
          doctest::Approx(-0.63164853129533508).epsilon(1e-12));
}

TEST_CASE("panel 2b: ep curves with scaling metadata") {
    FigureParams p;
    p.samples = 60;
    p.t_range = {{0.05, 15.0}}; // wide enough that every L has its crossing
    const auto tables = figure_curves("2b", p);
    REQUIRE(tables.size() == 5);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const double L = 1.0 + static_cast<double>(i);
        CHECK(tables[i].label == "L" + std::to_string(static_cast<int>(L)));
        const double t_star = std::stod(tables[i].meta.at("zero_crossing"));
        CHECK(t_star * L * L == doctest::Approx(14.137166941124351).epsilon(1e-9));
    }
}

TEST_CASE("panel 3: residual curves carry the refined maximum") {
    FigureParams p;
    p.samples = 50;
    const auto tables = figure_curves("3", p);
    REQUIRE(tables.size() == 4);
    CHECK(std::stod(tables[0].meta.at("max_residual")) ==
          doctest::Approx(0.21723362821122166).epsilon(1e-8));
    CHECK(std::stod(tables[0].meta.at("argmax_alpha")) ==
          doctest::Approx(0.43029665312420276).epsilon(1e-6));
}

TEST_CASE("panel 4: free-particle curve with the analytic zero") {
    FigureParams p;
    p.samples = 50;
    const auto tables = figure_curves("4", p);
    REQUIRE(tables.size() == 1);
    CHECK(std::stod(tables[0].meta.at("zero_crossing_analytic")) ==
          doctest::Approx(0.15915494309189534).epsilon(1e-15));
    CHECK(std::stod(tables[0].meta.at("zero_crossing")) ==
          doctest::Approx(0.15915494309189534).epsilon(1e-9));
}

TEST_CASE("panels 5a/5b: plane-wave components on a unit circle") {
    FigureParams p;
    p.samples = 30;
    const auto re_tabs = figure_curves("5a", p);
    const auto im_tabs = figure_curves("5b", p);
    REQUIRE(re_tabs.size() == 4); // k in {1,2} x T in {0, 0.5}
    REQUIRE(im_tabs.size() == 4);
    CHECK(re_tabs[0].label == "k1_T0");
    for (std::size_t c = 0; c < re_tabs.size(); ++c)
        for (std::size_t i = 0; i < re_tabs[c].n_rows(); ++i) {
            const double re = re_tabs[c].columns[1][i];
            const double im = im_tabs[c].columns[1][i];
            CHECK(re * re + im * im == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("panel 6: oscillator crossings scale linearly in omega") {
    FigureParams p;
    p.samples = 80;
    const auto tables = figure_curves("6", p);
    REQUIRE(tables.size() == 5);
    CHECK(tables[0].label == "w0.5");
    for (const auto& t : tables)
        CHECK(std::stod(t.meta.at("crossing_over_omega")) ==
              doctest::Approx(1.0391073378554586).epsilon(1e-9));
}

TEST_CASE("panel 7 requires a frequency and emits mode-temperature curves") {
    CHECK_THROWS_AS(figure_curves("7"), DomainError);
    FigureParams p;
    p.samples = 25;
    p.omega = 0.1;
    p.temperatures = {0.05, 0.2};
    p.modes = {0, 1};
    const auto tables = figure_curves("7", p);
    REQUIRE(tables.size() == 4);
    CHECK(tables[0].label == "n0_T0.05");
    for (const auto& t : tables) {
        CHECK(t.meta.contains("Omega_n"));
        CHECK(t.n_rows() == 25);
    }
}

TEST_CASE("figure output is deterministic") {
    FigureParams p;
    p.samples = 20;
    const auto a = figure_curves("3", p);
    const auto b = figure_curves("3", p);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].columns == b[i].columns);
        CHECK(a[i].meta == b[i].meta);
    }
}
