#pragma once

#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "thermoq/errors.hpp"

namespace thermoq {

// Unit system. Defaults give hbar = m = k_B = 1; particle masses in the
// system structs are expressed in multiples of mass_unit.
struct UnitsConfig {
    double hbar = 1.0;
    double mass_unit = 1.0;
    double k_B = 1.0;

    void validate() const; // DomainError unless every entry is positive
};

// A temperature together with the derived quantities the formulas need.
// beta = 1/(k_B T) is undefined at T = 0; has_beta records that.
struct ThermalPoint {
    double T = 0.0;
    double beta = std::numeric_limits<double>::infinity();
    double kT = 0.0;          // k_B T
    double mean_energy = 0.0; // equipartition value k_B T / 2
    bool has_beta = false;

    static ThermalPoint at(double T, const UnitsConfig& units = {});

    bool is_zero() const noexcept { return !has_beta; }
};

// Particle in a box of width L; modes counted n = 1..n_states.
struct Box {
    double L = 1.0;
    double m = 1.0;
    int n_states = 10;
};

// Free particle (continuous spectrum).
struct Free {
    double m = 1.0;
};

// Harmonic oscillator; modes counted n = 0..n_states-1.
struct Oscillator {
    double omega = 1.0;
    double m = 1.0;
    int n_states = 10;
};

using SystemSpec = std::variant<Box, Free, Oscillator>;

// Finite ascending set of unperturbed level energies.
struct LevelSet {
    std::vector<double> energies;

    std::size_t size() const noexcept { return energies.size(); }
    double min_energy() const; // DomainError when empty
};

// Unperturbed levels of a discrete system. The free particle has a
// continuous spectrum and raises DomainError.
LevelSet make_levels(const SystemSpec& spec, const UnitsConfig& units = {});

// Energy of a single unperturbed level. Box: n in [1, n_states];
// oscillator: n in [0, n_states-1]. IndexError outside those ranges.
double level_energy(const SystemSpec& spec, int n, const UnitsConfig& units = {});

// Mass entering the formulas: the system's m scaled by units.mass_unit.
double effective_mass(double m, const UnitsConfig& units);

// "box", "free" or "oscillator".
const char* system_name(const SystemSpec& spec);

} // namespace thermoq
