#include "thermoq/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thermoq {

namespace {

void validate_box(const Box& b) {
    if (!(b.L > 0.0))
        throw DomainError("box width must be positive");
    if (!(b.m > 0.0))
        throw DomainError("box particle mass must be positive");
    if (b.n_states < 1)
        throw DomainError("box needs at least one state");
}

void validate_osc(const Oscillator& o) {
    if (!(o.omega > 0.0))
        throw DomainError("oscillator frequency must be positive");
    if (!(o.m > 0.0))
        throw DomainError("oscillator particle mass must be positive");
    if (o.n_states < 1)
        throw DomainError("oscillator needs at least one state");
}

double box_level(const Box& b, int n, const UnitsConfig& u) {
    const double meff = effective_mass(b.m, u);
    const double xi = std::numbers::pi * std::numbers::pi * u.hbar * u.hbar /
                      (2.0 * meff * b.L * b.L);
    return xi * static_cast<double>(n) * static_cast<double>(n);
}

double osc_level(const Oscillator& o, int n, const UnitsConfig& u) {
    return (static_cast<double>(n) + 0.5) * u.hbar * o.omega;
}

} // namespace

void UnitsConfig::validate() const {
    if (!(hbar > 0.0) || !(mass_unit > 0.0) || !(k_B > 0.0))
        throw DomainError("unit constants must be positive");
}

double effective_mass(double m, const UnitsConfig& units) {
    return m * units.mass_unit;
}

ThermalPoint ThermalPoint::at(double T, const UnitsConfig& units) {
    units.validate();
    if (!(T >= 0.0))
        throw DomainError("temperature must be non-negative");
    ThermalPoint tp;
    tp.T = T;
    tp.kT = units.k_B * T;
    tp.mean_energy = 0.5 * tp.kT;
    if (T > 0.0) {
        tp.beta = 1.0 / tp.kT;
        tp.has_beta = true;
    }
    return tp;
}

double LevelSet::min_energy() const {
    if (energies.empty())
        throw DomainError("empty level set");
    return *std::min_element(energies.begin(), energies.end());
}

LevelSet make_levels(const SystemSpec& spec, const UnitsConfig& units) {
    units.validate();
    LevelSet out;
    if (const Box* b = std::get_if<Box>(&spec)) {
        validate_box(*b);
        out.energies.reserve(static_cast<std::size_t>(b->n_states));
        for (int n = 1; n <= b->n_states; ++n)
            out.energies.push_back(box_level(*b, n, units));
        return out;
    }
    if (const Oscillator* o = std::get_if<Oscillator>(&spec)) {
        validate_osc(*o);
        out.energies.reserve(static_cast<std::size_t>(o->n_states));
        for (int n = 0; n < o->n_states; ++n)
            out.energies.push_back(osc_level(*o, n, units));
        return out;
    }
    throw DomainError("free particle has a continuous spectrum; no level set exists");
}

double level_energy(const SystemSpec& spec, int n, const UnitsConfig& units) {
    units.validate();
    if (const Box* b = std::get_if<Box>(&spec)) {
        validate_box(*b);
        if (n < 1 || n > b->n_states)
            throw IndexError("box mode index outside [1, n_states]");
        return box_level(*b, n, units);
    }
    if (const Oscillator* o = std::get_if<Oscillator>(&spec)) {
        validate_osc(*o);
        if (n < 0 || n >= o->n_states)
            throw IndexError("oscillator mode index outside [0, n_states - 1]");
        return osc_level(*o, n, units);
    }
    throw DomainError("free particle has a continuous spectrum; use the wavenumber form");
}

const char* system_name(const SystemSpec& spec) {
    if (std::holds_alternative<Box>(spec))
        return "box";
    if (std::holds_alternative<Free>(spec))
        return "free";
    return "oscillator";
}

} // namespace thermoq
