#include "thermoq/wavefunctions.hpp"

#include <cmath>
#include <numbers>

#include "thermoq/numerics.hpp"

namespace thermoq {

namespace {

PerturbationResult zero_temperature_result(double threshold = kValidityThreshold) {
    return {0.0, 0.0, threshold, true};
}

PerturbationResult pert_for(const SystemSpec& spec, const ThermalPoint& tp,
                            const UnitsConfig& units) {
    if (tp.is_zero())
        return zero_temperature_result();
    return ep_of(spec, tp, units);
}

double omega_from_ep(const Oscillator& osc, int n, double ep, const UnitsConfig& units) {
    const double omega =
        osc.omega + ep / ((static_cast<double>(n) + 0.5) * units.hbar);
    if (!(omega > 0.0))
        throw DomainError("thermally shifted oscillator frequency is not positive");
    return omega;
}

} // namespace

double mode_alpha(const SystemSpec& spec, int n, const ThermalPoint& tp,
                  const UnitsConfig& units) {
    const double e0 = level_energy(spec, n, units); // rejects the free particle
    if (tp.is_zero())
        return 0.0;
    return ep_of(spec, tp, units).ep / (2.0 * e0);
}

BoxWave BoxWave::make(const Box& box, int n, const ThermalPoint& tp,
                      const UnitsConfig& units, bool clamp_domain) {
    BoxWave w;
    w.box = box;
    w.n = n;
    w.tp = tp;
    w.clamp_domain = clamp_domain;
    const double e0 = level_energy(SystemSpec{box}, n, units);
    w.pert = pert_for(SystemSpec{box}, tp, units);
    w.energy = corrected_energy(e0, w.pert);
    if (!(w.energy >= 0.0))
        throw DomainError("corrected box energy is negative; no real wavenumber");
    const double meff = effective_mass(box.m, units);
    w.k_eff = std::sqrt(2.0 * meff * w.energy) / units.hbar;
    return w;
}

double box_psi(const BoxWave& w, double x) {
    if (w.clamp_domain && (x < 0.0 || x > w.box.L))
        throw DomainError("x outside the box [0, L]");
    return std::sqrt(2.0 / w.box.L) * std::sin(w.k_eff * x);
}

double free_k(double k, const ThermalPoint& tp, double m, const UnitsConfig& units) {
    units.validate();
    if (!(k > 0.0))
        throw DomainError("free wavenumber must be positive");
    if (!(m > 0.0))
        throw DomainError("free particle mass must be positive");
    if (tp.is_zero())
        return k;
    const double meff = effective_mass(m, units);
    const double shift = meff / (units.hbar * units.hbar) * tp.kT *
                         std::log(2.0 * std::numbers::pi * meff * tp.kT);
    const double radicand = k * k + shift;
    if (radicand < 0.0)
        throw DomainError("thermal shift exceeds k^2: evanescent regime, no real k(T)");
    return std::sqrt(radicand);
}

double free_k_approx(double k, const ThermalPoint& tp, double m, const UnitsConfig& units) {
    units.validate();
    if (!(k > 0.0))
        throw DomainError("free wavenumber must be positive");
    if (!(m > 0.0))
        throw DomainError("free particle mass must be positive");
    if (tp.is_zero())
        return k;
    const double meff = effective_mass(m, units);
    const double shift = meff / (units.hbar * units.hbar) * tp.kT *
                         std::log(2.0 * std::numbers::pi * meff * tp.kT);
    return k * (1.0 + shift / (2.0 * k * k));
}

FreeWave FreeWave::make(double k, const ThermalPoint& tp, Direction direction, double m,
                        const UnitsConfig& units) {
    FreeWave w;
    w.k = k;
    w.tp = tp;
    w.direction = direction;
    w.m = m;
    w.k_T = free_k(k, tp, m, units);
    return w;
}

std::complex<double> free_psi(const FreeWave& w, double x) {
    const double phase = static_cast<double>(w.direction) * w.k_T * x;
    return {std::cos(phase), std::sin(phase)};
}

double osc_omega(const Oscillator& osc, int n, const ThermalPoint& tp,
                 const UnitsConfig& units) {
    const double e0 = level_energy(SystemSpec{osc}, n, units);
    (void)e0; // validates osc and the index range
    if (tp.is_zero())
        return osc.omega;
    return omega_from_ep(osc, n, ep_of(SystemSpec{osc}, tp, units).ep, units);
}

OscWave OscWave::make(const Oscillator& osc, int n, const ThermalPoint& tp,
                      const UnitsConfig& units) {
    OscWave w;
    w.osc = osc;
    w.n = n;
    w.tp = tp;
    level_energy(SystemSpec{osc}, n, units); // validate index before computing
    w.pert = pert_for(SystemSpec{osc}, tp, units);
    w.Omega = omega_from_ep(osc, n, w.pert.ep, units);
    const double meff = effective_mass(osc.m, units);
    w.x0 = std::sqrt(units.hbar / (meff * w.Omega));
    return w;
}

double osc_psi(const OscWave& w, double x) {
    const double y = x / w.x0;
    // (sqrt(pi) 2^n n! x0)^{-1/2} via logs so large n cannot overflow.
    const double log_norm = -0.5 * (0.5 * std::log(std::numbers::pi) +
                                    static_cast<double>(w.n) * std::numbers::ln2 +
                                    std::lgamma(static_cast<double>(w.n) + 1.0) +
                                    std::log(w.x0));
    return std::exp(log_norm - 0.5 * y * y) * hermite(w.n, y);
}

} // namespace thermoq
