#pragma once

#include <complex>

#include "thermoq/perturbation.hpp"

namespace thermoq {

// Per-mode expansion parameter alpha_n = E_p(T) / (2 E_n(0)). Defined for
// discrete systems only; zero at T = 0.
double mode_alpha(const SystemSpec& spec, int n, const ThermalPoint& tp,
                  const UnitsConfig& units = {});

// Box eigenfunction at the thermally corrected energy:
// psi_n(x) = sqrt(2/L) sin(k_eff x), k_eff = sqrt(2 m E_n(T)) / hbar.
struct BoxWave {
    Box box;
    int n = 1;
    ThermalPoint tp;
    PerturbationResult pert;
    double energy = 0.0; // E_n(T)
    double k_eff = 0.0;
    bool clamp_domain = true; // reject x outside [0, L] unless disabled

    static BoxWave make(const Box& box, int n, const ThermalPoint& tp,
                        const UnitsConfig& units = {}, bool clamp_domain = true);
};

double box_psi(const BoxWave& w, double x);

enum class Direction { Left = -1, Right = +1 };

// Thermally shifted plane wave exp(+- i k_T x).
struct FreeWave {
    double k = 0.0; // zero-temperature wavenumber, > 0
    ThermalPoint tp;
    Direction direction = Direction::Right;
    double m = 1.0;
    double k_T = 0.0;

    static FreeWave make(double k, const ThermalPoint& tp,
                         Direction direction = Direction::Right, double m = 1.0,
                         const UnitsConfig& units = {});
};

std::complex<double> free_psi(const FreeWave& w, double x);

// k(T) = sqrt(k^2 + (m / hbar^2) k_B T ln(2 pi m k_B T)). T = 0 returns k
// exactly. DomainError when the radicand is negative (evanescent regime).
double free_k(double k, const ThermalPoint& tp, double m = 1.0,
              const UnitsConfig& units = {});

// First-order expansion of the same shift:
// k (1 + m k_B T ln(2 pi m k_B T) / (2 hbar^2 k^2)).
double free_k_approx(double k, const ThermalPoint& tp, double m = 1.0,
                     const UnitsConfig& units = {});

// Oscillator mode at the thermally shifted frequency
// Omega_n(T) = omega + E_p / ((n + 1/2) hbar), length scale
// x0 = sqrt(hbar / (m Omega_n)).
struct OscWave {
    Oscillator osc;
    int n = 0;
    ThermalPoint tp;
    PerturbationResult pert;
    double Omega = 0.0;
    double x0 = 0.0;

    static OscWave make(const Oscillator& osc, int n, const ThermalPoint& tp,
                        const UnitsConfig& units = {});
};

// Omega_n(T); DomainError if the shifted frequency is not positive.
double osc_omega(const Oscillator& osc, int n, const ThermalPoint& tp,
                 const UnitsConfig& units = {});

// Normalized Hermite-Gaussian mode at the shifted frequency. Factorials are
// handled in log space, so any supported Hermite order is safe.
double osc_psi(const OscWave& w, double x);

} // namespace thermoq
