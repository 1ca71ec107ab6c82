#pragma once

#include <vector>

#include "thermoq/core.hpp"

namespace thermoq {

// Default bound on |E_p| below which the weak-coupling treatment is trusted.
inline constexpr double kValidityThreshold = 0.1;

struct PerturbationResult {
    double ep = 0.0; // k_B T ln Tr exp(-beta E)
    double T = 0.0;
    double threshold = kValidityThreshold;
    bool within_validity = false; // |ep| <= threshold
};

struct IterationTrace {
    std::vector<double> corrections; // corrections[0] is the bare E_p
    bool converged = false;
    double tolerance = 0.0;
};

// Tr exp(-beta E) over a finite level set. Evaluated as exp(log-sum-exp);
// may legitimately underflow to zero at very low temperature.
double partition_trace(const LevelSet& levels, const ThermalPoint& tp);

// Thermal correction E_p(T) = k_B T ln Tr exp(-beta E) for a discrete
// spectrum. Requires T > 0.
PerturbationResult ep_discrete(const LevelSet& levels, const ThermalPoint& tp,
                               double threshold = kValidityThreshold);

// Free-particle correction E_p(T) = k_B T ln sqrt(2 pi m k_B T). Vanishes
// analytically at T = 1/(2 pi m k_B). Requires T > 0.
PerturbationResult ep_free(const ThermalPoint& tp, double m = 1.0,
                           const UnitsConfig& units = {},
                           double threshold = kValidityThreshold);

// Dispatch on the system type: discrete systems via their level set, the
// free particle via ep_free.
PerturbationResult ep_of(const SystemSpec& spec, const ThermalPoint& tp,
                         const UnitsConfig& units = {},
                         double threshold = kValidityThreshold);

// E_n(T) = E_n(0) + E_p(T): the correction shifts every level rigidly.
double corrected_energy(double e0, const PerturbationResult& pert);

// Fixed-point iteration of the correction: corrections[i] is evaluated on
// the spectrum shifted by corrections[i-1] (shift zero for i = 0).
// Converged when the last two corrections agree within tol; a single
// iteration is compared against the implicit previous correction of zero.
IterationTrace self_consistent_iterate(const LevelSet& levels, const ThermalPoint& tp,
                                       int i_max, double tol);

// T -> 0 limit of ep_discrete. This is -min(E), not zero; see the README
// model notes.
double low_temperature_limit(const LevelSet& levels);

struct ValidityInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct ValidityScan {
    std::vector<ValidityInterval> intervals; // where |E_p| <= threshold
    std::vector<double> zero_crossings;      // refined roots of E_p
    double threshold = kValidityThreshold;
};

// Sample E_p on a uniform grid over [t_lo, t_hi] (t_lo > 0), then refine
// every |E_p| = threshold edge and every sign change of E_p with the root
// finder.
ValidityScan validity_range(const SystemSpec& spec, double t_lo, double t_hi,
                            double threshold = kValidityThreshold, int samples = 400,
                            const UnitsConfig& units = {});

} // namespace thermoq
