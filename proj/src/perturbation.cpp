#include "thermoq/perturbation.hpp"

#include <cmath>
#include <numbers>

#include "thermoq/numerics.hpp"

namespace thermoq {

namespace {

void require_positive_temperature(const ThermalPoint& tp) {
    if (!tp.has_beta)
        throw DomainError("thermal correction requires T > 0");
}

std::vector<double> scaled_exponents(const LevelSet& levels, const ThermalPoint& tp,
                                     double shift) {
    if (levels.energies.empty())
        throw DomainError("empty level set");
    std::vector<double> out;
    out.reserve(levels.size());
    for (double e : levels.energies)
        out.push_back(-tp.beta * (e + shift));
    return out;
}

double ep_value(const LevelSet& levels, const ThermalPoint& tp, double shift) {
    return tp.kT * log_sum_exp(scaled_exponents(levels, tp, shift));
}

} // namespace

double partition_trace(const LevelSet& levels, const ThermalPoint& tp) {
    require_positive_temperature(tp);
    return std::exp(log_sum_exp(scaled_exponents(levels, tp, 0.0)));
}

PerturbationResult ep_discrete(const LevelSet& levels, const ThermalPoint& tp,
                               double threshold) {
    require_positive_temperature(tp);
    if (!(threshold > 0.0))
        throw DomainError("validity threshold must be positive");
    const double ep = ep_value(levels, tp, 0.0);
    return {ep, tp.T, threshold, std::abs(ep) <= threshold};
}

PerturbationResult ep_free(const ThermalPoint& tp, double m, const UnitsConfig& units,
                           double threshold) {
    units.validate();
    require_positive_temperature(tp);
    if (!(m > 0.0))
        throw DomainError("free particle mass must be positive");
    if (!(threshold > 0.0))
        throw DomainError("validity threshold must be positive");
    const double meff = effective_mass(m, units);
    // k_B T ln sqrt(2 pi m k_B T); vanishes at k_B T = 1/(2 pi m).
    const double ep = 0.5 * tp.kT * std::log(2.0 * std::numbers::pi * meff * tp.kT);
    return {ep, tp.T, threshold, std::abs(ep) <= threshold};
}

PerturbationResult ep_of(const SystemSpec& spec, const ThermalPoint& tp,
                         const UnitsConfig& units, double threshold) {
    if (const Free* f = std::get_if<Free>(&spec))
        return ep_free(tp, f->m, units, threshold);
    return ep_discrete(make_levels(spec, units), tp, threshold);
}

double corrected_energy(double e0, const PerturbationResult& pert) {
    return e0 + pert.ep;
}

IterationTrace self_consistent_iterate(const LevelSet& levels, const ThermalPoint& tp,
                                       int i_max, double tol) {
    require_positive_temperature(tp);
    if (i_max < 1)
        throw DomainError("iteration count must be at least 1");
    if (!(tol > 0.0))
        throw DomainError("iteration tolerance must be positive");
    IterationTrace trace;
    trace.tolerance = tol;
    trace.corrections.reserve(static_cast<std::size_t>(i_max));
    double shift = 0.0;
    for (int i = 0; i < i_max; ++i) {
        const double c = ep_value(levels, tp, shift);
        trace.corrections.push_back(c);
        shift = c;
    }
    const std::size_t k = trace.corrections.size();
    const double last = trace.corrections[k - 1];
    const double prev = k >= 2 ? trace.corrections[k - 2] : 0.0;
    trace.converged = std::abs(last - prev) <= tol;
    return trace;
}

double low_temperature_limit(const LevelSet& levels) {
    return -levels.min_energy();
}

ValidityScan validity_range(const SystemSpec& spec, double t_lo, double t_hi,
                            double threshold, int samples, const UnitsConfig& units) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw DomainError("validity scan needs 0 < t_lo < t_hi");
    if (!(threshold > 0.0))
        throw DomainError("validity threshold must be positive");
    if (samples < 2)
        throw DomainError("validity scan needs at least two samples");

    const auto ep_at = [&](double T) {
        return ep_of(spec, ThermalPoint::at(T, units), units, threshold).ep;
    };
    const auto excess_at = [&](double T) { return std::abs(ep_at(T)) - threshold; };

    std::vector<double> ts(static_cast<std::size_t>(samples));
    std::vector<double> eps(static_cast<std::size_t>(samples));
    const double step = (t_hi - t_lo) / static_cast<double>(samples - 1);
    for (int i = 0; i < samples; ++i) {
        ts[static_cast<std::size_t>(i)] = t_lo + step * static_cast<double>(i);
        eps[static_cast<std::size_t>(i)] = ep_at(ts[static_cast<std::size_t>(i)]);
    }
    ts.back() = t_hi; // avoid accumulated rounding on the last grid point

    ValidityScan scan;
    scan.threshold = threshold;

    constexpr double kRefineTol = 1e-12;
    for (int i = 0; i + 1 < samples; ++i) {
        const std::size_t j = static_cast<std::size_t>(i);
        if (eps[j] == 0.0)
            scan.zero_crossings.push_back(ts[j]);
        else if ((eps[j] > 0.0) != (eps[j + 1] > 0.0) && eps[j + 1] != 0.0)
            scan.zero_crossings.push_back(
                find_root([&](double T) { return ep_at(T); }, {ts[j], ts[j + 1]}, kRefineTol));
    }
    if (eps.back() == 0.0)
        scan.zero_crossings.push_back(ts.back());

    // Walk the grid, refining each inside/outside transition of |E_p|.
    bool inside = std::abs(eps[0]) <= threshold;
    double open_lo = inside ? ts[0] : 0.0;
    for (int i = 0; i + 1 < samples; ++i) {
        const std::size_t j = static_cast<std::size_t>(i);
        const bool next_inside = std::abs(eps[j + 1]) <= threshold;
        if (next_inside == inside)
            continue;
        const double g_lo = excess_at(ts[j]);
        const double g_hi = excess_at(ts[j + 1]);
        double edge;
        if (g_lo == 0.0)
            edge = ts[j];
        else if (g_hi == 0.0)
            edge = ts[j + 1];
        else
            edge = find_root(excess_at, {ts[j], ts[j + 1]}, kRefineTol);
        if (next_inside)
            open_lo = edge;
        else
            scan.intervals.push_back({open_lo, edge});
        inside = next_inside;
    }
    if (inside)
        scan.intervals.push_back({open_lo, ts.back()});
    return scan;
}

} // namespace thermoq
