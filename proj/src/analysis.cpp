#include "thermoq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace thermoq {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void validate_mode_index(int n) {
    if (n < 1)
        throw IndexError("box mode index must be at least 1");
}

// Centered box mode on [-L/2, L/2]: parity-preserving form, cosine for odd
// n and sine for even n, so the n-th mode stays an eigenfunction of parity
// when its wavenumber is rescaled.
double centered_mode(int n, double k, double L, double x) {
    const double amp = std::sqrt(2.0 / L);
    return (n % 2 == 1) ? amp * std::cos(k * x) : amp * std::sin(k * x);
}

// Wall-anchored box mode on [0, L].
double physical_mode(double k, double L, double x) {
    return std::sqrt(2.0 / L) * std::sin(k * x);
}

double rescaled_wavenumber(int n, double L, double alpha) {
    return static_cast<double>(n) * kPi / L * (1.0 + alpha);
}

void validate_alpha(double alpha) {
    if (!(alpha > -1.0))
        throw DomainError("expansion parameter must exceed -1");
}

double log_osc_norm(int n, double x0) {
    return -0.5 * (0.5 * std::log(kPi) + static_cast<double>(n) * std::numbers::ln2 +
                   std::lgamma(static_cast<double>(n) + 1.0) + std::log(x0));
}

std::vector<double> linspace(double lo, double hi, int samples) {
    if (samples < 2)
        throw DomainError("a grid needs at least two samples");
    if (!(hi > lo))
        throw DomainError("grid range must be increasing");
    std::vector<double> xs(static_cast<std::size_t>(samples));
    const double step = (hi - lo) / static_cast<double>(samples - 1);
    for (int i = 0; i < samples; ++i)
        xs[static_cast<std::size_t>(i)] = lo + step * static_cast<double>(i);
    xs.back() = hi;
    return xs;
}

// Golden-section maximum refinement on [lo, hi] for a unimodal stretch.
double golden_max(const std::function<double(double)>& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

std::optional<double> refined_zero(const std::vector<double>& ts, const std::vector<double>& ys,
                                   const std::function<double(double)>& f) {
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ys[i] == 0.0)
            return ts[i];
        if ((ys[i] > 0.0) != (ys[i + 1] > 0.0) && ys[i + 1] != 0.0)
            return find_root(f, {ts[i], ts[i + 1]}, 1e-12);
    }
    if (!ys.empty() && ys.back() == 0.0)
        return ts.back();
    return std::nullopt;
}

} // namespace

double residual_probability(int n, double alpha, OverlapDomain domain) {
    validate_mode_index(n);
    validate_alpha(alpha);
    const double npi = static_cast<double>(n) * kPi;
    switch (domain) {
    case OverlapDomain::Symmetric:
        return std::sin(npi * alpha) / (npi * (1.0 + alpha));
    case OverlapDomain::Physical:
        return std::sin(2.0 * npi * alpha) / (2.0 * npi * (1.0 + alpha));
    case OverlapDomain::FullLine:
        break;
    }
    throw DomainError("box residual requires a bounded domain");
}

double residual_quadrature(const Box& box, int n, double alpha, OverlapDomain domain,
                           const QuadratureSettings& settings) {
    if (!(box.L > 0.0))
        throw DomainError("box width must be positive");
    validate_mode_index(n);
    validate_alpha(alpha);
    const double k = rescaled_wavenumber(n, box.L, alpha);
    switch (domain) {
    case OverlapDomain::Symmetric: {
        const auto density = [&](double x) {
            const double m = centered_mode(n, k, box.L, x);
            return m * m;
        };
        return 1.0 - integrate(density, -0.5 * box.L, 0.5 * box.L, settings);
    }
    case OverlapDomain::Physical: {
        const auto density = [&](double x) {
            const double m = physical_mode(k, box.L, x);
            return m * m;
        };
        return 1.0 - integrate(density, 0.0, box.L, settings);
    }
    case OverlapDomain::FullLine:
        break;
    }
    throw DomainError("box residual requires a bounded domain");
}

double residual_at(const Box& box, int n, const ThermalPoint& tp, OverlapDomain domain,
                   const QuadratureSettings& settings, const UnitsConfig& units) {
    const double alpha = mode_alpha(SystemSpec{box}, n, tp, units);
    return residual_quadrature(box, n, alpha, domain, settings);
}

double box_overlap(const Box& box, int m, int n, const ThermalPoint& tp,
                   const OverlapConvention& conv, const QuadratureSettings& settings,
                   const UnitsConfig& units) {
    level_energy(SystemSpec{box}, m, units);
    level_energy(SystemSpec{box}, n, units);
    const double alpha_n = mode_alpha(SystemSpec{box}, n, tp, units);
    const double alpha_m = conv.mode == AlphaMode::SharedAlpha
                               ? alpha_n
                               : mode_alpha(SystemSpec{box}, m, tp, units);
    validate_alpha(alpha_m);
    validate_alpha(alpha_n);
    const double km = rescaled_wavenumber(m, box.L, alpha_m);
    const double kn = rescaled_wavenumber(n, box.L, alpha_n);
    switch (conv.domain) {
    case OverlapDomain::Symmetric: {
        const auto f = [&](double x) {
            return centered_mode(m, km, box.L, x) * centered_mode(n, kn, box.L, x);
        };
        return integrate(f, -0.5 * box.L, 0.5 * box.L, settings);
    }
    case OverlapDomain::Physical: {
        const auto f = [&](double x) {
            return physical_mode(km, box.L, x) * physical_mode(kn, box.L, x);
        };
        return integrate(f, 0.0, box.L, settings);
    }
    case OverlapDomain::FullLine:
        break;
    }
    throw DomainError("box overlaps integrate over a bounded domain");
}

double osc_overlap(const Oscillator& osc, int m, int n, const ThermalPoint& tp,
                   const OverlapConvention& conv, const QuadratureSettings& settings,
                   const UnitsConfig& units) {
    level_energy(SystemSpec{osc}, m, units);
    level_energy(SystemSpec{osc}, n, units);
    if (conv.domain != OverlapDomain::FullLine)
        throw DomainError("oscillator overlaps integrate over the full line");
    const double spread = std::sqrt(2.0 * static_cast<double>(std::max(m, n)) + 1.0);

    if (conv.mode == AlphaMode::PerMode) {
        const OscWave wm = OscWave::make(osc, m, tp, units);
        const OscWave wn = OscWave::make(osc, n, tp, units);
        const auto f = [&](double x) { return osc_psi(wm, x) * osc_psi(wn, x); };
        return integrate_real_line(f, std::max(wm.x0, wn.x0) * spread, settings);
    }

    // Shared alpha: the literal first-order integrand. Both modes sit at the
    // common rescaled length X = x0 (1 - alpha_n) while the normalization
    // stays at the unshifted x0; the expanded prefactor (1 + alpha/2)^2
    // multiplies the product.
    const double alpha = mode_alpha(SystemSpec{osc}, n, tp, units);
    const double meff = effective_mass(osc.m, units);
    const double x0 = std::sqrt(units.hbar / (meff * osc.omega));
    const double X = x0 * (1.0 - alpha);
    if (!(X > 0.0))
        throw DomainError("shared rescaling collapses the oscillator length scale");
    const double log_norm = log_osc_norm(m, x0) + log_osc_norm(n, x0);
    const double pref = (1.0 + 0.5 * alpha) * (1.0 + 0.5 * alpha);
    const auto f = [&](double x) {
        const double y = x / X;
        return pref * std::exp(log_norm - y * y) * hermite(m, y) * hermite(n, y);
    };
    return integrate_real_line(f, X * spread, settings);
}

double expanded_overlap_factor(int m, int n, double alpha) {
    if (m < 0 || n < 0)
        throw IndexError("oscillator mode indices must be non-negative");
    if (m != n)
        return 0.0; // the closed form carries delta_mn
    // The (n!/m! 2^{n-m})^{1/2} prefactor is unity on the diagonal.
    return (1.0 + 0.5 * alpha) * (1.0 + 0.5 * alpha) * (1.0 - alpha);
}

double expanded_overlap_quadrature(int m, int n, double alpha, double x0,
                                   const QuadratureSettings& settings) {
    if (m < 0 || n < 0)
        throw IndexError("oscillator mode indices must be non-negative");
    if (!(x0 > 0.0))
        throw DomainError("length scale must be positive");
    const double X = x0 * (1.0 - alpha);
    if (!(X > 0.0))
        throw DomainError("rescaled length scale must stay positive");
    const double log_norm = log_osc_norm(m, x0) + log_osc_norm(n, x0);
    const double pref = (1.0 + 0.5 * alpha) * (1.0 + 0.5 * alpha);
    const auto f = [&](double x) {
        const double y = x / X;
        return pref * std::exp(log_norm - y * y) * hermite(m, y) * hermite(n, y);
    };
    const double spread = std::sqrt(2.0 * static_cast<double>(std::max(m, n)) + 1.0);
    return integrate_real_line(f, X * spread, settings);
}

std::size_t CurveTable::n_rows() const {
    return columns.empty() ? 0 : columns.front().size();
}

void CurveTable::validate() const {
    if (label.empty())
        throw DomainError("curve table needs a label");
    if (column_names.size() != columns.size())
        throw DomainError("curve table column names and columns disagree");
    if (columns.empty())
        throw DomainError("curve table needs at least one column");
    for (const auto& col : columns)
        if (col.size() != columns.front().size())
            throw DomainError("curve table columns must have equal length");
}

const std::vector<std::string>& figure_panels() {
    static const std::vector<std::string> ids = {"2a", "2b", "3", "4",
                                                 "5a", "5b", "6", "7"};
    return ids;
}

namespace {

CurveTable ep_curve_table(const SystemSpec& spec, const std::string& label,
                          const std::pair<double, double>& t_range, int samples,
                          const UnitsConfig& units) {
    const std::vector<double> ts = linspace(t_range.first, t_range.second, samples);
    CurveTable t;
    t.label = label;
    t.column_names = {"T", "ep", "within_validity"};
    std::vector<double> eps;
    std::vector<double> valid;
    eps.reserve(ts.size());
    valid.reserve(ts.size());
    for (double T : ts) {
        const PerturbationResult r = ep_of(spec, ThermalPoint::at(T, units), units);
        eps.push_back(r.ep);
        valid.push_back(r.within_validity ? 1.0 : 0.0);
    }
    const auto ep_at = [&](double T) {
        return ep_of(spec, ThermalPoint::at(T, units), units).ep;
    };
    if (const auto zero = refined_zero(ts, eps, ep_at))
        t.meta["zero_crossing"] = fmt17(*zero);
    t.columns = {ts, std::move(eps), std::move(valid)};
    return t;
}

std::vector<CurveTable> panel_2a(const FigureParams& p) {
    const double L = p.box_length.value_or(3.0);
    const Box box{L, p.mass, p.n_states};
    const std::vector<int> modes = p.modes.empty() ? std::vector<int>{1, 2} : p.modes;
    const std::vector<double> temps =
        p.temperatures.empty() ? std::vector<double>{1.57, 2.0} : p.temperatures;
    const auto xr = p.x_range.value_or(std::pair<double, double>{0.0, L});
    const std::vector<double> xs = linspace(xr.first, xr.second, p.samples);

    std::vector<CurveTable> out;
    for (int n : modes) {
        for (double T : temps) {
            const ThermalPoint tp = ThermalPoint::at(T, p.units);
            const BoxWave w = BoxWave::make(box, n, tp, p.units);
            CurveTable t;
            t.label = "n" + std::to_string(n) + "_T" + fmt_short(T);
            t.column_names = {"x", "x_over_L", "psi"};
            std::vector<double> xol;
            std::vector<double> psi;
            xol.reserve(xs.size());
            psi.reserve(xs.size());
            for (double x : xs) {
                xol.push_back(x / L);
                psi.push_back(box_psi(w, x));
            }
            t.columns = {xs, std::move(xol), std::move(psi)};
            t.meta["L"] = fmt_short(L);
            t.meta["n"] = std::to_string(n);
            t.meta["T"] = fmt_short(T);
            t.meta["ep"] = fmt17(w.pert.ep);
            t.meta["k_eff"] = fmt17(w.k_eff);
            t.meta["within_validity"] = w.pert.within_validity ? "1" : "0";
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<CurveTable> panel_2b(const FigureParams& p) {
    const std::vector<double> lengths =
        p.box_lengths.empty() ? std::vector<double>{1, 2, 3, 4, 5} : p.box_lengths;
    const auto tr = p.t_range.value_or(std::pair<double, double>{0.05, 4.0});
    std::vector<CurveTable> out;
    for (double L : lengths) {
        CurveTable t = ep_curve_table(SystemSpec{Box{L, p.mass, p.n_states}},
                                      "L" + fmt_short(L), tr, p.samples, p.units);
        t.meta["L"] = fmt_short(L);
        if (auto it = t.meta.find("zero_crossing"); it != t.meta.end())
            t.meta["crossing_times_L2"] = fmt17(std::stod(it->second) * L * L);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<CurveTable> panel_3(const FigureParams& p) {
    const std::vector<int> modes = p.modes.empty() ? std::vector<int>{1, 2, 3, 4} : p.modes;
    const auto ar = p.alpha_range.value_or(std::pair<double, double>{0.0, 2.0});
    const std::vector<double> alphas = linspace(ar.first, ar.second, p.samples);
    std::vector<CurveTable> out;
    for (int n : modes) {
        CurveTable t;
        t.label = "n" + std::to_string(n);
        t.column_names = {"alpha", "residual"};
        std::vector<double> res;
        res.reserve(alphas.size());
        for (double a : alphas)
            res.push_back(residual_probability(n, a));
        // Refine the sampled peak of |residual| so the metadata carries the
        // true extremum rather than a grid estimate.
        std::size_t best = 0;
        for (std::size_t i = 1; i < alphas.size(); ++i)
            if (std::abs(res[i]) > std::abs(res[best]))
                best = i;
        const double lo = alphas[best > 0 ? best - 1 : best];
        const double hi = alphas[best + 1 < alphas.size() ? best + 1 : best];
        const auto abs_res = [&](double a) { return std::abs(residual_probability(n, a)); };
        const double argmax = lo < hi ? golden_max(abs_res, lo, hi) : alphas[best];
        t.meta["max_residual"] = fmt17(abs_res(argmax));
        t.meta["argmax_alpha"] = fmt17(argmax);
        t.meta["note"] = "peak of the closed-form residual on the sampled range; "
                         "the residual is only small for small alpha";
        t.columns = {alphas, std::move(res)};
        t.meta["n"] = std::to_string(n);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<CurveTable> panel_4(const FigureParams& p) {
    const auto tr = p.t_range.value_or(std::pair<double, double>{0.005, 0.5});
    CurveTable t = ep_curve_table(SystemSpec{Free{p.mass}}, "free", tr, p.samples, p.units);
    const double meff = effective_mass(p.mass, p.units);
    t.meta["zero_crossing_analytic"] =
        fmt17(1.0 / (2.0 * kPi * meff * p.units.k_B));
    return {std::move(t)};
}

std::vector<CurveTable> panel_5(const FigureParams& p, bool imaginary) {
    const std::vector<double> ks =
        p.wavenumbers.empty() ? std::vector<double>{1.0, 2.0} : p.wavenumbers;
    const std::vector<double> temps =
        p.temperatures.empty() ? std::vector<double>{0.0, 0.5} : p.temperatures;
    const auto xr = p.x_range.value_or(std::pair<double, double>{0.0, 10.0});
    const std::vector<double> xs = linspace(xr.first, xr.second, p.samples);
    std::vector<CurveTable> out;
    for (double k : ks) {
        for (double T : temps) {
            const ThermalPoint tp = ThermalPoint::at(T, p.units);
            const FreeWave w = FreeWave::make(k, tp, Direction::Right, p.mass, p.units);
            CurveTable t;
            t.label = "k" + fmt_short(k) + "_T" + fmt_short(T);
            t.column_names = {"x", imaginary ? "im" : "re"};
            std::vector<double> vals;
            vals.reserve(xs.size());
            for (double x : xs) {
                const std::complex<double> psi = free_psi(w, x);
                vals.push_back(imaginary ? psi.imag() : psi.real());
            }
            t.columns = {xs, std::move(vals)};
            t.meta["k"] = fmt_short(k);
            t.meta["T"] = fmt_short(T);
            t.meta["k_T"] = fmt17(w.k_T);
            t.meta["k_T_approx"] = fmt17(free_k_approx(k, tp, p.mass, p.units));
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<CurveTable> panel_6(const FigureParams& p) {
    const std::vector<double> omegas =
        p.omegas.empty() ? std::vector<double>{0.5, 1.0, 2.0, 4.0, 8.0} : p.omegas;
    const auto tr = p.t_range.value_or(std::pair<double, double>{0.05, 10.0});
    std::vector<CurveTable> out;
    for (double w : omegas) {
        CurveTable t = ep_curve_table(SystemSpec{Oscillator{w, p.mass, p.n_states}},
                                      "w" + fmt_short(w), tr, p.samples, p.units);
        t.meta["omega"] = fmt_short(w);
        if (auto it = t.meta.find("zero_crossing"); it != t.meta.end())
            t.meta["crossing_over_omega"] = fmt17(std::stod(it->second) / w);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<CurveTable> panel_7(const FigureParams& p) {
    if (!p.omega.has_value())
        throw DomainError("panel 7 requires an oscillator frequency");
    if (p.temperatures.empty())
        throw DomainError("panel 7 requires explicit temperatures");
    const Oscillator osc{*p.omega, p.mass, p.n_states};
    const std::vector<int> modes =
        p.modes.empty() ? std::vector<int>{0, 1, 2, 3, 4, 5} : p.modes;
    const double meff = effective_mass(p.mass, p.units);
    const double x0_zero = std::sqrt(p.units.hbar / (meff * *p.omega));
    const auto xr =
        p.x_range.value_or(std::pair<double, double>{-5.0 * x0_zero, 5.0 * x0_zero});
    const std::vector<double> xs = linspace(xr.first, xr.second, p.samples);
    std::vector<CurveTable> out;
    for (int n : modes) {
        for (double T : p.temperatures) {
            const ThermalPoint tp = ThermalPoint::at(T, p.units);
            const OscWave w = OscWave::make(osc, n, tp, p.units);
            CurveTable t;
            t.label = "n" + std::to_string(n) + "_T" + fmt_short(T);
            t.column_names = {"x", "x_over_x0", "psi"};
            std::vector<double> xox;
            std::vector<double> psi;
            xox.reserve(xs.size());
            psi.reserve(xs.size());
            for (double x : xs) {
                xox.push_back(x / x0_zero);
                psi.push_back(osc_psi(w, x));
            }
            t.columns = {xs, std::move(xox), std::move(psi)};
            t.meta["omega"] = fmt_short(*p.omega);
            t.meta["n"] = std::to_string(n);
            t.meta["T"] = fmt_short(T);
            t.meta["Omega_n"] = fmt17(w.Omega);
            t.meta["x0_thermal"] = fmt17(w.x0);
            t.meta["ep"] = fmt17(w.pert.ep);
            t.meta["within_validity"] = w.pert.within_validity ? "1" : "0";
            out.push_back(std::move(t));
        }
    }
    return out;
}

} // namespace

std::vector<CurveTable> figure_curves(const std::string& panel, const FigureParams& params) {
    params.units.validate();
    if (params.samples < 2)
        throw DomainError("figure curves need at least two samples");
    std::vector<CurveTable> out;
    if (panel == "2a")
        out = panel_2a(params);
    else if (panel == "2b")
        out = panel_2b(params);
    else if (panel == "3")
        out = panel_3(params);
    else if (panel == "4")
        out = panel_4(params);
    else if (panel == "5a")
        out = panel_5(params, false);
    else if (panel == "5b")
        out = panel_5(params, true);
    else if (panel == "6")
        out = panel_6(params);
    else if (panel == "7")
        out = panel_7(params);
    else
        throw DomainError("unknown figure id: " + panel);
    for (auto& t : out)
        t.validate();
    return out;
}

} // namespace thermoq
