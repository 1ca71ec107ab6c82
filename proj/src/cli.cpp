#include "thermoq/cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "thermoq/perturbation.hpp"
#include "thermoq/serialize.hpp"
#include "thermoq/verify.hpp"
#include "thermoq/wavefunctions.hpp"

namespace thermoq {

namespace {

namespace fs = std::filesystem;

struct GlobalOpts {
    std::string format = "csv";
    std::string output;
    double threshold = kValidityThreshold;
    int n_states = 10;
    int samples = 400;
    double mass = 1.0;
};

struct SystemOpts {
    std::string system;
    std::optional<double> L;
    std::optional<double> omega;
};

OutputFormat parse_format(const std::string& f) {
    return f == "json" ? OutputFormat::Json : OutputFormat::Csv;
}

SystemSpec build_system(const SystemOpts& sys, const GlobalOpts& g) {
    if (sys.system == "box") {
        if (!sys.L.has_value())
            throw DomainError("the box needs --L");
        return Box{*sys.L, g.mass, g.n_states};
    }
    if (sys.system == "free")
        return Free{g.mass};
    if (sys.system == "oscillator") {
        if (!sys.omega.has_value())
            throw DomainError("the oscillator needs --omega");
        return Oscillator{*sys.omega, g.mass, g.n_states};
    }
    throw DomainError("unknown system: " + sys.system);
}

void require_increasing(const std::vector<double>& grid, const char* what) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw DomainError(std::string(what) + " must be strictly increasing");
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

// Temperatures from either an explicit --T list or a --t-min/--t-max grid.
std::vector<double> temperature_grid(const std::vector<double>& t_list,
                                     const std::optional<double>& t_min,
                                     const std::optional<double>& t_max, int samples) {
    if (!t_list.empty()) {
        if (t_min.has_value() || t_max.has_value())
            throw DomainError("give either --T or a --t-min/--t-max range, not both");
        require_increasing(t_list, "the temperature list");
        return t_list;
    }
    if (t_min.has_value() != t_max.has_value())
        throw DomainError("--t-min and --t-max must be given together");
    if (!t_min.has_value())
        throw DomainError("a temperature is required: --T or --t-min/--t-max");
    return linspace(*t_min, *t_max, samples);
}

// Write one table (or a stem-suffixed family for several) and/or print.
int emit_tables(const std::vector<CurveTable>& tables, const GlobalOpts& g) {
    const OutputFormat format = parse_format(g.format);
    if (g.output.empty()) {
        if (format == OutputFormat::Json) {
            std::cout << (tables.size() == 1 ? to_json(tables.front()) : to_json(tables));
        } else {
            for (std::size_t i = 0; i < tables.size(); ++i) {
                if (tables.size() > 1)
                    std::cout << "# " << tables[i].label << "\n";
                std::cout << to_csv(tables[i]);
                if (i + 1 < tables.size())
                    std::cout << "\n";
            }
        }
        return kExitOk;
    }
    fs::path path{g.output};
    if (format == OutputFormat::Json) {
        write_file_atomic(path,
                          tables.size() == 1 ? to_json(tables.front()) : to_json(tables));
        std::cout << path.string() << "\n";
        return kExitOk;
    }
    if (tables.size() == 1) {
        write_file_atomic(path, to_csv(tables.front()));
        std::cout << path.string() << "\n";
        return kExitOk;
    }
    fs::path stem = path;
    if (stem.extension() == ".csv")
        stem.replace_extension();
    for (const auto& t : tables) {
        const fs::path out = stem.string() + "_" + t.label + ".csv";
        write_file_atomic(out, to_csv(t));
        std::cout << out.string() << "\n";
    }
    return kExitOk;
}

int cmd_ep(const GlobalOpts& g, const SystemOpts& sys, const std::vector<double>& ts) {
    const SystemSpec spec = build_system(sys, g);
    CurveTable t;
    t.label = "ep";
    t.column_names = {"T", "ep", "within_validity"};
    std::vector<double> col_t;
    std::vector<double> col_ep;
    std::vector<double> col_valid;
    for (double T : ts) {
        const PerturbationResult r =
            ep_of(spec, ThermalPoint::at(T), {}, g.threshold);
        col_t.push_back(T);
        col_ep.push_back(r.ep);
        col_valid.push_back(r.within_validity ? 1.0 : 0.0);
    }
    t.columns = {std::move(col_t), std::move(col_ep), std::move(col_valid)};
    t.meta["system"] = system_name(spec);
    t.meta["threshold"] = format_double(g.threshold);
    return emit_tables({std::move(t)}, g);
}

int cmd_spectrum(const GlobalOpts& g, const SystemOpts& sys, double T,
                 const std::vector<double>& ks) {
    const SystemSpec spec = build_system(sys, g);
    const ThermalPoint tp = ThermalPoint::at(T);
    const PerturbationResult pert = ep_of(spec, tp, {}, g.threshold);
    CurveTable t;
    t.label = "spectrum";
    std::vector<double> idx;
    std::vector<double> e0;
    if (std::holds_alternative<Free>(spec)) {
        if (ks.empty())
            throw DomainError("the free-particle spectrum needs --k wavenumbers");
        require_increasing(ks, "the wavenumber list");
        t.column_names = {"k", "e0", "ep", "eT"};
        const UnitsConfig units;
        const double meff = effective_mass(g.mass, units);
        for (double k : ks) {
            if (!(k > 0.0))
                throw DomainError("wavenumbers must be positive");
            idx.push_back(k);
            e0.push_back(units.hbar * units.hbar * k * k / (2.0 * meff));
        }
    } else {
        t.column_names = {"n", "e0", "ep", "eT"};
        const bool is_box = std::holds_alternative<Box>(spec);
        const int lo = is_box ? 1 : 0;
        const int hi = is_box ? g.n_states : g.n_states - 1;
        for (int n = lo; n <= hi; ++n) {
            idx.push_back(static_cast<double>(n));
            e0.push_back(level_energy(spec, n));
        }
    }
    std::vector<double> ep_col(idx.size(), pert.ep);
    std::vector<double> e_t;
    e_t.reserve(e0.size());
    for (double e : e0)
        e_t.push_back(corrected_energy(e, pert));
    t.columns = {std::move(idx), std::move(e0), std::move(ep_col), std::move(e_t)};
    t.meta["system"] = system_name(spec);
    t.meta["T"] = format_double(T);
    t.meta["within_validity"] = pert.within_validity ? "1" : "0";
    return emit_tables({std::move(t)}, g);
}

int cmd_wavefunction(const GlobalOpts& g, const SystemOpts& sys, int n, double k, double T,
                     std::optional<double> x_min, std::optional<double> x_max,
                     const std::string& direction) {
    const SystemSpec spec = build_system(sys, g);
    const ThermalPoint tp = ThermalPoint::at(T);
    CurveTable t;
    t.label = "wavefunction";
    t.meta["system"] = system_name(spec);
    t.meta["T"] = format_double(T);

    if (const Box* box = std::get_if<Box>(&spec)) {
        const BoxWave w = BoxWave::make(*box, n, tp);
        const std::vector<double> xs =
            linspace(x_min.value_or(0.0), x_max.value_or(box->L), g.samples);
        std::vector<double> psi;
        psi.reserve(xs.size());
        for (double x : xs)
            psi.push_back(box_psi(w, x));
        t.column_names = {"x", "psi"};
        t.columns = {xs, std::move(psi)};
        t.meta["n"] = std::to_string(n);
        t.meta["k_eff"] = format_double(w.k_eff);
        t.meta["ep"] = format_double(w.pert.ep);
        t.meta["within_validity"] = w.pert.within_validity ? "1" : "0";
    } else if (std::holds_alternative<Free>(spec)) {
        if (!(k > 0.0))
            throw DomainError("the free wavefunction needs --k > 0");
        const Direction dir = direction == "left" ? Direction::Left : Direction::Right;
        const FreeWave w = FreeWave::make(k, tp, dir, g.mass);
        const std::vector<double> xs =
            linspace(x_min.value_or(0.0), x_max.value_or(10.0), g.samples);
        std::vector<double> re;
        std::vector<double> im;
        re.reserve(xs.size());
        im.reserve(xs.size());
        for (double x : xs) {
            const std::complex<double> psi = free_psi(w, x);
            re.push_back(psi.real());
            im.push_back(psi.imag());
        }
        t.column_names = {"x", "re", "im"};
        t.columns = {xs, std::move(re), std::move(im)};
        t.meta["k"] = format_double(k);
        t.meta["k_T"] = format_double(w.k_T);
    } else {
        const Oscillator& osc = std::get<Oscillator>(spec);
        const OscWave w = OscWave::make(osc, n, tp);
        const std::vector<double> xs =
            linspace(x_min.value_or(-5.0 * w.x0), x_max.value_or(5.0 * w.x0), g.samples);
        std::vector<double> psi;
        psi.reserve(xs.size());
        for (double x : xs)
            psi.push_back(osc_psi(w, x));
        t.column_names = {"x", "psi"};
        t.columns = {xs, std::move(psi)};
        t.meta["n"] = std::to_string(n);
        t.meta["Omega_n"] = format_double(w.Omega);
        t.meta["x0"] = format_double(w.x0);
        t.meta["ep"] = format_double(w.pert.ep);
        t.meta["within_validity"] = w.pert.within_validity ? "1" : "0";
    }
    return emit_tables({std::move(t)}, g);
}

int cmd_validity(const GlobalOpts& g, const SystemOpts& sys, double t_min, double t_max) {
    const SystemSpec spec = build_system(sys, g);
    const ValidityScan scan =
        validity_range(spec, t_min, t_max, g.threshold, g.samples);
    CurveTable intervals;
    intervals.label = "intervals";
    intervals.column_names = {"lo", "hi"};
    intervals.columns.assign(2, {});
    for (const auto& iv : scan.intervals) {
        intervals.columns[0].push_back(iv.lo);
        intervals.columns[1].push_back(iv.hi);
    }
    intervals.meta["system"] = system_name(spec);
    intervals.meta["threshold"] = format_double(scan.threshold);
    CurveTable crossings;
    crossings.label = "zero_crossings";
    crossings.column_names = {"T_star"};
    crossings.columns.assign(1, {});
    for (double T : scan.zero_crossings)
        crossings.columns[0].push_back(T);
    crossings.meta["system"] = system_name(spec);
    return emit_tables({std::move(intervals), std::move(crossings)}, g);
}

int cmd_verify(const std::vector<std::string>& checks, std::optional<double> alpha,
               double tol, bool list_only) {
    if (list_only) {
        for (const auto& name : verify_check_names())
            std::cout << name << "\n";
        return kExitOk;
    }
    VerifyOptions options;
    options.quad_compare_tol = tol;
    options.alpha = alpha;
    const std::vector<std::string> names =
        checks.empty() ? verify_check_names() : checks;
    int failures = 0;
    for (const auto& name : names) {
        const CheckResult r = run_verify_check(name, options);
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        if (!r.pass)
            ++failures;
    }
    if (failures == 0) {
        std::cout << "all " << names.size() << " checks passed\n";
        return kExitOk;
    }
    std::cout << failures << " of " << names.size() << " checks failed\n";
    return kExitVerifyFailed;
}

int cmd_figure(const GlobalOpts& g, const std::string& panel, const FigureParams& params) {
    const fs::path out_dir = g.output.empty() ? fs::path{"."} : fs::path{g.output};
    const auto files = write_figure_files(panel, params, out_dir, parse_format(g.format));
    for (const auto& f : files)
        std::cout << f.string() << "\n";
    return kExitOk;
}

} // namespace

std::vector<fs::path> write_figure_files(const std::string& panel, const FigureParams& params,
                                         const fs::path& out_dir, OutputFormat format) {
    const std::vector<CurveTable> curves = figure_curves(panel, params);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir))
        throw IoError("cannot create output directory: " + out_dir.string());
    std::vector<fs::path> written;
    if (format == OutputFormat::Json) {
        const fs::path path = out_dir / ("fig" + panel + ".json");
        write_file_atomic(path, to_json(curves));
        written.push_back(path);
        return written;
    }
    nlohmann::ordered_json meta;
    for (const auto& t : curves) {
        const fs::path path = out_dir / ("fig" + panel + "_" + t.label + ".csv");
        write_file_atomic(path, to_csv(t));
        written.push_back(path);
        meta[t.label] = t.meta;
    }
    const fs::path meta_path = out_dir / ("fig" + panel + "_meta.json");
    write_file_atomic(meta_path, meta.dump(2) + "\n");
    written.push_back(meta_path);
    return written;
}

int run_cli(int argc, const char* const* argv) {
    GlobalOpts g;
    SystemOpts sys;
    std::vector<double> t_list;
    std::optional<double> t_min;
    std::optional<double> t_max;
    std::vector<double> k_list;
    int mode_n = 0;
    double wave_k = 0.0;
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::string direction = "right";
    std::vector<std::string> checks;
    std::optional<double> verify_alpha;
    double verify_tol = 1e-8;
    bool verify_list = false;
    std::string panel;
    FigureParams fig;
    std::vector<double> fig_temps;
    std::vector<int> fig_modes;
    std::vector<double> fig_ks;
    std::vector<double> fig_omegas;
    std::vector<double> fig_lengths;
    std::optional<double> fig_length;
    std::optional<double> fig_omega;
    std::optional<double> fig_tmin;
    std::optional<double> fig_tmax;
    std::optional<double> fig_amin;
    std::optional<double> fig_amax;
    std::optional<double> fig_xmin;
    std::optional<double> fig_xmax;

    CLI::App app{"temperature-corrected spectra and wavefunctions for simple quantum systems"};
    app.set_config("--config", "", "key=value configuration file")
        ->envname("THERMOQ_CONFIG");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output", g.output,
                   "write results to this path (figure: a directory) instead of stdout");
    app.add_option("--threshold", g.threshold, "validity bound on |E_p|")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--n-states", g.n_states, "levels kept in discrete traces")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--samples", g.samples, "grid resolution")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    app.add_option("--m", g.mass, "particle mass")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.require_subcommand(1);

    const auto add_system = [&](CLI::App* sub, bool required = true) {
        auto* opt = sub->add_option("--system", sys.system, "box, free or oscillator")
                        ->check(CLI::IsMember({"box", "free", "oscillator"}));
        if (required)
            opt->required();
        sub->add_option("--L", sys.L, "box width");
        sub->add_option("--omega", sys.omega, "oscillator frequency");
        sub->fallthrough();
    };

    CLI::App* ep = app.add_subcommand("ep", "thermal correction E_p over temperatures");
    add_system(ep);
    ep->add_option("--T", t_list, "temperature(s)")->delimiter(',');
    ep->add_option("--t-min", t_min, "grid start");
    ep->add_option("--t-max", t_max, "grid end");

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "corrected level energies at one temperature");
    add_system(spectrum);
    double spectrum_T = 0.0;
    spectrum->add_option("--T", spectrum_T, "temperature")->required();
    spectrum->add_option("--k", k_list, "free-particle wavenumbers")->delimiter(',');

    CLI::App* wavefunction =
        app.add_subcommand("wavefunction", "sampled wavefunction at one temperature");
    add_system(wavefunction);
    double wave_T = 0.0;
    wavefunction->add_option("--T", wave_T, "temperature")->required();
    wavefunction->add_option("--n", mode_n, "mode index");
    wavefunction->add_option("--k", wave_k, "free-particle wavenumber");
    wavefunction->add_option("--x-min", x_min, "sampling start");
    wavefunction->add_option("--x-max", x_max, "sampling end");
    wavefunction->add_option("--direction", direction, "free-wave direction")
        ->check(CLI::IsMember({"left", "right"}));

    CLI::App* validity =
        app.add_subcommand("validity", "temperature ranges where |E_p| <= threshold");
    add_system(validity);
    double v_tmin = 0.0;
    double v_tmax = 0.0;
    validity->add_option("--t-min", v_tmin, "scan start")->required();
    validity->add_option("--t-max", v_tmax, "scan end")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the numeric invariant checks");
    verify->add_option("--check", checks, "run only the named check(s)");
    verify->add_option("--alpha", verify_alpha, "expansion parameter for overlap reports");
    verify->add_option("--tol", verify_tol,
                       "tolerance for closed-form vs quadrature comparisons")
        ->capture_default_str();
    verify->add_flag("--list", verify_list, "list check names and exit");
    verify->fallthrough();

    CLI::App* figure = app.add_subcommand("figure", "emit a built-in figure preset");
    figure->add_option("panel", panel, "one of 2a, 2b, 3, 4, 5a, 5b, 6, 7")->required();
    figure->add_option("--T", fig_temps, "temperatures")->delimiter(',');
    figure->add_option("--modes", fig_modes, "mode indices")->delimiter(',');
    figure->add_option("--k-values", fig_ks, "plane-wave wavenumbers")->delimiter(',');
    figure->add_option("--omegas", fig_omegas, "oscillator frequencies")->delimiter(',');
    figure->add_option("--omega", fig_omega, "oscillator frequency (panel 7)");
    figure->add_option("--L", fig_length, "box width (panel 2a)");
    figure->add_option("--L-values", fig_lengths, "box widths (panel 2b)")->delimiter(',');
    figure->add_option("--t-min", fig_tmin, "temperature grid start");
    figure->add_option("--t-max", fig_tmax, "temperature grid end");
    figure->add_option("--alpha-min", fig_amin, "alpha grid start");
    figure->add_option("--alpha-max", fig_amax, "alpha grid end");
    figure->add_option("--x-min", fig_xmin, "x grid start");
    figure->add_option("--x-max", fig_xmax, "x grid end");
    figure->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::FileError& e) {
        app.exit(e);
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        // CLI11 ignores a missing config file named only through the
        // environment; an explicitly named file must exist.
        if (const auto* cfg_opt = app.get_config_ptr();
            cfg_opt != nullptr && cfg_opt->count() > 0) {
            const std::string cfg = cfg_opt->as<std::string>();
            if (!cfg.empty() && !fs::exists(cfg))
                throw IoError("config file not found: " + cfg);
        }
        if (ep->parsed())
            return cmd_ep(g, sys, temperature_grid(t_list, t_min, t_max, g.samples));
        if (spectrum->parsed())
            return cmd_spectrum(g, sys, spectrum_T, k_list);
        if (wavefunction->parsed())
            return cmd_wavefunction(g, sys, mode_n, wave_k, wave_T, x_min, x_max, direction);
        if (validity->parsed())
            return cmd_validity(g, sys, v_tmin, v_tmax);
        if (verify->parsed())
            return cmd_verify(checks, verify_alpha, verify_tol, verify_list);
        if (figure->parsed()) {
            fig.samples = g.samples;
            fig.mass = g.mass;
            fig.n_states = g.n_states;
            fig.temperatures = fig_temps;
            fig.modes = fig_modes;
            fig.wavenumbers = fig_ks;
            fig.omegas = fig_omegas;
            fig.omega = fig_omega;
            fig.box_length = fig_length;
            fig.box_lengths = fig_lengths;
            if (fig_tmin.has_value() != fig_tmax.has_value())
                throw DomainError("--t-min and --t-max must be given together");
            if (fig_tmin)
                fig.t_range = {*fig_tmin, *fig_tmax};
            if (fig_amin.has_value() != fig_amax.has_value())
                throw DomainError("--alpha-min and --alpha-max must be given together");
            if (fig_amin)
                fig.alpha_range = {*fig_amin, *fig_amax};
            if (fig_xmin.has_value() != fig_xmax.has_value())
                throw DomainError("--x-min and --x-max must be given together");
            if (fig_xmin)
                fig.x_range = {*fig_xmin, *fig_xmax};
            return cmd_figure(g, panel, fig);
        }
        throw DomainError("no subcommand selected");
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace thermoq
