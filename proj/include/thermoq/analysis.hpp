#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thermoq/numerics.hpp"
#include "thermoq/wavefunctions.hpp"

namespace thermoq {

// How overlap integrands pick the expansion parameter: SharedAlpha rescales
// both modes with alpha of the second index (the convention used by the
// closed-form identities); PerMode gives each mode its own alpha.
enum class AlphaMode { SharedAlpha, PerMode };

// Integration window. Box overlaps use Symmetric ([-L/2, L/2], centered
// modes: cosine for odd n, sine for even n) or Physical ([0, L], sine
// modes anchored at the walls). Oscillator overlaps use FullLine.
enum class OverlapDomain { Symmetric, Physical, FullLine };

struct OverlapConvention {
    AlphaMode mode = AlphaMode::PerMode;
    OverlapDomain domain = OverlapDomain::Symmetric;
};

// Closed-form probability pushed outside the box mode by the thermal
// rescaling k -> k(1 + alpha):
//   Symmetric: sin(n pi alpha) / (n pi (1 + alpha))
//   Physical:  sin(2 n pi alpha) / (2 n pi (1 + alpha))
double residual_probability(int n, double alpha,
                            OverlapDomain domain = OverlapDomain::Symmetric);

// The same residual as 1 - integral of |psi_n|^2 by adaptive quadrature,
// with alpha supplied directly and k = (n pi / L)(1 + alpha).
double residual_quadrature(const Box& box, int n, double alpha, OverlapDomain domain,
                           const QuadratureSettings& settings = {});

// Residual at a thermal point: alpha = E_p(T) / (2 E_n(0)).
double residual_at(const Box& box, int n, const ThermalPoint& tp,
                   OverlapDomain domain = OverlapDomain::Symmetric,
                   const QuadratureSettings& settings = {},
                   const UnitsConfig& units = {});

// Overlap <psi_m | psi_n> of thermally rescaled box modes under the chosen
// convention, by adaptive quadrature.
double box_overlap(const Box& box, int m, int n, const ThermalPoint& tp,
                   const OverlapConvention& conv, const QuadratureSettings& settings = {},
                   const UnitsConfig& units = {});

// Overlap of oscillator modes. PerMode uses the exact shifted-frequency
// modes; SharedAlpha uses the literal first-order integrand (both modes at
// the common rescaled length x0 (1 - alpha_n) with the expanded prefactor
// (1 + alpha_n/2)^2). Domain must be FullLine.
double osc_overlap(const Oscillator& osc, int m, int n, const ThermalPoint& tp,
                   const OverlapConvention& conv, const QuadratureSettings& settings = {},
                   const UnitsConfig& units = {});

// Closed form of the shared-scale diagonal overlap with the prefactor
// expanded to first order:
//   (n!/m! 2^{n-m})^{1/2} (1 + alpha/2)^2 (1 - alpha) delta_mn
// For m = n this equals 1 - (3/4) alpha^2 - alpha^3 / 4 identically.
double expanded_overlap_factor(int m, int n, double alpha);

// The same overlap evaluated by quadrature of the literal rescaled
// integrand, normalization taken at the unshifted length x0.
double expanded_overlap_quadrature(int m, int n, double alpha, double x0 = 1.0,
                                   const QuadratureSettings& settings = {});

// One labelled table of equally long numeric columns plus string metadata.
struct CurveTable {
    std::string label;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;
    std::map<std::string, std::string> meta;

    std::size_t n_rows() const;
    void validate() const; // DomainError on ragged or unnamed columns
};

// Parameters for the built-in figure presets. Empty vectors / unset
// optionals fall back to per-panel defaults listed in figure_curves.
struct FigureParams {
    int samples = 400;
    double mass = 1.0;
    int n_states = 10;
    std::optional<double> box_length;                     // panel 2a (default 3)
    std::vector<double> box_lengths;                      // panel 2b (default 1..5)
    std::vector<double> temperatures;                     // panels 2a/5a/5b (defaults), 7 (required)
    std::vector<int> modes;                               // panels 2a/3/7
    std::vector<double> wavenumbers;                      // panels 5a/5b (default {1,2})
    std::vector<double> omegas;                           // panel 6 (default {0.5,1,2,4,8})
    std::optional<double> omega;                          // panel 7 (required)
    std::optional<std::pair<double, double>> t_range;     // panels 2b/4/6
    std::optional<std::pair<double, double>> alpha_range; // panel 3
    std::optional<std::pair<double, double>> x_range;     // panels 2a/5a/5b/7
    UnitsConfig units{};
    QuadratureSettings quadrature{};
};

// Deterministic data behind the figure presets "2a", "2b", "3", "4", "5a",
// "5b", "6", "7". Identical parameters produce bit-identical tables.
// DomainError on an unknown id or missing required parameters.
std::vector<CurveTable> figure_curves(const std::string& panel,
                                      const FigureParams& params = {});

// Ids accepted by figure_curves, in emission order.
const std::vector<std::string>& figure_panels();

} // namespace thermoq
