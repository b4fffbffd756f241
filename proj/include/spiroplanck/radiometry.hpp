#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace spiroplanck::radiometry {

struct PhysicalConstants {
    double h = 6.626e-34;  ///< Planck constant, J s
    double c = 3e8;        ///< speed of light, m/s
    double k = 1.38e-23;   ///< Boltzmann constant, J/K

    void validate() const;
};

/// Rounded constants quoted next to the radiance formula (the default).
inline constexpr PhysicalConstants kProseConstants{6.626e-34, 3e8, 1.38e-23};
/// Constants used by the reference plotting script.
inline constexpr PhysicalConstants kListingConstants{6.6261e-34, 2.9979e8, 1.3807e-23};

enum class SpectralForm {
    radiance,        ///< 2 pi h c^2 / (lambda^5 (e^x - 1)), W m^-3
    energy_density,  ///< 8 pi h c / (lambda^5 (e^x - 1))
};

std::string_view to_string(SpectralForm form);
/// Accepts "radiance" and "energy-density". Throws InvalidArgument otherwise.
SpectralForm parse_form(std::string_view text);

/// x = hc / (lambda k T) above which the radiance is reported as exactly 0.
inline constexpr double kUnderflowExponent = 700.0;
/// Below this x, e^x - 1 is replaced by x (1 + x / 2).
inline constexpr double kSeriesExponent = 1e-4;

/// Planck's law at one wavelength (meters) and temperature (kelvin).
/// Rejects wavelength <= 0 and temperature <= 0.
double spectral_radiance(double wavelength, double temperature,
                         const PhysicalConstants& constants = kProseConstants,
                         SpectralForm form = SpectralForm::radiance);

/// Wavelength grid min, min + step, ... while <= max (plus a 1e-9 relative
/// slack so 1e-9:10e-9:3000e-9 yields 300 points).
std::vector<double> wavelength_grid(double min, double step, double max);

/// The plotting script's grid: 1 nm to 3000 nm in 10 nm steps.
std::vector<double> listing_grid();

struct SpectralParams {
    double temperature = 6000.0;
    std::vector<double> grid;
    PhysicalConstants constants = kProseConstants;
    SpectralForm form = SpectralForm::radiance;

    /// T > 0 and grid strictly increasing and positive.
    void validate() const;
};

struct SpectralSample {
    double wavelength = 0.0;
    double value = 0.0;
};

std::vector<SpectralSample> spectral_curve(const SpectralParams& params);

/// Root of (x - 5) e^x + 5 = 0 on (4, 6), found by bisection to 1e-12.
double wien_constant();

/// hc / (k T x*): wavelength of maximum radiance.
double wien_peak(double temperature, const PhysicalConstants& constants = kProseConstants);

}  // namespace spiroplanck::radiometry
