#include "spiroplanck/radiometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spiroplanck/error.hpp"

namespace spiroplanck::radiometry {

void PhysicalConstants::validate() const {
    if (!(h > 0.0) || !(c > 0.0) || !(k > 0.0) || !std::isfinite(h) || !std::isfinite(c) ||
        !std::isfinite(k)) {
        throw InvalidArgument("radiometry: physical constants must be finite and > 0");
    }
}

std::string_view to_string(SpectralForm form) {
    switch (form) {
        case SpectralForm::radiance:
            return "radiance";
        case SpectralForm::energy_density:
            return "energy-density";
    }
    return "radiance";
}

SpectralForm parse_form(std::string_view text) {
    if (text == "radiance") {
        return SpectralForm::radiance;
    }
    if (text == "energy-density") {
        return SpectralForm::energy_density;
    }
    throw InvalidArgument("radiometry: unknown form '" + std::string(text) +
                          "' (expected radiance or energy-density)");
}

double spectral_radiance(double wavelength, double temperature, const PhysicalConstants& constants,
                         SpectralForm form) {
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
        throw InvalidArgument("spectral_radiance: wavelength must be finite and > 0");
    }
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw InvalidArgument("spectral_radiance: temperature must be finite and > 0");
    }
    const double h = constants.h;
    const double c = constants.c;
    const double x = h * c / (wavelength * constants.k * temperature);
    if (x > kUnderflowExponent) {
        return 0.0;
    }
    const double denom = x < kSeriesExponent ? x * (1.0 + x / 2.0) : std::exp(x) - 1.0;
    const double prefactor = form == SpectralForm::radiance
                                 ? 2.0 * std::numbers::pi * h * c * c
                                 : 8.0 * std::numbers::pi * h * c;
    // lambda^5 overflows for very long wavelengths before the ratio does; divide stepwise.
    return prefactor / std::pow(wavelength, 5) / denom;
}

std::vector<double> wavelength_grid(double min, double step, double max) {
    if (!(min > 0.0) || !(step > 0.0) || !(max >= min) || !std::isfinite(max)) {
        throw InvalidArgument("wavelength grid: need 0 < min <= max and step > 0");
    }
    const double span = (max - min) / step;
    const auto count = static_cast<std::size_t>(std::floor(span * (1.0 + 1e-9) + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back(min + static_cast<double>(i) * step);
    }
    return grid;
}

std::vector<double> listing_grid() { return wavelength_grid(1e-9, 10e-9, 3000e-9); }

void SpectralParams::validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw InvalidArgument("spectral: temperature must be finite and > 0");
    }
    constants.validate();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) {
            throw InvalidArgument("spectral: grid wavelengths must be > 0");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InvalidArgument("spectral: grid must be strictly increasing");
        }
    }
}

std::vector<SpectralSample> spectral_curve(const SpectralParams& params) {
    params.validate();
    std::vector<SpectralSample> out;
    out.reserve(params.grid.size());
    for (double wavelength : params.grid) {
        out.push_back({wavelength, spectral_radiance(wavelength, params.temperature,
                                                     params.constants, params.form)});
    }
    return out;
}

double wien_constant() {
    // f(4) < 0 < f(6); the trivial root at x = 0 lies outside the bracket.
    auto f = [](double x) { return (x - 5.0) * std::exp(x) + 5.0; };
    double lo = 4.0;
    double hi = 6.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double wien_peak(double temperature, const PhysicalConstants& constants) {
    if (!(temperature > 0.0)) {
        throw InvalidArgument("wien_peak: temperature must be > 0");
    }
    static const double x_star = wien_constant();
    return constants.h * constants.c / (constants.k * temperature * x_star);
}

}  // namespace spiroplanck::radiometry
