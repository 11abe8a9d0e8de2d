#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "displab/grid.hpp"

namespace displab {

// Continuous datum phi on R given by its transform phi^(xi) = int e^{-i x xi} phi(x) dx.
struct SpectralProfile {
    std::string name;
    std::function<cplx(double)> fourier;

    // |phi^(xi)| ~ |xi|^{-decay}; infinity for rapidly decaying spectra.
    double decay = std::numeric_limits<double>::infinity();
    // Declared regularity s: phi is claimed to lie in H^s.
    double regularity = std::numeric_limits<double>::infinity();

    // Where |phi^| is concentrated and on what scale; guides quadrature.
    double center_frequency = 0.0;
    double spectral_scale = 1.0;

    // Optional closed form phi(x) with |phi(x)| < 1e-17 for |x| > support_radius.
    std::function<cplx(double)> space;
    double support_radius = std::numeric_limits<double>::infinity();

    // phi^ vanishes for |xi| >= band_limit.
    std::optional<double> band_limit;

    // phi^ is real and even, so phi(x) = (1/pi) int_0^inf phi^(xi) cos(x xi) dxi.
    bool even_real = false;

    bool has_closed_form() const { return static_cast<bool>(space); }
};

// Rejects profiles that are not square integrable (decay <= 1/2).
void require_l2(const SpectralProfile& phi);

}  // namespace displab
