#pragma once

#include <string>

#include "displab/grid.hpp"
#include "displab/profile.hpp"

namespace displab {

// phi^(xi) = (1 + xi^2)^{-(s + 1/2 + eps)/2}; in H^{s'} exactly for s' < s + eps.
// A closed form (modified Bessel function) is attached only when s > 1/2.
SpectralProfile make_rough_profile(double s, double eps);

// phi(x) = exp(-x^2/sigma^2).
SpectralProfile make_gaussian(double sigma);

// phi(x) = exp(-x^2/(2 sigma^2)) exp(i xi0 x).
SpectralProfile make_packet_profile(double xi0, double sigma);

// phi^(xi) = (1 - |xi|/K)_+, phi(x) = (K/2pi) sinc^2(K x / 2).
SpectralProfile make_bandlimited(double band);

// Samples of the packet on g (centered at x = 0), normalized to unit l2(hZ) norm.
FieldState make_packet(double xi0, double sigma, const GridSpec& g);

// "gaussian:sigma", "rough:s,eps", "packet:xi0,sigma", "bandlimited:K".
SpectralProfile parse_profile(const std::string& spec);

}  // namespace displab
