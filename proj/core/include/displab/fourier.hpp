#pragma once

#include <functional>
#include <utility>

#include "displab/grid.hpp"

namespace displab {

// c_k = h sum_j e^{-i xi_k x_j} u_j, the periodic-sum version of the lattice transform.
SpectrumState forward_dft(const FieldState& u);

// u_j = (1/L) sum_k e^{i xi_k x_j} c_k, exact inverse of forward_dft.
FieldState inverse_dft(const SpectrumState& c);

// (||u||_{l2(hZ)}, ((1/L) sum_k |c_k|^2)^{1/2}); the second is the discrete form of
// (1/2pi int |u^|^2)^{1/2}.
std::pair<double, double> parseval_check(const FieldState& u);

// u -> F^{-1}[ m(xi_k) c_k ].
FieldState apply_multiplier(const FieldState& u, const std::function<cplx(double)>& m);
FieldState apply_multiplier(const FieldState& u, const cvec& m);

// Spectral truncation / zero padding onto a grid of the same length.
// Keeps the common band of signed indices; the Nyquist mode of the smaller grid is
// kept as the single mode -N/2.
FieldState resample_spectral(const FieldState& u, const GridSpec& target);
SpectrumState resample_spectrum(const SpectrumState& c, const GridSpec& target);

}  // namespace displab
