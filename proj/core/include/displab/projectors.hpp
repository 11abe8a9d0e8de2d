#pragma once

#include "displab/grid.hpp"
#include "displab/profile.hpp"

namespace displab {

// T_h phi: inverse DFT of the profile sampled on the grid's frequency set, i.e. the
// Riemann sum of (1/2pi) int_{-pi/h}^{pi/h} e^{i x_j xi} phi^(xi) d xi.
FieldState project_Th(const SpectralProfile& phi, const GridSpec& g);

// E_h phi: samples of the L-periodization of phi at the nodes. Uses the Poisson sum for
// band-limited profiles, the closed form (image sum), or Fourier quadrature for even real
// profiles of regularity s > 1/2.
FieldState sample_Eh(const SpectralProfile& phi, const GridSpec& g);

// Coarse grid (step 4h) and fine grid (step h) on the same period.
struct TwoGridPair {
    GridSpec coarse;
    GridSpec fine;

    explicit TwoGridPair(const GridSpec& fine_grid);
    TwoGridPair(const GridSpec& coarse_grid, const GridSpec& fine_grid);
};

// m(theta) = |(1/4) sum_{k=0}^{3} e^{ik theta}|^2; (Pi psi)^(xi) = m(h xi) psi~(xi).
double twogrid_multiplier(double theta);

// Piecewise-linear interpolation of coarse samples onto the fine nodes.
FieldState twogrid_interpolate(const FieldState& coarse, const GridSpec& fine);

// Same operator built on the Fourier side from the periodically extended coarse spectrum.
FieldState twogrid_interpolate_spectral(const FieldState& coarse, const GridSpec& fine);

// Adjoint for (.,.)_h and (.,.)_{4h}: (Pi* u)_i = (1/4) sum_{|r|<=3} (1 - |r|/4) u_{4i+r}.
FieldState twogrid_adjoint(const FieldState& fine, const GridSpec& coarse);

// eta_0: 1 on [0,1], 0 on [2,inf), smooth exp(-1/x) transition in between.
double lp_bump(double t);
// eta_j(xi) = eta_0(xi/2^j) - eta_0(xi/2^{j-1}) for j >= 1.
double lp_weight(int j, double xi);
// ceil(log2(pi/h)) + 1: every P_j with larger j vanishes on grid data.
int lp_max_level(double h);

FieldState littlewood_paley(const FieldState& u, int j);

// Sharp Fourier filter onto |xi| <= gamma pi/h.
FieldState fourier_filter(const FieldState& u, double gamma);

}  // namespace displab
