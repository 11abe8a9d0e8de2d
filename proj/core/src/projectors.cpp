#include "displab/projectors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <cmath>
#include <numbers>

#include "displab/error.hpp"
#include "displab/fourier.hpp"

namespace displab {

using std::numbers::pi;

FieldState project_Th(const SpectralProfile& phi, const GridSpec& g) {
    require_l2(phi);
    SpectrumState c = SpectrumState::zeros(g);
    for (std::size_t k = 0; k < g.n(); ++k) c.coeffs[k] = phi.fourier(g.frequency(k));
    return inverse_dft(c);
}

namespace {

cvec periodized_closed_form(const SpectralProfile& phi, const GridSpec& g) {
    const double L = g.length();
    const double R = phi.support_radius;
    cvec v(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = g.node(j);
        if (!std::isfinite(R)) {
            v[j] = phi.space(x);
            continue;
        }
        const long lo = static_cast<long>(std::floor((-R - x) / L));
        const long hi = static_cast<long>(std::ceil((R - x) / L));
        cplx s = 0.0;
        for (long m = lo; m <= hi; ++m) s += phi.space(x + m * L);
        v[j] = s;
    }
    return v;
}

// Poisson summation: the periodization equals (1/L) sum_{k in Z} phi^(2 pi k/L) e^{i 2 pi k x/L},
// a finite sum for band-limited phi. Evaluated directly, independent of the FFT path.
cvec periodized_bandlimited(const SpectralProfile& phi, const GridSpec& g) {
    const double L = g.length();
    const double dxi = 2.0 * pi / L;
    const long kmax = static_cast<long>(std::ceil(*phi.band_limit / dxi));
    cvec v(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = g.node(j);
        cplx s = 0.0;
        for (long k = -kmax; k <= kmax; ++k) s += phi.fourier(k * dxi) * std::polar(1.0, k * dxi * x);
        v[j] = s / L;
    }
    return v;
}

// phi(x) = (1/pi) int_0^inf phi^(xi) cos(x xi) d xi for real even phi^.
cvec sampled_by_quadrature(const SpectralProfile& phi, const GridSpec& g) {
    boost::math::quadrature::ooura_fourier_cos<double> cos_integrator(1e-12);
    boost::math::quadrature::exp_sinh<double> at_origin;
    auto f = [&](double xi) { return phi.fourier(xi).real(); };
    cvec v(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = std::abs(g.node(j));
        double val = 0.0;
        if (x < 1e-14) {
            val = at_origin.integrate(f, 1e-12);
        } else {
            val = cos_integrator.integrate(f, x).first;
        }
        v[j] = val / pi;
    }
    return v;
}

}  // namespace

FieldState sample_Eh(const SpectralProfile& phi, const GridSpec& g) {
    // the Poisson sum is exact; an image sum of a slowly decaying closed form is not
    if (phi.band_limit) return FieldState(g, periodized_bandlimited(phi, g));
    if (phi.has_closed_form()) return FieldState(g, periodized_closed_form(phi, g));
    if (!(phi.regularity > 0.5))
        throw NotInSpaceError("pointwise sampling needs regularity s > 1/2 or a closed form; profile '" + phi.name +
                              "'");
    if (!phi.even_real) throw DomainError("quadrature sampling is implemented for real even spectra only");
    return FieldState(g, sampled_by_quadrature(phi, g));
}

TwoGridPair::TwoGridPair(const GridSpec& fine_grid)
    : coarse(fine_grid.h() * 4.0, fine_grid.n() / 4), fine(fine_grid) {}

TwoGridPair::TwoGridPair(const GridSpec& coarse_grid, const GridSpec& fine_grid) : coarse(coarse_grid), fine(fine_grid) {
    if (coarse.n() * 4 != fine.n() || std::abs(coarse.h() - 4.0 * fine.h()) > 1e-13 * coarse.h())
        throw DomainError("grids do not form a 4h/h pair");
}

double twogrid_multiplier(double theta) {
    cplx s = 0.0;
    for (int k = 0; k < 4; ++k) s += std::polar(1.0, k * theta);
    return std::norm(s / 4.0);
}

FieldState twogrid_interpolate(const FieldState& coarse, const GridSpec& fine) {
    TwoGridPair pair(coarse.grid, fine);
    const std::size_t nc = coarse.grid.n();
    cvec v(fine.n());
    for (std::size_t i = 0; i < nc; ++i) {
        const cplx a = coarse.values[i];
        const cplx b = coarse.values[(i + 1) % nc];
        for (int r = 0; r < 4; ++r) v[4 * i + r] = (1.0 - r / 4.0) * a + (r / 4.0) * b;
    }
    return FieldState(fine, std::move(v));
}

FieldState twogrid_interpolate_spectral(const FieldState& coarse, const GridSpec& fine) {
    TwoGridPair pair(coarse.grid, fine);
    const SpectrumState c = forward_dft(coarse);
    const long nc = static_cast<long>(coarse.grid.n());
    SpectrumState out = SpectrumState::zeros(fine);
    for (std::size_t k = 0; k < fine.n(); ++k) {
        const long kp = fine.signed_index(k);
        // periodic extension of the coarse spectrum: fold kp into [-nc/2, nc/2)
        long kc = ((kp + nc / 2) % nc + nc) % nc - nc / 2;
        const std::size_t idx = static_cast<std::size_t>(kc < 0 ? kc + nc : kc);
        out.coeffs[k] = twogrid_multiplier(fine.h() * fine.frequency(k)) * c.coeffs[idx];
    }
    return inverse_dft(out);
}

FieldState twogrid_adjoint(const FieldState& fine, const GridSpec& coarse) {
    TwoGridPair pair(coarse, fine.grid);
    const std::size_t nf = fine.grid.n();
    cvec v(coarse.n());
    for (std::size_t i = 0; i < coarse.n(); ++i) {
        cplx s = 0.0;
        for (int r = -3; r <= 3; ++r) {
            const std::size_t idx = (4 * i + nf - 3 + static_cast<std::size_t>(r + 3)) % nf;
            s += (1.0 - std::abs(r) / 4.0) * fine.values[idx];
        }
        v[i] = 0.25 * s;
    }
    return FieldState(coarse, std::move(v));
}

double lp_bump(double t) {
    t = std::abs(t);
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    auto f = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    const double a = f(2.0 - t);
    const double b = f(t - 1.0);
    return a / (a + b);
}

double lp_weight(int j, double xi) {
    if (j < 0) throw DomainError("Littlewood-Paley level must be >= 0");
    if (j == 0) return lp_bump(xi);
    return lp_bump(std::ldexp(xi, -j)) - lp_bump(std::ldexp(xi, -(j - 1)));
}

int lp_max_level(double h) { return static_cast<int>(std::ceil(std::log2(pi / h))) + 1; }

FieldState littlewood_paley(const FieldState& u, int j) {
    return apply_multiplier(u, [j](double xi) { return cplx(lp_weight(j, xi), 0.0); });
}

FieldState fourier_filter(const FieldState& u, double gamma) {
    const double cut = gamma * u.grid.nyquist();
    return apply_multiplier(u, [cut](double xi) { return cplx(std::abs(xi) <= cut ? 1.0 : 0.0, 0.0); });
}

}  // namespace displab
