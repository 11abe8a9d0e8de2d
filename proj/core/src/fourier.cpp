#include "displab/fourier.hpp"

#include <cmath>

#include "displab/error.hpp"
#include "displab/fft.hpp"

namespace displab {
namespace {

// e^{-i xi_k x_0} with x_0 = -L/2 equals (-1)^{k'}.
double origin_sign(long signed_k) { return (signed_k & 1) ? -1.0 : 1.0; }

}  // namespace

SpectrumState forward_dft(const FieldState& u) {
    const GridSpec& g = u.grid;
    cvec c = u.values;
    fft::forward(c);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= g.h() * origin_sign(g.signed_index(k));
    return SpectrumState(g, std::move(c));
}

FieldState inverse_dft(const SpectrumState& c) {
    const GridSpec& g = c.grid;
    cvec u(c.coeffs.size());
    const double inv_len = 1.0 / g.length();
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = c.coeffs[k] * (inv_len * origin_sign(g.signed_index(k)));
    fft::backward(u);
    return FieldState(g, std::move(u));
}

std::pair<double, double> parseval_check(const FieldState& u) {
    double phys = 0.0;
    for (const auto& v : u.values) phys += std::norm(v);
    phys = std::sqrt(u.grid.h() * phys);
    const SpectrumState c = forward_dft(u);
    double spec = 0.0;
    for (const auto& v : c.coeffs) spec += std::norm(v);
    spec = std::sqrt(spec / u.grid.length());
    return {phys, spec};
}

FieldState apply_multiplier(const FieldState& u, const std::function<cplx(double)>& m) {
    SpectrumState c = forward_dft(u);
    for (std::size_t k = 0; k < c.coeffs.size(); ++k) c.coeffs[k] *= m(c.grid.frequency(k));
    return inverse_dft(c);
}

FieldState apply_multiplier(const FieldState& u, const cvec& m) {
    if (m.size() != u.values.size()) throw DomainError("multiplier size does not match grid");
    SpectrumState c = forward_dft(u);
    for (std::size_t k = 0; k < c.coeffs.size(); ++k) c.coeffs[k] *= m[k];
    return inverse_dft(c);
}

SpectrumState resample_spectrum(const SpectrumState& c, const GridSpec& target) {
    const GridSpec& src = c.grid;
    if (std::abs(src.length() - target.length()) > 1e-12 * src.length())
        throw DomainError("spectral resampling needs equal domain lengths");
    cvec out(target.n());
    const long half = static_cast<long>(std::min(src.n(), target.n()) / 2);
    const long ns = static_cast<long>(src.n());
    const long nt = static_cast<long>(target.n());
    for (long kp = -half; kp < half; ++kp) {
        const std::size_t ks = static_cast<std::size_t>(kp < 0 ? kp + ns : kp);
        const std::size_t kt = static_cast<std::size_t>(kp < 0 ? kp + nt : kp);
        out[kt] = c.coeffs[ks];
    }
    return SpectrumState(target, std::move(out));
}

FieldState resample_spectral(const FieldState& u, const GridSpec& target) {
    return inverse_dft(resample_spectrum(forward_dft(u), target));
}

}  // namespace displab
