#include "displab/data_gen.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "displab/error.hpp"
#include "displab/norms.hpp"

namespace displab {

using std::numbers::pi;

SpectralProfile make_rough_profile(double s, double eps) {
    if (s < 0.0) throw DomainError("rough profile needs s >= 0");
    if (!(eps > 0.0)) throw DomainError("rough profile needs eps > 0");
    const double a = s + 0.5 + eps;
    SpectralProfile p;
    std::ostringstream os;
    os << "rough:" << s << "," << eps;
    p.name = os.str();
    p.fourier = [a](double xi) { return cplx(std::pow(1.0 + xi * xi, -0.5 * a), 0.0); };
    p.decay = a;
    p.regularity = s;
    p.even_real = true;
    if (s > 0.5) {
        // (1/2pi) int e^{ix xi} (1+xi^2)^{-a/2} d xi = (|x|/2)^nu K_nu(|x|) / (sqrt(pi) Gamma(a/2))
        const double nu = 0.5 * (a - 1.0);
        const double norm = 1.0 / (std::sqrt(pi) * std::tgamma(0.5 * a));
        const double at_zero = std::tgamma(nu) * 0.5 * norm;
        p.space = [nu, norm, at_zero](double x) {
            const double r = std::abs(x);
            if (r < 1e-12) return cplx(at_zero, 0.0);
            return cplx(norm * std::pow(0.5 * r, nu) * std::cyl_bessel_k(nu, r), 0.0);
        };
        p.support_radius = 50.0 + 2.0 * nu;
    }
    return p;
}

SpectralProfile make_gaussian(double sigma) {
    if (!(sigma > 0.0)) throw DomainError("gaussian width must be positive");
    SpectralProfile p;
    std::ostringstream os;
    os << "gaussian:" << sigma;
    p.name = os.str();
    p.fourier = [sigma](double xi) {
        return cplx(sigma * std::sqrt(pi) * std::exp(-0.25 * sigma * sigma * xi * xi), 0.0);
    };
    p.space = [sigma](double x) { return cplx(std::exp(-x * x / (sigma * sigma)), 0.0); };
    p.support_radius = 6.5 * sigma;
    p.spectral_scale = 2.0 / sigma;
    p.even_real = true;
    return p;
}

SpectralProfile make_packet_profile(double xi0, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("packet width must be positive");
    SpectralProfile p;
    std::ostringstream os;
    os << "packet:" << xi0 << "," << sigma;
    p.name = os.str();
    p.fourier = [xi0, sigma](double xi) {
        const double d = xi - xi0;
        return cplx(sigma * std::sqrt(2.0 * pi) * std::exp(-0.5 * sigma * sigma * d * d), 0.0);
    };
    p.space = [xi0, sigma](double x) {
        return std::exp(-0.5 * x * x / (sigma * sigma)) * std::polar(1.0, xi0 * x);
    };
    p.support_radius = 9.0 * sigma;
    p.center_frequency = xi0;
    p.spectral_scale = 1.0 / sigma;
    p.even_real = xi0 == 0.0;
    return p;
}

SpectralProfile make_bandlimited(double band) {
    if (!(band > 0.0)) throw DomainError("band limit must be positive");
    SpectralProfile p;
    std::ostringstream os;
    os << "bandlimited:" << band;
    p.name = os.str();
    p.fourier = [band](double xi) { return cplx(std::max(0.0, 1.0 - std::abs(xi) / band), 0.0); };
    p.space = [band](double x) {
        const double y = 0.5 * band * x;
        const double sinc = std::abs(y) < 1e-8 ? 1.0 - y * y / 6.0 : std::sin(y) / y;
        return cplx(band / (2.0 * pi) * sinc * sinc, 0.0);
    };
    p.band_limit = band;
    p.spectral_scale = band;
    p.even_real = true;
    return p;
}

FieldState make_packet(double xi0, double sigma, const GridSpec& g) {
    if (std::abs(xi0) > g.nyquist() * (1.0 + 1e-12)) throw DomainError("packet carrier outside [-pi/h, pi/h]");
    if (!(sigma > 0.0)) throw DomainError("packet width must be positive");
    cvec v(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = g.node(j);
        v[j] = std::exp(-0.5 * x * x / (sigma * sigma)) * std::polar(1.0, xi0 * x);
    }
    FieldState u(g, std::move(v));
    const double n2 = norm_lr(u, 2.0);
    for (auto& z : u.values) z /= n2;
    return u;
}

namespace {

std::vector<double> parse_numbers(const std::string& spec, const std::string& args) {
    std::vector<double> out;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw DomainError("bad number '" + item + "' in profile '" + spec + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

SpectralProfile parse_profile(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::vector<double> a =
        colon == std::string::npos ? std::vector<double>{} : parse_numbers(spec, spec.substr(colon + 1));
    auto arg = [&](std::size_t i, double fallback) { return i < a.size() ? a[i] : fallback; };
    if (head == "gaussian") return make_gaussian(arg(0, 1.0));
    if (head == "rough") {
        if (a.empty()) throw DomainError("profile 'rough' needs s");
        return make_rough_profile(a[0], arg(1, 0.05));
    }
    if (head == "packet") {
        if (a.empty()) throw DomainError("profile 'packet' needs xi0");
        return make_packet_profile(a[0], arg(1, 1.0));
    }
    if (head == "bandlimited") return make_bandlimited(arg(0, 1.0));
    throw DomainError("unknown profile '" + spec + "'");
}

}  // namespace displab
