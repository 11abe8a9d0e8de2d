#include "displab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "displab/error.hpp"

namespace displab {

double default_alpha_schedule(double h) { return 0.5 + 1.0 / std::sqrt(std::abs(std::log(h))); }

SchemeSymbol SchemeSymbol::exact(double h) { return {SchemeKind::Exact, h}; }
SchemeSymbol SchemeSymbol::fd3(double h) { return {SchemeKind::Conservative3pt, h}; }
SchemeSymbol SchemeSymbol::twogrid(double h) { return {SchemeKind::TwoGridCarrier, h}; }

SchemeSymbol SchemeSymbol::filtered(double h, double gamma) {
    if (!(gamma > 0.0 && gamma < 0.5)) throw DomainError("filter fraction gamma must lie in (0, 1/2)");
    SchemeSymbol s{SchemeKind::FourierFiltered, h};
    s.gamma = gamma;
    return s;
}

SchemeSymbol SchemeSymbol::viscous(double h, AlphaSchedule alpha) {
    SchemeSymbol s{SchemeKind::Viscous, h};
    s.alpha = std::move(alpha);
    return s;
}

SchemeSymbol SchemeSymbol::hyperviscous(double h, int m) {
    if (m < 2) throw DomainError("higher viscous order m must be >= 2");
    SchemeSymbol s{SchemeKind::HigherViscous, h};
    s.m = m;
    return s;
}

std::string SchemeSymbol::id() const {
    std::ostringstream os;
    switch (kind) {
        case SchemeKind::Exact: return "exact";
        case SchemeKind::Conservative3pt: return "fd3";
        case SchemeKind::FourierFiltered: os << "filtered:" << gamma; return os.str();
        case SchemeKind::Viscous: return "viscous";
        case SchemeKind::HigherViscous: return "hyperviscous:" + std::to_string(m);
        case SchemeKind::TwoGridCarrier: return "twogrid";
    }
    return "?";
}

bool SchemeSymbol::conservative() const {
    return kind != SchemeKind::Viscous && kind != SchemeKind::HigherViscous;
}

SchemeSymbol SchemeSymbol::with_step(double new_h) const {
    SchemeSymbol s = *this;
    s.h = new_h;
    return s;
}

SchemeSymbol parse_scheme(const std::string& id, double h) {
    const auto colon = id.find(':');
    const std::string head = id.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);
    auto number = [&](double fallback) {
        if (arg.empty()) return fallback;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != arg.size()) throw DomainError("bad scheme parameter in '" + id + "'");
        return v;
    };
    if (head == "exact") return SchemeSymbol::exact(h);
    if (head == "fd3") return SchemeSymbol::fd3(h);
    if (head == "filtered") return SchemeSymbol::filtered(h, number(0.25));
    if (head == "viscous") return SchemeSymbol::viscous(h);
    if (head == "hyperviscous") {
        const double m = number(2.0);
        if (m != std::floor(m)) throw DomainError("hyperviscous order must be an integer");
        return SchemeSymbol::hyperviscous(h, static_cast<int>(m));
    }
    if (head == "twogrid") return SchemeSymbol::twogrid(h);
    throw DomainError("unknown scheme '" + id + "'");
}

double fd3_magnitude(double xi, double h) {
    const double s = std::sin(0.5 * xi * h);
    return 4.0 / (h * h) * s * s;
}

double viscous_coefficient(const SchemeSymbol& s) {
    const double al = s.alpha(s.h);
    if (!(al > 0.5)) throw DomainError("viscous schedule needs alpha(h) > 1/2");
    return std::pow(s.h, 2.0 - 1.0 / al);
}

namespace {

cplx symbol_value(const SchemeSymbol& s, double xi) {
    const double h = s.h;
    switch (s.kind) {
        case SchemeKind::Exact: return {-xi * xi, 0.0};
        case SchemeKind::Conservative3pt:
        case SchemeKind::TwoGridCarrier: return {-fd3_magnitude(xi, h), 0.0};
        case SchemeKind::FourierFiltered:
            return std::abs(xi) <= s.gamma * std::numbers::pi / h ? cplx(-fd3_magnitude(xi, h), 0.0) : cplx(0.0);
        case SchemeKind::Viscous: {
            const double S = fd3_magnitude(xi, h);
            return {-S, -viscous_coefficient(s) * S};
        }
        case SchemeKind::HigherViscous: {
            const double S = fd3_magnitude(xi, h);
            return {-S, -std::pow(h, 2.0 * (s.m - 1)) * std::pow(S, s.m)};
        }
    }
    return {};
}

}  // namespace

cplx eval_symbol(const SchemeSymbol& s, double xi) {
    if (std::abs(xi) > std::numbers::pi / s.h * (1.0 + 1e-12))
        throw DomainError("frequency outside [-pi/h, pi/h]");
    return symbol_value(s, xi);
}

cplx semigroup_generator(const SchemeSymbol& s, double xi) {
    const cplx a = eval_symbol(s, xi);
    return {a.imag(), a.real()};
}

cvec semigroup_generator(const SchemeSymbol& s, const GridSpec& g) {
    if (std::abs(g.h() - s.h) > 1e-12 * s.h) throw DomainError("symbol step does not match grid");
    cvec out(g.n());
    for (std::size_t k = 0; k < g.n(); ++k) out[k] = semigroup_generator(s, g.frequency(k));
    return out;
}

double SymbolBound::at(double xi) const {
    double v = 0.0;
    const double ax = std::abs(xi);
    for (const auto& t : terms) v += t.mu * std::pow(ax, t.k);
    return v;
}

double filtered_bound_constant(double gamma, double h, int samples) {
    // Cached: c(gamma) is scale free, the h argument only fixes the sampling band.
    static std::mutex mu;
    static std::map<std::pair<double, int>, double> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({gamma, samples});
        if (it != cache.end()) return it->second;
    }
    const SchemeSymbol s = SchemeSymbol::filtered(h, gamma);
    const double top = std::numbers::pi / h;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double xi = -top + 2.0 * top * i / (samples - 1);
        if (xi == 0.0) continue;
        const double err = std::abs(symbol_value(s, xi) + xi * xi);
        worst = std::max(worst, err / (h * h * std::pow(xi, 4)));
    }
    std::lock_guard lock(mu);
    cache[{gamma, samples}] = worst;
    return worst;
}

SymbolBound declared_bound(const SchemeSymbol& s) {
    const double h = s.h;
    switch (s.kind) {
        case SchemeKind::Exact: throw DomainError("the exact symbol has no error bound");
        case SchemeKind::TwoGridCarrier:
        case SchemeKind::Conservative3pt: return {{{4.0, h * h}}};
        case SchemeKind::FourierFiltered: return {{{4.0, filtered_bound_constant(s.gamma, h) * h * h}}};
        case SchemeKind::Viscous: return {{{4.0, h * h}, {2.0, viscous_coefficient(s)}}};
        case SchemeKind::HigherViscous: {
            const double mu2 = std::pow(h, 2.0 * (s.m - 1));
            if (s.m == 2) return {{{4.0, h * h + mu2}}};
            return {{{4.0, h * h}, {2.0 * s.m, mu2}}};
        }
    }
    return {};
}

double verify_bound(const SchemeSymbol& s, int samples) {
    if (samples < 2) throw DomainError("verify_bound needs at least 2 samples");
    if (s.kind == SchemeKind::Exact) return 0.0;
    const SymbolBound b = declared_bound(s);
    const double top = std::numbers::pi / s.h;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double xi = -top + 2.0 * top * i / (samples - 1);
        const double denom = b.at(xi);
        if (denom == 0.0) continue;
        worst = std::max(worst, std::abs(symbol_value(s, xi) + xi * xi) / denom);
    }
    return worst;
}

double epsilon_rate(const SymbolBound& b, double s) {
    if (s < 0.0) throw DomainError("epsilon_rate needs s >= 0");
    double v = 0.0;
    for (const auto& t : b.terms) v += std::pow(t.mu, std::min(s / t.k, 1.0));
    return v;
}

}  // namespace displab
