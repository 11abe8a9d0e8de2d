#include "displab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "displab/error.hpp"
#include "displab/projectors.hpp"
#include "displab/quadrature.hpp"

namespace displab {

Exponent Exponent::of(long n, long d) {
    if (n <= 0 || d <= 0) throw DomainError("exponent must be a positive ratio");
    const long g = std::gcd(n, d);
    return {n / g, d / g, false};
}

Exponent Exponent::parse(const std::string& text) {
    if (text == "inf" || text == "infty" || text == "oo") return infinity();
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) return of(std::stol(text.substr(0, slash)), std::stol(text.substr(slash + 1)));
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw DomainError("bad exponent '" + text + "'");
        // Up to three decimals: enough for every exponent the experiments use.
        const long d = 1000;
        const long n = std::lround(v * d);
        if (std::abs(v * d - static_cast<double>(n)) > 1e-9) throw DomainError("exponent '" + text + "' has too many digits");
        return of(n, d);
    } catch (const std::logic_error&) {
        throw DomainError("bad exponent '" + text + "'");
    }
}

double Exponent::value() const {
    return inf ? std::numeric_limits<double>::infinity() : static_cast<double>(num) / static_cast<double>(den);
}

std::string Exponent::str() const {
    if (inf) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool operator==(const Exponent& a, const Exponent& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.num == b.num && a.den == b.den;
}

bool is_admissible(const Exponent& q, const Exponent& r) {
    if (q.inf) return !r.inf && r.num == 2 * r.den;
    if (r.inf) return q.num == 4 * q.den;
    // q = a/b, r = c/d: b/a = (c - 2d)/(4c)  <=>  4bc = a(c - 2d)
    return 4 * q.den * r.num == q.num * (r.num - 2 * r.den);
}

double norm_lr(const cvec& values, double h, double r) {
    if (!(r >= 1.0)) throw DomainError("l^r norm needs r >= 1");
    if (std::isinf(r)) {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    if (r == 2.0) {
        for (const auto& v : values) s += std::norm(v);
        return std::sqrt(h * s);
    }
    for (const auto& v : values) s += std::pow(std::abs(v), r);
    return std::pow(h * s, 1.0 / r);
}

double norm_lr(const FieldState& u, double r) { return norm_lr(u.values, u.grid.h(), r); }
double norm_lr(const FieldState& u, const Exponent& r) { return norm_lr(u, r.value()); }

void SpaceTimeTrace::push(double t, FieldState u) {
    if (!times.empty()) {
        if (!(t > times.back())) throw DomainError("trace times must be strictly increasing");
        if (!u.grid.same_as(states.front().grid)) throw DomainError("trace states must share one grid");
    }
    times.push_back(t);
    states.push_back(std::move(u));
}

void TimeNormAccumulator::add(double t, double spatial_norm) {
    if (count_ > 0 && !(t > last_t_)) throw DomainError("time samples must be strictly increasing");
    if (q_.inf) {
        max_ = std::max(max_, spatial_norm);
    } else {
        const double f = std::pow(spatial_norm, q_.value());
        if (count_ > 0) integral_ += 0.5 * (t - last_t_) * (f + last_f_);
        last_f_ = f;
    }
    last_t_ = t;
    ++count_;
}

double TimeNormAccumulator::value() const {
    if (q_.inf) return max_;
    if (count_ < 2) throw DomainError("finite time exponent needs at least 2 samples");
    return std::pow(integral_, 1.0 / q_.value());
}

double norm_spacetime(const SpaceTimeTrace& tr, const Exponent& q, const Exponent& r) {
    TimeNormAccumulator acc(q);
    for (std::size_t i = 0; i < tr.size(); ++i) acc.add(tr.times[i], norm_lr(tr.states[i], r));
    return acc.value();
}

NormSelector parse_norm_selector(const std::string& id, double p) {
    if (id == "Lq0-lp2") {
        if (!(p > 0.0)) throw DomainError("Lq0-lp2 needs a nonlinearity power p > 0");
        std::ostringstream os;
        os << p;
        const Exponent e = Exponent::parse(os.str());  // p = a/b
        const long a = e.num, b = e.den;
        return {id, Exponent::of(4 * (a + 2 * b), a), Exponent::of(a + 2 * b, b)};
    }
    const auto dash = id.find("-l");
    if (id.size() < 4 || id[0] != 'L' || dash == std::string::npos) throw DomainError("bad norm selector '" + id + "'");
    return {id, Exponent::parse(id.substr(1, dash - 1)), Exponent::parse(id.substr(dash + 2))};
}

double norm_besov_discrete(const FieldState& u, double s, double p) {
    if (!(p > 1.0) || std::isinf(p)) throw DomainError("Besov exponent p must lie in (1, inf)");
    const int jmax = lp_max_level(u.grid.h());
    double head = 0.0;
    double tail = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        const double n = norm_lr(littlewood_paley(u, j), p);
        if (j == 0) {
            head = n;
        } else {
            const double w = std::pow(2.0, j * s) * n;
            tail += w * w;
        }
    }
    return head + std::sqrt(tail);
}

double norm_profile_sobolev(const SpectralProfile& phi, double s) {
    if (std::isfinite(phi.decay) && 2.0 * (phi.decay - s) <= 1.0)
        throw NotInSpaceError("profile '" + phi.name + "' is not in H^" + std::to_string(s));
    auto f = [&](double xi) {
        const double a = std::norm(phi.fourier(xi));
        return a == 0.0 ? 0.0 : std::pow(1.0 + xi * xi, s) * a;
    };
    const double scale = std::max(phi.spectral_scale, 1e-3);
    std::vector<double> breaks{scale, 8.0 * scale};
    if (phi.band_limit) breaks = {*phi.band_limit};
    const double tail = std::isfinite(phi.decay) ? 2.0 * (phi.decay - s) - 1.0 : 0.0;
    const QuadResult r = integrate_line(f, phi.center_frequency, breaks, 1e-12, tail);
    if (!std::isfinite(r.value) || r.error > 1e-8 * std::abs(r.value) + 1e-300)
        throw QuadratureError("Sobolev integral for '" + phi.name + "' did not converge");
    return std::sqrt(r.value / (2.0 * std::numbers::pi));
}

}  // namespace displab
