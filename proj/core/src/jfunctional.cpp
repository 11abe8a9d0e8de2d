#include "displab/jfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "displab/data_gen.hpp"
#include "displab/error.hpp"
#include "displab/rate_fit.hpp"

namespace displab {

JProblem::JProblem(SpectralProfile phi_, double h_, double s_)
    : JProblem(std::move(phi_), h_, s_, nullptr) {}

JProblem::JProblem(SpectralProfile phi_, double h_, double s_, std::shared_ptr<const SpectralMeasure> measure_)
    : phi(std::move(phi_)), h(h_), s(s_), measure(std::move(measure_)) {
    if (!(h > 0.0 && h < 1.0)) throw DomainError("penalty parameter h must lie in (0, 1)");
    if (s < 0.0) throw DomainError("declared regularity must be >= 0");
    if (!measure) measure = std::make_shared<ContinuousMeasure>(phi.center_frequency);
}

namespace {

double weight_sq(const JProblem& prob, double xi) { return std::norm(prob.phi.fourier(xi)); }

// Scale where 1 + y(1+xi^2) turns over.
double hint_for(double y) { return y > 0.0 ? 1.0 / std::sqrt(y) : 1.0; }

// w/(1 + y w) with w = 1 + xi^2, finite for every xi.
double damped(double xi, double y) { return 1.0 / (1.0 / (1.0 + xi * xi) + y); }

double F_power(const JProblem& prob, double y, int power) {
    return prob.measure->integrate(
        [&](double xi) {
            const double q = damped(xi, y);
            const double tail = power == 2 ? q : 1.0 / (1.0 + y * (1.0 + xi * xi));
            const double v = weight_sq(prob, xi);
            return v == 0.0 ? 0.0 : q * tail * v;
        },
        hint_for(y));
}

}  // namespace

double ch_rhs(const JProblem& prob, double y) { return F_power(prob, y, 1); }

ChSolution solve_ch(const JProblem& prob) {
    const double logh = std::abs(std::log(prob.h));
    auto G = [&](double x) { return x - ch_rhs(prob, prob.h * std::exp(x)); };
    double lo = 0.0;
    double hi = 2.0 * logh + 10.0;
    double glo = G(lo);
    double ghi = G(hi);
    ChSolution out;
    if (glo >= 0.0) {
        // phi = 0 (or numerically zero): the root is x = 0
        out.bracket_lo = out.bracket_hi = 0.0;
        out.g_lo = out.g_hi = glo;
    } else {
        if (ghi <= 0.0) throw QuadratureError("c_h bracket [0, 2|log h| + 10] does not contain the root");
        int it = 0;
        while (it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            const double gm = G(mid);
            if (gm <= 0.0) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
                ghi = gm;
            }
            ++it;
        }
        out.iterations = it;
        out.bracket_lo = lo;
        out.bracket_hi = hi;
        out.g_lo = glo;
        out.g_hi = ghi;
    }
    out.x = 0.5 * (out.bracket_lo + out.bracket_hi);
    out.c = std::sqrt(out.x);
    out.residual = std::abs(out.c - std::sqrt(ch_rhs(prob, prob.h * std::exp(out.x))));
    return out;
}

double evaluate_J(const JProblem& prob, const std::function<double(double)>& m, double hint) {
    const double data = prob.measure->integrate(
        [&](double xi) {
            const double d = 1.0 - m(xi);
            return d * d * weight_sq(prob, xi);
        },
        hint);
    const double h1 = prob.measure->integrate(
        [&](double xi) {
            const double g = m(xi);
            const double v = weight_sq(prob, xi);
            return v == 0.0 || g == 0.0 ? 0.0 : ((1.0 + xi * xi) * g) * g * v;
        },
        hint);
    return 0.5 * data + 0.5 * prob.h * std::exp(h1);
}

double J_on_family(const JProblem& prob, double X) {
    const double y = prob.h * std::exp(X);
    return evaluate_J(prob, [y](double xi) { return 1.0 / (1.0 + y * (1.0 + xi * xi)); }, hint_for(y));
}

MinJResult min_J(const JProblem& prob) {
    MinJResult r;
    r.ch = solve_ch(prob);
    const double y = prob.h * std::exp(r.ch.x);
    // phi - g_h = y (I - Delta) g_h and (h/2) e^{c^2} = y/2
    r.value = 0.5 * (y * y * F_power(prob, y, 2) + y);
    r.direct = J_on_family(prob, r.ch.x);
    return r;
}

BruteForceResult brute_force_min_J(const JProblem& prob, double x_max, double resolution) {
    BruteForceResult best{0.0, std::numeric_limits<double>::infinity()};
    const auto n = static_cast<long>(std::floor(x_max / resolution + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double X = static_cast<double>(i) * resolution;
        const double v = J_on_family(prob, X);
        if (v < best.value) best = {X, v};
    }
    return best;
}

double q_root(double h, double beta, double c) {
    if (!(h > 0.0) || !(beta > 0.0) || !(c > 0.0)) throw DomainError("q_h needs h, beta, c > 0");
    // q_h is increasing on x > 0 with q_h(0+) = -c
    auto q = [&](double x) { return std::log(h) + beta * std::log(x) + x - std::log(c); };
    double lo = std::numeric_limits<double>::min();
    double hi = std::abs(std::log(h)) + std::abs(std::log(c)) + 1.0;
    while (q(hi) <= 0.0) hi *= 2.0;
    for (int it = 0; it < 300 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (q(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

LogRateReport log_rate_study(double s, double eps, const std::vector<double>& h_list) {
    if (!(s > 0.0 && s < 0.5)) throw DomainError("log-rate study needs s in (0, 1/2)");
    LogRateReport rep;
    const SpectralProfile phi = make_rough_profile(s, eps);
    std::vector<double> logs;
    std::vector<double> band;
    for (double h : h_list) {
        const MinJResult r = min_J(JProblem(phi, h, s));
        rep.h_values.push_back(h);
        rep.min_j.push_back(r.value);
        rep.c_h.push_back(r.ch.c);
        const double lg = std::abs(std::log(h));
        logs.push_back(lg);
        band.push_back(r.value * std::pow(lg, s / (1.0 - s)));
    }
    const LineFit fit = fit_line_loglog(logs, rep.min_j);
    rep.alpha = -fit.slope;
    rep.r_squared = fit.r_squared;
    rep.band_ratio = *std::max_element(band.begin(), band.end()) / *std::min_element(band.begin(), band.end());
    return rep;
}

}  // namespace displab
