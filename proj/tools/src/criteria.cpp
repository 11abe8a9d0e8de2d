#include "displab/tools/criteria.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <random>

#include "displab/data_gen.hpp"
#include "displab/experiments.hpp"
#include "displab/fourier.hpp"
#include "displab/jfunctional.hpp"
#include "displab/norms.hpp"
#include "displab/projectors.hpp"
#include "displab/propagators.hpp"
#include "displab/symbols.hpp"

namespace displab::criteria {
namespace {

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

cvec random_values(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> nd;
    cvec v(n);
    for (auto& z : v) z = {nd(rng), nd(rng)};
    return v;
}

double rel_diff(const cvec& a, const cvec& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(b[i]));
    }
    return num / std::max(den, 1e-300);
}

cplx inner(const FieldState& a, const FieldState& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * std::conj(b.values[i]);
    return a.grid.h() * s;
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

// Each check adds one detail line and folds into the verdict.
struct Checker {
    Result& r;
    void operator()(bool ok, const std::string& line) {
        r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
        if (!ok) r.pass = false;
    }
};

void symbol_bounds(Result& r) {
    Checker check{r};
    for (double h : {0.2, 0.1, 0.05}) {
        for (const auto& s : {SchemeSymbol::fd3(h), SchemeSymbol::hyperviscous(h, 2), SchemeSymbol::hyperviscous(h, 3)}) {
            const double ratio = verify_bound(s, 10000);
            check(ratio <= 1.0 + 1e-9, fmt("%s h=%g ratio=%.12f (<= 1+1e-9)", s.id().c_str(), h, ratio));
        }
    }
}

void conservation(Result& r) {
    Checker check{r};
    const double h = 0.1, dt = 0.01;
    const GridSpec g(h, 256);
    std::mt19937_64 rng(seed_from_env(2));
    const FieldState u0(g, random_values(rng, g.n()));
    for (const auto& s : {SchemeSymbol::fd3(h), SchemeSymbol::filtered(h), SchemeSymbol::exact(h)}) {
        const LinearPropagator P(s, g);
        FieldState u = u0;
        double worst = 0.0, prev = norm_lr(u, 2.0);
        for (int k = 0; k < 1000; ++k) {
            u = P.evolve(u, dt);
            const double n = norm_lr(u, 2.0);
            worst = std::max(worst, std::abs(n - prev) / prev);
            prev = n;
        }
        check(worst < 1e-12, fmt("%s max per-step relative l2 change %.3e (< 1e-12)", s.id().c_str(), worst));
    }
    for (const auto& s : {SchemeSymbol::hyperviscous(h, 2), SchemeSymbol::hyperviscous(h, 3), SchemeSymbol::viscous(h)}) {
        const LinearPropagator P(s, g);
        FieldState u = u0;
        double prev = norm_lr(u, 2.0);
        int increases = 0;
        for (int k = 0; k < 1000; ++k) {
            u = P.evolve(u, dt);
            const double n = norm_lr(u, 2.0);
            if (n > prev) ++increases;
            prev = n;
        }
        check(increases == 0, fmt("%s l2 increases over 1000 steps: %d", s.id().c_str(), increases));
    }
}

void semigroup_identity(Result& r) {
    Checker check{r};
    const double h = 0.2;
    const GridSpec g(h, 256);
    const FieldState phi = project_Th(make_gaussian(1.0), g);
    for (const auto& a : {SchemeSymbol::fd3(h), SchemeSymbol::hyperviscous(h, 2)}) {
        const double res = semigroup_difference_check(a, SchemeSymbol::exact(h), phi, 1.0, 64);
        check(res < 1e-8, fmt("(%s, exact) N=256 64 nodes residual %.3e (< 1e-8)", a.id().c_str(), res));
    }
}

void series_line(Checker& check, const RateReport& rep, const std::string& norm, double target, double tol,
                 double min_r2) {
    const auto& s = rep.series_for(norm);
    const bool ok = within(s.fit.slope, target, tol) && s.fit.r_squared >= min_r2;
    std::string errs;
    for (double e : s.errors) errs += fmt(" %.4g", e);
    check(ok, fmt("%s %s %s slope %.3f (target %.3f +- %.2f) R2 %.4f (>= %.2f) errors:%s", rep.scheme.c_str(),
                  rep.profile.c_str(), norm.c_str(), s.fit.slope, target, tol, s.fit.r_squared, min_r2, errs.c_str()));
}

void validity_line(Checker& check, const RateReport& rep) {
    std::string text;
    for (const auto& c : rep.checks) text += fmt(" [%s %.2e]", c.name.c_str(), c.relative_change);
    check(rep.valid(), fmt("%s %s reference checks%s -> %s", rep.scheme.c_str(), rep.profile.c_str(), text.c_str(),
                           rep.valid() ? "VALID" : "INVALID"));
}

void lse_rate(Result& r, unsigned jobs) {
    Checker check{r};
    LseStudyOptions opt;
    opt.jobs = jobs;
    for (double s : {1.0, 2.0}) {
        const RateReport rep = lse_rate_study(SchemeSymbol::hyperviscous(0.2, 2), make_rough_profile(s, 0.05), opt);
        series_line(check, rep, "Linf-l2", s / 2, 0.15, 0.95);
        series_line(check, rep, "L6-l6", s / 2, 0.15, 0.95);
        validity_line(check, rep);
    }
}

void twogrid_rate(Result& r, unsigned jobs) {
    Checker check{r};
    LseStudyOptions opt;
    opt.jobs = jobs;
    opt.norms = {"Linf-l2"};
    const RateReport rough = lse_rate_study(SchemeSymbol::twogrid(0.2), make_rough_profile(1.0, 0.05), opt);
    series_line(check, rough, "Linf-l2", 0.5, 0.15, 0.0);
    validity_line(check, rough);
    const RateReport smooth = lse_rate_study(SchemeSymbol::twogrid(0.2), make_gaussian(1.0), opt);
    series_line(check, smooth, "Linf-l2", 1.0, 0.2, 0.0);
    validity_line(check, smooth);
}

void strichartz(Result& r) {
    Checker check{r};
    const std::vector<double> hs{1.0 / 16, 1.0 / 32, 1.0 / 64};
    const Exponent six = Exponent::of(6);
    for (const auto& s : {SchemeSymbol::fd3(0.1), SchemeSymbol::hyperviscous(0.1, 2), SchemeSymbol::filtered(0.1, 0.25),
                          SchemeSymbol::twogrid(0.1)}) {
        const auto v = strichartz_sweep(s, hs, six, six);
        const std::string vals = fmt("%.4f %.4f %.4f", v[0], v[1], v[2]);
        if (s.kind == SchemeKind::Conservative3pt) {
            const bool inc = v[0] < v[1] && v[1] < v[2];
            const double growth = v[2] / v[0];
            check(inc && growth >= 1.3,
                  fmt("%s ratios %s strictly increasing=%d growth %.3f (>= 1.3)", s.id().c_str(), vals.c_str(), inc, growth));
        } else {
            const double band = std::max({v[0], v[1], v[2]}) / std::min({v[0], v[1], v[2]});
            check(band <= 1.25, fmt("%s ratios %s max/min %.3f (<= 1.25)", s.id().c_str(), vals.c_str(), band));
        }
    }
}

void nse_rate(Result& r, unsigned jobs) {
    Checker check{r};
    NseStudyOptions opt;
    opt.jobs = jobs;
    for (double s : {0.4, 0.25}) {
        const SpectralProfile phi = make_rough_profile(s, 0.05);
        const RateReport disp = nse_rate_study(SchemeSymbol::hyperviscous(0.2, 2), phi, opt);
        const RateReport cons = nse_rate_study(SchemeSymbol::fd3(0.2), phi, opt);
        series_line(check, disp, "Lq0-lp2", s / 2, 0.15, 0.0);
        validity_line(check, disp);
        validity_line(check, cons);
        const auto& ed = disp.series_for("Lq0-lp2").errors;
        const auto& ec = cons.series_for("Lq0-lp2").errors;
        bool ordered = true;
        std::string pairs;
        for (std::size_t i = 0; i < ed.size(); ++i) {
            ordered = ordered && ed[i] <= ec[i];
            pairs += fmt(" h=%g: %.4g<=%.4g", disp.h_values[i], ed[i], ec[i]);
        }
        check(ordered, fmt("s=%g dispersive <= conservative L8-l4 error at every h:%s", s, pairs.c_str()));
        const auto& fc = cons.series_for("Lq0-lp2").fit;
        r.details.push_back(fmt("info fd3 s=%g L8-l4 slope %.3f R2 %.4f", s, fc.slope, fc.r_squared));
    }
}

void h1_rate(Result& r, unsigned jobs) {
    Checker check{r};
    NseStudyOptions opt;
    opt.jobs = jobs;
    const RateReport rep = h1_baseline(make_gaussian(1.0), opt);
    const auto& s = rep.series_for("Linf-l2");
    check(s.fit.slope >= 0.4, fmt("fd3 gaussian Linf-l2 slope %.3f (>= 0.4)", s.fit.slope));
    validity_line(check, rep);
}

void jfunctional(Result& r) {
    Checker check{r};
    const SpectralProfile phi = make_rough_profile(0.25, 0.05);
    std::vector<double> hs;
    for (int k = 8; k <= 20; ++k) hs.push_back(std::ldexp(1.0, -k));
    double worst = 0.0;
    for (double h : hs) worst = std::max(worst, solve_ch(JProblem(phi, h, 0.25)).residual);
    check(worst < 1e-10, fmt("max solve_ch residual over h=2^-8..2^-20: %.3e (< 1e-10)", worst));

    for (double h : {1e-2, 1e-3}) {
        auto mu = std::make_shared<DiscreteMeasure>(DiscreteMeasure::uniform(64, 0.5));
        const JProblem prob(phi, h, 0.25, mu);
        const double fixed = min_J(prob).value;
        const BruteForceResult bf = brute_force_min_J(prob, 2.0 * std::abs(std::log(h)), 1e-3);
        const double d = std::abs(bf.value - fixed);
        check(d < 1e-6, fmt("64-mode spectrum h=%g: min J %.12f brute force %.12f |diff| %.2e (< 1e-6)", h, fixed, bf.value, d));
    }

    const LogRateReport lr = log_rate_study(0.25, 0.05, hs);
    check(lr.band_ratio < 5.0, fmt("min J |log h|^{1/3} max/min %.3f (< 5); fitted alpha %.3f R2 %.5f", lr.band_ratio,
                                   lr.alpha, lr.r_squared));
}

void projector_lemmas(Result& r) {
    Checker check{r};
    for (double s : {0.6, 0.8}) {
        const RateReport a = th_eh_study(s);
        series_line(check, a, "l2", s, 0.2, 0.0);
        const RateReport b = nonlinear_projector_study(s);
        series_line(check, b, "l4/3", std::min(s, 1.0), 0.2, 0.0);
    }
}

void verify_suite(Result& r, unsigned jobs) {
    Checker check{r};
    for (int id = 1; id <= kCount - 1; ++id) {
        if (is_slow(id)) continue;
        const Result sub = run(id, jobs);
        check(sub.pass, fmt("criterion %d %s (%.2f s)", id, sub.title.c_str(), sub.seconds));
    }
    for (const auto& inv : core_invariants(seed_from_env(11)))
        check(inv.pass, inv.name + ": " + inv.detail);
}

const char* title_of(int id) {
    switch (id) {
        case 1: return "symbol bounds";
        case 2: return "conservation and dissipation";
        case 3: return "semigroup difference identity";
        case 4: return "LSE dispersive rate";
        case 5: return "two-grid LSE rate";
        case 6: return "Strichartz dichotomy";
        case 7: return "NSE rate";
        case 8: return "H1 baseline";
        case 9: return "J functional";
        case 10: return "projector lemmas";
        case 11: return "verify suite";
        default: return "unknown";
    }
}

double limit_of(int id) {
    switch (id) {
        case 1: return 1.0;
        case 2: return 5.0;
        case 3: return 10.0;
        case 4:
        case 5:
        case 6: return 120.0;
        case 7: return 900.0;
        case 8: return 300.0;
        case 9:
        case 10: return 60.0;
        case 11: return 300.0;
        default: return 0.0;
    }
}

}  // namespace

bool is_slow(int id) { return id == 4 || id == 5 || id == 7 || id == 8; }

unsigned long long seed_from_env(unsigned long long fallback) {
    if (const char* v = std::getenv("DISPERSE_LAB_SEED")) {
        char* end = nullptr;
        const unsigned long long s = std::strtoull(v, &end, 10);
        if (end != v && *end == '\0') return s;
    }
    return fallback;
}

Result run(int id, unsigned jobs) {
    Result r;
    r.id = id;
    r.title = title_of(id);
    r.limit_seconds = limit_of(id);
    r.pass = true;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        switch (id) {
            case 1: symbol_bounds(r); break;
            case 2: conservation(r); break;
            case 3: semigroup_identity(r); break;
            case 4: lse_rate(r, jobs); break;
            case 5: twogrid_rate(r, jobs); break;
            case 6: strichartz(r); break;
            case 7: nse_rate(r, jobs); break;
            case 8: h1_rate(r, jobs); break;
            case 9: jfunctional(r); break;
            case 10: projector_lemmas(r); break;
            case 11: verify_suite(r, jobs); break;
            default:
                r.pass = false;
                r.details.push_back("no such criterion");
        }
    } catch (const std::exception& e) {
        r.pass = false;
        r.details.push_back(std::string("FAIL exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds >= r.limit_seconds) {
        r.pass = false;
        r.details.push_back(fmt("FAIL runtime %.2f s exceeds %.0f s", r.seconds, r.limit_seconds));
    }
    return r;
}

std::vector<Invariant> core_invariants(unsigned long long seed) {
    std::vector<Invariant> out;
    std::mt19937_64 rng(seed);

    {
        const GridSpec g(0.1, 256);
        const SpectrumState c(g, random_values(rng, g.n()));
        const double e = rel_diff(forward_dft(inverse_dft(c)).coeffs, c.coeffs);
        out.push_back({"dft round trip", e < 1e-12, fmt("N=256 relative error %.2e (< 1e-12)", e)});
    }
    {
        const GridSpec g(0.05, 512);
        const FieldState u(g, random_values(rng, g.n()));
        const auto [a, b] = parseval_check(u);
        const double e = std::abs(a - b) / a;
        out.push_back({"parseval", e < 1e-10, fmt("relative gap %.2e (< 1e-10)", e)});
    }
    {
        const GridSpec fine(0.1, 64);
        const TwoGridPair pair(fine);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const FieldState psi(pair.coarse, random_values(rng, pair.coarse.n()));
            const FieldState u(fine, random_values(rng, fine.n()));
            const cplx lhs = inner(twogrid_interpolate(psi, fine), u);
            const cplx rhs = inner(psi, twogrid_adjoint(u, pair.coarse));
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
        }
        out.push_back({"two-grid adjoint", worst < 1e-12, fmt("20 random pairs N=64 max deviation %.2e (< 1e-12)", worst)});
    }
    {
        const GridSpec fine(0.05, 256);
        const TwoGridPair pair(fine);
        const FieldState psi(pair.coarse, random_values(rng, pair.coarse.n()));
        const double e = rel_diff(twogrid_interpolate_spectral(psi, fine).values, twogrid_interpolate(psi, fine).values);
        out.push_back({"two-grid multiplier", e < 1e-10, fmt("spectral vs physical relative error %.2e (< 1e-10)", e)});
    }
    {
        const GridSpec g(0.05, 512);
        const FieldState u(g, random_values(rng, g.n()));
        cvec sum(g.n(), 0.0);
        for (int j = 0; j <= lp_max_level(g.h()); ++j) {
            const FieldState pj = littlewood_paley(u, j);
            for (std::size_t i = 0; i < g.n(); ++i) sum[i] += pj.values[i];
        }
        const double e = rel_diff(sum, u.values);
        out.push_back({"littlewood-paley partition", e < 1e-10, fmt("relative error %.2e (< 1e-10)", e)});
    }
    {
        const GridSpec g(0.1, 128);
        const FieldState u(g, random_values(rng, g.n()));
        cvec shifted(g.n());
        for (std::size_t j = 0; j < g.n(); ++j) shifted[(j + 1) % g.n()] = u.values[j];
        const auto c = forward_dft(u).coeffs;
        const auto cs = forward_dft(FieldState(g, shifted)).coeffs;
        cvec expect(g.n());
        for (std::size_t k = 0; k < g.n(); ++k) expect[k] = c[k] * std::polar(1.0, -g.frequency(k) * g.h());
        const double e = rel_diff(cs, expect);
        out.push_back({"translation covariance", e < 1e-12, fmt("relative error %.2e (< 1e-12)", e)});
    }
    return out;
}

}  // namespace displab::criteria
