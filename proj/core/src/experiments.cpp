#include "displab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "displab/data_gen.hpp"
#include "displab/error.hpp"
#include "displab/fft.hpp"
#include "displab/fourier.hpp"
#include "displab/projectors.hpp"
#include "displab/propagators.hpp"

namespace displab {

using std::numbers::pi;

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

namespace {

std::size_t points_for(double length, double h) {
    const double n = length / h;
    const auto N = static_cast<std::size_t>(std::llround(n));
    if (std::abs(n - static_cast<double>(N)) > 1e-9 * n || !is_power_of_two(N))
        throw DomainError("length / h must be a power of two");
    return N;
}

void require_admissible(const Exponent& q, const Exponent& r) {
    if (!is_admissible(q, r)) throw DomainError("(q, r) = (" + q.str() + ", " + r.str() + ") is not admissible");
}

// Spatial l^r norm of the grid function with physical DFT coefficients c.
double spectral_lr(const cvec& c, const GridSpec& g, const Exponent& r) {
    if (!r.inf && r.num == 2 * r.den) {
        double s = 0.0;
        for (const auto& z : c) s += std::norm(z);
        return std::sqrt(s / g.length());
    }
    return norm_lr(inverse_dft(SpectrumState(g, c)).values, g.h(), r.value());
}

double linear_error_from_spectra(const cvec& start, const cvec& gen, const cvec& target, double T, const Exponent& q,
                                 const Exponent& r, const GridSpec& g, std::size_t samples) {
    TimeNormAccumulator acc(q);
    cvec d(start.size());
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = T * static_cast<double>(i) / static_cast<double>(samples);
        for (std::size_t k = 0; k < d.size(); ++k) {
            const double xi = g.frequency(k);
            d[k] = std::exp(gen[k] * t) * start[k] - std::polar(1.0, -xi * xi * t) * target[k];
        }
        acc.add(t, spectral_lr(d, g, r));
    }
    return acc.value();
}

cvec profile_samples(const SpectralProfile& phi, const GridSpec& g) {
    cvec c(g.n());
    for (std::size_t k = 0; k < g.n(); ++k) c[k] = phi.fourier(g.frequency(k));
    return c;
}

}  // namespace

double lse_error(const SchemeSymbol& scheme, const SpectralProfile& phi, double T, const Exponent& q, const Exponent& r,
                 const GridSpec& g, const LinearRunOptions& opt) {
    require_admissible(q, r);
    require_l2(phi);
    if (scheme.kind == SchemeKind::TwoGridCarrier) return twogrid_lse_error(phi, T, q, r, g, opt);
    const cvec target = profile_samples(phi, g);
    cvec start = target;
    if (scheme.kind == SchemeKind::FourierFiltered) {
        const double cut = scheme.gamma * g.nyquist();
        for (std::size_t k = 0; k < g.n(); ++k)
            if (std::abs(g.frequency(k)) > cut) start[k] = 0.0;
    }
    const cvec gen = semigroup_generator(scheme.with_step(g.h()), g);
    return linear_error_from_spectra(start, gen, target, T, q, r, g, opt.time_samples);
}

double twogrid_lse_error(const SpectralProfile& phi, double T, const Exponent& q, const Exponent& r, const GridSpec& g,
                         const LinearRunOptions& opt) {
    require_admissible(q, r);
    const TwoGridPair pair(g);
    const FieldState data = twogrid_interpolate(project_Th(phi, pair.coarse), g);
    const cvec start = forward_dft(data).coeffs;
    const cvec gen = semigroup_generator(SchemeSymbol::twogrid(g.h()), g);
    return linear_error_from_spectra(start, gen, profile_samples(phi, g), T, q, r, g, opt.time_samples);
}

FieldState strichartz_data(const SchemeSymbol& scheme, const GridSpec& g, const StrichartzOptions& opt) {
    const double xi0 = 0.5 * g.nyquist();
    const double sigma = opt.width_factor * g.h();
    FieldState packet = make_packet(xi0, sigma, g);
    switch (scheme.kind) {
        case SchemeKind::FourierFiltered: return fourier_filter(packet, scheme.gamma);
        case SchemeKind::TwoGridCarrier: {
            const TwoGridPair pair(g);
            cvec coarse(pair.coarse.n());
            for (std::size_t i = 0; i < coarse.size(); ++i) coarse[i] = packet.values[4 * i];
            return twogrid_interpolate(FieldState(pair.coarse, std::move(coarse)), g);
        }
        default: return packet;
    }
}

std::vector<double> strichartz_sweep(const SchemeSymbol& scheme, const std::vector<double>& h_list, const Exponent& q,
                                     const Exponent& r, const StrichartzOptions& opt) {
    std::vector<double> times{0.0};
    const double lmin = std::log(opt.t_min), lmax = std::log(opt.T);
    for (std::size_t i = 0; i < opt.time_samples; ++i)
        times.push_back(std::exp(lmin + (lmax - lmin) * static_cast<double>(i) / static_cast<double>(opt.time_samples - 1)));
    times.back() = opt.T;

    std::vector<double> ratios;
    for (double h : h_list) {
        const GridSpec g(h, opt.n_points);
        const FieldState data = strichartz_data(scheme, g, opt);
        const double n0 = norm_lr(data, 2.0);
        const cvec c = forward_dft(data).coeffs;
        const cvec gen = semigroup_generator(scheme.with_step(h), g);
        TimeNormAccumulator acc(q);
        cvec d(c.size());
        for (double t : times) {
            for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::exp(gen[k] * t) * c[k];
            acc.add(t, spectral_lr(d, g, r));
        }
        ratios.push_back(acc.value() / n0);
    }
    return ratios;
}

bool RateReport::valid() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    for (const auto& e : point_errors)
        if (!e.empty()) return false;
    return true;
}

const NormSeries& RateReport::series_for(const std::string& norm_id) const {
    for (const auto& s : series)
        if (s.norm_id == norm_id) return s;
    throw DomainError("report has no norm '" + norm_id + "'");
}

namespace {

double rel_change(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void finish_series(RateReport& rep) {
    bool all_zero = true;
    for (auto& s : rep.series) {
        for (double e : s.errors)
            if (e != 0.0) all_zero = false;
    }
    if (all_zero) {
        rep.degenerate = true;
        for (auto& s : rep.series) s.fit.note = "degenerate: exact scheme";
        return;
    }
    for (auto& s : rep.series) {
        std::vector<double> hs, es;
        for (std::size_t i = 0; i < s.errors.size(); ++i) {
            if (!rep.point_errors[i].empty()) continue;
            hs.push_back(rep.h_values[i]);
            es.push_back(s.errors[i]);
        }
        try {
            s.fit = fit_rate(hs, es);
        } catch (const Error& e) {
            s.fit = RateFit{};
            s.fit.note = std::string("no fit: ") + e.what();
        }
    }
}

// One NSE run; the observer sees physical DFT coefficients at every sample.
struct NseRun {
    GridSpec grid;
    std::vector<double> times;
    std::vector<cvec> spectra;  // only when keep_samples
    std::vector<double> ref_norms;
};

FieldState initial_data(const SchemeSymbol& scheme, const SpectralProfile& phi, const GridSpec& g) {
    if (scheme.kind == SchemeKind::TwoGridCarrier) {
        const TwoGridPair pair(g);
        return twogrid_interpolate(project_Th(phi, pair.coarse), g);
    }
    return project_Th(phi, g);
}

// ref_norms are taken after spectral restriction to step measure_h, the band on which the
// run enters error measurements.
NseRun run_nse(const SchemeSymbol& scheme, const SpectralProfile& phi, double h, double length, double dt, double T,
               double p, double sample_dt, double c_p, const std::vector<NormSelector>& norms, bool keep_samples,
               double measure_h) {
    const GridSpec g(h, points_for(length, h));
    NseProblem prob(scheme.with_step(h), initial_data(scheme, phi, g), p, T, dt);
    const double stride = sample_dt / dt;
    prob.sample_every = static_cast<std::size_t>(std::llround(stride));
    if (prob.sample_every == 0 || std::abs(stride - static_cast<double>(prob.sample_every)) > 1e-9 * stride)
        throw DomainError("sample interval must be a multiple of dt");

    NseRun run{g, {}, {}, {}};
    const GridSpec mg(measure_h, points_for(length, measure_h));
    std::vector<TimeNormAccumulator> acc;
    for (const auto& n : norms) acc.emplace_back(n.q);
    auto observe = [&](double t, const FieldState& u) {
        run.times.push_back(t);
        const SpectrumState c = forward_dft(u);
        const FieldState seen = inverse_dft(resample_spectrum(c, mg));
        for (std::size_t i = 0; i < norms.size(); ++i) acc[i].add(t, norm_lr(seen, norms[i].r));
        if (keep_samples) run.spectra.push_back(c.coeffs);
    };
    if (scheme.kind == SchemeKind::TwoGridCarrier) {
        const auto sched = RestartSchedule::for_data(p, norm_lr(prob.phi, 2.0), c_p);
        integrate_nse_twogrid(prob, sched, observe);
    } else {
        integrate_nse(prob, observe);
    }
    for (auto& a : acc) run.ref_norms.push_back(a.value());
    return run;
}

}  // namespace

RateReport nse_rate_study(const SchemeSymbol& scheme, const SpectralProfile& phi, const NseStudyOptions& opt) {
    RateReport rep;
    rep.scheme = scheme.id();
    rep.profile = phi.name;
    rep.h_values = opt.h_list;
    const double h_min = *std::min_element(opt.h_list.begin(), opt.h_list.end());
    const double h_ref = h_min / opt.ref_divisor;
    {
        std::ostringstream os;
        os << "self-convergence: same solver at h_ref = " << h_ref << ", dt = " << opt.dt << ", L = " << opt.length;
        rep.reference = os.str();
    }
    std::vector<NormSelector> norms;
    for (const auto& id : opt.norms) norms.push_back(parse_norm_selector(id, opt.p));
    const double half = 0.5 * opt.sample_interval;

    const NseRun ref =
        run_nse(scheme, phi, h_ref, opt.length, opt.dt, opt.T, opt.p, half, opt.c_p, norms, true, h_min);

    const std::size_t nl = opt.h_list.size();
    rep.runtime_seconds.assign(nl, 0.0);
    rep.point_errors.assign(nl, "");
    std::vector<std::vector<double>> errs(norms.size(), std::vector<double>(nl, 0.0));
    std::vector<double> sample_change(nl, 0.0);

    parallel_for(nl, opt.jobs, [&](std::size_t li) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const double h = opt.h_list[li];
            const NseRun run = run_nse(scheme, phi, h, opt.length, opt.dt, opt.T, opt.p, half, opt.c_p, norms, true, h);
            if (run.times.size() != ref.times.size()) throw Error("sample times of level and reference differ");
            const GridSpec& g = run.grid;
            std::vector<TimeNormAccumulator> all, every_other;
            for (const auto& n : norms) {
                all.emplace_back(n.q);
                every_other.emplace_back(n.q);
            }
            for (std::size_t i = 0; i < run.times.size(); ++i) {
                const SpectrumState rs = resample_spectrum(SpectrumState(ref.grid, ref.spectra[i]), g);
                cvec d = run.spectra[i];
                for (std::size_t k = 0; k < d.size(); ++k) d[k] -= rs.coeffs[k];
                const FieldState diff = inverse_dft(SpectrumState(g, std::move(d)));
                for (std::size_t n = 0; n < norms.size(); ++n) {
                    const double v = norm_lr(diff, norms[n].r);
                    all[n].add(run.times[i], v);
                    if (i % 2 == 0) every_other[n].add(run.times[i], v);
                }
            }
            double worst = 0.0;
            for (std::size_t n = 0; n < norms.size(); ++n) {
                errs[n][li] = all[n].value();
                worst = std::max(worst, rel_change(every_other[n].value(), all[n].value()));
            }
            sample_change[li] = worst;
        } catch (const std::exception& e) {
            rep.point_errors[li] = e.what();
        }
        rep.runtime_seconds[li] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });

    for (std::size_t n = 0; n < norms.size(); ++n) rep.series.push_back({norms[n].id, errs[n], {}});
    finish_series(rep);

    if (opt.run_checks) {
        auto compare = [&](const std::string& name, const NseRun& other) {
            double worst = 0.0;
            for (std::size_t n = 0; n < norms.size(); ++n)
                worst = std::max(worst, rel_change(other.ref_norms[n], ref.ref_norms[n]));
            rep.checks.push_back({name, worst, worst < 0.01});
        };
        compare("reference resolution doubled",
                run_nse(scheme, phi, 0.5 * h_ref, opt.length, opt.dt, opt.T, opt.p, half, opt.c_p, norms, false, h_min));
        compare("domain length doubled", run_nse(scheme, phi, h_ref, 2.0 * opt.length, opt.dt, opt.T, opt.p, half,
                                                 opt.c_p, norms, false, h_min));
        compare("time step halved",
                run_nse(scheme, phi, h_ref, opt.length, 0.5 * opt.dt, opt.T, opt.p, half, opt.c_p, norms, false, h_min));
        const double ws = *std::max_element(sample_change.begin(), sample_change.end());
        rep.checks.push_back({"sample spacing halved", ws, ws < 0.01});
    }
    return rep;
}

RateReport lse_rate_study(const SchemeSymbol& scheme, const SpectralProfile& phi, const LseStudyOptions& opt) {
    RateReport rep;
    rep.scheme = scheme.id();
    rep.profile = phi.name;
    rep.reference = "exact-symbol evolution of T_h phi on the same grid";
    rep.h_values = opt.h_list;
    std::vector<NormSelector> norms;
    for (const auto& id : opt.norms) {
        norms.push_back(parse_norm_selector(id, 2.0));
        require_admissible(norms.back().q, norms.back().r);
    }
    const std::size_t nl = opt.h_list.size();
    rep.runtime_seconds.assign(nl, 0.0);
    rep.point_errors.assign(nl, "");
    std::vector<std::vector<double>> errs(norms.size(), std::vector<double>(nl, 0.0));

    auto error_at = [&](const NormSelector& n, double h, double length, std::size_t samples) {
        const GridSpec g(h, points_for(length, h));
        return lse_error(scheme.with_step(h), phi, opt.T, n.q, n.r, g, LinearRunOptions{samples});
    };

    parallel_for(nl, opt.jobs, [&](std::size_t li) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            for (std::size_t n = 0; n < norms.size(); ++n)
                errs[n][li] = error_at(norms[n], opt.h_list[li], opt.length, opt.time_samples);
        } catch (const std::exception& e) {
            rep.point_errors[li] = e.what();
        }
        rep.runtime_seconds[li] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });
    for (std::size_t n = 0; n < norms.size(); ++n) rep.series.push_back({norms[n].id, errs[n], {}});
    finish_series(rep);

    if (opt.run_checks && !rep.degenerate && rep.point_errors[0].empty()) {
        double dom = 0.0, samp = 0.0;
        for (std::size_t n = 0; n < norms.size(); ++n) {
            const double base = errs[n][0];
            dom = std::max(dom, rel_change(error_at(norms[n], opt.h_list[0], 2.0 * opt.length, opt.time_samples), base));
            samp = std::max(samp, rel_change(error_at(norms[n], opt.h_list[0], opt.length, 2 * opt.time_samples), base));
        }
        rep.checks.push_back({"domain length doubled", dom, dom < 0.01});
        rep.checks.push_back({"sample spacing halved", samp, samp < 0.01});
    }
    return rep;
}

RateReport h1_baseline(const SpectralProfile& phi, NseStudyOptions opt) {
    opt.norms = {"Linf-l2"};
    return nse_rate_study(SchemeSymbol::fd3(opt.h_list.front()), phi, opt);
}

namespace {

RateReport projector_report(const std::string& name, const std::string& reference, const SpectralProfile& phi,
                            const std::vector<double>& h_list) {
    RateReport rep;
    rep.scheme = name;
    rep.profile = phi.name;
    rep.reference = reference;
    rep.h_values = h_list;
    rep.runtime_seconds.assign(h_list.size(), 0.0);
    rep.point_errors.assign(h_list.size(), "");
    return rep;
}

}  // namespace

RateReport th_eh_study(double s, const ProjectorStudyOptions& opt) {
    const SpectralProfile phi = make_rough_profile(s, opt.eps);
    std::vector<double> errs;
    RateReport rep = projector_report("T_h - E_h", "pointwise samples", phi, opt.h_list);
    for (std::size_t i = 0; i < opt.h_list.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const double h = opt.h_list[i];
        const GridSpec g(h, points_for(opt.length, h));
        const FieldState a = project_Th(phi, g);
        const FieldState b = sample_Eh(phi, g);
        cvec d(g.n());
        for (std::size_t j = 0; j < g.n(); ++j) d[j] = a.values[j] - b.values[j];
        errs.push_back(norm_lr(d, h, 2.0));
        rep.runtime_seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    rep.series.push_back({"l2", errs, {}});
    finish_series(rep);
    return rep;
}

RateReport nonlinear_projector_study(double s, const ProjectorStudyOptions& opt) {
    const SpectralProfile phi = make_rough_profile(s, opt.eps);
    std::vector<double> errs;
    RateReport rep = projector_report("f(T_h) - T_h f", "band truncation of f on a refined grid", phi, opt.h_list);
    auto cubic = [](FieldState u) {
        for (auto& z : u.values) z *= std::norm(z);
        return u;
    };
    for (std::size_t i = 0; i < opt.h_list.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const double h = opt.h_list[i];
        const GridSpec g(h, points_for(opt.length, h));
        const double hf = h / opt.ref_divisor;
        const GridSpec gf(hf, points_for(opt.length, hf));
        const FieldState lhs = cubic(project_Th(phi, g));
        const FieldState rhs = resample_spectral(cubic(project_Th(phi, gf)), g);
        cvec d(g.n());
        for (std::size_t j = 0; j < g.n(); ++j) d[j] = lhs.values[j] - rhs.values[j];
        errs.push_back(norm_lr(d, h, 4.0 / 3.0));
        rep.runtime_seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    rep.series.push_back({"l4/3", errs, {}});
    finish_series(rep);
    return rep;
}

RateReport run_experiment(const ExperimentConfig& cfg, unsigned jobs) {
    const SchemeSymbol scheme = parse_scheme(cfg.scheme, cfg.h_list.front());
    const SpectralProfile phi = parse_profile(cfg.profile);
    if (cfg.p == 0.0) {
        LseStudyOptions opt;
        opt.h_list = cfg.h_list;
        opt.length = cfg.length;
        opt.T = cfg.T;
        opt.time_samples = cfg.time_samples;
        opt.norms = cfg.norms;
        opt.jobs = jobs;
        return lse_rate_study(scheme, phi, opt);
    }
    NseStudyOptions opt;
    opt.h_list = cfg.h_list;
    opt.length = cfg.length;
    opt.ref_divisor = cfg.ref_divisor;
    opt.dt = cfg.dt;
    opt.sample_interval = cfg.sample_interval;
    opt.T = cfg.T;
    opt.p = cfg.p;
    opt.c_p = cfg.c_p;
    opt.norms = cfg.norms;
    opt.jobs = jobs;
    return nse_rate_study(scheme, phi, opt);
}

}  // namespace displab
